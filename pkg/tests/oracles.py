"""Brute-force reference computations used only by the tests."""

import itertools


def monotone_by_filter(r, s):
    """All permutations of 1..r+s-2 in which 1, ..., s appear left to right."""
    out = []
    for perm in itertools.permutations(range(1, r + s - 1)):
        if all(perm.index(i) < perm.index(i + 1) for i in range(1, s)):
            out.append(perm)
    return out


def lyndon_by_rotation(counts):
    """Words with the given letter counts that are strictly least among their rotations."""
    letters = [a for a, c in enumerate(counts) for _ in range(c)]
    words = set(itertools.permutations(letters))
    return sorted(w for w in words if all(w < w[i:] + w[:i] for i in range(1, len(w))))


def pascal_table(max_s, bound):
    """b(s, g) from b(s, g) = b(s, g-1) + b(s-1, g) with b(0, .) = 1, b(s, 0) = 0 (s >= 1)."""
    t = {}
    for g in range(-bound, bound + 1):
        t[0, g] = 1
    for s in range(1, max_s + 1):
        t[s, 0] = 0
        for g in range(1, bound + 1):
            t[s, g] = t[s, g - 1] + t[s - 1, g]
        for g in range(-1, -bound - 1, -1):
            t[s, g] = t[s, g + 1] - t[s - 1, g + 1]
    return t


def binomial_matrix_det(n, n0):
    """det (C(g+s-1, s)) for 0 <= s <= n, n0-n <= g <= n0, by fraction-free elimination."""
    from fractions import Fraction
    from math import factorial

    def c(x, k):
        num = 1
        for i in range(k):
            num *= x - i
        return num // factorial(k)
    a = [[Fraction(c(g + s - 1, s)) for g in range(n0 - n, n0 + 1)] for s in range(n + 1)]
    size = n + 1
    det = Fraction(1)
    for col in range(size):
        piv = next((i for i in range(col, size) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, size):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return int(det)
