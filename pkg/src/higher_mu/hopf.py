"""s-monotone permutations and evaluation of the Hopf homomorphisms.

Global signs that are only determined up to +-1 (the per-permutation sign
of the evaluation rule and the fixed sign in the graded coefficient formula)
are set to +1 throughout; every output that depends on them is marked
``convention_dependent``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Mapping, Sequence

from .groups import AbelianGroup, GroupElement
from .hilton import basic_products_of_multidegree
from .intmat import IntegerMatrix
from .lie import NormalForm, WedgeSignature, normalize
from .transform import binom

CONVENTION_DEPENDENT = True


def u(r: int, s: int) -> int:
    """Number of s-monotone permutations of r+s-2 letters."""
    return factorial(r + s - 2) // factorial(s)


def compositions(total: int, parts: int):
    """Ordered tuples of `parts` non-negative integers summing to `total` (lex order)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def is_monotone(values: Sequence[int], s: int) -> bool:
    pos = {v: i for i, v in enumerate(values)}
    return all(pos[i] < pos[i + 1] for i in range(1, s))


def compose_monotone(s_parts: Sequence[int], gamma_bar: Sequence[int]) -> tuple[int, ...]:
    """One-line image of gamma((s), gamma_bar): runs of small values 1..s
    alternating with gamma_bar(i) + s."""
    s = sum(s_parts)
    if len(s_parts) != len(gamma_bar) + 1:
        raise ValueError("need r-1 run lengths for a permutation of r-2 letters")
    out: list[int] = []
    nxt = 1
    for i, run in enumerate(s_parts):
        if run < 0:
            raise ValueError("run lengths must be non-negative")
        out.extend(range(nxt, nxt + run))
        nxt += run
        if i < len(gamma_bar):
            out.append(gamma_bar[i] + s)
    return tuple(out)


def decompose_monotone(values: Sequence[int], s: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Inverse of compose_monotone: ((s_1..s_{r-1}), gamma_bar)."""
    if not is_monotone(values, s):
        raise ValueError(f"{tuple(values)} is not {s}-monotone")
    runs, gbar, run = [], [], 0
    for v in values:
        if v <= s:
            run += 1
        else:
            runs.append(run)
            gbar.append(v - s)
            run = 0
    runs.append(run)
    return tuple(runs), tuple(gbar)


@dataclass(frozen=True)
class MonotonePermutation:
    r: int
    s: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if sorted(self.values) != list(range(1, self.r + self.s - 1)):
            raise ValueError(f"{self.values} is not a permutation of 1..{self.r + self.s - 2}")
        if not is_monotone(self.values, self.s):
            raise ValueError(f"{self.values} is not {self.s}-monotone")

    @classmethod
    def from_decomposition(cls, s_parts: Sequence[int], gamma_bar: Sequence[int]) -> MonotonePermutation:
        return cls(len(gamma_bar) + 2, sum(s_parts), compose_monotone(s_parts, gamma_bar))

    @property
    def decomposition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return decompose_monotone(self.values, self.s)

    @property
    def s_parts(self) -> tuple[int, ...]:
        return self.decomposition[0]

    @property
    def gamma_bar(self) -> tuple[int, ...]:
        return self.decomposition[1]

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"

    def to_json(self) -> dict:
        s_parts, gbar = self.decomposition
        return {"values": [str(v) for v in self.values],
                "s_parts": [str(v) for v in s_parts],
                "gamma_bar": [str(v) for v in gbar]}


@lru_cache(maxsize=None)
def _monotone(r: int, s: int) -> tuple[MonotonePermutation, ...]:
    out = [MonotonePermutation(r, s, compose_monotone(parts, gbar))
           for gbar in permutations(range(1, r - 1))
           for parts in compositions(s, r - 1)]
    return tuple(sorted(out, key=lambda g: g.values))


def enumerate_monotone(r: int, s: int) -> list[MonotonePermutation]:
    """All s-monotone permutations of 1..r+s-2, sorted by one-line image."""
    if r < 2 or s < 0:
        raise ValueError("need r >= 2 and s >= 0")
    return list(_monotone(r, s))


def contraction(gamma: MonotonePermutation, t: int) -> tuple[int, ...] | None:
    """delta(i) = max(gamma(i) - t, 0) when t = s; None otherwise (the evaluation vanishes)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t != gamma.s:
        return None
    return tuple(max(v - t, 0) for v in gamma.values)


def expansion(delta: Sequence[int]) -> MonotonePermutation:
    """Inverse of contraction: the zeros of delta become 1..t in order."""
    t = sum(1 for d in delta if d == 0)
    out, k = [], 0
    for d in delta:
        if d == 0:
            k += 1
            out.append(k)
        else:
            out.append(d + t)
    return MonotonePermutation(len(delta) - t + 2, t, tuple(out))


@dataclass(frozen=True)
class HopfValue:
    coefficient: int
    source_class: str
    stem_shift: int

    def to_json(self) -> dict:
        return {"coefficient": str(self.coefficient), "source_class": self.source_class,
                "stem_shift": str(self.stem_shift)}


def stem_shift(sig: WedgeSignature, s: int) -> int:
    """H_{s,gamma} maps pi_k(W) to the stable stem k + stem_shift."""
    return -s * sig.n - sig.q_abs + sig.r + s - 2


def evaluate_H(nf: NormalForm, s: int) -> dict[MonotonePermutation, HopfValue]:
    """H_s on a class given in comb normal form (ungraded mode); zero values are omitted.

    Combs that repeat a meridian, or whose core count differs from s, are
    sent to zero.
    """
    sig = nf.sig
    r = sig.r
    out: dict[MonotonePermutation, HopfValue] = {}
    terms = nf.delta_terms()
    if not terms:
        return out
    t = sum(1 for d in next(iter(terms)) if d == 0)
    if t != s:
        return out
    for gamma in enumerate_monotone(r, s):
        delta = contraction(gamma, t)
        c = terms.get(delta, 0)
        if c:
            label = "E^inf(alpha_(" + ",".join(map(str, delta)) + "))"
            out[gamma] = HopfValue(c, label, stem_shift(sig, s))
    return out


def arrangements(r: int, t: int) -> list[tuple[int, ...]]:
    """Arrangements with t zeros, in the order of their expansions (= lexicographic)."""
    return [contraction(g, t) for g in enumerate_monotone(r, t)]


@dataclass(frozen=True)
class BasisMatrix:
    sig: WedgeSignature
    s: int
    products: tuple            # row labels: BasicProduct
    columns: tuple             # column labels: arrangements delta
    matrix: IntegerMatrix

    def to_json(self) -> dict:
        out = {"n": str(self.sig.n), "q": [str(x) for x in self.sig.q], "s": str(self.s),
               "row_products": [str(p.tree) for p in self.products],
               "column_arrangements": [[str(d) for d in delta] for delta in self.columns],
               "convention_dependent": CONVENTION_DEPENDENT}
        out.update(self.matrix.to_json())
        return out


@lru_cache(maxsize=None)
def basis_matrix(sig: WedgeSignature, s: int) -> BasisMatrix:
    """Row l = normalize(w_l) on the comb basis, w_l the basic products of
    multidegree (s; 1, ..., 1)."""
    if s < 0:
        raise ValueError("s must be >= 0")
    if sig.graded and s:
        raise ValueError("with a core circle only D_0 (per covering level) is defined")
    r = sig.r
    products = tuple(basic_products_of_multidegree(sig, s, [1] * (r - 1)))
    cols = tuple(arrangements(r, s))
    index = {delta: i for i, delta in enumerate(cols)}
    rows = []
    for p in products:
        row = [0] * len(cols)
        for delta, c in normalize(p.tree, sig).delta_terms().items():
            row[index[delta]] = c
        rows.append(row)
    return BasisMatrix(sig, s, products, cols, IntegerMatrix.from_rows(rows))


def basis_matrix_D(sig: WedgeSignature, s: int) -> IntegerMatrix:
    return basis_matrix(sig, s).matrix


def hopf_from_basic(sig: WedgeSignature, s: int, coeffs: Sequence[int]) -> dict[MonotonePermutation, int]:
    """H_s of sum_l coeffs[l] w_l through the matrix D_s."""
    bm = basis_matrix(sig, s)
    delta_coeffs = bm.matrix.T.apply(list(coeffs))
    return {expansion(delta): c for delta, c in zip(bm.columns, delta_coeffs) if c}


# --------------------------------------------------------------------------
# graded (n = 1) evaluation

def graded_coefficient(gbar: Sequence[int], s_parts: Sequence[int]) -> int:
    """prod_j C(gbar_j - gbar_{j-1} + s_j - 1, s_j) with gbar_0 = 0."""
    if len(gbar) != len(s_parts):
        raise ValueError("gbar and (s) must both have length r-1")
    out, prev = 1, 0
    for g, sj in zip(gbar, s_parts):
        out *= binom(g - prev + sj - 1, sj)
        if not out:
            return 0
        prev = g
    return out


def permuted_levels(g: Sequence[int], gamma_bar: Sequence[int]) -> tuple[int, ...]:
    """gbar_j = g_{gamma_bar(j)} for j <= r-2, gbar_{r-1} = g_{r-1}."""
    return tuple(g[i - 1] for i in gamma_bar) + (g[-1],)


GradedData = Mapping[tuple[tuple[int, ...], tuple[int, ...]], GroupElement]


def evaluate_H_graded(data: GradedData, s: int, r: int, group: AbelianGroup) -> dict[MonotonePermutation, GroupElement]:
    """H_{s,gamma} for every gamma in Sigma_{r,s}, from the covering-level
    Hopf invariants data[((g), gamma_bar)]."""
    by_gbar: dict[tuple[int, ...], list] = {}
    for (g, gbar), x in data.items():
        if len(g) != r - 1 or len(gbar) != r - 2:
            raise ValueError(f"dataset key {(g, gbar)} does not match r = {r}")
        by_gbar.setdefault(tuple(gbar), []).append((tuple(g), x))
    out = {}
    for gamma in enumerate_monotone(r, s):
        s_parts, gbar = gamma.decomposition
        total = GroupElement.zero(group)
        for g, x in by_gbar.get(gbar, ()):
            c = graded_coefficient(permuted_levels(g, gbar), s_parts)
            if c:
                total = total + c * x
        out[gamma] = total
    return out
