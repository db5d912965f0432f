"""Binomial multiplicities b(s, g) = C(g+s-1, s) and the transforms built from them.

``forward_d`` sends a finitely supported sequence (a_g) to the sequence
d_s = sum_g b(s, g) a_g.  On a window of N consecutive levels the first N
values already determine (a_g): the matrix (b(s, g)) has determinant 1, so
the solve is done once over Z and then applied to elements of any abelian
group.  ``forward_Dprime`` is the tensor power of this transform over r-1
level axes; it is inverted one axis at a time, last axis first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .groups import AbelianGroup, GroupElement
from .intmat import IntegerMatrix

Box = tuple[tuple[int, int], ...]


class WindowInconsistency(ValueError):
    """The supplied values are not the transform of anything supported in the window."""


def binom(x: int, k: int) -> int:
    """Generalized binomial x(x-1)...(x-k+1)/k!, any integer x; 0 for k < 0."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // factorial(k)


def b(s: int, g: int) -> int:
    if s < 0:
        raise ValueError("s must be >= 0")
    return binom(g + s - 1, s)


def pascal_oracle(max_s: int, window: tuple[int, int]) -> dict[tuple[int, int], int]:
    """Table of b(s, g) from the recursion b(s,g) = b(s,g-1) + b(s-1,g) alone,
    seeded with b(0, .) = 1 and b(s, 0) = 0 for s >= 1."""
    lo, hi = window
    if not lo <= 0 <= hi:
        raise ValueError("the window must contain 0")
    table = {(0, g): 1 for g in range(lo, hi + 1)}
    for s in range(1, max_s + 1):
        table[(s, 0)] = 0
        for g in range(1, hi + 1):
            table[(s, g)] = table[(s, g - 1)] + table[(s - 1, g)]
        for g in range(0, lo, -1):
            table[(s, g - 1)] = table[(s, g)] - table[(s - 1, g)]
    return table


@lru_cache(maxsize=None)
def _M(n: int, n0: int) -> IntegerMatrix:
    return IntegerMatrix.from_rows([[b(s, g) for g in range(n0 - n, n0 + 1)] for s in range(n + 1)])


def det_M(n: int, n0: int) -> int:
    """Determinant of (b(s, g)) for 0 <= s <= n, n0-n <= g <= n0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _M(n, n0).det


@lru_cache(maxsize=None)
def _M_inverse(lo: int, hi: int) -> IntegerMatrix:
    return _M(hi - lo, hi).inverse()


@dataclass
class SupportedSequence:
    """Finitely supported map Z^arity -> group, with an optional declared window."""

    arity: int
    group: AbelianGroup
    entries: dict[tuple[int, ...], GroupElement] = field(default_factory=dict)
    window: Box | None = None

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        clean = {}
        for g, x in self.entries.items():
            g = (g,) if isinstance(g, int) else tuple(g)
            if len(g) != self.arity:
                raise ValueError(f"index {g} does not have arity {self.arity}")
            if not x.is_zero():
                clean[g] = x
        self.entries = dict(sorted(clean.items()))
        if self.window is not None:
            self.window = tuple((int(lo), int(hi)) for lo, hi in self.window)
            if len(self.window) != self.arity:
                raise ValueError("window dimension does not match arity")
            for g in self.entries:
                if not all(lo <= x <= hi for x, (lo, hi) in zip(g, self.window)):
                    raise ValueError(f"support point {g} lies outside the declared window")

    def __getitem__(self, g) -> GroupElement:
        g = (g,) if isinstance(g, int) else tuple(g)
        return self.entries.get(g, GroupElement.zero(self.group))

    def __eq__(self, other):
        return (isinstance(other, SupportedSequence) and self.arity == other.arity
                and self.entries == other.entries)

    def to_json(self) -> dict:
        out = {"arity": str(self.arity), "group": group_to_json(self.group)}
        out["window"] = None if self.window is None else [[str(lo), str(hi)] for lo, hi in self.window]
        out["entries"] = [{"g": [str(x) for x in g], "value": v.to_json()} for g, v in self.entries.items()]
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> SupportedSequence:
        group = _group_from_json(obj.get("group"))
        window = obj.get("window")
        return cls(int(obj["arity"]), group,
                   {tuple(int(x) for x in e["g"]): GroupElement.from_json(group, e["value"])
                    for e in obj.get("entries", [])},
                   None if window is None else tuple((int(lo), int(hi)) for lo, hi in window))


def group_to_json(group: AbelianGroup) -> dict:
    """Declared moduli, in the order given (not the invariant-factor form)."""
    return {"free": str(group.rank), "torsion": [str(t) for t in group.torsion]}


def _group_from_json(obj) -> AbelianGroup:
    # declared (not canonicalized) moduli; defaults to Z
    if obj is None:
        return AbelianGroup(1)
    return AbelianGroup(int(obj.get("free", 0)), tuple(int(t) for t in obj.get("torsion", [])))


def values_to_json(values: Mapping[tuple[int, ...], GroupElement], group: AbelianGroup) -> dict:
    return {"group": group_to_json(group),
            "values": [{"s": [str(x) for x in s], "value": v.to_json()} for s, v in sorted(values.items())]}


def values_from_json(obj: Mapping) -> tuple[dict[tuple[int, ...], GroupElement], AbelianGroup]:
    group = _group_from_json(obj.get("group"))
    vals = {tuple(int(x) for x in e["s"]): GroupElement.from_json(group, e["value"]) for e in obj["values"]}
    return vals, group


def _combine(coeffs: Sequence[int], xs: Sequence[GroupElement], group: AbelianGroup) -> GroupElement:
    total = GroupElement.zero(group)
    for c, x in zip(coeffs, xs):
        if c:
            total = total + c * x
    return total


def forward_d(a: SupportedSequence, max_s: int) -> list[GroupElement]:
    """d_s(a) for s = 0..max_s."""
    if a.arity != 1:
        raise ValueError("forward_d takes an arity-1 sequence")
    items = [(g[0], x) for g, x in a.entries.items()]
    return [_combine([b(s, g) for g, _ in items], [x for _, x in items], a.group) for s in range(max_s + 1)]


def invert_d(d: Sequence[GroupElement], window: tuple[int, int], group: AbelianGroup | None = None) -> SupportedSequence:
    """The unique sequence supported in [lo, hi] whose transform starts with d.

    Values beyond the first hi-lo+1 are checked against the reconstruction.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    size = hi - lo + 1
    if len(d) < size:
        raise ValueError(f"need at least {size} transform values for a window of {size} levels")
    group = group or d[0].group
    inv = _M_inverse(lo, hi)
    a = inv.apply(list(d[:size]))
    out = SupportedSequence(1, group, {(g,): x for g, x in zip(range(lo, hi + 1), a)}, ((lo, hi),))
    if len(d) > size:
        check = forward_d(out, len(d) - 1)
        for s in range(size, len(d)):
            if check[s] != d[s]:
                raise WindowInconsistency(
                    f"value at s={s} is not reproduced by any sequence supported in [{lo}, {hi}]")
    return out


def forward_Dprime(a: SupportedSequence, max_s: int, per_axis: bool = False) -> dict[tuple[int, ...], GroupElement]:
    """sum_g prod_j b(s_j, g_j) a_g for every (s) with |(s)| <= max_s
    (or every s_j <= max_s when per_axis)."""
    if per_axis:
        indices = itertools.product(range(max_s + 1), repeat=a.arity)
    else:
        indices = (s for s in itertools.product(range(max_s + 1), repeat=a.arity) if sum(s) <= max_s)
    return {s: _transform_at(a, s) for s in indices}


def _transform_at(a: SupportedSequence, s: tuple[int, ...]) -> GroupElement:
    total = GroupElement.zero(a.group)
    for g, x in a.entries.items():
        c = 1
        for sj, gj in zip(s, g):
            c *= b(sj, gj)
            if not c:
                break
        if c:
            total = total + c * x
    return total


def invert_Dprime(values: Mapping[tuple[int, ...], GroupElement], window: Box,
                  group: AbelianGroup | None = None) -> SupportedSequence:
    """Reconstruct the sequence supported in the box from its multi-transform.

    Needs values at every (s) with s_j <= (side_j - 1); further values are
    used as a consistency check.
    """
    window = tuple((int(lo), int(hi)) for lo, hi in window)
    arity = len(window)
    if any(lo > hi for lo, hi in window):
        raise ValueError("empty window")
    if group is None:
        group = next(iter(values.values())).group
    sides = [hi - lo + 1 for lo, hi in window]
    missing = [s for s in itertools.product(*(range(n) for n in sides)) if s not in values]
    if missing:
        raise ValueError(f"missing transform values, e.g. at s={missing[0]}")

    # current[(mixed index)] where the first k axes are still s-indices and the rest are levels
    current = {s: values[s] for s in itertools.product(*(range(n) for n in sides))}
    for axis in reversed(range(arity)):
        lo, hi = window[axis]
        inv = _M_inverse(lo, hi)
        nxt = {}
        others = sorted({key[:axis] + key[axis + 1:] for key in current})
        for rest in others:
            column = [current[rest[:axis] + (s,) + rest[axis:]] for s in range(sides[axis])]
            for g, x in zip(range(lo, hi + 1), inv.apply(column)):
                nxt[rest[:axis] + (g,) + rest[axis:]] = x
        current = nxt
    out = SupportedSequence(arity, group, current, window)

    for s, v in values.items():
        if _transform_at(out, s) != v:
            raise WindowInconsistency(f"value at s={s} is not reproduced by any sequence supported in {window}")
    return out
