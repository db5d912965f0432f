"""Finitely generated abelian groups and their elements.

Groups are described by a free rank and a list of torsion moduli.  Two
descriptions are compared through their invariant-factor form, so
``Z_2 + Z_3`` and ``Z_6`` are equal groups.  Elements live in a group with a
*declared* list of moduli (not necessarily canonical); that is what the
binomial transforms act on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable


def invariant_factors(moduli: Iterable[int]) -> tuple[int, ...]:
    """Divisibility chain d_1 | d_2 | ... of a diagonal torsion group, ones dropped."""
    chain = []
    for m in moduli:
        if m < 1:
            raise ValueError(f"torsion modulus must be positive, got {m}")
        chain.append(m)
    changed = True
    while changed:
        changed = False
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                a, b = chain[i], chain[j]
                if b % a:
                    g = gcd(a, b)
                    chain[i], chain[j] = g, a * b // g
                    changed = True
    return tuple(sorted(d for d in chain if d != 1))


@dataclass(frozen=True)
class AbelianGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()
    unknown: bool = False

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for t in self.torsion:
            if t < 2:
                raise ValueError(f"torsion coefficients must be >= 2, got {t}")

    @classmethod
    def zero(cls) -> AbelianGroup:
        return cls()

    @classmethod
    def integers(cls) -> AbelianGroup:
        return cls(rank=1)

    @classmethod
    def cyclic(cls, order: int) -> AbelianGroup:
        return cls(torsion=(order,)) if order != 1 else cls()

    @classmethod
    def make_unknown(cls) -> AbelianGroup:
        return cls(unknown=True)

    def canonical(self) -> AbelianGroup:
        if self.unknown:
            return AbelianGroup(unknown=True)
        return AbelianGroup(self.rank, invariant_factors(self.torsion))

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (a.rank, a.torsion, a.unknown) == (b.rank, b.torsion, b.unknown)

    def __hash__(self):
        c = self.canonical()
        return hash((c.rank, c.torsion, c.unknown))

    def is_zero(self) -> bool:
        return not self.unknown and self.rank == 0 and not invariant_factors(self.torsion)

    def direct_sum(self, *others: AbelianGroup) -> AbelianGroup:
        groups = (self,) + others
        if any(g.unknown for g in groups):
            return AbelianGroup(unknown=True)
        return AbelianGroup(sum(g.rank for g in groups),
                            tuple(t for g in groups for t in g.torsion))

    __add__ = direct_sum

    def power(self, k: int) -> AbelianGroup:
        if k < 0:
            raise ValueError("negative multiplicity")
        if k == 0:
            return AbelianGroup()
        if self.unknown:
            return AbelianGroup(unknown=True)
        return AbelianGroup(self.rank * k, self.torsion * k)

    def __str__(self):
        if self.unknown:
            return "?"
        c = self.canonical()
        parts = []
        if c.rank == 1:
            parts.append("Z")
        elif c.rank > 1:
            parts.append(f"Z^{c.rank}")
        run: list[tuple[int, int]] = []
        for t in c.torsion:
            if run and run[-1][0] == t:
                run[-1] = (t, run[-1][1] + 1)
            else:
                run.append((t, 1))
        for t, k in run:
            parts.append(f"Z_{t}" if k == 1 else f"Z_{t}^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        if self.unknown:
            return {"unknown": True}
        c = self.canonical()
        return {"free": str(c.rank), "torsion": [str(t) for t in c.torsion]}

    @classmethod
    def from_json(cls, obj: dict) -> AbelianGroup:
        if obj.get("unknown"):
            return cls(unknown=True)
        return cls(int(obj.get("free", 0)), tuple(int(t) for t in obj.get("torsion", [])))


@dataclass(frozen=True)
class GroupElement:
    """An element of Z^rank + Z_{m_1} + ... with residues kept reduced."""

    group: AbelianGroup
    free: tuple[int, ...] = ()
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.group
        if g.unknown:
            raise ValueError("cannot form elements of an unknown group")
        free = tuple(int(x) for x in self.free) or (0,) * g.rank
        tors = tuple(int(x) for x in self.torsion) or (0,) * len(g.torsion)
        if len(free) != g.rank or len(tors) != len(g.torsion):
            raise ValueError(f"element shape does not match group {g.rank}, {g.torsion}")
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "torsion", tuple(x % m for x, m in zip(tors, g.torsion)))

    @classmethod
    def zero(cls, group: AbelianGroup) -> GroupElement:
        return cls(group)

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def _check(self, other: GroupElement):
        if (self.group.rank, self.group.torsion) != (other.group.rank, other.group.torsion):
            raise ValueError("elements belong to different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group,
                            tuple(a + b for a, b in zip(self.free, other.free)),
                            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-a for a in self.free),
                            tuple(-a for a in self.torsion))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple(k * a for a in self.free),
                            tuple(k * a for a in self.torsion))

    def __str__(self):
        parts = [str(x) for x in self.free] + [f"{x} mod {m}" for x, m in zip(self.torsion, self.group.torsion)]
        return "(" + ", ".join(parts) + ")"

    def to_json(self) -> dict:
        return {"free": [str(x) for x in self.free], "torsion": [str(x) for x in self.torsion]}

    @classmethod
    def from_json(cls, group: AbelianGroup, obj: dict) -> GroupElement:
        return cls(group, tuple(int(x) for x in obj.get("free", [])),
                   tuple(int(x) for x in obj.get("torsion", [])))


def linear_combination(coeffs: Iterable[int], elements: Iterable[GroupElement],
                       group: AbelianGroup) -> GroupElement:
    total = GroupElement.zero(group)
    for c, x in zip(coeffs, elements):
        if c:
            total = total + c * x
    return total
