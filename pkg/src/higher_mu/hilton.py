"""Basic Whitehead products (Lyndon/Hall basis) of a wedge of spheres and
Hilton summand reports.

In graded mode (core circle, n = 1) the generators are the lifts ``i{j}@g``
of the meridians to the universal cover, restricted to a finite window of
levels g; the core circle itself contributes no products there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .lie import Bracket, Generator, Leaf, Tree, WedgeSignature

__all__ = [
    "WedgeSignature", "BasicProduct", "SummandEntry", "SummandReport", "RangePredicates",
    "is_lyndon", "lyndon_words", "standard_bracketing", "enumerate_basic",
    "basic_products_of_multidegree", "summand_report", "range_predicates", "classify_multidegree",
]

FULL, REDUCED_ONLY, DOUBLE_PRIME, OUTSIDE = "full", "reducedOnly", "doublePrime", "outside"


def is_lyndon(word: Sequence) -> bool:
    """Strictly smaller than each of its proper suffixes."""
    w = tuple(word)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(k: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Duval's generation of all Lyndon words of length <= max_len over 0..k-1, in lex order."""
    if k <= 0 or max_len <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


def standard_bracketing(word: Sequence[Generator]) -> Tree:
    """Lyndon word -> bracket tree via the standard factorization w = uv,
    v the longest proper Lyndon suffix."""
    word = tuple(word)
    keys = tuple(g.key for g in word)
    if not is_lyndon(keys):
        raise ValueError(f"{' '.join(g.text for g in word)} is not a Lyndon word")
    if len(word) == 1:
        return Leaf(word[0])
    for i in range(1, len(word)):
        if is_lyndon(keys[i:]):
            return Bracket(standard_bracketing(word[:i]), standard_bracketing(word[i:]))
    raise ValueError(f"{word} is not a Lyndon word")


def _multiset_words(counts: list[int]) -> Iterator[tuple[int, ...]]:
    total = sum(counts)
    if total == 0:
        yield ()
        return
    for letter, c in enumerate(counts):
        if c:
            counts[letter] -= 1
            for rest in _multiset_words(counts):
                yield (letter,) + rest
            counts[letter] += 1


@dataclass(frozen=True)
class BasicProduct:
    tree: Tree
    word: tuple[Generator, ...]
    t: int                      # occurrences of the core generator
    counts: tuple[int, ...]     # occurrences of each meridian family 1..r-1

    @property
    def weight(self) -> int:
        return len(self.word)

    @property
    def dim(self) -> int:
        return self.tree.dim

    @property
    def multidegree(self) -> tuple[int, tuple[int, ...]]:
        return self.t, self.counts

    @property
    def levels(self) -> tuple[int | None, ...]:
        return tuple(g.level for g in self.word)

    def __str__(self):
        return str(self.tree)


def _make_product(word: tuple[Generator, ...], r: int) -> BasicProduct:
    counts = [0] * (r - 1)
    t = 0
    for g in word:
        if g.index == 0:
            t += 1
        else:
            counts[g.index - 1] += 1
    return BasicProduct(standard_bracketing(word), word, t, tuple(counts))


def _check_window(sig: WedgeSignature, window):
    if sig.graded and window is None:
        raise ValueError("a graded window of levels is required when n = 1")
    if window is not None:
        if not sig.graded:
            raise ValueError("graded windows only apply when n = 1")
        lo, hi = window
        if lo > hi:
            raise ValueError(f"empty window [{lo}, {hi}]")


def enumerate_basic(sig: WedgeSignature, max_weight: int,
                    window: tuple[int, int] | None = None) -> list[BasicProduct]:
    """All Lyndon basic products of weight <= max_weight, ordered by (weight, word)."""
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    _check_window(sig, window)
    gens = sig.generators(window)
    words = sorted(lyndon_words(len(gens), max_weight), key=lambda w: (len(w), w))
    return [_make_product(tuple(gens[i] for i in w), sig.r) for w in words]


def basic_products_of_multidegree(sig: WedgeSignature, t: int, counts: Sequence[int]) -> list[BasicProduct]:
    """Ungraded basic products with t core factors and counts[j-1] factors of meridian j."""
    if sig.graded and t:
        raise ValueError("core factors only occur in ungraded mode")
    if len(counts) != sig.r - 1:
        raise ValueError("need one count per meridian family")
    gens = sig.generators()
    out = [tuple(gens[i] for i in w) for w in _multiset_words([t, *counts]) if is_lyndon(w)]
    return [_make_product(w, sig.r) for w in sorted(out, key=lambda w: [g.key for g in w])]


def basic_products_on(gens: Sequence[Generator], r: int) -> list[BasicProduct]:
    """Basic products using each of the given generators exactly once."""
    gens = sorted(gens, key=lambda g: g.key)
    words = [tuple(gens[i] for i in w) for w in _multiset_words([1] * len(gens)) if is_lyndon(w)]
    return [_make_product(w, r) for w in words]


def classify_multidegree(t: int, counts: Sequence[int], graded: bool = False) -> str:
    if all(c == 1 for c in counts) and (t == 0 or not graded):
        return DOUBLE_PRIME
    if all(c >= 1 for c in counts):
        return REDUCED_ONLY
    return FULL


@dataclass(frozen=True)
class SummandEntry:
    product: BasicProduct
    group: str
    classification: str

    @property
    def in_reduced(self) -> bool:
        return self.classification in (REDUCED_ONLY, DOUBLE_PRIME)

    @property
    def in_double_prime(self) -> bool:
        return self.classification == DOUBLE_PRIME

    def to_json(self) -> dict:
        p = self.product
        return {"tree": str(p.tree),
                "multidegree": {"t": str(p.t), "c": [str(c) for c in p.counts]},
                "d_w": str(p.dim),
                "group": self.group,
                "classification": self.classification}


@dataclass(frozen=True)
class SummandReport:
    sig: WedgeSignature
    k: int
    window: tuple[int, int] | None
    entries: tuple[SummandEntry, ...]

    def of_class(self, classification: str) -> list[SummandEntry]:
        return [e for e in self.entries if e.classification == classification]

    def to_json(self) -> dict:
        return {"n": str(self.sig.n), "q": [str(x) for x in self.sig.q], "k": str(self.k),
                "window": None if self.window is None else [str(x) for x in self.window],
                "entries": [e.to_json() for e in self.entries]}

    def table(self) -> str:
        head = f"pi_{self.k} of wedge {self.sig}"
        if self.window is not None:
            head += f", levels g in [{self.window[0]}, {self.window[1]}]"
        lines = [head, f"{'tree':<32} {'t':>2} {'c':<12} {'d_w':>4}  {'summand':<14} class"]
        for e in self.entries:
            p = e.product
            lines.append(f"{str(p.tree):<32} {p.t:>2} {','.join(map(str, p.counts)):<12} "
                         f"{p.dim:>4}  {e.group:<14} {e.classification}")
        return "\n".join(lines)


def summand_report(sig: WedgeSignature, k: int, window: tuple[int, int] | None = None) -> SummandReport:
    """Hilton summands pi_k(S^{d_w}) of pi_k(W) for all basic products with d_w <= k.

    Products with d_w > k contribute trivial groups and are left out.
    """
    _check_window(sig, window)
    gens = sig.generators(window)
    min_dim = min(g.dim for g in gens)
    # each further factor adds at least one dimension; the core circle is never a factor here
    max_weight = k - min_dim + 1
    entries = []
    if max_weight >= 1:
        for p in enumerate_basic(sig, max_weight, window):
            if p.dim <= k:
                entries.append(SummandEntry(p, f"pi_{k}(S^{p.dim})",
                                            classify_multidegree(p.t, p.counts, sig.graded)))
    return SummandReport(sig, k, window, tuple(entries))


@dataclass(frozen=True)
class RangePredicates:
    hopf_bijective_at_s: bool | None
    hopf_injective_total: bool
    reduced_equals_double_prime: bool

    def to_json(self) -> dict:
        return {"hopfBijectiveAt_s": self.hopf_bijective_at_s,
                "hopfInjectiveTotal": self.hopf_injective_total,
                "reducedEqualsDoublePrime": self.reduced_equals_double_prime}


def range_predicates(sig: WedgeSignature, k: int, s: int | None = None) -> RangePredicates:
    base = sig.q_abs - sig.r + 1
    return RangePredicates(
        hopf_bijective_at_s=None if s is None else k <= 2 * (base + s * (sig.n - 1)),
        hopf_injective_total=k <= 2 * base,
        reduced_equals_double_prime=all(k <= sig.q_abs + qj - sig.r for qj in sig.q),
    )
