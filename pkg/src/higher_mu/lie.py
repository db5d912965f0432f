"""Iterated Whitehead products as bracket trees, and their right-comb normal form.

Sign convention (artifact choice, fixed once here):

* graded antisymmetry  ``[a, b] = (-1)^(p q) [b, a]``  for sphere dimensions p, q;
* Jacobi, in the rewriting form used by :func:`normalize`::

      [[a, b], w] = (-1)^A [a, [b, w]] - (-1)^(A B + A) [b, [a, w]]

  with shifted degrees ``A = dim a - 1``, ``B = dim b - 1``.

Both identities are those of the graded commutator ``xy - (-1)^(XY) yx`` on
shifted degrees, rescaled by ``(-1)^(dim x)`` per bracket.  The same rescaling
is applied in :func:`envelope_expand`, so the envelope is a faithful model of
the ring in which :func:`normalize` computes.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Union


@dataclass(frozen=True)
class WedgeSignature:
    """The wedge ``S^n v S^{q_1} v ... v S^{q_{r-1}}``."""

    n: int
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        if self.n < 1:
            raise ValueError(f"core sphere dimension must be >= 1, got n={self.n}")
        if not self.q:
            raise ValueError("need at least one meridian sphere (r >= 2)")
        if any(x < 2 for x in self.q):
            raise ValueError(f"meridian sphere dimensions must be >= 2, got q={self.q}")

    @property
    def r(self) -> int:
        return len(self.q) + 1

    @property
    def q_abs(self) -> int:
        return sum(self.q)

    @property
    def graded(self) -> bool:
        return self.n == 1

    def core(self) -> Generator:
        return Generator(0, self.n)

    def meridian(self, j: int, level: int | None = None) -> Generator:
        if not 1 <= j <= self.r - 1:
            raise ValueError(f"meridian index {j} outside 1..{self.r - 1}")
        return Generator(j, self.q[j - 1], level)

    def generators(self, window: tuple[int, int] | None = None) -> list[Generator]:
        """Generators in their fixed total order (core first; graded: by (j, g))."""
        if window is None:
            return [self.core()] + [self.meridian(j) for j in range(1, self.r)]
        lo, hi = window
        return [self.meridian(j, g) for j in range(1, self.r) for g in range(lo, hi + 1)]

    def __str__(self):
        return f"(n={self.n}; q={','.join(map(str, self.q))})"


@dataclass(frozen=True)
class Generator:
    """``i0`` (core), ``ij`` (meridian j) or ``ij@g`` (meridian j at covering level g)."""

    index: int
    dim: int
    level: int | None = None

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("generator index must be >= 0")
        if self.index == 0 and self.level is not None:
            raise ValueError("the core generator has no covering level")
        if self.dim < (1 if self.index == 0 else 2):
            raise ValueError(f"bad sphere dimension {self.dim} for generator {self.index}")

    @property
    def kind(self) -> str:
        if self.index == 0:
            return "core"
        return "meridian" if self.level is None else "graded"

    @property
    def key(self) -> tuple[int, int]:
        return (self.index, 0 if self.level is None else self.level)

    def __lt__(self, other: Generator) -> bool:
        return self.key < other.key

    @property
    def text(self) -> str:
        return f"i{self.index}" if self.level is None else f"i{self.index}@{self.level}"

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Leaf:
    gen: Generator

    @property
    def dim(self) -> int:
        return self.gen.dim

    @property
    def multidegree(self) -> Counter:
        return Counter({self.gen: 1})

    @property
    def leaves(self) -> tuple[Generator, ...]:
        return (self.gen,)

    def __str__(self):
        return self.gen.text


@dataclass(frozen=True)
class Bracket:
    left: Tree
    right: Tree

    @cached_property
    def dim(self) -> int:
        return self.left.dim + self.right.dim - 1

    @cached_property
    def multidegree(self) -> Counter:
        return self.left.multidegree + self.right.multidegree

    @cached_property
    def leaves(self) -> tuple[Generator, ...]:
        return self.left.leaves + self.right.leaves

    def __str__(self):
        return f"[{self.left},{self.right}]"


Tree = Union[Leaf, Bracket]


def bracket(a: Tree | Generator, b: Tree | Generator) -> Bracket:
    a = Leaf(a) if isinstance(a, Generator) else a
    b = Leaf(b) if isinstance(b, Generator) else b
    return Bracket(a, b)


def comb(outer: Iterable[Generator], anchor: Generator) -> Tree:
    """Right comb ``[x1, [x2, [..., [xk, anchor]]]]``."""
    tree: Tree = Leaf(anchor)
    for g in reversed(tuple(outer)):
        tree = Bracket(Leaf(g), tree)
    return tree


def _freeze(md: Counter) -> tuple:
    return tuple(sorted(((g, c) for g, c in md.items() if c), key=lambda gc: gc[0].key))


class LieElement:
    """Finitely supported Z-linear combination of bracket trees."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tree, int] | None = None):
        self.terms: dict[Tree, int] = {t: int(c) for t, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, tree: Tree | Generator, coeff: int = 1) -> LieElement:
        if isinstance(tree, Generator):
            tree = Leaf(tree)
        return cls({tree: coeff})

    def __add__(self, other: LieElement) -> LieElement:
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return LieElement(out)

    def __neg__(self) -> LieElement:
        return LieElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def __rmul__(self, k: int) -> LieElement:
        return LieElement({t: k * c for t, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def bracket(self, other: LieElement) -> LieElement:
        out: dict[Tree, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                t = Bracket(a, b)
                out[t] = out.get(t, 0) + ca * cb
        return LieElement(out)

    def multidegrees(self) -> set[tuple]:
        return {_freeze(t.multidegree) for t in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.multidegrees()) <= 1

    def __str__(self):
        return format_combination((str(t), c) for t, c in sorted(self.terms.items(), key=lambda tc: str(tc[0])))

    __repr__ = __str__


def format_combination(items: Iterable[tuple[str, int]]) -> str:
    out = ""
    for text, c in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = text if mag == 1 else f"{mag}*{text}"
        out = (f"-{body}" if sign == "-" else body) if not out else f"{out} {sign} {body}"
    return out or "0"


# --------------------------------------------------------------------------
# normal form

class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class NormalForm:
    """Coefficients on right combs ``[x1,[x2,[...,[xk, anchor]]]]``, keyed by the outer word."""

    terms: Mapping[tuple[Generator, ...], int]
    anchor: Generator | None
    sig: WedgeSignature

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           {w: int(c) for w, c in sorted(self.terms.items(), key=lambda wc: [g.key for g in wc[0]]) if c})
        if len({len(w) for w in self.terms}) > 1:
            raise NormalizationError("normal form mixes arrangement lengths")

    def __eq__(self, other):
        return (isinstance(other, NormalForm) and dict(self.terms) == dict(other.terms)
                and (self.anchor == other.anchor or not self.terms))

    def __bool__(self):
        return bool(self.terms)

    def delta_terms(self) -> dict[tuple[int, ...], int]:
        """Terms keyed by arrangement index sequences (ungraded mode)."""
        return {tuple(g.index for g in w): c for w, c in self.terms.items()}

    def to_element(self) -> LieElement:
        return LieElement({comb(w, self.anchor): c for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        return format_combination((str(comb(w, self.anchor)), c) for w, c in self.terms.items())


def check_arrangement(delta: Iterable[int], r: int) -> tuple[int, ...]:
    """Validate an index sequence delta: each of 1..r-2 exactly once, the rest zeros."""
    delta = tuple(int(d) for d in delta)
    if any(not 0 <= d <= r - 2 for d in delta):
        raise ValueError(f"arrangement {delta} has entries outside 0..{r - 2}")
    counts = Counter(delta)
    if any(counts[j] != 1 for j in range(1, r - 1)):
        raise ValueError(f"arrangement {delta} must use each of 1..{r - 2} exactly once")
    return delta


def arrangement_zeros(delta: tuple[int, ...]) -> int:
    return sum(1 for d in delta if d == 0)


def comb_from_arrangement(delta: Iterable[int], sig: WedgeSignature) -> Tree:
    delta = check_arrangement(delta, sig.r)
    outer = [sig.core() if d == 0 else sig.meridian(d) for d in delta]
    return comb(outer, sig.meridian(sig.r - 1))


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _scale(terms: dict, k: int) -> dict:
    return {w: k * c for w, c in terms.items()}


def _accumulate(into: dict, terms: dict) -> None:
    for w, c in terms.items():
        v = into.get(w, 0) + c
        if v:
            into[w] = v
        else:
            into.pop(w, None)


def _ad(a: Tree, combs: dict) -> dict:
    """[a, sum c_w comb(w)] expressed again as combs."""
    if isinstance(a, Leaf):
        return {(a.gen,) + w: c for w, c in combs.items()}
    x, y = a.left, a.right
    A, B = x.dim - 1, y.dim - 1
    out: dict = {}
    _accumulate(out, _scale(_ad(x, _ad(y, combs)), _sign(A)))
    _accumulate(out, _scale(_ad(y, _ad(x, combs)), -_sign(A * B + A)))
    return out


def _contains_anchor(tree: Tree, family: int) -> bool:
    return any(g.index == family for g in tree.leaves)


@lru_cache(maxsize=1 << 16)
def _nf_tree(tree: Tree, family: int) -> tuple:
    if isinstance(tree, Leaf):
        return (((), 1),)
    left, right = tree.left, tree.right
    sign = 1
    if _contains_anchor(left, family):
        sign = _sign(left.dim * right.dim)
        left, right = right, left
    inner = dict(_nf_tree(right, family))
    return tuple(_scale(_ad(left, inner), sign).items())


def normalize(x: LieElement | Tree, sig: WedgeSignature) -> NormalForm:
    """Rewrite a combination of trees into right combs ending in the last meridian.

    Every tree must be homogeneous of one multidegree and contain exactly one
    leaf from meridian family r-1 (ungraded ``i{r-1}`` or a graded copy).
    """
    if not isinstance(x, LieElement):
        x = LieElement.of(x)
    family = sig.r - 1
    if not x.is_homogeneous:
        raise NormalizationError("inhomogeneous input")
    anchor = None
    out: dict = {}
    for tree, c in x.terms.items():
        hits = [g for g in tree.leaves if g.index == family]
        if len(hits) != 1:
            raise NormalizationError(
                f"tree {tree} must contain the generator i{family} exactly once (found {len(hits)})")
        anchor = hits[0]
        _accumulate(out, _scale(dict(_nf_tree(tree, family)), c))
    return NormalForm(out, anchor, sig)


# --------------------------------------------------------------------------
# associative envelope (independent oracle)

@lru_cache(maxsize=1 << 16)
def _envelope_tree(tree: Tree) -> tuple:
    if isinstance(tree, Leaf):
        return (((tree.gen,), 1),)
    L = dict(_envelope_tree(tree.left))
    R = dict(_envelope_tree(tree.right))
    A, B = tree.left.dim - 1, tree.right.dim - 1
    twist = _sign(tree.left.dim)
    swap = _sign(A * B)
    out: dict = {}
    for u, cu in L.items():
        for v, cv in R.items():
            _accumulate(out, {u + v: twist * cu * cv})
            _accumulate(out, {v + u: -twist * swap * cu * cv})
    return tuple(out.items())


def envelope_expand(x: LieElement | Tree) -> dict[tuple[Generator, ...], int]:
    """Expand into the free associative ring: each ``[a, b]`` becomes
    ``(-1)^(dim a) (ab - (-1)^((dim a - 1)(dim b - 1)) ba)``.

    The ``(-1)^(dim a)`` factor translates the graded-commutator model to the
    Whitehead sign convention; it is +1 whenever the left factor is an even
    sphere.
    """
    if not isinstance(x, LieElement):
        x = LieElement.of(x)
    out: dict = {}
    for tree, c in x.terms.items():
        _accumulate(out, _scale(dict(_envelope_tree(tree)), c))
    return out


# --------------------------------------------------------------------------
# text grammar:  3*[i1,[i0,i2]] - [i0,[i1,i2]],  graded generators i1@-2

_TOKEN = re.compile(r"\s*(?:(i\d+(?:@-?\d+)?)|(\d+)|([\[\],+\-*]))")


def _tokens(text: str) -> Iterator[str]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        yield m.group(m.lastindex)
        pos = m.end()


class _Parser:
    def __init__(self, text: str, sig: WedgeSignature):
        self.toks = list(_tokens(text))
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def sum(self) -> LieElement:
        total = LieElement()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        total = total + sign * self.term()
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            total = total + sign * self.term()
        return total

    def term(self) -> LieElement:
        tok = self.peek()
        if tok is not None and tok.isdigit():
            k = int(self.take())
            self.take("*")
            return k * self.atom()
        return self.atom()

    def atom(self) -> LieElement:
        tok = self.take()
        if tok == "[":
            a = self.sum()
            self.take(",")
            b = self.sum()
            self.take("]")
            return a.bracket(b)
        if tok.startswith("i"):
            return LieElement.of(parse_generator(tok, self.sig))
        raise ValueError(f"unexpected token {tok!r}")


def parse_generator(text: str, sig: WedgeSignature) -> Generator:
    m = re.fullmatch(r"i(\d+)(?:@(-?\d+))?", text.strip())
    if not m:
        raise ValueError(f"bad generator {text!r}")
    j = int(m.group(1))
    level = int(m.group(2)) if m.group(2) is not None else None
    if j == 0:
        if level is not None:
            raise ValueError("the core generator i0 has no covering level")
        return sig.core()
    return sig.meridian(j, level)


def parse_expression(text: str, sig: WedgeSignature) -> LieElement:
    p = _Parser(text, sig)
    out = p.sum()
    if p.peek() is not None:
        raise ValueError(f"trailing input starting at {p.peek()!r}")
    return out
