"""Invariant sweep suites (run by ``higher-mu check``) and the brute-force
oracles they compare against.

Every suite returns a list of ``CheckResult``; a suite passes when all its
results do.  Randomized suites take a seed so that runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterator, Sequence

from . import hilton, hopf, invariants, lie, transform
from .groups import AbelianGroup, GroupElement
from .lie import Bracket, Leaf, LieElement, WedgeSignature


@dataclass(frozen=True)
class CheckResult:
    suite: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite}: {self.detail}"


# --------------------------------------------------------------------------
# oracles

def brute_monotone(r: int, s: int) -> list[tuple[int, ...]]:
    """Filter all of Sigma_{r+s-2} by gamma^{-1}(1) < ... < gamma^{-1}(s)."""
    out = []
    for perm in itertools.permutations(range(1, r + s - 1)):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[i] < pos[i + 1] for i in range(1, s)):
            out.append(perm)
    return out


def brute_lyndon_count(counts: Sequence[int]) -> int:
    """Lyndon words with the given letter multiplicities, by the rotation test
    (a word is Lyndon iff it is strictly smaller than all its proper rotations)."""
    letters = [i for i, c in enumerate(counts) for _ in range(c)]
    n = len(letters)
    seen = set()
    for w in set(itertools.permutations(letters)):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            seen.add(w)
    return len(seen)


def binary_shapes(n: int) -> Iterator:
    """All full binary tree shapes with n leaves (None marks a leaf)."""
    if n == 1:
        yield None
        return
    for k in range(1, n):
        for left in binary_shapes(k):
            for right in binary_shapes(n - k):
                yield (left, right)


def fill_shape(shape, gens: Iterator) -> lie.Tree:
    if shape is None:
        return Leaf(next(gens))
    left = fill_shape(shape[0], gens)
    return Bracket(left, fill_shape(shape[1], gens))


def anchored_trees(sig: WedgeSignature, leaves: int) -> Iterator[lie.Tree]:
    """Every tree with the given number of leaves containing the last meridian exactly once."""
    others = sig.generators()[:-1]
    anchor = sig.meridian(sig.r - 1)
    shapes = list(binary_shapes(leaves))
    for pos in range(leaves):
        for labels in itertools.product(others, repeat=leaves - 1):
            word = list(labels[:pos]) + [anchor] + list(labels[pos:])
            for shape in shapes:
                yield fill_shape(shape, iter(word))


def random_tree(rng: random.Random, sig: WedgeSignature, leaves: int) -> lie.Tree:
    others = sig.generators()[:-1]
    word = [rng.choice(others) for _ in range(leaves - 1)]
    word.insert(rng.randrange(leaves), sig.meridian(sig.r - 1))
    nodes: list = [Leaf(g) for g in word]
    while len(nodes) > 1:
        i = rng.randrange(len(nodes) - 1)
        nodes[i:i + 2] = [Bracket(nodes[i], nodes[i + 1])]
    return nodes[0]


def random_group(rng: random.Random) -> AbelianGroup:
    return rng.choice([AbelianGroup(1), AbelianGroup(3), AbelianGroup(0, (2, 24))])


def random_element(rng: random.Random, group: AbelianGroup, bound: int = 20) -> GroupElement:
    return GroupElement(group, tuple(rng.randint(-bound, bound) for _ in range(group.rank)),
                        tuple(rng.randrange(m) for m in group.torsion))


def random_window(rng: random.Random, arity: int, max_side: int, spread: int = 6) -> transform.Box:
    box = []
    for _ in range(arity):
        lo = rng.randint(-spread, spread)
        box.append((lo, lo + rng.randint(0, max_side - 1)))
    return tuple(box)


def random_sequence(rng: random.Random, group: AbelianGroup, window: transform.Box,
                    density: float = 0.6) -> transform.SupportedSequence:
    entries = {}
    for g in itertools.product(*(range(lo, hi + 1) for lo, hi in window)):
        if rng.random() < density:
            entries[g] = random_element(rng, group)
    return transform.SupportedSequence(len(window), group, entries, window)


def random_graded_data(rng: random.Random, r: int, window: transform.Box, group: AbelianGroup,
                       density: float = 0.5) -> dict:
    data = {}
    for gbar in itertools.permutations(range(1, r - 1)):
        for g in itertools.product(*(range(lo, hi + 1) for lo, hi in window)):
            if rng.random() < density:
                x = random_element(rng, group)
                if not x.is_zero():
                    data[(g, gbar)] = x
    return data


SAMPLE_SIGS = {
    2: [WedgeSignature(2, (3,)), WedgeSignature(3, (2,))],
    3: [WedgeSignature(2, (3, 2)), WedgeSignature(3, (4, 5))],
    4: [WedgeSignature(2, (3, 2, 5)), WedgeSignature(3, (3, 4, 2))],
}


# --------------------------------------------------------------------------
# lie_core

def _envelope_equal(x, sig) -> bool:
    return lie.envelope_expand(lie.normalize(x, sig).to_element()) == lie.envelope_expand(x)


def suite_normalizer_soundness(seed: int = 0, max_leaves: int = 6, random_count: int = 500) -> list[CheckResult]:
    out = []
    for r, sigs in SAMPLE_SIGS.items():
        sig = sigs[0]
        total = bad = 0
        for leaves in range(1, max_leaves + 1):
            for tree in anchored_trees(sig, leaves):
                total += 1
                bad += not _envelope_equal(tree, sig)
        out.append(CheckResult("normalizer-soundness", bad == 0,
                               f"r={r} sig={sig}: {total} trees with <= {max_leaves} leaves, {bad} mismatches"))
    rng = random.Random(seed)
    bad = 0
    for _ in range(random_count):
        r = rng.choice([2, 3, 4])
        sig = rng.choice(SAMPLE_SIGS[r])
        tree = random_tree(rng, sig, rng.randint(max_leaves + 1, max_leaves + 3))
        bad += not _envelope_equal(tree, sig)
    out.append(CheckResult("normalizer-soundness", bad == 0,
                           f"{random_count} random trees with {max_leaves + 1}..{max_leaves + 3} leaves, {bad} mismatches"))
    return out


def suite_normalize_idempotent(seed: int = 0, count: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        sig = rng.choice(SAMPLE_SIGS[rng.choice([2, 3, 4])])
        nf = lie.normalize(random_tree(rng, sig, rng.randint(1, 7)), sig)
        if nf and lie.normalize(nf.to_element(), sig) != nf:
            bad += 1
    return [CheckResult("normalize-idempotent", bad == 0, f"{count} random trees, {bad} failures")]


def suite_multidegree(seed: int = 0, count: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        r = rng.choice([2, 3, 4])
        sig = rng.choice(SAMPLE_SIGS[r])
        t = rng.randint(0, 3)
        word = [sig.core()] * t + [sig.meridian(j) for j in range(1, r - 1)]
        rng.shuffle(word)
        word.insert(rng.randrange(len(word) + 1), sig.meridian(r - 1))
        nodes: list = [Leaf(g) for g in word]
        while len(nodes) > 1:
            i = rng.randrange(len(nodes) - 1)
            nodes[i:i + 2] = [Bracket(nodes[i], nodes[i + 1])]
        for delta in lie.normalize(nodes[0], sig).delta_terms():
            if lie.arrangement_zeros(delta) != t or len(delta) != r + t - 2:
                bad += 1
    return [CheckResult("multidegree-preserved", bad == 0, f"{count} multilinear trees, {bad} bad arrangements")]


def suite_dimension_law() -> list[CheckResult]:
    bad = total = 0
    for sigs in SAMPLE_SIGS.values():
        for sig in sigs:
            for t in range(4):
                for delta in hopf.arrangements(sig.r, t):
                    total += 1
                    want = t * sig.n + sig.q_abs - sig.r - t + 2
                    bad += lie.comb_from_arrangement(delta, sig).dim != want
    return [CheckResult("dimension-law", bad == 0, f"{total} arrangements, {bad} wrong dimensions")]


def suite_antisymmetry(seed: int = 0, count: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        sig = rng.choice(SAMPLE_SIGS[rng.choice([2, 3, 4])])
        tree = random_tree(rng, sig, rng.randint(2, 6))
        a, b = tree.left, tree.right
        x = LieElement.of(Bracket(a, b)) - ((-1) ** (a.dim * b.dim)) * LieElement.of(Bracket(b, a))
        bad += bool(lie.normalize(x, sig))
    return [CheckResult("antisymmetry", bad == 0,
                        f"[a,b] - (-1)^(|a||b|) [b,a] normalizes to 0 on {count} random pairs, {bad} failures")]


# --------------------------------------------------------------------------
# hilton

def suite_hall_count(max_r: int = 5, max_s: int = 4) -> list[CheckResult]:
    bad = []
    for r in range(2, max_r + 1):
        sig = WedgeSignature(2, (3,) * (r - 1))
        for s in range(max_s + 1):
            got = len(hilton.basic_products_of_multidegree(sig, s, [1] * (r - 1)))
            oracle = brute_lyndon_count([s] + [1] * (r - 1))
            if not got == oracle == factorial(r + s - 2) // factorial(s):
                bad.append((r, s, got, oracle))
    return [CheckResult("hall-count", not bad, f"r <= {max_r}, s <= {max_s}; mismatches {bad}")]


def suite_graded_count(window: tuple[int, int] = (-1, 1)) -> list[CheckResult]:
    bad = total = 0
    for r in (2, 3, 4):
        sig = WedgeSignature(1, (2,) * (r - 1))
        for g in itertools.product(range(window[0], window[1] + 1), repeat=r - 1):
            gens = [sig.meridian(j, gj) for j, gj in enumerate(g, 1)]
            total += 1
            bad += len(hilton.basic_products_on(gens, r)) != factorial(r - 2)
    return [CheckResult("graded-count", bad == 0, f"{total} level vectors, {bad} with count != (r-2)!")]


def suite_reduced_range() -> list[CheckResult]:
    bad = tested = 0
    for sig in [WedgeSignature(2, (3, 3)), WedgeSignature(2, (4, 5)), WedgeSignature(3, (3, 3, 4)),
                WedgeSignature(2, (2, 2)), WedgeSignature(4, (5, 5))]:
        for k in range(1, 11):
            if range_holds := hilton.range_predicates(sig, k).reduced_equals_double_prime:
                tested += 1
                rep = hilton.summand_report(sig, k)
                bad += any(e.classification == hilton.REDUCED_ONLY for e in rep.entries)
            del range_holds
    return [CheckResult("reduced-range", bad == 0,
                        f"{tested} (sig, k) inside the range; {bad} with a reduced-only summand of d_w <= k")]


def suite_hall_closure() -> list[CheckResult]:
    bad = []
    for sig, w in [(WedgeSignature(2, (3, 2)), 5), (WedgeSignature(3, (2, 2, 4)), 4)]:
        prods = hilton.enumerate_basic(sig, w)
        trees = {p.tree for p in prods}
        if len(trees) != len(prods):
            bad.append(f"{sig}: duplicates")
        for p in prods:
            if isinstance(p.tree, Bracket) and not (p.tree.left in trees and p.tree.right in trees):
                bad.append(f"{p.tree}")
    for sig, window in [(WedgeSignature(1, (2, 3)), (-1, 1))]:
        prods = hilton.enumerate_basic(sig, 3, window)
        trees = {p.tree for p in prods}
        if len(trees) != len(prods):
            bad.append("graded duplicates")
        for p in prods:
            if isinstance(p.tree, Bracket) and not (p.tree.left in trees and p.tree.right in trees):
                bad.append(f"{p.tree}")
    return [CheckResult("hall-closure", not bad, f"problems: {bad[:5]}")]


# --------------------------------------------------------------------------
# hopf

def suite_monotone_count(max_r: int = 6, max_s: int = 6) -> list[CheckResult]:
    bad = []
    for r in range(2, max_r + 1):
        for s in range(max_s + 1):
            got = [g.values for g in hopf.enumerate_monotone(r, s)]
            brute = brute_monotone(r, s)
            if got != sorted(brute) or len(got) != hopf.u(r, s):
                bad.append((r, s))
    return [CheckResult("monotone-count", not bad, f"r <= {max_r}, s <= {max_s}; mismatches {bad}")]


def suite_decomposition() -> list[CheckResult]:
    bad = 0
    for r in range(2, 6):
        for s in range(5):
            for g in hopf.enumerate_monotone(r, s):
                parts, gbar = g.decomposition
                bad += hopf.compose_monotone(parts, gbar) != g.values
            for gbar in itertools.permutations(range(1, r - 1)):
                for parts in hopf.compositions(s, r - 1):
                    bad += hopf.decompose_monotone(hopf.compose_monotone(parts, gbar), s) != (parts, gbar)
    return [CheckResult("decomposition-bijection", bad == 0, f"r <= 5, s <= 4; {bad} failures")]


def suite_contraction() -> list[CheckResult]:
    bad = 0
    for r in range(2, 6):
        for s in range(5):
            images = []
            for g in hopf.enumerate_monotone(r, s):
                delta = hopf.contraction(g, s)
                lie.check_arrangement(delta, r)
                images.append(delta)
                bad += hopf.expansion(delta) != g
            bad += len(set(images)) != len(images) or len(images) != hopf.u(r, s)
    return [CheckResult("contraction-bijection", bad == 0, f"r <= 5, s <= 4; {bad} failures")]


def suite_unimodularity(max_r: int = 4, max_s: int = 3) -> list[CheckResult]:
    bad = []
    for r in range(2, max_r + 1):
        for sig in SAMPLE_SIGS[r]:
            for s in range(max_s + 1):
                d = hopf.basis_matrix_D(sig, s).det
                if d not in (1, -1):
                    bad.append((str(sig), s, d))
    return [CheckResult("unimodularity", not bad, f"det D_s in {{1,-1}} for r <= {max_r}, s <= {max_s}; bad {bad}")]


def suite_consistency_square(seed: int = 0, count: int = 40) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        r = rng.choice([2, 3, 4])
        sig = rng.choice(SAMPLE_SIGS[r])
        s = rng.randint(0, 3)
        bm = hopf.basis_matrix(sig, s)
        coeffs = [rng.randint(-5, 5) for _ in bm.products]
        via_matrix = hopf.hopf_from_basic(sig, s, coeffs)
        x = LieElement()
        for c, p in zip(coeffs, bm.products):
            x = x + c * LieElement.of(p.tree)
        via_nf = {g: v.coefficient for g, v in hopf.evaluate_H(lie.normalize(x, sig), s).items()} if x else {}
        bad += via_matrix != via_nf
    return [CheckResult("consistency-square", bad == 0, f"{count} random classes, {bad} mismatches")]


def suite_graded_pascal(bound: int = 4) -> list[CheckResult]:
    bad = total = 0
    for r in (2, 3, 4):
        for x in itertools.product(range(-bound, bound + 1), repeat=r - 1):
            gbar = tuple(itertools.accumulate(x))
            for parts in itertools.product(range(3), repeat=r - 1):
                for j in range(r - 1):
                    if not parts[j]:
                        continue
                    total += 1
                    x_down = list(x)
                    x_down[j] -= 1
                    s_down = list(parts)
                    s_down[j] -= 1
                    lhs = hopf.graded_coefficient(gbar, parts)
                    rhs = (hopf.graded_coefficient(tuple(itertools.accumulate(x_down)), parts)
                           + hopf.graded_coefficient(gbar, s_down))
                    bad += lhs != rhs
    return [CheckResult("graded-pascal", bad == 0, f"{total} factor recursions, {bad} failures")]


# --------------------------------------------------------------------------
# transform

def suite_binomial(max_s: int = 8, bound: int = 12) -> list[CheckResult]:
    table = transform.pascal_oracle(max_s, (-bound, bound))
    bad = [(s, g) for (s, g), v in table.items() if transform.b(s, g) != v]
    extra = all(transform.b(0, g) == 1 and transform.b(1, g) == g for g in range(-bound, bound + 1))
    return [CheckResult("binomial-oracle", not bad and extra,
                        f"s <= {max_s}, |g| <= {bound}: {len(table)} entries, mismatches {bad[:5]}")]


def suite_det_M(max_n: int = 12, bound: int = 12) -> list[CheckResult]:
    bad = [(n, n0) for n in range(max_n + 1) for n0 in range(-bound, bound + 1) if transform.det_M(n, n0) != 1]
    return [CheckResult("det-M", not bad, f"0 <= n <= {max_n}, |n0| <= {bound}; bad {bad[:5]}")]


def suite_roundtrip(seed: int = 0, count: int = 1000) -> list[CheckResult]:
    rng = random.Random(seed)
    bad_d = bad_D = 0
    for i in range(count):
        group = random_group(rng)
        (lo, hi), = random_window(rng, 1, 6)
        a = random_sequence(rng, group, ((lo, hi),))
        d = transform.forward_d(a, hi - lo + rng.randint(0, 2))
        bad_d += transform.invert_d(d, (lo, hi), group) != a
        arity = rng.randint(1, 3)
        box = random_window(rng, arity, 4 if arity < 3 else 3)
        a = random_sequence(rng, group, box)
        vals = transform.forward_Dprime(a, max(hi - lo for lo, hi in box), per_axis=True)
        bad_D += transform.invert_Dprime(vals, box, group) != a
    return [CheckResult("roundtrip-d", bad_d == 0, f"{count} random sequences, {bad_d} failures"),
            CheckResult("roundtrip-Dprime", bad_D == 0, f"{count} random multi-sequences, {bad_D} failures")]


def suite_coordinate_line(seed: int = 0, count: int = 100) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        group = random_group(rng)
        arity = rng.randint(2, 3)
        axis = rng.randrange(arity)
        fixed = [rng.randint(-4, 4) for _ in range(arity)]
        lo = rng.randint(-5, 5)
        hi = lo + rng.randint(0, 4)
        line = {}
        for g in range(lo, hi + 1):
            idx = list(fixed)
            idx[axis] = g
            line[tuple(idx)] = random_element(rng, group)
        a = transform.SupportedSequence(arity, group, line)
        a1 = transform.SupportedSequence(1, group, {(idx[axis],): v for idx, v in line.items()})
        d = transform.forward_d(a1, 4)
        for s, v in transform.forward_Dprime(a, 4, per_axis=True).items():
            scale = 1
            for j in range(arity):
                if j != axis:
                    scale *= transform.b(s[j], fixed[j])
            bad += v != scale * d[s[axis]]
    return [CheckResult("coordinate-line", bad == 0, f"{count} line-supported sequences, {bad} mismatches")]


def suite_injectivity(seed: int = 0, count: int = 200) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        group = random_group(rng)
        box = random_window(rng, rng.randint(1, 3), 3)
        a = random_sequence(rng, group, box)
        if not a.entries:
            continue
        vals = transform.forward_Dprime(a, 2, per_axis=True)
        bad += all(v.is_zero() for v in vals.values())
    return [CheckResult("injectivity", bad == 0, f"{count} nonzero windowed sequences, {bad} with zero transform")]


# --------------------------------------------------------------------------
# invariants

def suite_stem_identity() -> list[CheckResult]:
    bad = total = 0
    for m in range(3, 10):
        for n in range(1, m):
            for r in range(2, 5):
                for p in itertools.product(range(1, 7), repeat=r):
                    prob = invariants.LinkProblem(p, m, n)
                    for s in range(5):
                        total += 1
                        bad += not invariants.augmentation_stem_check(prob, s).equal
    return [CheckResult("stem-identity", bad == 0, f"{total} grid points, {bad} failures")]


def suite_multiplicity() -> list[CheckResult]:
    bad = [(r, s) for r in range(2, 7) for s in range(7) if hopf.u(r, s) * factorial(s) != factorial(r + s - 2)]
    return [CheckResult("multiplicity-identity", not bad, f"r <= 6, s <= 6; bad {bad}")]


def suite_brunnian() -> list[CheckResult]:
    table = invariants.StableStemTable.default()
    out = []
    for n in (2, 3, 4, 5):
        rep = invariants.classify_brunnian(invariants.LinkProblem((3, 3, 3), 6, n), table)
        ok = rep.group == AbelianGroup(1) and all(rep.assumptions.values())
        out.append(CheckResult("brunnian-examples", ok, f"p=(3,3,3) m=6 n={n}: {rep.group}"))
    rep = invariants.classify_brunnian(invariants.LinkProblem((3, 3), 6, 2), table)
    ok = rep.group == AbelianGroup(1, (2,)) and [s.stem for s in rep.summands] == [1, 0]
    out.append(CheckResult("brunnian-examples", ok, f"p=(3,3) m=6 n=2: {rep.group}, caveat={rep.caveat}"))
    return out


def suite_translation(seed: int = 0, count: int = 100) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        r = rng.randint(2, 4)
        group = random_group(rng)
        data = random_graded_data(rng, r, random_window(rng, r - 1, 3), group, 0.3)
        if not data:
            continue
        canon = invariants.canonicalize_translation(data)
        shift = tuple(rng.randint(-9, 9) for _ in range(r - 1))
        moved = {(tuple(a + b for a, b in zip(g, shift)), gb): v for (g, gb), v in data.items()}
        bad += invariants.canonicalize_translation(moved) != canon
        bad += invariants.canonicalize_translation(canon) != canon
    return [CheckResult("translation-canonical", bad == 0, f"{count} random datasets, {bad} failures")]


def suite_reconstruct(seed: int = 0, count: int = 30, max_side: int = 5) -> list[CheckResult]:
    rng = random.Random(seed)
    bad = 0
    for i in range(count):
        r = 2 + i % 3
        group = random_group(rng)
        sig = WedgeSignature(1, tuple(rng.randint(2, 5) for _ in range(r - 1)))
        window = random_window(rng, r - 1, max_side if r < 4 else 3)
        data = random_graded_data(rng, r, window, group)
        vals = invariants.hopf_values(data, invariants.required_hopf_indices(window, r), group)
        rec = invariants.reconstruct_kappa(vals, window, sig, group)
        got = {k: v for k, v in rec.h_family.items() if not v.is_zero()}
        bad += got != data
    return [CheckResult("reconstruct-roundtrip", bad == 0, f"{count} random graded datasets, {bad} failures")]


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "normalize-idempotent": suite_normalize_idempotent,
    "normalizer-soundness": lambda: suite_normalizer_soundness(max_leaves=5, random_count=100),
    "multidegree-preserved": suite_multidegree,
    "dimension-law": suite_dimension_law,
    "antisymmetry": suite_antisymmetry,
    "hall-count": suite_hall_count,
    "graded-count": suite_graded_count,
    "reduced-range": suite_reduced_range,
    "hall-closure": suite_hall_closure,
    "monotone-count": suite_monotone_count,
    "decomposition-bijection": suite_decomposition,
    "contraction-bijection": suite_contraction,
    "unimodularity": suite_unimodularity,
    "consistency-square": suite_consistency_square,
    "graded-pascal": suite_graded_pascal,
    "binomial-oracle": suite_binomial,
    "det-M": suite_det_M,
    "roundtrip": lambda: suite_roundtrip(count=200),
    "coordinate-line": suite_coordinate_line,
    "injectivity": suite_injectivity,
    "stem-identity": suite_stem_identity,
    "multiplicity-identity": suite_multiplicity,
    "brunnian-examples": suite_brunnian,
    "translation-canonical": suite_translation,
    "reconstruct-roundtrip": lambda: suite_reconstruct(count=12),
}


def run_suites(names: Sequence[str] | None = None) -> list[CheckResult]:
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; available: {', '.join(SUITES)}")
    results = []
    for name in names:
        results.extend(SUITES[name]())
    return results
