import itertools
import random
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from oracles import monotone_by_filter

from higher_mu import checks, hopf, lie
from higher_mu.groups import AbelianGroup, GroupElement
from higher_mu.hopf import MonotonePermutation
from higher_mu.lie import NormalForm, WedgeSignature


def test_counts_small():
    for s in range(6):
        assert [g.values for g in hopf.enumerate_monotone(2, s)] == [tuple(range(1, s + 1))]
    assert len(hopf.enumerate_monotone(4, 2)) == 12
    assert hopf.u(4, 2) == 12


def test_r3_s1_decompositions():
    perms = hopf.enumerate_monotone(3, 1)
    assert [(g.values, g.decomposition) for g in perms] == [((1, 2), ((1, 0), (1,))), ((2, 1), ((0, 1), (1,)))]


@pytest.mark.parametrize("r,s", [(3, 3), (4, 2), (5, 1), (5, 3)])
def test_against_filter(r, s):
    assert [g.values for g in hopf.enumerate_monotone(r, s)] == sorted(monotone_by_filter(r, s))


def test_invalid_permutations():
    with pytest.raises(ValueError):
        MonotonePermutation(3, 2, (2, 1, 3))
    with pytest.raises(ValueError):
        MonotonePermutation(3, 1, (1, 1))
    with pytest.raises(ValueError):
        hopf.compose_monotone((1,), (1,))


def test_contraction_examples():
    g21, g12 = MonotonePermutation(3, 1, (2, 1)), MonotonePermutation(3, 1, (1, 2))
    assert hopf.contraction(g21, 1) == (1, 0)
    assert hopf.contraction(g12, 1) == (0, 1)
    assert hopf.contraction(g12, 0) is None
    assert hopf.expansion((1, 0)) == g21


@settings(max_examples=50)
@given(st.integers(2, 6), st.integers(0, 5), st.data())
def test_decomposition_bijection(r, s, data):
    gbar = data.draw(st.permutations(list(range(1, r - 1))))
    cuts = sorted(data.draw(st.lists(st.integers(0, s), min_size=r - 2, max_size=r - 2)))
    parts = tuple(b - a for a, b in zip([0] + cuts, cuts + [s]))
    g = MonotonePermutation.from_decomposition(parts, tuple(gbar))
    assert g.decomposition == (parts, tuple(gbar))
    assert hopf.expansion(hopf.contraction(g, s)) == g


def test_evaluate_H_examples():
    sig = WedgeSignature(2, (3, 3))
    i0, i1, i2 = sig.generators()
    nf = NormalForm({(i1, i0): 1}, i2, sig)
    vals = hopf.evaluate_H(nf, 1)
    assert {g.values: v.coefficient for g, v in vals.items()} == {(2, 1): 1}
    assert hopf.evaluate_H(nf, 0) == {} and hopf.evaluate_H(nf, 2) == {}
    nf2 = NormalForm({(i0, i1): 2, (i1, i0): -3}, i2, sig)
    assert {g.values: v.coefficient for g, v in hopf.evaluate_H(nf2, 1).items()} == {(1, 2): 2, (2, 1): -3}
    v = hopf.evaluate_H(nf2, 1)[MonotonePermutation(3, 1, (1, 2))]
    assert v.source_class == "E^inf(alpha_(0,1))"
    assert v.stem_shift == -1 * 2 - 6 + 3 + 1 - 2


def test_repeated_meridian_vanishes():
    sig = WedgeSignature(2, (3, 3, 3))
    nf = lie.normalize(lie.parse_expression("[i1,[i1,i3]]", sig), sig)
    assert hopf.evaluate_H(nf, 0) == {}


def test_basis_matrices_small():
    for s in range(4):
        m = hopf.basis_matrix_D(WedgeSignature(2, (3,)), s)
        assert m.shape == (1, 1) and m.det in (1, -1)
    m = hopf.basis_matrix_D(WedgeSignature(2, (5, 5)), 0)
    assert m.rows == ((1,),)
    m = hopf.basis_matrix_D(WedgeSignature(2, (5, 5)), 1)
    assert m.shape == (2, 2) and m.det in (1, -1)


def test_frozen_D1_r4():
    bm = hopf.basis_matrix(WedgeSignature(2, (2, 2, 2)), 1)
    assert bm.columns == ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    assert [str(p.tree) for p in bm.products] == [
        "[i0,[i1,[i2,i3]]]", "[i0,[[i1,i3],i2]]", "[[i0,i2],[i1,i3]]",
        "[[i0,[i2,i3]],i1]", "[[i0,i3],[i1,i2]]", "[[[i0,i3],i2],i1]"]
    assert bm.matrix.rows == (
        (1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, -1, 0, 0, -1, 0),
        (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 1), (0, 0, 0, 1, 0, 0))
    assert bm.matrix.det == 1


def test_graded_mode_only_D0():
    with pytest.raises(ValueError):
        hopf.basis_matrix(WedgeSignature(1, (2, 2)), 1)
    assert hopf.basis_matrix_D(WedgeSignature(1, (2, 2)), 0).det in (1, -1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_consistency_square(seed):
    rng = random.Random(seed)
    r = rng.choice([2, 3, 4])
    sig = rng.choice(checks.SAMPLE_SIGS[r])
    s = rng.randint(0, 3)
    bm = hopf.basis_matrix(sig, s)
    coeffs = [rng.randint(-4, 4) for _ in bm.products]
    x = lie.LieElement()
    for c, p in zip(coeffs, bm.products):
        x = x + c * lie.LieElement.of(p.tree)
    direct = {g: v.coefficient for g, v in hopf.evaluate_H(lie.normalize(x, sig), s).items()} if x else {}
    assert hopf.hopf_from_basic(sig, s, coeffs) == direct


def test_graded_coefficient_examples():
    assert hopf.graded_coefficient((2, 5), (1, 2)) == 12
    assert hopf.graded_coefficient((3, -1, 4), (0, 0, 0)) == 1
    for g in range(-5, 6):
        for s in range(5):
            assert hopf.graded_coefficient((g,), (s,)) == (comb(g + s - 1, s) if g >= 1 else
                                                          hopf.binom(g + s - 1, s))


def test_evaluate_H_graded_examples():
    z = AbelianGroup(1)
    x = GroupElement(z, (7,))
    vals = {s: hopf.evaluate_H_graded({((1,), ()): x}, s, 2, z) for s in range(5)}
    assert all(v[MonotonePermutation(2, s, tuple(range(1, s + 1)))] == x for s, v in vals.items())
    vals0 = hopf.evaluate_H_graded({((0,), ()): x}, 0, 2, z)
    assert list(vals0.values()) == [x]
    assert all(v.is_zero() for s in range(1, 4) for v in hopf.evaluate_H_graded({((0,), ()): x}, s, 2, z).values())
    vals = hopf.evaluate_H_graded({((1, 1), (1,)): x}, 1, 3, z)
    assert vals[MonotonePermutation.from_decomposition((1, 0), (1,))] == x
    assert vals[MonotonePermutation.from_decomposition((0, 1), (1,))].is_zero()


def test_graded_pascal_recursion():
    for x in itertools.product(range(-3, 4), repeat=2):
        gbar = tuple(itertools.accumulate(x))
        for parts in itertools.product(range(1, 3), repeat=2):
            for j in range(2):
                xd = list(x)
                xd[j] -= 1
                sd = list(parts)
                sd[j] -= 1
                assert hopf.graded_coefficient(gbar, parts) == (
                    hopf.graded_coefficient(tuple(itertools.accumulate(xd)), parts)
                    + hopf.graded_coefficient(gbar, tuple(sd)))


def test_multiplicity_identity():
    for r in range(2, 7):
        for s in range(7):
            assert hopf.u(r, s) * factorial(s) == factorial(r + s - 2)
