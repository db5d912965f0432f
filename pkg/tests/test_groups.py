from hypothesis import given, strategies as st

from higher_mu.groups import AbelianGroup, GroupElement, invariant_factors
from higher_mu.intmat import IntegerMatrix, NotUnimodular

import pytest


def test_invariant_factors():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([4, 6, 2]) == (2, 2, 12)
    assert invariant_factors([]) == ()


def test_group_equality_is_canonical():
    assert AbelianGroup(0, (2, 3)) == AbelianGroup(0, (6,))
    assert AbelianGroup(1, (2,)) != AbelianGroup(1, (4,))
    assert str(AbelianGroup(2, (2, 2, 24))) == "Z^2 + Z_2^2 + Z_24"
    assert str(AbelianGroup()) == "0" and AbelianGroup().is_zero()
    assert str(AbelianGroup(unknown=True)) == "?"


def test_direct_sum_and_power():
    z2 = AbelianGroup.cyclic(2)
    assert z2.power(3) == AbelianGroup(0, (2, 2, 2))
    assert z2.power(0).is_zero()
    assert (z2 + AbelianGroup.integers()) == AbelianGroup(1, (2,))
    assert (z2 + AbelianGroup(unknown=True)).unknown
    assert AbelianGroup(unknown=True).power(0).is_zero()


def test_bad_torsion_rejected():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


def test_group_json_round_trip():
    g = AbelianGroup(3, (4, 2))
    assert AbelianGroup.from_json(g.to_json()) == g
    assert g.to_json() == {"free": "3", "torsion": ["2", "4"]}


G = AbelianGroup(2, (2, 24))
elements = st.builds(lambda f, t: GroupElement(G, tuple(f), tuple(t)),
                     st.lists(st.integers(-10**30, 10**30), min_size=2, max_size=2),
                     st.lists(st.integers(-100, 100), min_size=2, max_size=2))


@given(elements, elements, elements, st.integers(-50, 50))
def test_element_group_laws(a, b, c, k):
    zero = GroupElement.zero(G)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == zero and (a + zero) == a
    assert k * (a + b) == k * a + k * b
    assert 24 * GroupElement(G, (0, 0), a.torsion) == zero
    assert GroupElement.from_json(G, a.to_json()) == a


def test_residues_reduced():
    assert GroupElement(G, (1, 2), (3, -1)).torsion == (1, 23)


def test_integer_matrix():
    m = IntegerMatrix.from_rows([[2, 1], [7, 4]])
    assert m.det == 1
    inv = m.inverse()
    assert (m @ inv).rows == IntegerMatrix.identity(2).rows
    assert m.T.rows == ((2, 7), (1, 4))
    with pytest.raises(NotUnimodular):
        IntegerMatrix.from_rows([[2, 0], [0, 1]]).inverse()


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_matches_fraction_elimination(rows):
    from fractions import Fraction
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(4):
        piv = next((i for i in range(col, 4) if a[i][col]), None)
        if piv is None:
            det = Fraction(0)
            break
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, 4):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    assert IntegerMatrix.from_rows(rows).det == det


def test_apply_to_group_elements():
    m = IntegerMatrix.from_rows([[1, 1], [1, 2]])
    z2 = AbelianGroup(0, (2,))
    x, y = GroupElement(z2, (), (1,)), GroupElement(z2, (), (0,))
    assert m.apply([x, y]) == [x, x]
    assert m.apply([1, 2]) == [3, 5]
