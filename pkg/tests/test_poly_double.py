import random

import pytest
from hypothesis import given, strategies as st

from doublelie.double_bracket import FiniteBracket, Subspace, bracket_from_rb, is_ideal
from doublelie.matrix_rb import catalog, conjugate, transpose_conjugate
from doublelie.core_linear import Matrix
from doublelie.poly_double import (FAMILY_WEIGHTS, PolyFamily, TruncationOverflow, check_ideal_poly,
                                   check_poly_axioms, check_shift_iso, divided_difference, multiply_back,
                                   numerator, poly_bracket)
from doublelie.tensors import Tensor

FAMILIES = ["M1", "M2", "L2"]
pair = st.tuples(st.integers(0, 12), st.integers(0, 12))


def T(d):
    return Tensor(2, d)


def test_frozen_values():
    assert poly_bracket("M1", 1, 3, 12) == T({(1, 3): 1, (2, 2): 1})
    assert poly_bracket("L2", 0, 1, 12) == T({(0, 0): -1})
    assert poly_bracket("M1", 0, 1, 12) == T({(0, 1): 1})
    assert poly_bracket("M1", 1, 0, 12) == T({(0, 1): -1})
    assert poly_bracket("M1", 0, 2, 12) == T({(0, 2): 1, (1, 1): 1})
    assert poly_bracket("M1", 2, 0, 12) == T({(1, 1): -1, (0, 2): -1})
    # the operator-induced sign, opposite to the printed display
    assert poly_bracket("M2", 0, 1, 12) == T({(1, 0): -1})
    assert poly_bracket("M2-printed", 0, 1, 12) == T({(1, 0): 1})


@pytest.mark.parametrize("fam", FAMILIES + ["M", "M2-printed"])
@given(ij=pair)
def test_multiply_back(fam, ij):
    i, j = ij
    assert multiply_back(poly_bracket(fam, i, j, 12)) == numerator(fam, i, j)


@given(pair)
def test_diagonal_vanishes(ij):
    i = ij[0]
    for fam in FAMILIES:
        assert poly_bracket(fam, i, i, 12).is_zero()


def test_divided_difference_errors():
    with pytest.raises(ValueError):
        divided_difference(2, 0, 0, 1)
    assert divided_difference(1, 1, 1, 1) == {}


def test_truncation_overflow():
    with pytest.raises(TruncationOverflow):
        poly_bracket("M1", 0, 5, 4)
    with pytest.raises(ValueError):
        PolyFamily("M3")
    assert {f: PolyFamily(f).lam for f in FAMILIES} == FAMILY_WEIGHTS


@pytest.mark.parametrize("fam", FAMILIES)
def test_axioms(fam):
    assert check_poly_axioms(fam, 9).passed


def test_wrong_weight_fails():
    rep = check_poly_axioms("M1", 4, lam=0)
    assert not rep.passed
    assert rep.witnesses[0][:3] == ("anticom", 0, 1)
    assert not check_poly_axioms("L2", 4, lam=1).passed


def test_printed_m2_is_minus_one_double_lie():
    assert check_poly_axioms("M2-printed", 7).passed  # weight -1
    assert not check_poly_axioms("M2-printed", 7, lam=1).passed


def test_intro_bracket_is_m1():
    for i in range(12):
        for j in range(12 - i):
            assert poly_bracket("M", i, j, 12) == poly_bracket("M1", i, j, 12)


def test_m2_is_flipped_m1():
    # as data: [[t^n,t^m]]_M2 = -tau [[t^n,t^m]]_M1
    for i in range(12):
        for j in range(12):
            assert poly_bracket("M2", i, j, 12) == -poly_bracket("M1", i, j, 12).swap12()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_finite_operators_realise_families(n):
    """M1 on t^0..t^(n-1) comes from the transposed diagonal-shift operator,
    M2 from its antidiagonal conjugate."""
    P1 = catalog("ex4", n)
    J = Matrix.from_rows([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])
    window = {f: FiniteBracket(n, {(i, j): poly_bracket(f, i, j, n - 1) for i in range(n) for j in range(n)})
              for f in ("M1", "M2")}
    assert bracket_from_rb(transpose_conjugate(P1)) == window["M1"]
    assert bracket_from_rb(transpose_conjugate(conjugate(P1, J))) == window["M2"]


@pytest.mark.parametrize("fam", ["M1", "M2"])
def test_tFt_is_ideal(fam):
    assert check_ideal_poly(fam, range(1, 13), 12).is_ideal


def test_ideal_competitors():
    res = check_ideal_poly("M1", [0], 12)
    assert not res.is_ideal
    p, q, img = res.witness
    assert (p, q) == (0, 2) and img == T({(1, 1): 1})
    res = check_ideal_poly("M1", range(2, 13), 12)
    assert not res.is_ideal
    p, q, img = res.witness
    assert (p, q) == (0, 2) and img == T({(1, 1): 1})


@given(st.sets(st.integers(0, 6), min_size=1, max_size=3))
def test_random_low_dimensional_subspaces_are_not_ideals(gens):
    D = 6
    if gens == set(range(1, D + 1)):
        return
    assert not check_ideal_poly("M1", gens, D).is_ideal


def test_ideal_agrees_with_finite_check():
    D = 6
    B = FiniteBracket(D + 1, {(i, j): poly_bracket("M1", i, j, D) for i in range(D + 1) for j in range(D + 1)})
    rng = random.Random(7)
    for _ in range(10):
        gens = set(rng.sample(range(D + 1), rng.randint(1, D)))
        assert check_ideal_poly("M1", gens, D).is_ideal == is_ideal(B, Subspace.spanned_by_units(D + 1, gens)).is_ideal


@pytest.mark.parametrize("fam", FAMILIES)
def test_shift_iso(fam):
    assert check_shift_iso(fam, 12).passed


def test_shift_examples():
    shifted = poly_bracket("M1", 1, 3, 12).map_slots(lambda k: k + 1)
    assert shifted == T({(2, 4): 1, (3, 3): 1}) == poly_bracket("M1", 2, 4, 12)
    assert poly_bracket("M1", 0, 1, 12).map_slots(lambda k: k + 1) == poly_bracket("M1", 1, 2, 12)
