import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from doublelie.core_linear import Matrix
from doublelie.double_bracket import (FiniteBracket, LemmaViolation, Subspace, anticom_residual,
                                      bracket_from_rb, check_anticom, check_jacobi, is_homomorphism, is_ideal,
                                      is_lambda_double_lie, jacobi_residual, jacobi_residual_literal,
                                      proper_ideal_from_rb, project_tensor, rb_from_bracket)
from doublelie.matrix_rb import (MatrixOperator, catalog, catalog_weight, conjugate, is_lambda_skew, is_rb,
                                 random_operator)
from doublelie.tensors import Tensor

from conftest import ARTHAMONOV

CASES = [(name, n) for name in ("ex1", "ex2", "ex4") for n in (2, 3, 4)] + [("ex3", 3)]


def art_bracket():
    return FiniteBracket(3, {k: Tensor(2, v) for k, v in ARTHAMONOV.items()})


def test_ex3_bracket_is_arthamonov_table():
    assert bracket_from_rb(catalog("ex3", 3)) == art_bracket()


def test_arthamonov_table_is_minus_one_double_lie():
    B = art_bracket()
    assert is_lambda_double_lie(B, -1)
    assert not is_lambda_double_lie(B, 1)
    R = rb_from_bracket(B)
    assert is_rb(R, -1).passed and is_lambda_skew(R, -1).passed


def test_ex1_n2_bracket_values():
    # [[f_p, f_q]] = sum_i f_i (x) R(e_pi) f_q
    # R(e11) = e22 feeds f1 (x) f2, R(e12) = -e12 feeds -f2 (x) f1
    B = bracket_from_rb(catalog("ex1", 2))
    assert B(0, 1) == Tensor(2, {(0, 1): 1, (1, 0): -1})
    assert B(0, 0) == B(1, 0) == B(1, 1) == Tensor(2)


def test_ex4_n3_bracket_values():
    B = bracket_from_rb(catalog("ex4", 3))
    assert B(0, 2) == Tensor(2, {(0, 2): 1, (2, 0): -1})
    assert B(1, 1) == Tensor(2, {(0, 2): 1, (2, 0): -1})
    assert B(2, 0) == Tensor(2)


@pytest.mark.parametrize("name, n", CASES)
def test_skew_rb_operator_gives_double_lie_bracket(name, n):
    R, lam = catalog(name, n), catalog_weight(name)
    B = bracket_from_rb(R)
    assert check_anticom(B, lam).passed
    assert check_jacobi(B, lam).passed
    R2 = rb_from_bracket(B)
    assert R2 == R
    assert is_rb(R2, lam).passed and is_lambda_skew(R2, lam).passed


def test_operator_bracket_negative_control():
    n = 2
    R = catalog("ex1", n)
    values = {(i, j): R.value(i, j) for i in range(n) for j in range(n)}
    values[(0, 0)] = values[(0, 0)] + Matrix.unit(n, 0, 0)
    P = MatrixOperator(n, values)
    operator_side = is_rb(P, 1).passed and is_lambda_skew(P, 1).passed
    bracket_side = is_lambda_double_lie(bracket_from_rb(P), 1)
    assert not operator_side and not bracket_side


@given(st.integers(0, 10 ** 6))
def test_operator_bracket_equivalence_random(seed):
    rng = random.Random(seed)
    R = random_operator(2, rng, density=0.15, span=1)
    lam = rng.choice([Fraction(1), Fraction(-1), Fraction(0)])
    operator_side = is_rb(R, lam).passed and is_lambda_skew(R, lam).passed
    assert operator_side == is_lambda_double_lie(bracket_from_rb(R), lam)


@given(st.integers(0, 10 ** 6))
def test_bracket_roundtrip_random(seed):
    R = random_operator(3, random.Random(seed))
    B = bracket_from_rb(R)
    assert rb_from_bracket(B) == R
    assert bracket_from_rb(rb_from_bracket(B)) == B


def _random_bracket(rng, dim):
    table = {}
    for p in range(dim):
        for q in range(dim):
            table[(p, q)] = Tensor(2, {(rng.randrange(dim), rng.randrange(dim)): rng.randint(-2, 2)
                                       for _ in range(rng.randint(0, 2))})
    return FiniteBracket(dim, table)


@given(st.integers(0, 10 ** 6))
def test_jacobi_fast_equals_literal(seed):
    rng = random.Random(seed)
    B = _random_bracket(rng, 3)
    lam = Fraction(rng.randint(-2, 2))
    for a, b, c in [(rng.randrange(3), rng.randrange(3), rng.randrange(3)) for _ in range(6)]:
        assert jacobi_residual(B, a, b, c, lam) == jacobi_residual_literal(B, a, b, c, lam)


def test_anticom_residual_formula():
    B = FiniteBracket(2, {(0, 1): Tensor(2, {(0, 1): 1})})
    # [[f0,f1]] + tau[[f1,f0]] - lam (f0 (x) f1 - f1 (x) f0)
    assert anticom_residual(B, 0, 1, 1) == Tensor(2, {(1, 0): 1})
    assert check_anticom(B, 1).witnesses


def test_subspace_and_projection():
    U = Subspace(3, [(1, 1, 0)])
    assert U.dimension == 1 and U.free_coords() == [1, 2]
    assert (2, 2, 0) in U and (1, 0, 0) not in U
    assert project_tensor(U, Tensor(2, {(0, 2): 1, (1, 2): 1})).is_zero()
    # f0 - f1 = -2 f1 modulo U
    assert project_tensor(U, Tensor(2, {(0, 2): 1, (1, 2): -1})) == Tensor(2, {(1, 2): -2})


def test_ex4_n3_ideals():
    B = bracket_from_rb(catalog("ex4", 3))
    assert is_ideal(B, Subspace.spanned_by_units(3, [0]))
    assert is_ideal(B, Subspace.spanned_by_units(3, [2]))
    check = is_ideal(B, Subspace.spanned_by_units(3, [1]))
    assert not check
    a, b, img = check.witness
    assert (a, b) == ((0, 1, 0), (0, 1, 0))
    assert B(1, 1) == Tensor(2, {(0, 2): 1, (2, 0): -1})


@pytest.mark.parametrize("name, n", [(nm, n) for nm in ("ex1", "ex2", "ex4") for n in (2, 3, 4)] + [("ex3", 3)])
def test_proper_ideal(name, n):
    R, lam = catalog(name, n), catalog_weight(name)
    U = proper_ideal_from_rb(R, lam)
    assert 0 < U.dimension < n
    assert is_ideal(bracket_from_rb(R), U)


def test_proper_ideal_values():
    assert proper_ideal_from_rb(catalog("ex1", 4), 1) == Subspace.spanned_by_units(4, [0, 1, 2])
    assert proper_ideal_from_rb(catalog("ex2", 4), 1) == Subspace.spanned_by_units(4, [1, 2, 3])
    assert proper_ideal_from_rb(catalog("ex3", 3), -1) == Subspace.spanned_by_units(3, [1, 2])
    assert proper_ideal_from_rb(catalog("ex4", 4), 1) == Subspace.spanned_by_units(4, [0])


def test_proper_ideal_needs_weight_and_rb():
    with pytest.raises(ValueError):
        proper_ideal_from_rb(catalog("ex1", 2), 0)
    # -id has I2' = everything at weight 1
    with pytest.raises(LemmaViolation):
        proper_ideal_from_rb(MatrixOperator.identity(2).scale(-1), 1)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_conjugation_gives_isomorphic_brackets(a, b, c):
    g = Matrix.from_rows([[1, a, b], [0, 1, c], [0, 0, 1]])
    R = catalog("ex1", 3)
    B, C = bracket_from_rb(R), bracket_from_rb(conjugate(R, g))
    assert is_homomorphism(B, C, g.inverse())
    assert is_homomorphism(C, B, g)


def test_homomorphism_witness():
    B = bracket_from_rb(catalog("ex1", 2))
    zero = FiniteBracket(2)
    check = is_homomorphism(B, zero, Matrix.identity(2))
    assert not check and check.witness[:2] == (0, 1)
