import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from doublelie.aybe import (AYBE_SIGN, SKEW_SIGN, atensor, aybe_residual, aybe_weight, casimir, check_aybe,
                            check_tensor_skew, identity_tensor, rb_from_tensor, tensor_from_rb,
                            tensor_skew_weight)
from doublelie.core_linear import Matrix
from doublelie.matrix_rb import MatrixOperator, catalog, catalog_weight, is_lambda_skew, is_rb, random_operator
from doublelie.tensors import Tensor

CASES = [(name, n) for name in ("ex1", "ex2", "ex4") for n in (2, 3, 4)] + [("ex3", 3)]


@st.composite
def tensors(draw, n):
    k = draw(st.integers(0, 6))
    idx = st.integers(0, n - 1)
    terms = [(draw(st.integers(-3, 3)), draw(idx), draw(idx), draw(idx), draw(idx)) for _ in range(k)]
    return atensor(n, terms)


def test_sign_constants():
    assert AYBE_SIGN == -1 and SKEW_SIGN == 1
    assert aybe_weight(Fraction(2)) == -2
    assert tensor_skew_weight(-1) == -1


def test_operator_of_tensor():
    # P_r(x) = e12 x e21 sends e22 to e11 and kills everything else
    r = atensor(2, [(1, 0, 1, 1, 0)])
    R = rb_from_tensor(r, 2)
    assert R(Matrix.unit(2, 1, 1)) == Matrix.unit(2, 0, 0)
    assert R(Matrix.unit(2, 0, 0)).is_zero()


def test_identity_and_casimir_operators():
    n = 3
    x = Matrix.from_rows([[1, 2, 3], [0, -1, 4], [2, 2, 5]])
    assert rb_from_tensor(identity_tensor(n), n)(x) == x
    assert rb_from_tensor(casimir(n), n)(x) == Matrix.identity(n).scale(x.trace())
    assert tensor_from_rb(MatrixOperator.identity(n)) == identity_tensor(n)


@given(tensors(3))
def test_bijection_tensor_side(r):
    assert tensor_from_rb(rb_from_tensor(r, 3)) == r


@given(st.integers(0, 10 ** 6))
def test_bijection_operator_side(seed):
    R = random_operator(2, random.Random(seed))
    assert rb_from_tensor(tensor_from_rb(R), 2) == R


@pytest.mark.parametrize("name, n", CASES)
def test_catalog_tensors(name, n):
    R, lam = catalog(name, n), catalog_weight(name)
    r = tensor_from_rb(R)
    assert check_aybe(r, n, aybe_weight(lam)).passed
    assert check_tensor_skew(r, n, tensor_skew_weight(lam))
    # the opposite signs fail
    assert not check_aybe(r, n, lam).passed
    assert not check_tensor_skew(r, n, -lam)


def test_ex1_n2_tensor():
    r = tensor_from_rb(catalog("ex1", 2))
    # R(e11) = e22 = e21 e11 e12, R(e12) = -e12 = -e11 e12 e22
    assert r == atensor(2, [(1, 1, 0, 0, 1), (-1, 0, 0, 1, 1)])
    assert check_aybe(r, 2, -1).passed


def test_aybe_residual_of_identity():
    # r = E(x)E: r13 r12 - r12 r23 + r23 r13 = E(x)E(x)E, so the weight is 1
    n = 2
    r = identity_tensor(n)
    assert check_aybe(r, n, 1).passed
    res = aybe_residual(r, n, 0)
    assert len(res) == n ** 3


@given(tensors(2))
def test_weight_zero_aybe_gives_rb(r):
    if check_aybe(r, 2, 0).passed:
        assert is_rb(rb_from_tensor(r, 2), 0).passed


@given(st.integers(0, 10 ** 6))
def test_rb_weight_matches_aybe_weight_random(seed):
    # small random operators: RB of weight lam iff AYBE of weight -lam
    rng = random.Random(seed)
    R = random_operator(2, rng, density=0.2, span=1)
    lam = Fraction(rng.choice([-1, 0, 1]))
    assert is_rb(R, lam).passed == check_aybe(tensor_from_rb(R), 2, -lam).passed


def test_weight_zero_skew_solution():
    r = atensor(2, [(1, 0, 0, 0, 1), (-1, 0, 1, 0, 0)])
    assert check_aybe(r, 2, 0).passed
    assert check_tensor_skew(r, 2, 0)
    R = rb_from_tensor(r, 2)
    assert is_rb(R, 0).passed and is_lambda_skew(R, 0).passed


def test_atensor_bounds():
    with pytest.raises(ValueError):
        atensor(2, [(1, 0, 0, 0, 2)])
    assert atensor(2, [(1, 0, 0, 0, 0), (-1, 0, 0, 0, 0)]) == Tensor(2)
