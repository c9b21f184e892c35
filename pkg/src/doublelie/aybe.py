"""Weighted associative Yang-Baxter tensors on M_n and their operators.

A tensor r = sum c e_ij (x) e_kl is a :class:`Tensor` of arity 2 whose slot
labels are 0-based matrix units ``(i, j)``. The operator of r is
P_r(x) = sum c e_ij x e_kl.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .core_linear import Matrix, Scalar, solve_linear
from .matrix_rb import MatrixOperator, RBReport
from .tensors import Tensor

# Sign bookkeeping lives here and nowhere else.
# An RB-operator of weight lam has an AYBE tensor of weight -lam.
AYBE_SIGN = -1
# A lam-skew operator has a lam-skew tensor, r + tau(r) = lam (C - E(x)E):
# the adjoint of P_r is P_{tau r}, id = P_{E(x)E} and tr(.)E = P_C, so
# theta_R = lam tr(.)E reads P_{r + tau r} = lam P_{C - E(x)E}.
SKEW_SIGN = 1


def aybe_weight(lam: Scalar) -> Fraction:
    """AYBE weight of the tensor of an RB-operator of weight ``lam``."""
    return AYBE_SIGN * Fraction(lam)


def tensor_skew_weight(lam: Scalar) -> Fraction:
    """Skew parameter of the tensor of a ``lam``-skew-symmetric operator."""
    return SKEW_SIGN * Fraction(lam)


def atensor(n: int, terms) -> Tensor:
    """Build r from ``(coeff, i, j, k, l)`` tuples, 0-based."""
    out = []
    for c, i, j, k, l in terms:
        for x in (i, j, k, l):
            if not 0 <= x < n:
                raise ValueError(f"unit index {x} out of range for M_{n}")
        out.append((((i, j), (k, l)), c))
    return Tensor(2, out)


def identity_tensor(n: int) -> Tensor:
    """E (x) E expanded over diagonal units."""
    return Tensor(2, [(((i, i), (j, j)), 1) for i in range(n) for j in range(n)])


def casimir(n: int) -> Tensor:
    """C = sum e_ij (x) e_ji."""
    return Tensor(2, [(((i, j), (j, i)), 1) for i in range(n) for j in range(n)])


def rb_from_tensor(r: Tensor, n: int) -> MatrixOperator:
    # e_ij e_ab e_kl = e_il exactly when j == a and b == k
    data = {(a, b): [Fraction(0)] * (n * n) for a in range(n) for b in range(n)}
    for ((i, j), (k, l)), c in r.items():
        data[(j, k)][i * n + l] += c
    return MatrixOperator(n, {key: Matrix(n, n, v) for key, v in data.items()})


def _index(n: int, i: int, a: int, b: int, l: int) -> int:
    # unknown: coefficient of e_ia (x) e_bl; equation: entry (i, l) of P(e_ab)
    return ((i * n + a) * n + b) * n + l


def tensor_from_rb(R: MatrixOperator) -> Tensor:
    """The unique r with P_r = R, by solving the n^4 x n^4 correspondence."""
    n = R.n
    N = n ** 4
    A = [[0] * N for _ in range(N)]
    rhs = [0] * N
    for i, a, b, l in product(range(n), repeat=4):
        row = _index(n, i, a, b, l)
        A[row][row] = 1
        rhs[row] = R.value(a, b)[i, l]
    x = solve_linear(Matrix.from_rows(A), Matrix.column(rhs), unique=True)
    terms = []
    for i, a, b, l in product(range(n), repeat=4):
        c = x[_index(n, i, a, b, l), 0]
        if c:
            terms.append((((i, a), (b, l)), c))
    return Tensor(2, terms)


def _mul_units(u, v):
    return (u[0], v[1]) if u[1] == v[0] else None


def aybe_residual(r: Tensor, n: int, w: Scalar) -> Tensor:
    """r13 r12 - r12 r23 + r23 r13 - w r13 as a 3-tensor over matrix units."""
    w = Fraction(w)
    out = []
    terms = list(r.items())
    for (a, b), c in terms:
        for (a2, b2), d in terms:
            cd = c * d
            # r13 r12: a a2 (x) b2 (x) b
            p = _mul_units(a, a2)
            if p is not None:
                out.append(((p, b2, b), cd))
            # r12 r23: a (x) b a2 (x) b2
            p = _mul_units(b, a2)
            if p is not None:
                out.append(((a, p, b2), -cd))
            # r23 r13 with r23 = 1 (x) a (x) b, r13 = a2 (x) 1 (x) b2: a2 (x) a (x) b b2
            p = _mul_units(b, b2)
            if p is not None:
                out.append(((a2, a, p), cd))
        if w:
            for m in range(n):
                out.append(((a, (m, m), b), -w * c))
    return Tensor(3, out)


def check_aybe(r: Tensor, n: int, w: Scalar) -> RBReport:
    """RBReport whose single witness (if any) is the nonzero residual."""
    res = aybe_residual(r, n, w)
    return RBReport([(res,)] if res else [])


def tensor_skew_residual(r: Tensor, n: int, mu: Scalar) -> Tensor:
    """r + tau(r) - mu (C - E (x) E)."""
    mu = Fraction(mu)
    return r + r.swap12() - (casimir(n) - identity_tensor(n)).scale(mu)


def check_tensor_skew(r: Tensor, n: int, mu: Scalar) -> bool:
    return tensor_skew_residual(r, n, mu).is_zero()
