"""The double D_R(A) = A + Abar of A = M_n built from an operator R.

Basis order: the plain units e_ij (index i*n + j), then the barred units
(index n^2 + i*n + j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core_linear import Matrix, Scalar, rank
from .matrix_rb import MatrixOperator, RBReport, theta, units
from .double_bracket import IdealCheck


@dataclass(frozen=True)
class DoubleElement:
    plain: Matrix
    barred: Matrix

    def __post_init__(self):
        if self.plain.shape != self.barred.shape or self.plain.shape[0] != self.plain.shape[1]:
            raise ValueError("both components must be square of the same size")

    @classmethod
    def zero(cls, n: int) -> "DoubleElement":
        z = Matrix.zeros(n, n)
        return cls(z, z)

    @classmethod
    def basis(cls, n: int, k: int) -> "DoubleElement":
        N = n * n
        z = Matrix.zeros(n, n)
        if k < N:
            return cls(Matrix.unit(n, *divmod(k, n)), z)
        return cls(z, Matrix.unit(n, *divmod(k - N, n)))

    @property
    def n(self) -> int:
        return self.plain.shape[0]

    def __add__(self, other: "DoubleElement") -> "DoubleElement":
        return DoubleElement(self.plain + other.plain, self.barred + other.barred)

    def __sub__(self, other: "DoubleElement") -> "DoubleElement":
        return DoubleElement(self.plain - other.plain, self.barred - other.barred)

    def __neg__(self) -> "DoubleElement":
        return DoubleElement(-self.plain, -self.barred)

    def scale(self, c: Scalar) -> "DoubleElement":
        return DoubleElement(self.plain.scale(c), self.barred.scale(c))

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(self.plain.entries()) + tuple(self.barred.entries())

    def is_zero(self) -> bool:
        return self.plain.is_zero() and self.barred.is_zero()


def dr_product(R: MatrixOperator, lam: Scalar, x: DoubleElement, y: DoubleElement) -> DoubleElement:
    """(a + bbar)(c + dbar) = ac + R(ad) - aR(d) + R(bc) - R(b)c
                              + bar(ad + bc - R(b)d - bR(d) - lam bd)."""
    lam = Fraction(lam)
    a, b, c, d = x.plain, x.barred, y.plain, y.barred
    Rb, Rd = R(b), R(d)
    ad, bc, bd = a @ d, b @ c, b @ d
    plain = a @ c + R(ad) - a @ Rd + R(bc) - Rb @ c
    barred = ad + bc - Rb @ d - b @ Rd - bd.scale(lam)
    return DoubleElement(plain, barred)


def i_map(R: MatrixOperator, lam: Scalar, a: Matrix) -> DoubleElement:
    return DoubleElement(a.scale(lam) + R(a), a)


def j_map(R: MatrixOperator, lam: Scalar, a: Matrix) -> DoubleElement:
    return DoubleElement(-R(a), -a)


class DoubleAlgebra:
    """D_R(A) with its structure constants on the 2n^2 basis."""

    def __init__(self, R: MatrixOperator, lam: Scalar):
        self.R = R
        self.lam = Fraction(lam)
        self.n = R.n
        self.dim = 2 * R.n * R.n
        self.basis = [DoubleElement.basis(self.n, k) for k in range(self.dim)]
        # table[p][q] = {r: c} with b_p b_q = sum c b_r
        self.table = [[_sparse(dr_product(R, self.lam, x, y)) for y in self.basis] for x in self.basis]

    def mul_coords(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for p, a in u.items():
            row = self.table[p]
            for q, b in v.items():
                for r, c in row[q].items():
                    _acc(out, r, a * b * c)
        return out

    def element(self, coords: dict) -> DoubleElement:
        vals = [Fraction(0)] * self.dim
        for k, c in coords.items():
            vals[k] = c
        N = self.dim // 2
        return DoubleElement(Matrix(self.n, self.n, vals[:N]), Matrix(self.n, self.n, vals[N:]))


def _sparse(x: DoubleElement) -> dict:
    return {k: c for k, c in enumerate(x.coords()) if c}


def _acc(out: dict, k, c) -> None:
    v = out.get(k, 0) + c
    if v:
        out[k] = v
    else:
        out.pop(k, None)


def _algebra(R, lam) -> DoubleAlgebra:
    return R if isinstance(R, DoubleAlgebra) else DoubleAlgebra(R, lam)


def check_assoc(R: MatrixOperator | DoubleAlgebra, lam: Scalar = 0) -> RBReport:
    """(x*y)*z == x*(y*z) on all basis triples; witness is the first failing
    triple (p, q, r) in lexicographic order with the defect."""
    D = _algebra(R, lam)
    report = RBReport()
    T = D.table
    for p, q, r in product(range(D.dim), repeat=3):
        left = D.mul_coords(T[p][q], {r: 1})
        right = D.mul_coords({p: 1}, T[q][r])
        if left != right:
            defect = dict(left)
            for k, c in right.items():
                _acc(defect, k, -c)
            report.witnesses.append(((p, q, r), D.element(defect)))
            return report
    return report


def q_form(x: DoubleElement, y: DoubleElement) -> Fraction:
    """Q(a + bbar, c + dbar) = tr(ad) + tr(bc)."""
    return (x.plain @ y.barred).trace() + (x.barred @ y.plain).trace()


@dataclass
class QInvariance:
    invariant: bool
    witness: tuple | None = None
    theta_criterion: bool = True

    def __bool__(self) -> bool:
        return self.invariant


def theta_vanishes_on_products(R: MatrixOperator, lam: Scalar) -> bool:
    """theta_R(ab) = 0 for all unit products ab (these span M_n)."""
    th = theta(R, lam)
    n = R.n
    seen = set()
    for (i, j), (k, l) in product(units(n), repeat=2):
        if j != k or (i, l) in seen:
            continue
        seen.add((i, l))
        if not th(Matrix.unit(n, i, l)).is_zero():
            return False
    return True


def check_q_invariance(R: MatrixOperator, lam: Scalar) -> QInvariance:
    """Q(x*y, z) == Q(x, y*z) on all basis triples, with the theta criterion
    computed alongside; ``theta_criterion`` records the second reading."""
    D = DoubleAlgebra(R, lam)
    N = D.dim // 2
    witness = None
    for p, s, r in product(range(D.dim), repeat=3):
        lhs = _q_coords(D.table[p][s], {r: 1}, N, D.n)
        rhs = _q_coords({p: 1}, D.table[s][r], N, D.n)
        if lhs != rhs:
            witness = (p, s, r, lhs, rhs)
            break
    return QInvariance(witness is None, witness, theta_vanishes_on_products(R, lam))


def _q_coords(u: dict, v: dict, N: int, n: int) -> Fraction:
    total = Fraction(0)
    for k, a in u.items():
        # b_k pairs nontrivially only with the dual unit on the other side
        i, j = divmod(k % N, n)
        partner = (0 if k >= N else N) + j * n + i
        b = v.get(partner)
        if b:
            total += a * b
    return total


def check_direct_sum(R: MatrixOperator, lam: Scalar) -> bool:
    """D_R(A) = I(A) + J(A) with zero intersection (lam != 0)."""
    n = R.n
    rows = [list(f(R, lam, Matrix.unit(n, i, j)).coords()) for f in (i_map, j_map) for i, j in units(n)]
    return rank(Matrix.from_rows(rows)) == 2 * n * n


def _in_span(rows: list, v: tuple) -> bool:
    return rank(Matrix.from_rows(rows)) == rank(Matrix.from_rows(rows + [list(v)]))


def check_image_ideal(R: MatrixOperator, lam: Scalar, which: str = "i") -> IdealCheck:
    """Is the image of i (or j) a two-sided ideal? Witness: (basis index,
    unit, side)."""
    D = DoubleAlgebra(R, lam)
    n = D.n
    f = i_map if which == "i" else j_map
    gens = {(i, j): f(R, lam, Matrix.unit(n, i, j)) for i, j in units(n)}
    rows = [list(g.coords()) for g in gens.values()]
    for k, b in enumerate(D.basis):
        for u, g in gens.items():
            for side, prod in (("left", dr_product(R, lam, b, g)), ("right", dr_product(R, lam, g, b))):
                if not _in_span(rows, prod.coords()):
                    return IdealCheck(False, (k, u, side))
    return IdealCheck(True)


def check_scaled_multiplicative(R: MatrixOperator, lam: Scalar, which: str = "i") -> RBReport:
    """f(a)f(b) == lam f(ab) for f = i or j on unit pairs, i.e. f/lam is an
    algebra map."""
    lam = Fraction(lam)
    f = i_map if which == "i" else j_map
    n = R.n
    report = RBReport()
    for (i, j), (k, l) in product(units(n), repeat=2):
        a, b = Matrix.unit(n, i, j), Matrix.unit(n, k, l)
        lhs = dr_product(R, lam, f(R, lam, a), f(R, lam, b))
        rhs = f(R, lam, a @ b).scale(lam)
        if lhs != rhs:
            report.witnesses.append(((i, j), (k, l), lhs - rhs))
    return report


def check_i_identities(R: MatrixOperator, lam: Scalar) -> RBReport:
    """On unit pairs: i(a) b = i(ab), i(a) bbar = i(-a R(b)), i(a) i(b) = lam i(ab).
    Witnesses are (label, a, b) with label "plain", "barred" or "image"."""
    lam = Fraction(lam)
    n = R.n
    report = RBReport()
    for (i, j), (k, l) in product(units(n), repeat=2):
        a, b = Matrix.unit(n, i, j), Matrix.unit(n, k, l)
        ia = i_map(R, lam, a)
        zero = Matrix.zeros(n)
        checks = (
            ("plain", dr_product(R, lam, ia, DoubleElement(b, zero)), i_map(R, lam, a @ b)),
            ("barred", dr_product(R, lam, ia, DoubleElement(zero, b)), i_map(R, lam, -(a @ R(b)))),
            ("image", dr_product(R, lam, ia, i_map(R, lam, b)), i_map(R, lam, a @ b).scale(lam)),
        )
        for label, lhs, rhs in checks:
            if lhs != rhs:
                report.witnesses.append((label, (i, j), (k, l)))
    return report
