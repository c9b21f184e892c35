"""Finite-dimensional double brackets.

A bracket on V = span(f_0, ..., f_{dim-1}) is a table of structure constants
(p, q) -> [[f_p, f_q]] in V(x)V. The correspondence with operators on
End(V) = M_n uses the trace-form dual basis e_ij* = e_ji:

    [[f_p, f_q]] = sum_i f_i (x) R(e_pi) f_q.

Indices are 0-based here; the file format is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from .core_linear import Matrix, Scalar, solve_linear, span_basis
from .matrix_rb import MatrixOperator, RBReport, split_spectral
from .tensors import Tensor, tensor_product

BracketFn = Callable[[Hashable, Hashable], Tensor]


class FiniteBracket:
    """Structure constants of a double bracket on a ``dim``-dimensional space."""

    __slots__ = ("dim", "table")

    def __init__(self, dim: int, table: dict | None = None):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        clean: dict[tuple[int, int], Tensor] = {}
        for (p, q), value in (table or {}).items():
            _check_index(dim, p)
            _check_index(dim, q)
            if not isinstance(value, Tensor):
                value = Tensor(2, value)
            if value.arity != 2:
                raise ValueError("bracket values must be 2-tensors")
            for key in value.terms:
                for k in key:
                    _check_index(dim, k)
            if value:
                clean[(p, q)] = value
        self.table = clean

    def __call__(self, p: int, q: int) -> Tensor:
        return self.table.get((p, q)) or Tensor(2)

    def pairs(self):
        return product(range(self.dim), repeat=2)

    def bracket(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> Tensor:
        """Bilinear extension to coordinate vectors."""
        out = []
        for p, ca in enumerate(a):
            if not ca:
                continue
            for q, cb in enumerate(b):
                if not cb:
                    continue
                out.extend((k, ca * cb * c) for k, c in self(p, q).items())
        return Tensor(2, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteBracket):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __repr__(self) -> str:
        body = ", ".join(f"[[f{p + 1},f{q + 1}]]={v!r}" for (p, q), v in sorted(self.table.items()))
        return f"FiniteBracket(dim={self.dim}, {body or '0'})"


def _check_index(dim: int, k) -> None:
    if not isinstance(k, int) or not 0 <= k < dim:
        raise ValueError(f"basis index {k!r} out of range for dimension {dim}")


# -- bracket <-> operator -----------------------------------------------------

def bracket_from_rb(R: MatrixOperator) -> FiniteBracket:
    n = R.n
    table = {}
    for p, q in product(range(n), repeat=2):
        terms = []
        for i in range(n):
            col = R.value(p, i)
            for k in range(n):
                c = col[k, q]
                if c:
                    terms.append(((i, k), c))
        table[(p, q)] = Tensor(2, terms)
    return FiniteBracket(n, table)


def _correspondence_index(n: int, p: int, i: int, k: int, q: int) -> int:
    # the unknown R(e_pi)[k, q] and the bracket coefficient of f_i (x) f_k in [[f_p, f_q]]
    return ((p * n + i) * n + k) * n + q


def rb_from_bracket(B: FiniteBracket) -> MatrixOperator:
    """Invert :func:`bracket_from_rb` by solving the linear correspondence.

    Unknown ``R(e_pi)[k, q]`` feeds exactly the coefficient of f_i (x) f_k in
    [[f_p, f_q]], so the system is square and nonsingular.
    """
    n = B.dim
    N = n ** 4
    A = [[0] * N for _ in range(N)]
    rhs = [0] * N
    for p, i, k, q in product(range(n), repeat=4):
        row = _correspondence_index(n, p, i, k, q)
        A[row][row] = 1
        rhs[row] = B(p, q).coeff(i, k)
    x = solve_linear(Matrix.from_rows(A), Matrix.column(rhs), unique=True)

    def value(p, i):
        return Matrix(n, n, (x[_correspondence_index(n, p, i, k, q), 0]
                             for k in range(n) for q in range(n)))

    return MatrixOperator.from_function(n, value)


# -- axioms, generic over basis labels ----------------------------------------

def anticom_residual(br: BracketFn, a, b, lam: Scalar) -> Tensor:
    """[[a,b]] + [[b,a]]^(12) - lam (a(x)b - b(x)a)."""
    lam = Fraction(lam)
    rhs = Tensor(2, [((a, b), lam), ((b, a), -lam)])
    return br(a, b) + br(b, a).swap12() - rhs


def _left_inner(br: BracketFn, a, u: Tensor) -> Tensor:
    """[[a, u]]_L = sum [[a, u1]] (x) u2."""
    out = []
    for (u1, u2), c in u.items():
        out.extend(((v1, v2, u2), c * d) for (v1, v2), d in br(a, u1).items())
    return Tensor(3, out)


def _right_inner_flipped(br: BracketFn, b, u: Tensor) -> Tensor:
    """[[b, u]]_R^(12) = sum u1 (x) [[b, u2]]; the two flips cancel."""
    out = []
    for (u1, u2), c in u.items():
        out.extend(((u1, v1, v2), c * d) for (v1, v2), d in br(b, u2).items())
    return Tensor(3, out)


def _left_outer(br: BracketFn, u: Tensor, c_) -> Tensor:
    """[[u, c]]_L = sum ([[u1, c]] (x) u2)^(23)."""
    out = []
    for (u1, u2), c in u.items():
        out.extend(((v1, u2, v2), c * d) for (v1, v2), d in br(u1, c_).items())
    return Tensor(3, out)


def jacobi_residual(br: BracketFn, a, b, c, lam: Scalar) -> Tensor:
    """[[a,[[b,c]]]]_L - [[b,[[a,c]]]]_R^(12) - [[[[a,b]],c]]_L + lam (b(x)[[a,c]])^(12)."""
    lam = Fraction(lam)
    ac = br(a, c)
    flipped = Tensor(3, [((u1, b, u2), lam * k) for (u1, u2), k in ac.items()])
    return (_left_inner(br, a, br(b, c))
            - _right_inner_flipped(br, b, ac)
            - _left_outer(br, br(a, b), c)
            + flipped)


def right_inner_literal(br: BracketFn, b, u: Tensor) -> Tensor:
    """[[b, u]]_R = (u1 (x) [[b, u2]])^(12), built literally from the definition."""
    out = []
    for (u1, u2), c in u.items():
        out.extend(((u1, v1, v2), c * d) for (v1, v2), d in br(b, u2).items())
    return Tensor(3, out).swap12()


def jacobi_residual_literal(br: BracketFn, a, b, c, lam: Scalar) -> Tensor:
    """Same identity as :func:`jacobi_residual`, with every permutation applied
    exactly as written (used to cross-check the simplified form)."""
    lam = Fraction(lam)
    left_inner = Tensor(3, [])
    for (u1, u2), k in br(b, c).items():
        left_inner = left_inner + tensor_product(br(a, u1), Tensor.basis(u2)).scale(k)
    right = right_inner_literal(br, b, br(a, c)).swap12()
    outer = Tensor(3, [])
    for (u1, u2), k in br(a, b).items():
        outer = outer + tensor_product(br(u1, c), Tensor.basis(u2)).swap23().scale(k)
    rhs = tensor_product(Tensor.basis(b), br(a, c)).swap12().scale(-lam)
    return left_inner - right - outer - rhs


def check_anticom_generic(br: BracketFn, labels: Sequence, lam: Scalar) -> RBReport:
    report = RBReport()
    for a, b in product(labels, repeat=2):
        r = anticom_residual(br, a, b, lam)
        if r:
            report.witnesses.append((a, b, r))
    return report


def check_jacobi_generic(br: BracketFn, labels: Sequence, lam: Scalar) -> RBReport:
    report = RBReport()
    for a, b, c in product(labels, repeat=3):
        r = jacobi_residual(br, a, b, c, lam)
        if r:
            report.witnesses.append((a, b, c, r))
    return report


def check_anticom(B: FiniteBracket, lam: Scalar) -> RBReport:
    return check_anticom_generic(B, range(B.dim), lam)


def check_jacobi(B: FiniteBracket, lam: Scalar) -> RBReport:
    return check_jacobi_generic(B, range(B.dim), lam)


def is_lambda_double_lie(B: FiniteBracket, lam: Scalar) -> bool:
    return check_anticom(B, lam).passed and check_jacobi(B, lam).passed


# -- subspaces and ideals -----------------------------------------------------

class Subspace:
    """Subspace of Q^dim with a reduced-echelon basis."""

    __slots__ = ("dim", "basis", "pivots")

    def __init__(self, dim: int, vectors: Iterable[Sequence[Scalar]] = ()):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in a {dim}-dimensional space")
        self.dim = dim
        self.basis: tuple[tuple[Fraction, ...], ...] = tuple(span_basis(vectors, dim))
        self.pivots = tuple(next(i for i, x in enumerate(v) if x) for v in self.basis)

    @classmethod
    def spanned_by_units(cls, dim: int, indices: Iterable[int]) -> "Subspace":
        vecs = []
        for k in sorted(set(indices)):
            _check_index(dim, k)
            vecs.append(tuple(1 if i == k else 0 for i in range(dim)))
        return cls(dim, vecs)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_whole(self) -> bool:
        return len(self.basis) == self.dim

    def free_coords(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.dim) if i not in piv]

    def project(self, v: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Coordinates of v + U in V/U, indexed by :meth:`free_coords`."""
        v = [Fraction(x) for x in v]
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                for i, x in enumerate(row):
                    if x:
                        v[i] -= f * x
        return tuple(v[i] for i in self.free_coords())

    def __contains__(self, v: Sequence[Scalar]) -> bool:
        return not any(self.project(v))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.basis == other.basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[list(map(str, v)) for v in self.basis]})"


def project_tensor(U: Subspace, t: Tensor) -> Tensor:
    """(pi (x) pi)(t) for the quotient map pi: V -> V/U, in free coordinates."""
    free = U.free_coords()
    images = {}
    for k in range(U.dim):
        img = U.project([1 if i == k else 0 for i in range(U.dim)])
        images[k] = [(free[s], c) for s, c in enumerate(img) if c]
    out = []
    for (p, q), c in t.items():
        for i, ci in images[p]:
            for j, cj in images[q]:
                out.append(((i, j), c * ci * cj))
    return Tensor(2, out)


@dataclass
class IdealCheck:
    """``witness`` is ``(first_arg, second_arg, surviving image)`` for the first
    bracket whose image in V/U (x) V/U is nonzero."""

    is_ideal: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.is_ideal


def is_ideal(B: FiniteBracket, U: Subspace) -> IdealCheck:
    if U.dim != B.dim:
        raise ValueError("subspace and bracket live in different dimensions")
    for u in U.basis:
        for q in range(B.dim):
            f_q = [1 if i == q else 0 for i in range(B.dim)]
            for args in ((u, f_q), (f_q, u)):
                img = project_tensor(U, B.bracket(*args))
                if img:
                    return IdealCheck(False, (tuple(args[0]), tuple(args[1]), img))
    return IdealCheck(True)


class LemmaViolation(RuntimeError):
    """The proper-ideal construction produced a zero, full or non-ideal subspace."""


def proper_ideal_from_rb(R: MatrixOperator, lam: Scalar) -> Subspace:
    """U = I2' V, the span of x v over x in ker(R + lam id) and v in V."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("the construction needs a nonzero weight")
    n = R.n
    I2p = split_spectral(R, lam).I2prime
    cols = [[x[i, j] for i in range(n)] for x in I2p for j in range(n)]
    U = Subspace(n, cols)
    if U.is_zero():
        raise LemmaViolation("I2' V is zero")
    if U.is_whole():
        raise LemmaViolation("I2' V is all of V")
    check = is_ideal(bracket_from_rb(R), U)
    if not check:
        raise LemmaViolation(f"I2' V is not an ideal: {check.witness}")
    return U


def is_homomorphism(B1: FiniteBracket, B2: FiniteBracket, phi: Matrix) -> IdealCheck:
    """(phi (x) phi)[[a,b]]_1 == [[phi a, phi b]]_2 on basis pairs.

    ``phi`` is a B2.dim x B1.dim matrix acting on coordinate columns. Returns
    an :class:`IdealCheck`-shaped result whose witness is ``(p, q, defect)``.
    """
    if phi.shape != (B2.dim, B1.dim):
        raise ValueError("phi has the wrong shape")
    cols = [[phi[i, j] for i in range(B2.dim)] for j in range(B1.dim)]
    for p, q in B1.pairs():
        lhs = []
        for (i, k), c in B1(p, q).items():
            for s, a in enumerate(cols[i]):
                if not a:
                    continue
                for t, b in enumerate(cols[k]):
                    if b:
                        lhs.append(((s, t), c * a * b))
        defect = Tensor(2, lhs) - B2.bracket(cols[p], cols[q])
        if defect:
            return IdealCheck(False, (p, q, defect))
    return IdealCheck(True)
