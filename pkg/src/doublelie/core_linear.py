"""Exact rational matrices and the linear-algebra kernels used everywhere else.

Scalars are :class:`fractions.Fraction`; nothing in this package ever touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class NoSolution(ValueError):
    """Raised by :func:`solve_linear` when the system is inconsistent."""


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Scalar) -> str:
    """``"p/q"`` with the sign on the numerator, or ``"p"`` when q == 1."""
    return str(Fraction(q))


class Matrix:
    """Dense immutable matrix over Q, stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        data = tuple(Fraction(x) for x in entries)
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit e_ij of M_n, 0-based indices."""
        data = [0] * (n * n)
        data[i * n + j] = 1
        return cls(n, n, data)

    @classmethod
    def column(cls, values: Sequence[Scalar]) -> "Matrix":
        return cls(len(values), 1, values)

    # -- access -------------------------------------------------------------

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entries(self) -> tuple[Fraction, ...]:
        return self._data

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero(self):
        """Yield ``(i, j, value)`` for every nonzero entry."""
        c = self.cols
        for k, v in enumerate(self._data):
            if v:
                yield k // c, k % c, v

    def is_zero(self) -> bool:
        return not any(self._data)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, (a - b for a, b in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, (-a for a in self._data))

    def scale(self, c: Scalar) -> "Matrix":
        c = Fraction(c)
        return Matrix(self.rows, self.cols, (c * a for a in self._data))

    def __rmul__(self, c: Scalar) -> "Matrix":
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        m, p = self.rows, other.cols
        out = [Fraction(0)] * (m * p)
        a, b = self._data, other._data
        k_dim = self.cols
        for i in range(m):
            base = i * k_dim
            for k in range(k_dim):
                aik = a[base + k]
                if not aik:
                    continue
                brow = k * p
                for j in range(p):
                    bkj = b[brow + j]
                    if bkj:
                        out[i * p + j] += aik * bkj
        return Matrix(m, p, out)

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      (self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self._data[i * self.cols + i] for i in range(self.rows)), Fraction(0))

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        try:
            return solve_linear(self, Matrix.identity(self.rows), unique=True)
        except NoSolution:
            raise ValueError("matrix is singular") from None

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix([{body}])"


def _rref(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form over the first
    ``ncols`` columns; returns the pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, len(prow)):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(c, len(prow)) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i = rows[i]
                for j in nz:
                    row_i[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    rows = M.to_rows()
    pivots = _rref(rows, M.cols)
    return Matrix.from_rows(rows), pivots


def rank(M: Matrix) -> int:
    return len(_rref(M.to_rows(), M.cols))


def kernel(M: Matrix) -> list[Matrix]:
    """Basis of the nullspace as column vectors, one per free column.

    One vector per free column (zero in the other free columns), scaled so
    its leading nonzero entry is 1; the output is deterministic.
    """
    rows = M.to_rows()
    pivots = _rref(rows, M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * M.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        lead = next(x for x in v if x)
        if lead != 1:
            v = [x / lead for x in v]
        basis.append(Matrix.column(v))
    return basis


def solve_linear(A: Matrix, b: Matrix, unique: bool = False) -> Matrix:
    """One exact solution of ``A @ x == b``; free variables are set to zero.

    ``b`` may have several columns. Raises :class:`NoSolution` if the system
    is inconsistent, or (with ``unique=True``) underdetermined.
    """
    if A.rows != b.rows:
        raise ValueError(f"row mismatch: A has {A.rows}, b has {b.rows}")
    aug = [list(A.row(i)) + list(b.row(i)) for i in range(A.rows)]
    pivots = _rref(aug, A.cols)
    for i in range(len(pivots), A.rows):
        if any(aug[i][A.cols:]):
            raise NoSolution("inconsistent linear system")
    if unique and len(pivots) < A.cols:
        raise NoSolution("linear system has no unique solution")
    x = [[Fraction(0)] * b.cols for _ in range(A.cols)]
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][A.cols:]
    return Matrix.from_rows(x)


def iterated_kernel(M: Matrix, k: int) -> list[Matrix]:
    """Basis of ker(M^k).

    The kernel chain of a square matrix stabilises once two consecutive
    dimensions agree, so large ``k`` stops early.
    """
    if M.rows != M.cols:
        raise ValueError("iterated_kernel needs a square matrix")
    if k < 1:
        raise ValueError("k must be positive")
    power = M
    prev_dim = -1
    for step in range(1, k + 1):
        basis = kernel(power)
        if len(basis) == prev_dim or step == k:
            return basis
        prev_dim = len(basis)
        power = power @ M
    return basis  # pragma: no cover


def span_basis(vectors: Sequence[Sequence[Scalar]], dim: int) -> list[tuple[Fraction, ...]]:
    """Reduced echelon basis for the span of ``vectors`` in Q^dim."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return []
    pivots = _rref(rows, dim)
    return [tuple(rows[i]) for i in range(len(pivots))]
