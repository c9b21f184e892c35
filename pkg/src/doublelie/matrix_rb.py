"""Linear operators on M_n(Q): Rota-Baxter identity, trace form, adjoints,
lambda-skew-symmetry, the operator catalog and the spectral splitting.

Matrix units are indexed 0-based internally (``e(i, j)`` with unit index
``i*n + j``); the file format and the catalog formulas are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator

from .core_linear import Matrix, Scalar, iterated_kernel, kernel

Sparse = dict  # {(i, j): Fraction}, nonzero entries only


@dataclass
class RBReport:
    """Outcome of an exhaustive identity check.

    ``witnesses`` holds ``(index..., defect)`` tuples for every failing basis
    tuple, in lexicographic order.
    """

    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.passed


# -- sparse helpers -----------------------------------------------------------

def _sparse(x: Matrix) -> Sparse:
    return {(i, j): v for i, j, v in x.nonzero()}


def _dense(n: int, s: Sparse) -> Matrix:
    data = [0] * (n * n)
    for (i, j), v in s.items():
        data[i * n + j] = v
    return Matrix(n, n, data)


def _acc(out: Sparse, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _smul(a: Sparse, b: Sparse) -> Sparse:
    by_row: dict[int, list] = {}
    for (k, j), v in b.items():
        by_row.setdefault(k, []).append((j, v))
    out: Sparse = {}
    for (i, k), u in a.items():
        for j, v in by_row.get(k, ()):
            _acc(out, (i, j), u * v)
    return out


def _sadd(*terms: tuple[Scalar, Sparse]) -> Sparse:
    out: Sparse = {}
    for c, s in terms:
        if not c:
            continue
        for key, v in s.items():
            _acc(out, key, c * v)
    return out


# -- the operator type --------------------------------------------------------

class MatrixOperator:
    """A linear operator on M_n, given by its values on the matrix units."""

    __slots__ = ("n", "values", "_sparse_values")

    def __init__(self, n: int, values):
        """``values`` is a sequence of n*n matrices (unit order ``i*n + j``)
        or a mapping ``(i, j) -> Matrix`` with omitted units sent to zero."""
        if n < 1:
            raise ValueError("n must be positive")
        if isinstance(values, dict):
            zero = Matrix.zeros(n)
            table = [values.get((i, j), zero) for i in range(n) for j in range(n)]
        else:
            table = list(values)
        if len(table) != n * n:
            raise ValueError(f"operator on M_{n} needs {n * n} values")
        for v in table:
            if v.shape != (n, n):
                raise ValueError(f"operator value has shape {v.shape}, expected {(n, n)}")
        self.n = n
        self.values: tuple[Matrix, ...] = tuple(table)
        self._sparse_values = [_sparse(v) for v in self.values]

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], Matrix]) -> "MatrixOperator":
        return cls(n, [f(i, j) for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, n: int) -> "MatrixOperator":
        return cls(n, [Matrix.zeros(n)] * (n * n))

    @classmethod
    def identity(cls, n: int) -> "MatrixOperator":
        return cls.from_function(n, lambda i, j: Matrix.unit(n, i, j))

    @classmethod
    def from_matrix(cls, n: int, M: Matrix) -> "MatrixOperator":
        """Inverse of :meth:`to_matrix`."""
        N = n * n
        if M.shape != (N, N):
            raise ValueError(f"expected a {N}x{N} matrix")
        return cls(n, [Matrix(n, n, (M[r, c] for r in range(N))) for c in range(N)])

    def value(self, i: int, j: int) -> Matrix:
        return self.values[i * self.n + j]

    def to_matrix(self) -> Matrix:
        """The N x N matrix (N = n^2) whose column ``i*n+j`` is vec(R(e_ij))."""
        N = self.n * self.n
        return Matrix(N, N, (self.values[c].entries()[r] for r in range(N) for c in range(N)))

    def _apply_sparse(self, x: Sparse) -> Sparse:
        n = self.n
        out: Sparse = {}
        for (i, j), c in x.items():
            for key, v in self._sparse_values[i * n + j].items():
                _acc(out, key, c * v)
        return out

    def __call__(self, x: Matrix) -> Matrix:
        return apply(self, x)

    def __add__(self, other: "MatrixOperator") -> "MatrixOperator":
        _same_n(self, other)
        return MatrixOperator(self.n, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "MatrixOperator") -> "MatrixOperator":
        _same_n(self, other)
        return MatrixOperator(self.n, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "MatrixOperator":
        return MatrixOperator(self.n, [-a for a in self.values])

    def scale(self, c: Scalar) -> "MatrixOperator":
        return MatrixOperator(self.n, [a.scale(c) for a in self.values])

    def compose(self, other: "MatrixOperator") -> "MatrixOperator":
        """self o other."""
        _same_n(self, other)
        return MatrixOperator(self.n, [apply(self, v) for v in other.values])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixOperator):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    def __repr__(self) -> str:
        parts = []
        for i in range(self.n):
            for j in range(self.n):
                v = self.value(i, j)
                if not v.is_zero():
                    parts.append(f"e{i + 1}{j + 1}->{_fmt(v)}")
        return f"MatrixOperator(n={self.n}, {', '.join(parts) or '0'})"


def _fmt(x: Matrix) -> str:
    terms = []
    for i, j, v in x.nonzero():
        terms.append(f"{v}*e{i + 1}{j + 1}")
    return " + ".join(terms) or "0"


def _same_n(a: MatrixOperator, b: MatrixOperator) -> None:
    if a.n != b.n:
        raise ValueError(f"operators on M_{a.n} and M_{b.n}")


def units(n: int) -> Iterator[tuple[int, int]]:
    for i in range(n):
        for j in range(n):
            yield i, j


# -- operations ---------------------------------------------------------------

def apply(R: MatrixOperator, x: Matrix) -> Matrix:
    if x.shape != (R.n, R.n):
        raise ValueError(f"operator on M_{R.n} applied to a {x.shape} matrix")
    return _dense(R.n, R._apply_sparse(_sparse(x)))


def rb_defect(R: MatrixOperator, lam: Scalar, x: Matrix, y: Matrix) -> Matrix:
    """R(x)R(y) - R(R(x)y + xR(y) + lam*xy)."""
    return _dense(R.n, _rb_defect_sparse(R, Fraction(lam), _sparse(x), _sparse(y)))


def _rb_defect_sparse(R: MatrixOperator, lam: Fraction, x: Sparse, y: Sparse) -> Sparse:
    Rx = R._apply_sparse(x)
    Ry = R._apply_sparse(y)
    inner = _sadd((1, _smul(Rx, y)), (1, _smul(x, Ry)), (lam, _smul(x, y)))
    return _sadd((1, _smul(Rx, Ry)), (-1, R._apply_sparse(inner)))


def is_rb(R: MatrixOperator, lam: Scalar) -> RBReport:
    """Check the Rota-Baxter identity of weight ``lam`` on all pairs of
    matrix units; bilinearity makes this equivalent to all x, y."""
    lam = Fraction(lam)
    n = R.n
    report = RBReport()
    for a in units(n):
        x = {a: Fraction(1)}
        for b in units(n):
            d = _rb_defect_sparse(R, lam, x, {b: Fraction(1)})
            if d:
                report.witnesses.append((a, b, _dense(n, d)))
    return report


def trace_pairing(x: Matrix, y: Matrix) -> Fraction:
    """tr(xy), computed without forming the product."""
    if x.rows != y.cols or x.cols != y.rows:
        raise ValueError(f"cannot pair {x.shape} with {y.shape}")
    return sum((v * y[j, i] for i, j, v in x.nonzero()), Fraction(0))


def dual_unit(n: int, i: int, j: int) -> Matrix:
    """Trace-form dual of e_ij, which is e_ji."""
    return Matrix.unit(n, j, i)


def adjoint(R: MatrixOperator) -> MatrixOperator:
    """Adjoint relative to the trace form: <R(x), y> = <x, R*(y)>.

    Since the dual of e_ij is e_ji, R*(y) = sum_ij <R(e_ij), y> e_ji.
    """
    n = R.n

    def value(k: int, l: int) -> Matrix:
        y = Matrix.unit(n, k, l)
        data = [Fraction(0)] * (n * n)
        for i, j in units(n):
            c = trace_pairing(R.value(i, j), y)
            if c:
                data[j * n + i] += c
        return Matrix(n, n, data)

    return MatrixOperator.from_function(n, value)


def theta(R: MatrixOperator, lam: Scalar) -> MatrixOperator:
    """theta_R = R + R* + lam*id."""
    lam = Fraction(lam)
    return R + adjoint(R) + MatrixOperator.identity(R.n).scale(lam)


def is_lambda_skew(R: MatrixOperator, lam: Scalar) -> RBReport:
    """R(a) + R*(a) + lam*a == lam*tr(a)*E on every unit; witnesses carry
    the defect theta_R(e_ij) - lam*tr(e_ij)*E."""
    lam = Fraction(lam)
    n = R.n
    th = theta(R, lam)
    E = Matrix.identity(n)
    report = RBReport()
    for i, j in units(n):
        target = E.scale(lam) if i == j else Matrix.zeros(n)
        d = th.value(i, j) - target
        if not d.is_zero():
            report.witnesses.append(((i, j), d))
    return report


# -- catalog ------------------------------------------------------------------

def _diag_tail(n: int, i: int) -> Matrix:
    """sum_{k>=1} e_{i+k, i+k} truncated at n (1-based i)."""
    return _from_units(n, [(1, i + k, i + k) for k in range(1, n - i + 1)])


def _from_units(n: int, terms) -> Matrix:
    """Matrix from ``(coeff, i, j)`` with 1-based indices; out-of-range units
    contribute nothing."""
    data = [Fraction(0)] * (n * n)
    for c, i, j in terms:
        if 1 <= i <= n and 1 <= j <= n:
            data[(i - 1) * n + (j - 1)] += c
    return Matrix(n, n, data)


def _ex1(n: int) -> MatrixOperator:
    def value(i, j):
        i, j = i + 1, j + 1
        if i < j:
            return _from_units(n, [(-1, i, j)])
        if i > j:
            return Matrix.zeros(n)
        return _diag_tail(n, i)
    return MatrixOperator.from_function(n, value)


def _ex2(n: int) -> MatrixOperator:
    def value(i, j):
        i, j = i + 1, j + 1
        if i < j:
            return Matrix.zeros(n)
        if i > j:
            return _from_units(n, [(-1, i, j)])
        return _diag_tail(n, i)
    return MatrixOperator.from_function(n, value)


def _ex3(n: int) -> MatrixOperator:
    if n != 3:
        raise ValueError("catalog operator 'ex3' lives on M_3 only")
    # e_23 -> e_23 and e_32 -> 0: this is the assignment whose bracket is
    # Arthamonov's table; the swapped assignment gives a different bracket.
    table = {
        (2, 1): [(1, 2, 1)],
        (3, 1): [(1, 3, 1)],
        (2, 3): [(1, 2, 3)],
        (1, 1): [(-1, 2, 2)],
        (3, 3): [(-1, 1, 1), (-1, 2, 2)],
    }
    return MatrixOperator(3, {(i - 1, j - 1): _from_units(3, t) for (i, j), t in table.items()})


def _ex4(n: int) -> MatrixOperator:
    def value(i, j):
        i, j = i + 1, j + 1
        if i >= j:
            return _from_units(n, [(1, i + k, j + k) for k in range(1, n + 1)])
        return _from_units(n, [(-1, i - k, j - k) for k in range(0, n + 1)])
    return MatrixOperator.from_function(n, value)


CATALOG: dict[str, tuple[Callable[[int], MatrixOperator], Fraction, str]] = {
    "ex1": (_ex1, Fraction(1), "upper-triangular splitting, weight 1"),
    "ex2": (_ex2, Fraction(1), "transpose companion of ex1, weight 1"),
    "ex3": (_ex3, Fraction(-1), "Arthamonov's operator on M_3, weight -1"),
    "ex4": (_ex4, Fraction(1), "diagonal-shift operator P_1, weight 1"),
}


def catalog(name: str, n: int) -> MatrixOperator:
    try:
        build = CATALOG[name][0]
    except KeyError:
        raise ValueError(f"unknown catalog operator {name!r}; known: {', '.join(CATALOG)}") from None
    if n < 2:
        raise ValueError("catalog operators need n >= 2")
    return build(n)


def catalog_weight(name: str) -> Fraction:
    """The weight lambda at which the catalog operator is a lambda-skew RB-operator."""
    return CATALOG[name][1]


# -- transforms ---------------------------------------------------------------

def tilde(R: MatrixOperator, lam: Scalar) -> MatrixOperator:
    """-R - lam*id."""
    return -R - MatrixOperator.identity(R.n).scale(lam)


def conjugate(R: MatrixOperator, g: Matrix) -> MatrixOperator:
    """psi^{-1} R psi for the automorphism psi(x) = g x g^{-1}."""
    n = R.n
    if g.shape != (n, n):
        raise ValueError("conjugating matrix has the wrong size")
    g_inv = g.inverse()
    return MatrixOperator.from_function(
        n, lambda i, j: g_inv @ apply(R, g @ Matrix.unit(n, i, j) @ g_inv) @ g)


def transpose_conjugate(R: MatrixOperator) -> MatrixOperator:
    """R^(T)(x) = R(x^T)^T, conjugation by the transpose anti-automorphism."""
    return MatrixOperator.from_function(R.n, lambda i, j: R.value(j, i).transpose())


def skew_companion(R: MatrixOperator, lam: Scalar) -> MatrixOperator:
    """x -> -R(x) - lam*x + lam*tr(x)*E."""
    lam = Fraction(lam)
    n = R.n
    E = Matrix.identity(n)
    base = tilde(R, lam)
    return MatrixOperator.from_function(
        n, lambda i, j: base.value(i, j) + (E.scale(lam) if i == j else Matrix.zeros(n)))


TRANSFORMS = ("tilde", "conj", "transpose", "adjoint-skew")


def transform(R: MatrixOperator, kind: str, lam: Scalar = 0, psi: Matrix | None = None) -> MatrixOperator:
    if kind == "tilde":
        return tilde(R, lam)
    if kind == "conj":
        if psi is None:
            raise ValueError("conj transform needs psi")
        return conjugate(R, psi)
    if kind == "transpose":
        return transpose_conjugate(R)
    if kind == "adjoint-skew":
        return skew_companion(R, lam)
    raise ValueError(f"unknown transform {kind!r}; known: {', '.join(TRANSFORMS)}")


# -- spectral splitting -------------------------------------------------------

def _vec_to_matrix(n: int, v: Matrix) -> Matrix:
    return Matrix(n, n, v.entries())


@dataclass
class SpectralSplit:
    I1: list[Matrix]
    I2: list[Matrix]
    I2prime: list[Matrix]

    def __iter__(self):
        return iter((self.I1, self.I2, self.I2prime))


def split_spectral(R: MatrixOperator, lam: Scalar) -> SpectralSplit:
    """I1 = ker R^N, I2 = ker (R + lam id)^N, I2' = ker (R + lam id), N = n^2.

    Raises ``ArithmeticError`` if I1 and I2 do not fill M_n, which happens
    exactly when R has an eigenvalue outside {0, -lam}.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("split_spectral needs a nonzero weight")
    n = R.n
    N = n * n
    M = R.to_matrix()
    shifted = M + Matrix.identity(N).scale(lam)
    I1 = [_vec_to_matrix(n, v) for v in iterated_kernel(M, N)]
    I2 = [_vec_to_matrix(n, v) for v in iterated_kernel(shifted, N)]
    I2p = [_vec_to_matrix(n, v) for v in kernel(shifted)]
    if len(I1) + len(I2) != N:
        raise ArithmeticError(
            f"spectral subspaces have dimensions {len(I1)} + {len(I2)} != {N}")
    return SpectralSplit(I1, I2, I2p)


def random_operator(n: int, rng, density: float = 0.3, span: int = 3) -> MatrixOperator:
    """Sparse operator with small integer entries; used by the test-suite."""
    def value(i, j):
        return Matrix(n, n, (rng.randint(-span, span) if rng.random() < density else 0
                             for _ in range(n * n)))
    return MatrixOperator.from_function(n, value)

