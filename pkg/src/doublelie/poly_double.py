"""The double brackets M1, M2 (weight 1) and L2 (weight 0) on F[t], realised
on the window of exponents 0..D.

Each bracket is a divided difference N(x, y)/(x - y) with x = t(x)1 and
y = 1(x)t; a key ``(a, b)`` of a 2-tensor stands for t^a (x) t^b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .double_bracket import IdealCheck, anticom_residual, jacobi_residual
from .matrix_rb import RBReport
from .tensors import Tensor


class TruncationOverflow(ArithmeticError):
    """A bracket value would contain an exponent above the truncation degree."""


@dataclass(frozen=True)
class PolyFamily:
    name: str

    @property
    def lam(self) -> Fraction:
        return FAMILY_WEIGHTS[self.name]

    def __post_init__(self):
        if self.name not in FAMILY_WEIGHTS:
            raise ValueError(f"unknown family {self.name!r}; known: {', '.join(FAMILY_WEIGHTS)}")


FAMILY_WEIGHTS = {"M1": Fraction(1), "M2": Fraction(1), "L2": Fraction(0)}

# numerator x^a y^b - x^c y^d as ((a, b), (c, d)).
# M2 is the bracket of the weight-1 operator (P1^psi)^T, i.e. minus the
# usual printed display; the display itself is kept as "M2-printed" and is a
# (-1)-double Lie algebra. "M" is the introduction's display, equal to M1.
_NUMERATORS = {
    "M1": lambda n, m: ((m, n + 1), (n, m + 1)),
    "M2": lambda n, m: ((n + 1, m), (m + 1, n)),
    "L2": lambda n, m: ((n, m), (m, n)),
    "M": lambda n, m: ((m, n + 1), (n, m + 1)),
    "M2-printed": lambda n, m: ((m + 1, n), (n + 1, m)),
}
VARIANT_WEIGHTS = {"M": Fraction(1), "M2-printed": Fraction(-1)}


def numerator(name: str, n: int, m: int) -> dict:
    """Numerator of [[t^n, t^m]] as {(a, b): c}; cancelling terms dropped."""
    plus, minus = _NUMERATORS[name](n, m)
    return {} if plus == minus else {plus: 1, minus: -1}


def divided_difference(a: int, b: int, c: int, d: int) -> dict:
    """(x^a y^b - x^c y^d) / (x - y) for a + b == c + d, as {(i, j): coeff}.

    With k = a - c > 0 the quotient is x^c y^b (x^k - y^k)/(x - y)
    = sum_{s<k} x^{c+s} y^{b+k-1-s}.
    """
    if a + b != c + d:
        raise ValueError("numerator is not homogeneous; x - y does not divide it")
    if a == c:
        return {}
    if a < c:
        return {key: -v for key, v in divided_difference(c, d, a, b).items()}
    k = a - c
    return {(c + s, b + k - 1 - s): 1 for s in range(k)}


def _family_quotient(name: str, n: int, m: int) -> dict:
    (a, b), (c, d) = _NUMERATORS[name](n, m)
    return divided_difference(a, b, c, d)


def poly_bracket(fam: PolyFamily | str, i: int, j: int, D: int) -> Tensor:
    """[[t^i, t^j]] on the window 0..D; ``fam`` may also name a variant."""
    name = fam.name if isinstance(fam, PolyFamily) else fam
    if name not in _NUMERATORS:
        PolyFamily(name)
    if not (0 <= i <= D and 0 <= j <= D):
        raise TruncationOverflow(f"arguments t^{i}, t^{j} outside the window 0..{D}")
    q = _family_quotient(name, i, j)
    if any(a > D or b > D for a, b in q):
        raise TruncationOverflow(f"[[t^{i}, t^{j}]] leaves the window 0..{D}")
    return Tensor(2, q)


def multiply_back(t: Tensor) -> dict:
    """(x - y) * t as {(a, b): c}."""
    out: dict = {}
    for (a, b), c in t.items():
        for key, s in (((a + 1, b), c), ((a, b + 1), -c)):
            v = out.get(key, 0) + s
            if v:
                out[key] = v
            else:
                out.pop(key)
    return out


def _resolve(fam: PolyFamily | str) -> tuple[str, Fraction]:
    if isinstance(fam, PolyFamily):
        return fam.name, fam.lam
    if fam in VARIANT_WEIGHTS:
        return fam, VARIANT_WEIGHTS[fam]
    return fam, PolyFamily(fam).lam


def _bracket_fn(name: str, D: int):
    def br(i, j):
        return poly_bracket(name, i, j, D)
    return br


def check_poly_axioms(fam: PolyFamily | str, D: int, lam=None) -> RBReport:
    """lambda-anticommutativity on all monomial pairs and lambda-Jacobi on all
    monomial triples that stay inside the window; ``lam`` defaults to the
    family's weight. Out-of-window instances are skipped."""
    name, weight = _resolve(fam)
    lam = weight if lam is None else Fraction(lam)
    br = _bracket_fn(name, D)
    report = RBReport()
    labels = range(D + 1)
    for a, b in product(labels, repeat=2):
        try:
            r = anticom_residual(br, a, b, lam)
        except TruncationOverflow:
            continue
        if r:
            report.witnesses.append(("anticom", a, b, r))
    for a, b, c in product(labels, repeat=3):
        try:
            r = jacobi_residual(br, a, b, c, lam)
        except TruncationOverflow:
            continue
        if r:
            report.witnesses.append(("jacobi", a, b, c, r))
    return report


def check_ideal_poly(fam: PolyFamily | str, gens, D: int) -> IdealCheck:
    """Is span{t^g : g in gens} an ideal, judged on the window 0..D?

    Pairs (p, q) with p or q in gens are scanned lexicographically; the
    witness is the first whose bracket survives in V/U (x) V/U.
    """
    name, _ = _resolve(fam)
    gens = {g for g in gens if 0 <= g <= D}
    for p, q in product(range(D + 1), repeat=2):
        if p not in gens and q not in gens:
            continue
        try:
            value = poly_bracket(name, p, q, D)
        except TruncationOverflow:
            continue
        image = Tensor(2, [(k, c) for k, c in value.items() if k[0] not in gens and k[1] not in gens])
        if image:
            return IdealCheck(False, (p, q, image))
    return IdealCheck(True)


def check_shift_iso(fam: PolyFamily | str = "M1", D: int = 12) -> RBReport:
    """(xi (x) xi)[[t^i, t^j]] == [[t^(i+1), t^(j+1)]] for xi(t^k) = t^(k+1)."""
    name, _ = _resolve(fam)
    report = RBReport()
    for i, j in product(range(D), repeat=2):
        try:
            lhs = poly_bracket(name, i, j, D).map_slots(lambda k: k + 1)
            rhs = poly_bracket(name, i + 1, j + 1, D)
        except TruncationOverflow:
            continue
        if lhs != rhs:
            report.witnesses.append((i, j, lhs - rhs))
    return report
