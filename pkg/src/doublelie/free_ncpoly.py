"""Free associative algebra on a finite alphabet and the extension of a finite
double bracket to it by the two Leibniz rules.

Words are tuples of 0-based letter indices; ``()`` is the unit. The file
format writes letters 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .core_linear import Scalar
from .double_bracket import FiniteBracket

Word = tuple


def _accumulate(items: Iterable[tuple], out: dict | None = None) -> dict:
    out = {} if out is None else out
    for key, c in items:
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


class NCPoly:
    """Finitely supported sum of words with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[Word, Fraction] = _accumulate((tuple(w), Fraction(c)) for w, c in items)

    @classmethod
    def word(cls, *letters: int) -> "NCPoly":
        return cls({tuple(letters): 1})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): 1})

    def items(self):
        return self.terms.items()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly(list(self.terms.items()) + [(w, -c) for w, c in other.terms.items()])

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def scale(self, c: Scalar) -> "NCPoly":
        return NCPoly({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: Union["NCPoly", int, Fraction]) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NCPoly((u + v, a * b) for u, a in self.terms.items() for v, b in other.terms.items())

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{_show(w)}" for w, c in sorted(self.terms.items(), key=_word_order))


def _show(w: Word) -> str:
    return "".join(f"a{x + 1}" for x in w) or "1"


def _word_order(item):
    w = item[0]
    return (len(w), w)


class NCTensor2:
    """Element of A (x) A: a finitely supported map (word, word) -> Q."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[tuple[Word, Word], Fraction] = _accumulate(
            ((tuple(u), tuple(v)), Fraction(c)) for (u, v), c in items)

    def items(self):
        return self.terms.items()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCTensor2") -> "NCTensor2":
        return NCTensor2(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "NCTensor2") -> "NCTensor2":
        return NCTensor2(list(self.terms.items()) + [(k, -c) for k, c in other.terms.items()])

    def scale(self, c: Scalar) -> "NCTensor2":
        return NCTensor2({k: c * v for k, v in self.terms.items()})

    def outer(self, left: tuple[NCPoly, NCPoly], right: tuple[NCPoly, NCPoly]) -> "NCTensor2":
        """(p (x) q) * self * (r (x) s) = sum p u1 r (x) q u2 s."""
        (p, q), (r, s) = left, right
        out = []
        for (u1, u2), c in self.terms.items():
            for wp, cp in p.items():
                for wr, cr in r.items():
                    first = wp + u1 + wr
                    k = c * cp * cr
                    for wq, cq in q.items():
                        for ws, cs in s.items():
                            out.append(((first, wq + u2 + ws), k * cq * cs))
        return NCTensor2(out)

    def mu(self) -> NCPoly:
        """Multiplication map u1 (x) u2 -> u1 u2."""
        return NCPoly((u1 + u2, c) for (u1, u2), c in self.terms.items())

    def swap(self) -> "NCTensor2":
        return NCTensor2({(v, u): c for (u, v), c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCTensor2):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{_show(u)}(x){_show(v)}" for (u, v), c in sorted(self.terms.items()))


ONE = NCPoly.one()


# -- cyclic words -------------------------------------------------------------

def min_rotation(w: Word) -> Word:
    """Lexicographically least rotation (naive scan; words are short)."""
    if len(w) < 2:
        return tuple(w)
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicNF:
    """Element of A/[A,A], keyed by least rotations."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms: dict[Word, Fraction] = _accumulate((min_rotation(tuple(w)), Fraction(c)) for w, c in items)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def as_poly(self) -> NCPoly:
        return NCPoly(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicNF):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"CyclicNF({NCPoly(self.terms)!r})"


def cyclic_reduce(p: NCPoly) -> CyclicNF:
    return CyclicNF(p.terms)


# -- the extended bracket -----------------------------------------------------

class FreeExtension:
    """The double bracket on As<f_0..f_{dim-1}> extending a finite bracket,

        [[x_1..x_k, y_1..y_l]] = sum_{i,j} y_<j [[x_i, y_j]]' x_>i (x) x_<i [[x_i, y_j]]'' y_>j,

    with word-level results cached.
    """

    def __init__(self, B: FiniteBracket):
        self.B = B
        self.dim = B.dim
        self._gen = {(p, q): [((u1,), (u2,), c) for (u1, u2), c in B(p, q).items()]
                     for p, q in B.pairs()}
        self._words: dict[tuple[Word, Word], dict] = {}
        self._curly_words: dict[tuple[Word, Word], dict] = {}

    def _check(self, w: Word) -> None:
        for x in w:
            if not isinstance(x, int) or not 0 <= x < self.dim:
                raise ValueError(f"letter {x!r} out of range for an alphabet of size {self.dim}")

    def word_bracket(self, x: Word, y: Word) -> dict:
        key = (x, y)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        self._check(x)
        self._check(y)
        out: dict = {}
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                for u1, u2, c in self._gen[(xi, yj)]:
                    _accumulate([((y[:j] + u1 + x[i + 1:], x[:i] + u2 + y[j + 1:]), c)], out)
        self._words[key] = out
        return out

    def word_curly(self, x: Word, y: Word) -> dict:
        key = (x, y)
        hit = self._curly_words.get(key)
        if hit is not None:
            return hit
        out = _accumulate((u + v, c) for (u, v), c in self.word_bracket(x, y).items())
        self._curly_words[key] = out
        return out

    def bracket(self, a: NCPoly, b: NCPoly) -> NCTensor2:
        out: dict = {}
        for x, ca in a.items():
            for y, cb in b.items():
                k = ca * cb
                _accumulate(((key, k * c) for key, c in self.word_bracket(x, y).items()), out)
        return NCTensor2(out)

    def curly(self, a: NCPoly, b: NCPoly) -> NCPoly:
        out: dict = {}
        for x, ca in a.items():
            for y, cb in b.items():
                k = ca * cb
                _accumulate(((w, k * c) for w, c in self.word_curly(x, y).items()), out)
        return NCPoly(out)

    def L(self, a: NCPoly, b: NCPoly, c: NCPoly) -> NCPoly:
        """{a,{b,c}} - {b,{a,c}} - {{a,b},c}."""
        return (self.curly(a, self.curly(b, c))
                - self.curly(b, self.curly(a, c))
                - self.curly(self.curly(a, b), c))


def _ext(B: Union[FiniteBracket, FreeExtension]) -> FreeExtension:
    return B if isinstance(B, FreeExtension) else FreeExtension(B)


def extend_bracket(B, a: NCPoly, b: NCPoly) -> NCTensor2:
    return _ext(B).bracket(a, b)


def curly(B, a: NCPoly, b: NCPoly) -> NCPoly:
    """{a, b} = mu([[a, b]])."""
    return _ext(B).curly(a, b)


def check_leibniz(B, a: NCPoly, b: NCPoly, c: NCPoly) -> tuple[NCTensor2, NCTensor2]:
    """Residuals of
    [[a,bc]] = (b(x)1)[[a,c]] + [[a,b]](1(x)c) and
    [[ab,c]] = (1(x)a)[[b,c]] + [[a,c]](b(x)1)."""
    ext = _ext(B)
    r1 = (ext.bracket(a, b * c)
          - ext.bracket(a, c).outer((b, ONE), (ONE, ONE))
          - ext.bracket(a, b).outer((ONE, ONE), (ONE, c)))
    r2 = (ext.bracket(a * b, c)
          - ext.bracket(b, c).outer((ONE, a), (ONE, ONE))
          - ext.bracket(a, c).outer((ONE, ONE), (b, ONE)))
    return r1, r2


def check_a3(B, a: NCPoly, b: NCPoly, c: NCPoly) -> NCPoly:
    return _ext(B).L(a, b, c)


def check_a4(B, a: NCPoly, b: NCPoly) -> CyclicNF:
    ext = _ext(B)
    return cyclic_reduce(ext.curly(a, b) + ext.curly(b, a))


# -- enumeration helpers ------------------------------------------------------

def words(alphabet: int, max_deg: int, min_deg: int = 0) -> Iterator[Word]:
    for d in range(min_deg, max_deg + 1):
        yield from product(range(alphabet), repeat=d)


def parse_word(letters: Sequence[int]) -> Word:
    """1-based letter list -> internal word."""
    return tuple(int(x) - 1 for x in letters)


def format_word(w: Word) -> list[int]:
    return [x + 1 for x in w]
