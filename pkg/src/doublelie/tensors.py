"""Finitely supported rational tensors keyed by index tuples.

One small class serves V(x)V, V(x)V(x)V, M_n(x)M_n and F[t](x)F[t]: a key is a
tuple with one entry per tensor slot, and a slot entry is whatever labels a
basis vector there (an int, a matrix unit ``(i, j)``, an exponent).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping


class Tensor:
    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple, object] | Iterable[tuple[tuple, object]] = ()):
        self.arity = arity
        out: dict[tuple, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            if len(key) != arity:
                raise ValueError(f"key {key!r} does not have {arity} slots")
            v = out.get(key, 0) + Fraction(c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        self.terms = out

    @classmethod
    def basis(cls, *slots: Hashable) -> "Tensor":
        return cls(len(slots), {tuple(slots): 1})

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, *key) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))

    def _check(self, other: "Tensor") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.arity, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.arity, list(self.terms.items()) + [(k, -c) for k, c in other.terms.items()])

    def __neg__(self) -> "Tensor":
        return Tensor(self.arity, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "Tensor":
        c = Fraction(c)
        return Tensor(self.arity, {k: c * v for k, v in self.terms.items()} if c else {})

    def permute(self, perm: tuple[int, ...]) -> "Tensor":
        """Move slot ``perm[s]`` into slot ``s``; ``(1, 0)`` is the flip."""
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"{perm!r} is not a permutation of the slots")
        return Tensor(self.arity, {tuple(k[p] for p in perm): c for k, c in self.terms.items()})

    def swap12(self) -> "Tensor":
        return self.permute((1, 0) + tuple(range(2, self.arity)))

    def swap23(self) -> "Tensor":
        if self.arity < 3:
            raise ValueError("swap23 needs at least three slots")
        return self.permute((0, 2, 1) + tuple(range(3, self.arity)))

    def map_slots(self, f) -> "Tensor":
        """Apply ``f`` to every slot label; ``f`` may return None to drop the term."""
        out = []
        for k, c in self.terms.items():
            new = tuple(f(x) for x in k)
            if None not in new:
                out.append((new, c))
        return Tensor(self.arity, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*" + "(x)".join(map(_label, k)) for k, c in self.sorted_terms())


def _label(x) -> str:
    return str(x)


def tensor_product(a: Tensor, b: Tensor) -> Tensor:
    return Tensor(a.arity + b.arity,
                  [(ka + kb, ca * cb) for ka, ca in a.items() for kb, cb in b.items()])
