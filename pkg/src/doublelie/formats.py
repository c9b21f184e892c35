"""JSON file formats for operators, brackets, tensors and noncommutative
polynomials. All indices are 1-based on disk; rationals are "p/q" strings.

Loaders raise :class:`FormatError` naming the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core_linear import Matrix, format_rational, parse_rational
from .double_bracket import FiniteBracket
from .free_ncpoly import NCPoly
from .matrix_rb import MatrixOperator
from .tensors import Tensor


class FormatError(ValueError):
    pass


def _field(obj: dict, name: str, where: str) -> Any:
    if not isinstance(obj, dict) or name not in obj:
        raise FormatError(f"{where}: missing field {name!r}")
    return obj[name]


def _int(x, where: str, lo: int = 1, hi: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{where}: expected an integer, got {x!r}")
    if x < lo or (hi is not None and x > hi):
        raise FormatError(f"{where}: index {x} out of range {lo}..{hi}")
    return x


def _rat(x, where: str) -> Fraction:
    try:
        return parse_rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: bad rational {x!r}") from exc


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{where}: expected a list")
    return x


# -- operators ----------------------------------------------------------------

def operator_to_json(R: MatrixOperator) -> dict:
    n = R.n
    entries = []
    for i in range(n):
        for j in range(n):
            to = [[format_rational(c), k + 1, l + 1] for k, l, c in R.value(i, j).nonzero()]
            if to:
                entries.append({"from": [i + 1, j + 1], "to": to})
    return {"n": n, "entries": entries}


def operator_from_json(obj: dict) -> MatrixOperator:
    n = _int(_field(obj, "n", "operator"), "operator.n")
    data = {(i, j): [Fraction(0)] * (n * n) for i in range(n) for j in range(n)}
    seen = set()
    for e, entry in enumerate(_list(_field(obj, "entries", "operator"), "operator.entries")):
        where = f"operator.entries[{e}]"
        src = _list(_field(entry, "from", where), f"{where}.from")
        if len(src) != 2:
            raise FormatError(f"{where}.from: expected [i, j]")
        i, j = (_int(x, f"{where}.from", 1, n) - 1 for x in src)
        if (i, j) in seen:
            raise FormatError(f"{where}.from: unit {src} listed twice")
        seen.add((i, j))
        for t, term in enumerate(_list(_field(entry, "to", where), f"{where}.to")):
            tw = f"{where}.to[{t}]"
            if not isinstance(term, list) or len(term) != 3:
                raise FormatError(f"{tw}: expected [coeff, k, l]")
            c = _rat(term[0], tw)
            k, l = (_int(x, tw, 1, n) - 1 for x in term[1:])
            data[(i, j)][k * n + l] += c
    return MatrixOperator(n, {key: Matrix(n, n, v) for key, v in data.items()})


# -- brackets -----------------------------------------------------------------

def bracket_to_json(B: FiniteBracket, lam=None) -> dict:
    table = []
    for p, q in sorted(B.pairs()):
        value = [[format_rational(c), k + 1, l + 1] for (k, l), c in B(p, q).sorted_terms()]
        if value:
            table.append({"args": [p + 1, q + 1], "value": value})
    out: dict = {"dim": B.dim}
    if lam is not None:
        out["lambda"] = format_rational(lam)
    out["table"] = table
    return out


def bracket_from_json(obj: dict) -> tuple[FiniteBracket, Fraction | None]:
    dim = _int(_field(obj, "dim", "bracket"), "bracket.dim")
    lam = _rat(obj["lambda"], "bracket.lambda") if "lambda" in obj else None
    table: dict = {}
    for e, entry in enumerate(_list(_field(obj, "table", "bracket"), "bracket.table")):
        where = f"bracket.table[{e}]"
        args = _list(_field(entry, "args", where), f"{where}.args")
        if len(args) != 2:
            raise FormatError(f"{where}.args: expected [p, q]")
        p, q = (_int(x, f"{where}.args", 1, dim) - 1 for x in args)
        if (p, q) in table:
            raise FormatError(f"{where}.args: pair {args} listed twice")
        terms = []
        for t, term in enumerate(_list(_field(entry, "value", where), f"{where}.value")):
            tw = f"{where}.value[{t}]"
            if not isinstance(term, list) or len(term) != 3:
                raise FormatError(f"{tw}: expected [coeff, k, l]")
            terms.append(((_int(term[1], tw, 1, dim) - 1, _int(term[2], tw, 1, dim) - 1), _rat(term[0], tw)))
        table[(p, q)] = Tensor(2, terms)
    return FiniteBracket(dim, table), lam


# -- tensors ------------------------------------------------------------------

def tensor_to_json(r: Tensor, n: int) -> dict:
    terms = [[format_rational(c), i + 1, j + 1, k + 1, l + 1] for ((i, j), (k, l)), c in r.sorted_terms()]
    return {"n": n, "terms": terms}


def tensor_from_json(obj: dict) -> tuple[Tensor, int]:
    n = _int(_field(obj, "n", "tensor"), "tensor.n")
    terms = []
    for t, term in enumerate(_list(_field(obj, "terms", "tensor"), "tensor.terms")):
        tw = f"tensor.terms[{t}]"
        if not isinstance(term, list) or len(term) != 5:
            raise FormatError(f"{tw}: expected [coeff, i, j, k, l]")
        i, j, k, l = (_int(x, tw, 1, n) - 1 for x in term[1:])
        terms.append((((i, j), (k, l)), _rat(term[0], tw)))
    return Tensor(2, terms), n


# -- noncommutative polynomials -----------------------------------------------

def ncpoly_to_json(p: NCPoly) -> dict:
    items = sorted(p.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return {"terms": [[format_rational(c), [x + 1 for x in w]] for w, c in items]}


def ncpoly_from_json(obj: dict, alphabet: int | None = None) -> NCPoly:
    terms = []
    for t, term in enumerate(_list(_field(obj, "terms", "ncpoly"), "ncpoly.terms")):
        tw = f"ncpoly.terms[{t}]"
        if not isinstance(term, list) or len(term) != 2:
            raise FormatError(f"{tw}: expected [coeff, word]")
        word = tuple(_int(x, tw, 1, alphabet) - 1 for x in _list(term[1], f"{tw}.word"))
        terms.append((word, _rat(term[0], tw)))
    return NCPoly(terms)


def nctensor_to_json(t) -> dict:
    items = sorted(t.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]))
    return {"terms": [[format_rational(c), [x + 1 for x in u], [x + 1 for x in v]] for (u, v), c in items]}


# -- io -----------------------------------------------------------------------

def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
