"""Command-line front end: ``python -m doublelie <group> <command> [flags]``.

Checks print a JSON report and exit 0 (passed) or 1 (failed); conversions
print the converted file. Usage and input errors exit 2. Output is
deterministic unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from . import aybe, double_bracket as db, double_construction as dc, free_ncpoly as fp, poly_double as pd
from .core_linear import Matrix, format_rational, parse_rational
from .formats import (FormatError, bracket_from_json, bracket_to_json, dumps, load, nctensor_to_json,
                      operator_from_json, operator_to_json, tensor_from_json, tensor_to_json)
from .matrix_rb import CATALOG, catalog, catalog_weight, is_lambda_skew, is_rb, split_spectral

MAX_WITNESSES = 10


class UsageError(Exception):
    pass


# -- rendering ----------------------------------------------------------------

def _q(x) -> str:
    return format_rational(x)


def _mat(m: Matrix) -> list:
    return [[_q(x) for x in row] for row in m.to_rows()]


def _unit(u) -> list:
    return [u[0] + 1, u[1] + 1]


def _tensor(t, label=lambda x: x + 1) -> list:
    out = []
    for key, c in t.sorted_terms():
        out.append([_q(c)] + [label(x) for x in key])
    return out


def _emit(args, report: dict, passed: bool | None = None) -> int:
    if passed is not None:
        report["passed"] = passed
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - args._t0, 3)
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if passed is None:
        return 0
    return 0 if passed else 1


def _report(args, witnesses: list, **extra) -> dict:
    rep = {"command": f"{args.group} {args.cmd}", "args": _echo(args)}
    rep.update(extra)
    rep["witness_count"] = len(witnesses)
    rep["witnesses"] = witnesses[:MAX_WITNESSES]
    return rep


_SOURCE = ("catalog", "n", "inp", "lam")
_ECHO = {
    "rb": _SOURCE, "aybe": _SOURCE, "double": _SOURCE,
    "bracket": _SOURCE + ("span",),
    "free": _SOURCE + ("max_deg", "triple_deg", "left", "right"),
    "poly": ("family", "truncate", "lam", "i", "j", "gens"),
    "catalog": (),
}


def _echo(args) -> dict:
    keep = {}
    for k in sorted(_ECHO[args.group]):
        v = getattr(args, k)
        if v is not None and v != "":
            keep[k] = v
    return keep


# -- inputs -------------------------------------------------------------------

def _lambda(args, default=None) -> Fraction:
    if args.lam is not None:
        try:
            return parse_rational(args.lam)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"--lambda: bad rational {args.lam!r}") from exc
    if default is not None:
        return Fraction(default)
    if getattr(args, "catalog", None):
        return catalog_weight(args.catalog)
    raise UsageError("--lambda is required for this input")


def _operator(args):
    if args.inp:
        return operator_from_json(load(args.inp))
    if args.catalog:
        if args.n is None:
            raise UsageError("--catalog needs --n")
        return catalog(args.catalog, args.n)
    raise UsageError("give --in FILE or --catalog NAME --n N")


def _bracket(args):
    """(bracket, lambda-or-None) from --in or from a catalog operator."""
    if args.inp:
        return bracket_from_json(load(args.inp))
    if args.catalog:
        n = args.n if args.n is not None else (3 if args.catalog == "ex3" else None)
        if n is None:
            raise UsageError("--catalog needs --n")
        return db.bracket_from_rb(catalog(args.catalog, n)), catalog_weight(args.catalog)
    raise UsageError("give --in FILE or --catalog NAME --n N")


def _tensor_in(args):
    if args.inp:
        return tensor_from_json(load(args.inp))
    R = _operator(args)
    return aybe.tensor_from_rb(R), R.n


def _indices(text: str, lo: int, hi: int) -> list[int]:
    """'1,3,5' or '2..7' (inclusive) -> list of ints."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            raise UsageError(f"bad index list {text!r}") from exc
    for x in out:
        if not lo <= x <= hi:
            raise UsageError(f"index {x} outside {lo}..{hi}")
    return out


# -- rb -----------------------------------------------------------------------

def cmd_rb_check(args) -> int:
    R = _operator(args)
    lam = _lambda(args)
    rep = is_rb(R, lam)
    w = [{"x": _unit(a), "y": _unit(b), "defect": _mat(d)} for a, b, d in rep.witnesses]
    return _emit(args, _report(args, w, **{"lambda": _q(lam)}), rep.passed)


def cmd_rb_skew(args) -> int:
    R = _operator(args)
    lam = _lambda(args)
    rep = is_lambda_skew(R, lam)
    w = [{"unit": _unit(u), "defect": _mat(d)} for u, d in rep.witnesses]
    return _emit(args, _report(args, w, **{"lambda": _q(lam)}), rep.passed)


def cmd_rb_to_bracket(args) -> int:
    R = _operator(args)
    lam = _lambda(args) if (args.lam or args.catalog) else None
    return _emit(args, bracket_to_json(db.bracket_from_rb(R), lam))


def cmd_rb_to_aybe(args) -> int:
    R = _operator(args)
    return _emit(args, tensor_to_json(aybe.tensor_from_rb(R), R.n))


def cmd_rb_split(args) -> int:
    R = _operator(args)
    lam = _lambda(args)
    if lam == 0:
        raise UsageError("split needs a nonzero --lambda")
    try:
        s = split_spectral(R, lam)
    except ArithmeticError as exc:
        rep = _report(args, [str(exc)], **{"lambda": _q(lam)})
        return _emit(args, rep, False)
    rep = _report(args, [], **{"lambda": _q(lam), "I1": [_mat(x) for x in s.I1],
                                "I2": [_mat(x) for x in s.I2], "I2prime": [_mat(x) for x in s.I2prime]})
    return _emit(args, rep, True)


# -- bracket ------------------------------------------------------------------

def cmd_bracket_check(args) -> int:
    B, file_lam = _bracket(args)
    lam = _lambda(args, file_lam)
    w = []
    for kind, rep in (("anticom", db.check_anticom(B, lam)), ("jacobi", db.check_jacobi(B, lam))):
        for wit in rep.witnesses:
            *labels, res = wit
            w.append({"axiom": kind, "args": [x + 1 for x in labels], "residual": _tensor(res)})
    return _emit(args, _report(args, w, **{"lambda": _q(lam)}), not w)


def cmd_bracket_to_rb(args) -> int:
    B, _ = _bracket(args)
    try:
        R = db.rb_from_bracket(B)
    except ValueError as exc:
        raise UsageError(f"bracket is not of operator form: {exc}") from exc
    return _emit(args, operator_to_json(R))


def cmd_bracket_ideal(args) -> int:
    B, lam = _bracket(args)
    if args.span:
        U = db.Subspace.spanned_by_units(B.dim, [k - 1 for k in _indices(args.span, 1, B.dim)])
    elif args.catalog:
        U = db.proper_ideal_from_rb(catalog(args.catalog, B.dim), _lambda(args, lam))
    else:
        raise UsageError("give --span (1-based basis indices) or use --catalog for the canonical ideal")
    res = db.is_ideal(B, U)
    w = []
    if not res.is_ideal:
        a, b, img = res.witness
        w.append({"left": [_q(x) for x in a], "right": [_q(x) for x in b], "image": _tensor(img)})
    rep = _report(args, w, span=[[_q(x) for x in v] for v in U.basis])
    return _emit(args, rep, res.is_ideal)


# -- aybe ---------------------------------------------------------------------

def cmd_aybe_check(args) -> int:
    r, n = _tensor_in(args)
    if args.lam is not None:
        w_ = _lambda(args)
    elif args.catalog and not args.inp:
        w_ = aybe.aybe_weight(catalog_weight(args.catalog))
    else:
        raise UsageError("--lambda (the AYBE weight) is required")
    rep = aybe.check_aybe(r, n, w_)
    w = [{"residual": _tensor(res, _unit)} for (res,) in rep.witnesses]
    return _emit(args, _report(args, w, weight=_q(w_)), rep.passed)


def cmd_aybe_to_rb(args) -> int:
    r, n = _tensor_in(args)
    return _emit(args, operator_to_json(aybe.rb_from_tensor(r, n)))


# -- free ---------------------------------------------------------------------

def _word(text: str, dim: int) -> tuple:
    if not text.strip():
        return ()
    return tuple(k - 1 for k in _indices(text, 1, dim))


def cmd_free_extend(args) -> int:
    B, _ = _bracket(args)
    a, b = _word(args.left, B.dim), _word(args.right, B.dim)
    t = fp.extend_bracket(B, fp.NCPoly({a: 1}), fp.NCPoly({b: 1}))
    rep = {"command": "free extend", "args": _echo(args), "value": nctensor_to_json(t)["terms"]}
    return _emit(args, rep)


def _mdp_worker(table_json: dict, firsts: list, triple_deg: int, pair_deg: int) -> list:
    """Failures among (a3)/Leibniz triples and (a4) pairs whose first word is
    in ``firsts``."""
    B, _ = bracket_from_json(table_json)
    ext = fp.FreeExtension(B)
    ws3 = list(fp.words(B.dim, triple_deg))
    ws2 = list(fp.words(B.dim, pair_deg))
    out = []
    for a in firsts:
        pa = fp.NCPoly({a: 1})
        if len(a) <= triple_deg:
            for b, c in product(ws3, repeat=2):
                pb, pc = fp.NCPoly({b: 1}), fp.NCPoly({c: 1})
                if ext.L(pa, pb, pc):
                    out.append(("a3", a, b, c))
                r1, r2 = fp.check_leibniz(ext, pa, pb, pc)
                if r1 or r2:
                    out.append(("leibniz", a, b, c))
        if len(a) <= pair_deg:
            for b in ws2:
                if fp.check_a4(ext, pa, fp.NCPoly({b: 1})):
                    out.append(("a4", a, b))
    return out


def cmd_free_check_mdp(args) -> int:
    B, file_lam = _bracket(args)
    lam = _lambda(args, file_lam)
    pair_deg = args.max_deg if args.max_deg is not None else 4
    triple_deg = args.triple_deg if args.triple_deg is not None else min(pair_deg, 2)
    firsts = list(fp.words(B.dim, max(triple_deg, pair_deg)))
    tj = bracket_to_json(B)
    jobs = max(1, args.jobs)
    if jobs == 1:
        found = _mdp_worker(tj, firsts, triple_deg, pair_deg)
    else:
        chunks = [firsts[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_mdp_worker, [tj] * jobs, chunks, [triple_deg] * jobs, [pair_deg] * jobs)
            found = [x for part in parts for x in part]
    # canonical order, independent of --jobs
    found.sort(key=lambda f: (f[0], [(len(x), x) for x in f[1:]]))
    w = [{"axiom": f[0], "words": [fp.format_word(x) for x in f[1:]]} for f in found]
    if not db.is_lambda_double_lie(B, lam):
        w.insert(0, {"axiom": "generators", "words": []})
    rep = _report(args, w, **{"lambda": _q(lam), "triple_degree": triple_deg, "pair_degree": pair_deg})
    return _emit(args, rep, not w)


# -- poly ---------------------------------------------------------------------

def cmd_poly_bracket(args) -> int:
    if args.i is None or args.j is None:
        raise UsageError("poly bracket needs --i and --j")
    try:
        t = pd.poly_bracket(args.family, args.i, args.j, args.truncate)
    except pd.TruncationOverflow as exc:
        raise UsageError(str(exc)) from exc
    rep = {"command": "poly bracket", "args": _echo(args), "value": _tensor(t, lambda x: x)}
    return _emit(args, rep)


def cmd_poly_check(args) -> int:
    lam = _lambda(args, pd.PolyFamily(args.family).lam)
    rep = pd.check_poly_axioms(args.family, args.truncate, lam)
    w = [{"axiom": wit[0], "exponents": list(wit[1:-1]), "residual": _tensor(wit[-1], lambda x: x)}
         for wit in rep.witnesses]
    return _emit(args, _report(args, w, **{"lambda": _q(lam)}), rep.passed)


def cmd_poly_ideal(args) -> int:
    gens = _indices(args.gens or f"1..{args.truncate}", 0, args.truncate)
    res = pd.check_ideal_poly(args.family, gens, args.truncate)
    w = []
    if not res.is_ideal:
        p, q, img = res.witness
        w.append({"exponents": [p, q], "image": _tensor(img, lambda x: x)})
    return _emit(args, _report(args, w), res.is_ideal)


def cmd_poly_iso(args) -> int:
    rep = pd.check_shift_iso(args.family, args.truncate)
    w = [{"exponents": [i, j], "defect": _tensor(d, lambda x: x)} for i, j, d in rep.witnesses]
    return _emit(args, _report(args, w), rep.passed)


# -- double -------------------------------------------------------------------

def _element(x: dc.DoubleElement) -> dict:
    return {"plain": _mat(x.plain), "barred": _mat(x.barred)}


def _basis_label(D: dc.DoubleAlgebra, k: int) -> str:
    N = D.dim // 2
    i, j = divmod(k % N, D.n)
    return f"e{i + 1}{j + 1}" if k < N else f"bar e{i + 1}{j + 1}"


def cmd_double_assoc(args) -> int:
    R = _operator(args)
    lam = _lambda(args)
    D = dc.DoubleAlgebra(R, lam)
    rep = dc.check_assoc(D)
    w = [{"triple": [_basis_label(D, k) for k in t], "defect": _element(d)} for t, d in rep.witnesses]
    return _emit(args, _report(args, w, **{"lambda": _q(lam)}), rep.passed)


def cmd_double_qform(args) -> int:
    R = _operator(args)
    lam = _lambda(args)
    res = dc.check_q_invariance(R, lam)
    w = []
    if res.witness:
        p, s, r, lhs, rhs = res.witness
        D = dc.DoubleAlgebra(R, lam)
        w.append({"triple": [_basis_label(D, k) for k in (p, s, r)], "Q(xy,z)": _q(lhs), "Q(x,yz)": _q(rhs)})
    rep = _report(args, w, **{"lambda": _q(lam), "theta_criterion": res.theta_criterion})
    return _emit(args, rep, res.invariant)


# -- catalog ------------------------------------------------------------------

def cmd_catalog_list(args) -> int:
    rows = [{"name": k, "weight": _q(w), "description": d} for k, (_, w, d) in CATALOG.items()]
    rows += [{"name": f"poly:{k}", "weight": _q(v), "description": "polynomial family on F[t]"}
             for k, v in pd.FAMILY_WEIGHTS.items()]
    return _emit(args, {"command": "catalog list", "entries": rows})


# -- parser -------------------------------------------------------------------

COMMANDS = {
    "rb": {"check": cmd_rb_check, "skew-check": cmd_rb_skew, "to-bracket": cmd_rb_to_bracket,
           "to-aybe": cmd_rb_to_aybe, "split": cmd_rb_split},
    "bracket": {"check": cmd_bracket_check, "to-rb": cmd_bracket_to_rb, "ideal": cmd_bracket_ideal},
    "aybe": {"check": cmd_aybe_check, "to-rb": cmd_aybe_to_rb},
    "free": {"extend": cmd_free_extend, "check-mdp": cmd_free_check_mdp},
    "poly": {"bracket": cmd_poly_bracket, "check": cmd_poly_check, "ideal": cmd_poly_ideal, "iso": cmd_poly_iso},
    "double": {"assoc": cmd_double_assoc, "qform": cmd_double_qform},
    "catalog": {"list": cmd_catalog_list},
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--lambda", dest="lam", metavar="P/Q")
    common.add_argument("--n", type=int)
    common.add_argument("--catalog", choices=sorted(CATALOG))
    common.add_argument("--in", dest="inp", metavar="FILE")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--max-deg", type=int)
    common.add_argument("--triple-deg", type=int, help="degree cap for (a3)/Leibniz triples (default min(max-deg, 2))")
    common.add_argument("--truncate", type=int, default=12)
    common.add_argument("--family", choices=sorted(pd.FAMILY_WEIGHTS), default="M1")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--span", help="1-based basis indices, e.g. 1,3 or 2..4")
    common.add_argument("--gens", help="exponents spanning U, e.g. 1..12")
    common.add_argument("--i", type=int)
    common.add_argument("--j", type=int)
    common.add_argument("--left", default="", help="word as 1-based letters, e.g. 1,2")
    common.add_argument("--right", default="")
    common.add_argument("--timing", action="store_true", help="add wall time to the report")

    parser = _Parser(prog="doublelie", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for gname, cmds in COMMANDS.items():
        g = groups.add_parser(gname)
        sub = g.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
        for cname, fn in cmds.items():
            sub.add_parser(cname, parents=[common]).set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args._t0 = time.perf_counter()
        return args.func(args)
    except (UsageError, FormatError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
