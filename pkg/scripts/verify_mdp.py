#!/usr/bin/env python3
"""Exhaustive modified double Poisson sweep for the Arthamonov bracket or the
bracket of a catalog operator, with per-degree counts."""
import argparse
import time
from dataclasses import dataclass
from itertools import product

from doublelie.double_bracket import FiniteBracket, bracket_from_rb
from doublelie.free_ncpoly import FreeExtension, NCPoly, check_a3, check_a4, check_leibniz, words
from doublelie.matrix_rb import catalog
from doublelie.tensors import Tensor

ARTHAMONOV = {
    (0, 1): {(0, 1): -1},
    (1, 0): {(0, 1): 1},
    (1, 2): {(2, 1): 1},
    (2, 0): {(0, 2): 1, (2, 0): -1},
    (2, 1): {(2, 1): -1},
}


@dataclass(frozen=True)
class Config:
    source: str = "arthamonov"
    n: int = 3
    triple_deg: int = 2
    pair_deg: int = 4


def bracket(cfg: Config) -> FiniteBracket:
    if cfg.source == "arthamonov":
        return FiniteBracket(3, {k: Tensor(2, v) for k, v in ARTHAMONOV.items()})
    return bracket_from_rb(catalog(cfg.source, cfg.n))


def sweep(cfg: Config) -> dict:
    ext = FreeExtension(bracket(cfg))
    mono = lambda w: NCPoly({w: 1})
    short = [mono(w) for w in words(ext.dim, cfg.triple_deg)]
    long = [mono(w) for w in words(ext.dim, cfg.pair_deg)]
    bad = {"leibniz": 0, "a3": 0, "a4": 0}
    for a, b, c in product(short, repeat=3):
        r1, r2 = check_leibniz(ext, a, b, c)
        bad["leibniz"] += bool(r1) + bool(r2)
        bad["a3"] += not check_a3(ext, a, b, c).is_zero()
    for a, b in product(long, repeat=2):
        bad["a4"] += not check_a4(ext, a, b).is_zero()
    return {"triples": len(short) ** 3, "pairs": len(long) ** 2, "failures": bad}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--source", default="arthamonov", help="arthamonov or a catalog name")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--triple-deg", type=int, default=2)
    ap.add_argument("--pair-deg", type=int, default=4)
    args = ap.parse_args()
    cfg = Config(args.source, args.n, args.triple_deg, args.pair_deg)
    start = time.perf_counter()
    out = sweep(cfg)
    print(f"{cfg}: {out['triples']} triples, {out['pairs']} pairs, failures {out['failures']}, "
          f"{time.perf_counter() - start:.1f}s")
    return 0 if not any(out["failures"].values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
