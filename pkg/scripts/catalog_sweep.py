#!/usr/bin/env python3
"""Table of every catalog operator: RB, skew, bracket axioms, AYBE, D_R(A)
associativity and the proper ideal dimension."""
import argparse

from doublelie.aybe import aybe_weight, check_aybe, tensor_from_rb
from doublelie.double_bracket import bracket_from_rb, is_lambda_double_lie, proper_ideal_from_rb
from doublelie.double_construction import check_assoc
from doublelie.matrix_rb import catalog, catalog_weight, is_lambda_skew, is_rb


def row(name, n, assoc_max):
    R, lam = catalog(name, n), catalog_weight(name)
    cells = [name, n, lam, is_rb(R, lam).passed, is_lambda_skew(R, lam).passed,
             is_lambda_double_lie(bracket_from_rb(R), lam),
             check_aybe(tensor_from_rb(R), n, aybe_weight(lam)).passed,
             check_assoc(R, lam).passed if n <= assoc_max else "-",
             f"{proper_ideal_from_rb(R, lam).dimension}/{n}"]
    return cells


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--assoc-max-n", type=int, default=3, help="D_R(A) has dimension 2n^2; skip it above this n")
    args = ap.parse_args()
    header = ["name", "n", "lambda", "rb", "skew", "double-lie", "aybe", "assoc", "ideal-dim"]
    rows = [row(name, n, args.assoc_max_n) for name in ("ex1", "ex2", "ex4") for n in range(2, args.max_n + 1)]
    rows.append(row("ex3", 3, args.assoc_max_n))
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    for cells in [header] + rows:
        print("  ".join(str(x).ljust(w) for x, w in zip(cells, widths)))


if __name__ == "__main__":
    main()
