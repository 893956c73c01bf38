#!/usr/bin/env python3
"""Tabulate plane Severi degrees and test the node-polynomial property.

Usage:
    python scripts/severi_census.py [--dmax D] [--deltamax K] [--cache PATH]

Prints N(d, delta) for all d <= dmax, delta <= deltamax, then for each
delta interpolates the degree-2*delta polynomial through the first
2*delta + 1 admissible degrees and reports whether it predicts every
remaining computed value exactly.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from nodalcurves import SeveriTable, node_poly_check, severi  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--dmax", type=int, default=12)
    parser.add_argument("--deltamax", type=int, default=3)
    parser.add_argument("--cache", default=None)
    args = parser.parse_args()

    table = SeveriTable.load(args.cache) if args.cache else SeveriTable()
    start = time.time()

    header = ["d"] + [f"delta={k}" for k in range(args.deltamax + 1)]
    print("\t".join(header))
    for d in range(1, args.dmax + 1):
        row = [str(d)] + [str(severi(d, k, table)) for k in range(args.deltamax + 1)]
        print("\t".join(row))
    print(f"\n{len(table)} memo entries, {time.time() - start:.2f}s")

    for delta in range(1, args.deltamax + 1):
        lo = 2 * delta
        hi = args.dmax
        if hi - lo + 1 < 2 * delta + 2:
            print(f"delta={delta}: window too short to test, raise --dmax")
            continue
        report = node_poly_check(delta, range(lo, hi + 1), table)
        poly = " + ".join(
            f"({c})*d^{j}" if j else f"({c})" for j, c in enumerate(report.coefficients)
        )
        verdict = "fits" if report.fits else f"FAILS at {report.mismatches}"
        print(f"delta={delta}: degrees {lo}..{hi} {verdict}; N(d,{delta}) = {poly}")

    if args.cache:
        table.save(args.cache)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
