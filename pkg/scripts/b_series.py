#!/usr/bin/env python3
"""Print the q-series B1 and B2 to a requested order.

Usage:
    python scripts/b_series.py [--order M]

The coefficients come out of a multiplicative fit at the same order, which
needs Severi degrees for plane degrees 5M-1 and 5M, so the cost grows
quickly: order 3 is instant, order 5 takes a minute or two, higher orders
benefit from --cache.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "src"))

from nodalcurves import SeveriTable, default_config, fit_A, fit_B  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--order", type=int, default=3)
    parser.add_argument("--cache", default=None)
    args = parser.parse_args()

    table = SeveriTable.load(args.cache) if args.cache else SeveriTable()
    config = default_config(args.order)
    start = time.time()
    fit = fit_A(config, table)
    gyz = fit_B(fit)
    elapsed = time.time() - start

    print(f"order {args.order}, plane degrees ({config.d1}, {config.d2}), {elapsed:.2f}s")
    print(f"residual identities vanish: {gyz.residuals.ok}")
    print("n\tB1[n]\tB2[n]")
    for n in range(args.order + 1):
        print(f"{n}\t{gyz.b1.coeff(n)}\t{gyz.b2.coeff(n)}")

    if args.cache:
        table.save(args.cache)
    return 0 if gyz.residuals.ok else 3


if __name__ == "__main__":
    raise SystemExit(main())
