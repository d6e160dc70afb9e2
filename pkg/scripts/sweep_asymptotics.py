#!/usr/bin/env python3
"""Sweep x toward -infinity and watch the quadrature approach the coset sum.

Example:
    python scripts/sweep_asymptotics.py --m 2 --N 4 --lambda 0.9,0.4,-0.3,-1.15
"""

import argparse
import math
import sys

from parwhit import SpectralData, auto_contour, eval_mb, eval_residue_series, leading_asymptotic
from parwhit.errors import ParwhitError


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--N", type=int, default=2)
    ap.add_argument("--lambda", dest="lam", type=str, default="0.5,0")
    ap.add_argument("--hbar", type=float, default=1.0)
    ap.add_argument("--x-grid", dest="x_grid", type=str, default="-2,-4,-6,-8,-10,-12")
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()

    lam = tuple(float(v) for v in args.lam.split(","))
    xs = [float(v) for v in args.x_grid.split(",")]

    print(f"m={args.m} N={args.N} lambda={lam} hbar={args.hbar}")
    print(f"{'x':>8}  {'Psi (quadrature)':>18}  {'quad/asympt - 1':>16}  {'residue/asympt - 1':>18}")
    for x in xs:
        s = SpectralData(m=args.m, N=args.N, lam=lam, hbar=args.hbar, x=x)
        asym = leading_asymptotic(s)
        row = [f"{x:8.2f}"]
        try:
            mb = eval_mb(s, auto_contour(s, args.tol), max_rel_err=None).value
            row.append(f"{mb.to_complex().real:18.10g}")
            row.append(f"{abs((mb / asym).to_complex() - 1):16.3e}")
        except (ParwhitError, OverflowError) as exc:
            row.append(f"  quadrature: {type(exc).__name__}")
            row.append(" " * 16)
        try:
            rs = eval_residue_series(s).value
            row.append(f"{abs((rs / asym).to_complex() - 1):18.3e}")
        except ParwhitError as exc:
            row.append(f"  residue: {type(exc).__name__}")
        print("  ".join(row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
