#!/usr/bin/env python3
"""Cross-validate the two independent evaluators over a grid of instances.

Prints the relative discrepancy between contour quadrature and the residue
series for every instance; the two share no code beyond the gamma routines.
"""

import itertools
import sys
import time

from parwhit import SpectralData, auto_contour, eval_mb, eval_residue_series

GRID = [
    (1, 3, (0.7, 0.0, -0.9)),
    (1, 3, (1.1, 0.35, -0.45)),
    (2, 4, (0.9, 0.4, -0.3, -1.15)),
    (2, 4, (1.25, 0.55, -0.15, -0.85)),
    (2, 5, (1.17, 0.55, -0.02, -0.73, -1.38)),
    (3, 5, (0.62, 0.31, 0.0, -0.33, -0.67)),
]


def main() -> int:
    worst = 0.0
    print(f"{'(m,N)':>7} {'x':>6} {'quadrature':>16} {'residue':>16} {'rel diff':>10} {'secs':>6}")
    for (m, N, lam), x in itertools.product(GRID, (-3.0, -5.0)):
        s = SpectralData(m=m, N=N, lam=lam, hbar=1.0, x=x)
        t0 = time.time()
        mb = eval_mb(s, auto_contour(s, 1e-9), max_rel_err=None).value
        rs = eval_residue_series(s).value
        rel = abs((mb / rs).to_complex() - 1.0)
        worst = max(worst, rel)
        print(f"({m},{N})  {x:6.1f} {mb.to_complex().real:16.8g} "
              f"{rs.to_complex().real:16.8g} {rel:10.2e} {time.time() - t0:6.1f}")
    print(f"worst relative discrepancy: {worst:.2e}")
    return 0 if worst <= 1e-6 else 1


if __name__ == "__main__":
    sys.exit(main())
