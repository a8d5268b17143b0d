"""Tabulate h^i(P^n, O(e)) from module data next to the closed binomial formulas.

    python scripts/line_bundle_table.py --n 3 --range -8 8
"""

import argparse
import sys
from math import comb

from regpow import Ring
from regpow.cohomsheaf import sheaf_cohomology_proj
from regpow.resolve import GradedPresentation


def closed_form(n: int, e: int) -> tuple:
    h = [0] * (n + 1)
    if e >= 0:
        h[0] = comb(n + e, n)
    if e <= -n - 1:
        h[n] = comb(-e - 1, n)
    return tuple(h)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2, help="dimension of projective space")
    ap.add_argument("--range", type=int, nargs=2, default=(-8, 8), metavar=("LO", "HI"))
    args = ap.parse_args()
    S = GradedPresentation.free(Ring.polynomial(",".join(f"x{i}" for i in range(args.n + 1))))
    print("e," + ",".join(f"h{i}" for i in range(args.n + 1)) + ",matches")
    mismatches = 0
    for e in range(args.range[0], args.range[1] + 1):
        h = sheaf_cohomology_proj(S, e)
        ok = h == closed_form(args.n, e)
        mismatches += not ok
        print(f"{e}," + ",".join(map(str, h)) + f",{ok}")
    sys.exit(1 if mismatches else 0)
