"""Probe the Rees algebra of (x^2, xy) in Q[x, y]: Gorenstein test, canonical module, h^1 on X~.

The ideal sheaf of (x^2, xy) on P^1 is O(-1), so the blowup X~ is P^1 itself and
O(p, q) restricts to O(p + q).  The table lists the phi-side values next to that
line-bundle prediction and the pi-side values where they are certified.

    python scripts/gorenstein_probe.py --qmax 8
"""

import argparse

from regpow import Ring
from regpow.cohomsheaf import Uncertified, cohomology_Xtilde
from regpow.groebner import Ideal
from regpow.rees import rees_presentation
from regpow.resolve import canonical_module, depth_and_cm


def line_bundle_p1(e: int) -> tuple:
    return (max(e + 1, 0), max(-e - 1, 0))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qmax", type=int, default=5, help="largest q' in O(q'+2, -1)")
    args = ap.parse_args()
    A = Ring.polynomial("x,y")
    R = rees_presentation(Ideal(A, ["x^2", "x*y"]))
    rep = depth_and_cm(R.quotient())
    K = canonical_module(R.quotient())
    print(f"J = {R.J.generators}")
    print(f"depth {rep.depth}, dim {rep.dim}, CM {rep.is_cm}, Gorenstein {rep.is_gorenstein}")
    print(f"canonical module generators in ring bidegrees {list(K.degrees)}")
    print("q',p,q,phi_side,P1_prediction,pi_side")
    for qp in range(args.qmax + 1):
        p, q = qp + R.d, -1
        phi = cohomology_Xtilde(R, p, q, "phi", a_star_phi=-1)[:2]
        try:
            pi = cohomology_Xtilde(R, p, q, "pi", a_star_pi=-1)[:2]
        except Uncertified:
            pi = "uncertified"
        print(f"{qp},{p},{q},{phi},{line_bundle_p1(p + q)},{pi}")
