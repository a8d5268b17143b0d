from itertools import product
from math import comb

import pytest

from regpow import NEG_INF, Ring
from regpow.cohomsheaf import (
    Uncertified,
    cohomology_grid,
    cohomology_Xtilde,
    pi_side,
    sheaf_cohomology_proj,
    sheaf_regularity,
    x_local_cohomology_pieces,
)
from regpow.groebner import Ideal, ideal_power
from regpow.invariants import a_star_pi_certificate
from regpow.rees import rees_presentation
from regpow.resolve import GradedPresentation, a_invariants, regularity_betti

A = Ring.polynomial("x,y")
RINGS = {n: Ring.polynomial(",".join(f"x{i}" for i in range(n + 1))) for n in (1, 2, 3)}


def line_bundle(n, e):
    """Closed formulas for h^i(P^n, O(e))."""
    h = [0] * (n + 1)
    if e >= 0:
        h[0] = comb(n + e, n)
    if e <= -n - 1:
        h[n] = comb(-e - 1, n)
    return tuple(h)


class TestProjectiveSpace:
    @pytest.mark.parametrize("n, e", list(product((1, 2, 3), range(-8, 9))))
    def test_line_bundles(self, n, e):
        S = GradedPresentation.free(RINGS[n])
        assert sheaf_cohomology_proj(S, e) == line_bundle(n, e)

    def test_twisted_free_module(self):
        M = GradedPresentation.free(A, [3])
        assert sheaf_cohomology_proj(M, 0) == (0, 2)

    def test_square_of_maximal_ideal(self):
        m2 = GradedPresentation.ideal_module(Ideal(A, ["x^2", "x*y", "y^2"]))
        assert sheaf_cohomology_proj(m2, 1) == (2, 0)

    def test_sheaf_regularity(self):
        assert sheaf_regularity(GradedPresentation.free(RINGS[2])) == 0
        assert sheaf_regularity(GradedPresentation.free(A, [3])) == 3
        assert sheaf_regularity(GradedPresentation.ideal_module(Ideal(A, ["x^2", "x*y", "y^2"]))) == 0
        assert sheaf_regularity(GradedPresentation.free(A, [])) is NEG_INF

    def test_weighted_ring_refused(self):
        W = Ring.polynomial("x,y", weights=[1, 2])
        with pytest.raises(ValueError):
            sheaf_cohomology_proj(GradedPresentation.free(W), 0)


class TestRoutes:
    def test_refusals(self, quintic):
        R = rees_presentation(quintic)
        with pytest.raises(Uncertified):
            cohomology_Xtilde(R, 0, 3)
        with pytest.raises(Uncertified):
            cohomology_Xtilde(R, -1, 3, route="phi", a_star_phi=-1)
        with pytest.raises(Uncertified):
            cohomology_Xtilde(R, 0, -1, route="pi", a_star_pi=-2)
        with pytest.raises(ValueError):
            cohomology_Xtilde(R, 0, 3, route="chow", a_star_pi=-1, a_star_phi=-1)

    def test_example_routes_agree(self, quintic):
        R = rees_presentation(quintic)
        cert = a_star_pi_certificate(quintic, R)
        assert cohomology_Xtilde(R, 0, 3, a_star_pi=cert, a_star_phi=-1) == cohomology_Xtilde(
            R, 0, 3, route="phi", a_star_phi=-1
        )

    @pytest.mark.parametrize("q", [3, 4])
    def test_example_critical_twist(self, quintic, q):
        R = rees_presentation(quintic)
        # global sections at p = -1 exceed R_(-1,q) = 0: the gap is [H^1_m(I^q)]_(dq-1)
        assert pi_side(R, -1, q)[0] == 5 * q > R.dim(-1, q) == 0
        a = a_invariants(GradedPresentation.ideal_module(ideal_power(quintic, q))).a
        assert a[1] == 5 * q - 1

    def test_untwisted_column(self, quintic):
        R = rees_presentation(quintic)
        for p in range(0, 5):
            assert cohomology_Xtilde(R, p, 0, route="pi", a_star_pi=-1)[:2] == line_bundle(1, p)

    @pytest.mark.parametrize("name", ["quintic", "septic"])
    def test_two_route_grid(self, name, request):
        I = request.getfixturevalue(name)
        R = rees_presentation(I)
        cert = a_star_pi_certificate(I, R)
        qs = range(cert.value + 1, cert.value + 6)
        table = cohomology_grid(R, range(0, 5), qs, a_star_pi=cert, a_star_phi=-1)
        assert len(table.rows()) == 25
        assert table.certificate == "MPrimary"

    def test_serre_vanishing(self, quintic):
        R = rees_presentation(quintic)
        for q in range(0, 3):
            M = GradedPresentation.free(A) if q == 0 else GradedPresentation.ideal_module(ideal_power(quintic, q))
            r = regularity_betti(M)
            for p in range(r - 5 * q, r - 5 * q + 3):
                h = cohomology_Xtilde(R, p, q, route="pi", a_star_pi=-1)
                assert all(v == 0 for v in h[1:])

    def test_sheaf_reg_below_module_reg(self, quintic, septic):
        for I in (quintic, septic):
            for q in (1, 2):
                M = GradedPresentation.ideal_module(ideal_power(I, q))
                assert sheaf_regularity(M) <= regularity_betti(M)


class TestXLocalCohomology:
    def test_domain_has_no_torsion(self, quintic):
        R = rees_presentation(quintic)
        assert set(x_local_cohomology_pieces(R, 0, range(4), 0).values()) == {0}

    def test_negative_strand_has_no_torsion(self, quintic):
        R = rees_presentation(quintic)
        assert set(x_local_cohomology_pieces(R, -2, range(3), 0).values()) == {0}

    def test_first_pieces_are_the_artinian_quotient(self, quintic):
        # H^1_m(I^q) = A/I^q for an m-primary ideal of k[x, y]
        R = rees_presentation(quintic)
        for p in range(-3, 3):
            pieces = x_local_cohomology_pieces(R, p, range(1, 3), 1)
            for q, v in pieces.items():
                n = p + 5 * q
                assert v == max(n + 1, 0) - R.dim(p, q)

    def test_example_first_piece(self, quintic):
        R = rees_presentation(quintic)
        assert x_local_cohomology_pieces(R, 1, [1], 1)[1] != 0

    def test_negative_q_rejected(self, quintic):
        with pytest.raises(ValueError):
            x_local_cohomology_pieces(rees_presentation(quintic), 0, [-1], 1)
