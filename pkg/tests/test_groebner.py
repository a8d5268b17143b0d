import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from regpow import GF, Budget, BudgetExceeded, Ring
from regpow.groebner import (
    Ideal,
    budget_scope,
    eliminate,
    ideal_equal,
    ideal_power,
    is_m_primary,
    krull_dimension_quotient,
    minimal_generators,
    normal_form,
    quotient,
    saturate,
    syzygies,
)

R3 = Ring.polynomial("x,y,z")
A = Ring.polynomial("x,y")
SYMS = sympy.symbols("x y z")


def sym(f):
    names = dict(zip(f.ring.variables, sympy.symbols(" ".join(f.ring.variables))))
    return sympy.expand(sympy.sympify(f.render().replace("^", "**"), locals=names))


def monic(expr):
    return sympy.Poly(expr, *SYMS, domain="QQ").monic().as_expr()


def monomials(nvars, degree):
    if nvars == 1:
        return [(degree,)]
    return [(k,) + rest for k in range(degree, -1, -1) for rest in monomials(nvars - 1, degree - k)]


@st.composite
def homogeneous_ideals(draw, ring=R3, max_gens=3, max_deg=3):
    gens = []
    for _ in range(draw(st.integers(1, max_gens))):
        d = draw(st.integers(1, max_deg))
        mons = monomials(ring.nvars, d)
        chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=3, unique=True))
        f = ring.zero()
        for e in chosen:
            f = f + ring.monomial(e, draw(st.integers(-3, 3).filter(bool)))
        if f:
            gens.append(f)
    return Ideal(ring, gens or [ring.var(ring.variables[0])])


class TestBuchberger:
    def test_linear(self):
        gb = Ideal(A, ["x", "y"]).groebner()
        assert {str(g) for g in gb} == {"x", "y"}

    def test_single_s_pair(self):
        gb = Ideal(A, ["x^2+y^2", "x*y"]).groebner()
        assert {str(g) for g in gb} == {"x^2 + y^2", "x*y", "y^3"}

    def test_normal_forms(self):
        gb = Ideal(A, ["x^2+y^2", "x*y"]).groebner()
        assert normal_form(A("x^2*y"), gb).is_zero()
        assert normal_form(A.one(), Ideal(A, ["x", "y"]).groebner()) == A.one()

    @given(homogeneous_ideals())
    @settings(max_examples=40)
    def test_matches_sympy(self, I):
        gb = I.groebner()
        oracle = sympy.groebner([sym(f) for f in I.generators], *SYMS, order="grevlex")
        assert {monic(sym(g)) for g in gb} == {monic(g) for g in oracle.exprs}

    @given(homogeneous_ideals())
    @settings(max_examples=40)
    def test_buchberger_criterion(self, I):
        gb = I.groebner()
        assert gb.is_groebner()
        assert ideal_equal(I, Ideal(R3, list(gb)))

    @given(homogeneous_ideals(), st.integers(0, 10**6))
    @settings(max_examples=30)
    def test_normal_form_idempotent_and_linear(self, I, seed):
        rng = random.Random(seed)
        gb = I.groebner()
        f = R3.monomial((rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 5))
        g = R3.monomial((rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3)), rng.randint(1, 5))
        nf = normal_form(f, gb)
        assert normal_form(nf, gb) == nf
        assert normal_form(f + g.scale(3), gb) == nf + normal_form(g, gb).scale(3)
        assert I.contains(f - nf)

    def test_prime_field(self):
        F = Ring.polynomial("x,y,z", GF(32003))
        gb = Ideal(F, ["x*z - y^2", "y - z", "x^2 - z^2"]).groebner()
        assert gb.is_groebner()

    def test_budget(self):
        with budget_scope(Budget(max_degree=2)):
            with pytest.raises(BudgetExceeded):
                Ideal(R3, ["x^2 - y*z", "x*y - z^2"]).groebner()


class TestElimination:
    def test_parametrization(self):
        B = Ring.polynomial("T0,T1,x", weights=[1, 2, 1])
        J = eliminate(Ideal(B, ["T0 - x", "T1 - x^2"]), ["x"])
        assert ideal_equal(J, Ideal(B, ["T1 - T0^2"]))

    def test_empty_block(self):
        I = Ideal(R3, ["x*y", "z^2"])
        assert ideal_equal(eliminate(I, []), I)

    def test_eliminate_everything(self):
        assert eliminate(Ideal(R3, ["x*y", "z^2"]), ["x", "y", "z"]).is_zero()

    @given(homogeneous_ideals())
    @settings(max_examples=25)
    def test_contained_and_free_of_block(self, I):
        E = eliminate(I, ["x"])
        for g in E.generators:
            assert all(e[0] == 0 for e in g.as_dict())
            assert I.contains(g)

    def test_twisted_cubic_from_parametrization(self):
        S = Ring.polynomial("s,t,a,b,c,d", weights=[1, 1, 3, 3, 3, 3])
        I = Ideal(S, ["a - s^3", "b - s^2*t", "c - s*t^2", "d - t^3"])
        E = eliminate(I, ["s", "t"])
        assert len(E.generators) == 3
        assert E.contains(S("a*c - b^2")) and E.contains(S("b*d - c^2")) and E.contains(S("a*d - b*c"))


class TestColon:
    def test_quotient(self):
        assert ideal_equal(quotient(Ideal(A, ["x^2", "x*y"]), Ideal(A, ["x"])), Ideal(A, ["x", "y"]))

    def test_saturation(self):
        assert ideal_equal(saturate(Ideal(A, ["x^2", "x*y"]), Ideal(A, ["x"])), Ideal(A, ["1"]))
        assert ideal_equal(saturate(Ideal(A, ["x^2", "x*y"]), Ideal(A, ["x", "y"])), Ideal(A, ["x"]))

    def test_irrelevant_saturates_to_unit(self):
        m = Ideal(A, ["x", "y"])
        assert saturate(ideal_power(m, 3), m).is_unit()

    def test_zero_colon(self):
        assert quotient(Ideal(A, []), Ideal(A, ["x"])).is_zero()

    @given(homogeneous_ideals(max_gens=2, max_deg=2))
    @settings(max_examples=20)
    def test_saturation_properties(self, I):
        J = Ideal(R3, ["x", "y"])
        S1 = saturate(I, J)
        assert all(S1.contains(f) for f in I.generators)
        assert ideal_equal(saturate(S1, J), S1)


class TestPowersAndSyzygies:
    def test_square_of_maximal_ideal(self):
        P = ideal_power(Ideal(A, ["x", "y"]), 2)
        assert ideal_equal(P, Ideal(A, ["x^2", "x*y", "y^2"]))
        assert len(P.generators) == 3

    def test_example_power_is_a_power_of_m(self, quintic):
        assert ideal_equal(ideal_power(quintic, 3), ideal_power(Ideal(A, ["x", "y"]), 15))

    def test_zeroth_power(self, quintic):
        assert ideal_power(quintic, 0).is_unit()

    @given(st.integers(1, 4))
    def test_equigenerated_powers(self, q):
        I = Ideal(A, ["x^2 + x*y", "y^2", "x*y - y^2"])
        assert all(g.total_degree() == 2 * q for g in ideal_power(I, q).generators)

    def test_koszul(self):
        s = syzygies([A("x"), A("y")])
        assert len(s.columns) == 1 and s.twists == ((2,),)
        assert s.check()

    def test_monomial_pair(self):
        s = syzygies([A("x^2"), A("x*y")])
        col = s.columns[0]
        assert s.twists == ((3,),)
        assert {str(col[0]), str(col[1])} in ({"y", "-x"}, {"-y", "x"})

    @given(homogeneous_ideals(max_gens=4, max_deg=2))
    @settings(max_examples=25)
    def test_syzygies_vanish(self, I):
        assert syzygies(list(I.generators)).check()

    def test_minimal_generators(self):
        gens = minimal_generators(A, [A("x^2"), A("x^2*y"), A("2*x^2"), A("y^3")])
        assert [str(g) for g in gens] == ["x^2", "y^3"]

    def test_dimension_and_m_primary(self, quintic):
        assert is_m_primary(quintic)
        assert not is_m_primary(Ideal(A, ["x^2", "x*y"]))
        assert krull_dimension_quotient(Ideal(R3, ["x*z - y^2"])) == 2
