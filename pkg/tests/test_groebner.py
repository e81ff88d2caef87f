"""Groebner bases, normal forms, and the submodule engine."""

import pytest
from hypothesis import given, settings, strategies as st

from aq.fields import GF, QQ
from aq.groebner import (
    SubmoduleEngine,
    ideal_groebner,
    poly_normal_form,
    vp_from_poly,
)
from aq.orders import MonomialOrder
from aq.poly import PolyRing
from aq.rings import PresentedAlgebra


def gb_strings(polys, ring):
    return [str(g) for g in ideal_groebner([ring.poly(p) for p in polys], ring)]


def test_principal_ideal_is_its_monic_generator():
    R = PolyRing(QQ, ("x",))
    assert gb_strings(["3*x^2 - 3"], R) == ["x^2 - 1"]


def test_two_variable_elimination():
    # x = y^2 substituted into x^2 - y gives the lex elimination ideal
    R = PolyRing(QQ, ("x", "y"), MonomialOrder("lex"))
    basis = gb_strings(["x - y^2", "x^2 - y"], R)
    assert basis == ["x - y^2", "y^4 - y"]


def test_cusp_ideal_already_reduced():
    R = PolyRing(QQ, ("x", "y"))
    assert gb_strings(["x^3 - y^2"], R) == ["x^3 - y^2"]


def test_unit_ideal_detected():
    R = PolyRing(QQ, ("x", "y"))
    basis = gb_strings(["x", "x + 1"], R)
    assert basis == ["1"]
    A = PresentedAlgebra(R, ["x", "x + 1"])
    assert A.is_trivial()


def test_groebner_deterministic_and_reduced():
    R = PolyRing(QQ, ("x", "y", "z"))
    gens = ["x*y - z", "y*z - x", "x*z - y"]
    b1 = gb_strings(gens, R)
    b2 = gb_strings(list(reversed(gens)), R)
    assert b1 == b2
    # reduced: no leading monomial divides a monomial of another element
    basis = [R.poly(s) for s in b1]
    for i, g in enumerate(basis):
        for j, h in enumerate(basis):
            if i == j:
                continue
            lead = h.leading_monomial()
            for e in g.terms:
                assert not all(a <= b for a, b in zip(lead, e))


def test_normal_form_is_idempotent_and_linear():
    R = PolyRing(QQ, ("x", "y"))
    gb = ideal_groebner([R.poly("y^2 - x^3")], R)
    p = R.poly("y^4 + x*y^2 + 1")
    nf = poly_normal_form(p, gb, R)
    assert poly_normal_form(nf, gb, R) == nf
    q = R.poly("x^2 - y")
    lhs = poly_normal_form(p + q, gb, R)
    assert lhs == poly_normal_form(nf + poly_normal_form(q, gb, R), gb, R)


def test_normal_form_order_dependence():
    # same ideal, two orders: degrevlex keeps y^2, lex rewrites it
    grl = PresentedAlgebra(PolyRing(QQ, ("x", "y")), ["y^2 - x^3"])
    assert str(grl.normal_form(grl.poly("y^2"))) == "y^2"
    lex = PresentedAlgebra(
        PolyRing(QQ, ("x", "y"), MonomialOrder("lex", priority=(1, 0))),
        ["y^2 - x^3"])
    assert str(lex.normal_form(lex.poly("y^2"))) == "x^3"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2),
                          st.integers(-2, 2)),
                min_size=1, max_size=3),
       st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)),
       st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-2, 2)))
def test_membership_absorbs_ideal_elements(gens, m1, m2):
    """NF(p + h*g) == NF(p) for any ideal generator g."""
    R = PolyRing(GF(5), ("x", "y"))

    def mono(t):
        return R.monomial((t[0], t[1]), R.field.from_int(t[2]))

    polys = [mono(t) for t in gens]
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return
    gb = ideal_groebner(polys, R)
    p, h = mono(m1), mono(m2)
    lhs = poly_normal_form(p + h * polys[0], gb, R)
    assert lhs == poly_normal_form(p, gb, R)


def test_groebner_over_prime_field():
    R = PolyRing(GF(5), ("x",))
    # x^5 - x factors completely; together with x^2 - 1 the gcd is x^2 - 1
    basis = gb_strings(["x^5 - x", "x^2 - 1"], R)
    assert basis == ["x^2 + 4"]


# -- submodule engine ------------------------------------------------------


def test_syzygies_of_cusp_jacobian():
    R = PolyRing(QQ, ("x", "y"))
    f, g = R.poly("3*x^2"), R.poly("-2*y")
    engine = SubmoduleEngine(R, 1, [vp_from_poly(f, 0), vp_from_poly(g, 0)])
    syz = engine.syzygies()
    # the only relation between 3x^2 and -2y is the Koszul one
    assert len(syz) == 1
    c1, c2 = syz[0]
    assert (c1 * f + c2 * g).is_zero()
    assert not c1.is_zero() and not c2.is_zero()


def test_membership_and_lift():
    R = PolyRing(QQ, ("x", "y"))
    gens = [R.poly("x^2 + y"), R.poly("y^3")]
    engine = SubmoduleEngine(R, 1, [vp_from_poly(g, 0) for g in gens])
    target = vp_from_poly(R.poly("x^2 + y + y^3"), 0)
    assert engine.contains(target)
    coeffs = engine.lift(target)
    total = R.zero()
    for c, g in zip(coeffs, gens):
        total = total + c * g
    assert total == R.poly("x^2 + y + y^3")


def test_non_member_rejected():
    R = PolyRing(QQ, ("x",))
    engine = SubmoduleEngine(R, 1, [vp_from_poly(R.poly("x^2"), 0)])
    assert not engine.contains(vp_from_poly(R.poly("x"), 0))


def test_membership_respects_quotient_relations():
    R = PolyRing(QQ, ("x",))
    # in QQ[x]/(x^2), the span of x contains x + x^2 but not 1
    engine = SubmoduleEngine(R, 1, [vp_from_poly(R.poly("x"), 0)],
                             relations=[R.poly("x^2")])
    assert engine.contains(vp_from_poly(R.poly("x + x^2"), 0))
    assert not engine.contains(vp_from_poly(R.poly("1"), 0))
