"""Field arithmetic, polynomial arithmetic, parsing, and term orders."""

import pytest
from hypothesis import given, strategies as st

from aq.fields import GF, QQ, FieldError, field_from_spec
from aq.orders import MonomialOrder
from aq.poly import ParseError, PolyRing, parse_polynomial, stable_str


def ring(field, *names, order=None):
    return PolyRing(field, names, order)


# -- fields ------------------------------------------------------------


def test_rational_field_basics():
    assert QQ.kind == "QQ"
    assert QQ.characteristic == 0
    a = QQ.fraction(3, 4)
    b = QQ.from_int(2)
    assert QQ.to_str(QQ.add(a, b)) == "11/4"
    assert QQ.mul(a, QQ.inv(a)) == QQ.from_int(1)


def test_prime_field_basics():
    F7 = GF(7)
    assert F7.characteristic == 7
    assert F7.add(F7.from_int(5), F7.from_int(4)) == F7.from_int(2)
    assert F7.mul(F7.from_int(3), F7.inv(F7.from_int(3))) == F7.from_int(1)


def test_characteristic_must_be_prime():
    with pytest.raises(FieldError, match="characteristic must be prime"):
        GF(4)
    with pytest.raises(FieldError, match="characteristic must be prime"):
        GF(1)


def test_field_from_spec_round_trip():
    assert field_from_spec("QQ") == QQ
    assert field_from_spec("GF", 5) == GF(5)
    with pytest.raises(FieldError):
        field_from_spec("RR")


small_rationals = st.tuples(st.integers(-8, 8), st.integers(1, 6)).map(
    lambda t: QQ.fraction(*t))
f7_elements = st.integers(min_value=0, max_value=6).map(GF(7).from_int)


@given(small_rationals, small_rationals, small_rationals)
def test_qq_ring_axioms(a, b, c):
    F = QQ
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero()


@given(f7_elements, f7_elements)
def test_gf7_field_axioms(a, b):
    F = GF(7)
    assert F.add(a, b) == F.add(b, a)
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one()


# -- polynomial arithmetic ----------------------------------------------


def test_arithmetic_and_normalization():
    R = ring(QQ, "x", "y")
    x, y = R.var("x"), R.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero()
    assert str(x * x - y * y) == "x^2 - y^2"


def test_substitute_composes():
    R = ring(QQ, "x", "y")
    p = R.poly("x^2 + y")
    q = p.substitute(R, {"x": R.poly("y + 1"), "y": R.poly("0")})
    assert q == R.poly("y^2 + 2*y + 1")


def test_evaluate_exactly():
    R = ring(QQ, "x", "y")
    p = R.poly("x^2*y - 1/2")
    val = p.evaluate({"x": QQ.from_int(3), "y": QQ.fraction(1, 9)})
    assert val == QQ.fraction(1, 2)


def test_derivative_leibniz():
    R = ring(QQ, "x", "y")
    p, q = R.poly("x^2 + y"), R.poly("x*y - 3")
    lhs = (p * q).derivative("x")
    rhs = p.derivative("x") * q + p * q.derivative("x")
    assert lhs == rhs


simple_polys = st.builds(
    lambda coeffs: sum(
        (PolyRing(QQ, ("x", "y")).monomial((i, j), QQ.from_int(c))
         for (i, j), c in coeffs.items()),
        PolyRing(QQ, ("x", "y")).zero()),
    st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        st.integers(-3, 3), max_size=4))


@given(simple_polys, simple_polys)
def test_parse_print_round_trip(p, q):
    R = PolyRing(QQ, ("x", "y"))
    s = p * q + p
    assert R.poly(str(s)) == s


# -- parsing errors with positions ---------------------------------------


def test_parse_error_reports_column():
    R = ring(QQ, "x")
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + @", R)
    assert info.value.col == 5
    with pytest.raises(ParseError, match="unexpected end"):
        parse_polynomial("x + ", R)


def test_unknown_variable_rejected():
    R = ring(QQ, "x")
    with pytest.raises(ParseError, match="unknown variable"):
        R.poly("x + z")


def test_products_need_explicit_star():
    R = ring(QQ, "x", "y")
    with pytest.raises(ParseError):
        R.poly("x y")


# -- monomial orders -----------------------------------------------------


def test_degrevlex_vs_lex_leading_terms():
    # total degree dominates under degrevlex, variable priority under lex
    grl = ring(QQ, "x", "y")
    assert grl.poly("y^2 - x^3").leading_monomial() == (3, 0)
    lex = ring(QQ, "x", "y", order=MonomialOrder("lex"))
    assert lex.poly("x - y^3").leading_monomial() == (1, 0)


def test_lex_priority_reorders():
    R = ring(QQ, "x", "y", order=MonomialOrder("lex", priority=(1, 0)))
    # y outranks x
    assert R.poly("x^5 - y").leading_monomial() == (0, 1)


def test_stable_str_ignores_ambient_order():
    lex = ring(QQ, "x", "y", order=MonomialOrder("lex"))
    grl = ring(QQ, "x", "y")
    p_lex, p_grl = lex.poly("x - y^2"), grl.poly("x - y^2")
    assert stable_str(p_lex) == stable_str(p_grl) == "-y^2 + x"
    assert str(p_lex) == "x - y^2"
