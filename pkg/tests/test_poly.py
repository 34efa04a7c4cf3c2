import pytest
import sympy
from hypothesis import given, strategies as st

from polystrength.fields import GF, QQ, parse_field_spec
from polystrength.poly import (
    Poly,
    double_substitute,
    get_order,
    homogeneous_components,
    monomials_of_degree,
    parse_poly,
    poly_frobenius_twist,
)

VARS = ("x1", "x2", "x3")


def polys(K, max_terms=5, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * len(VARS))
    coefs = st.integers(-5, 5)
    return st.dictionaries(exps, coefs, max_size=max_terms).map(
        lambda d: Poly(K, VARS, {e: K(c).value for e, c in d.items()})
    )


def to_sympy(f):
    """Integer-coefficient sympy expression for f (inputs have integer coefficients)."""
    xs = sympy.symbols(VARS)
    out = sympy.Integer(0)
    for e, c in f.terms.items():
        term = sympy.Rational(str(f.field.format(c)))
        for x, k in zip(xs, e):
            term *= x ** k
        out += term
    return out


def same(f, expr):
    """f equals expr, comparing mod p by reducing the expanded integer expression."""
    xs = sympy.symbols(VARS)
    p = f.field.characteristic
    diff = sympy.Poly(sympy.expand(to_sympy(f) - expr), *xs)
    if p:
        return all(sympy.Integer(c) % p == 0 for c in diff.coeffs())
    return diff.is_zero


def test_parse_examples():
    f = parse_poly("x1^2+x2^2", None, QQ)
    assert f.degree() == 2 and len(f) == 2
    assert parse_poly("x1^2+x1^2", None, GF(2)).is_zero()
    K = parse_field_spec("GF(2)(t1)")
    g = parse_poly("t1*x1^2", None, K)
    assert len(g) == 1 and g.coefficient((2,)) == K.gen("t1")


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("x1+y", ["x1"], QQ)
    with pytest.raises(ValueError):
        parse_poly("x1/x2", None, QQ)
    with pytest.raises(ValueError):
        parse_poly("x1^", None, QQ)


def test_str_round_trip():
    f = parse_poly("x^3+6*x^2*y-1/2*x", None, QQ)
    assert str(f) == "x^3+6*x^2*y-1/2*x"
    assert parse_poly(str(f), f.vars, QQ) == f


def test_homogeneous_components_examples():
    f = parse_poly("x1^3+x1*x2", None, QQ)
    comps = homogeneous_components(f)
    assert set(comps) == {2, 3}
    assert comps[3] == parse_poly("x1^3", f.vars, QQ)
    assert homogeneous_components(Poly(QQ, VARS)) == {}
    g = parse_poly("x1^2+x2^2", None, QQ)
    assert list(homogeneous_components(g)) == [2]


def test_double_substitute_examples():
    f = parse_poly("x^2", None, QQ)
    assert double_substitute(f, {"x": "y"}) == parse_poly("x^2+2*x*y+y^2", ["x", "y"], QQ)
    f2 = parse_poly("x^2", None, GF(2))
    assert double_substitute(f2, {"x": "y"}) == parse_poly("x^2+y^2", ["x", "y"], GF(2))
    g = parse_poly("x1*x2", None, QQ)
    want = parse_poly("x1*x2+x1*y2+x2*y1+y1*y2", ["x1", "x2", "y1", "y2"], QQ)
    assert double_substitute(g, {"x1": "y1", "x2": "y2"}) == want
    with pytest.raises(ValueError):
        double_substitute(g, {"x1": "x2"})


def test_frobenius_twist_examples():
    K = GF(2)
    assert poly_frobenius_twist(parse_poly("x1+x2", None, K), 2) == parse_poly("x1^2+x2^2", None, K)
    L = parse_field_spec("GF(2)(t1)")
    assert poly_frobenius_twist(parse_poly("t1*x1", None, L), 2) == parse_poly("t1^2*x1^2", None, L)
    c = Poly.constant(L, ("x1",), L.gen("t1") + 1)
    assert poly_frobenius_twist(c, 4).constant_value() == ((L.gen("t1") + 1) ** 4).value
    with pytest.raises(ValueError):
        poly_frobenius_twist(parse_poly("x", None, QQ), 2)


@pytest.mark.parametrize("K", [QQ, GF(5), GF(2)])
@given(data=st.data())
def test_ring_laws_against_sympy(K, data):
    f = data.draw(polys(K))
    g = data.draw(polys(K))
    h = data.draw(polys(K))
    assert same(f * g, to_sympy(f) * to_sympy(g))
    assert same(f + g, to_sympy(f) + to_sympy(g))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Poly(K, VARS)
    if not f.is_zero() and not g.is_zero():
        assert (f * g).degree() == f.degree() + g.degree()


@given(data=st.data())
def test_counit_of_double_substitution(data):
    f = data.draw(polys(GF(3)))
    D = double_substitute(f, {"x1": "y1", "x3": "y3"})
    assert D.subs({"y1": 0, "y3": 0}, VARS) == f
    assert D.degree() == f.degree()


@given(data=st.data())
def test_twist_is_a_ring_map(data):
    K = GF(3)
    f, g = data.draw(polys(K, 4, 2)), data.draw(polys(K, 4, 2))
    for q in (3, 9):
        assert poly_frobenius_twist(f * g, q) == poly_frobenius_twist(f, q) * poly_frobenius_twist(g, q)
        assert poly_frobenius_twist(f + g, q) == poly_frobenius_twist(f, q) + poly_frobenius_twist(g, q)


def test_orders():
    a, b = (2, 0, 0), (1, 1, 1)
    assert get_order("lex").key(a) > get_order("lex").key(b)
    assert get_order("grevlex").key(b) > get_order("grevlex").key(a)
    # grevlex: x1*x3 < x2^2 ; grlex ties broken lexicographically: x1*x3 > x2^2
    assert get_order("grevlex").key((1, 0, 1)) < get_order("grevlex").key((0, 2, 0))
    assert get_order("grlex").key((1, 0, 1)) > get_order("grlex").key((0, 2, 0))
    blk = get_order("block(1)")
    assert blk.key((1, 0, 0)) > blk.key((0, 5, 5))


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(3, 3)) == 10
    assert len(monomials_of_degree(4, 2)) == 10


def test_subs_and_diff():
    f = parse_poly("x1^2*x2+3*x2", None, QQ)
    assert f.diff("x1") == parse_poly("2*x1*x2", f.vars, QQ)
    assert f.subs({"x2": 2}).subs({"x1": 1}).constant_value() == QQ(8).value
    assert f.degree_in(["x1"]) == 2 and f.is_homogeneous() is False
