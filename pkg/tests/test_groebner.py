import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from polystrength.fields import GF, QQ
from polystrength.groebner import (
    buchberger,
    eliminate,
    ideal_member,
    radical_member,
    solvable_over_closure,
)
from polystrength.oracles import point_search
from polystrength.poly import Poly, parse_poly

VARS = ("x", "y", "z")


def P(text, K=QQ, vs=VARS):
    return parse_poly(text, vs, K)


def system(K, n_polys=3, max_deg=2, nvars=3):
    vs = VARS[:nvars]
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars).filter(lambda e: sum(e) <= max_deg)
    poly = st.dictionaries(exps, st.integers(-3, 3), min_size=1, max_size=4).map(
        lambda d: Poly(K, vs, {e: K(c).value for e, c in d.items()})
    )
    return st.lists(poly, min_size=1, max_size=n_polys).map(lambda ps: [p for p in ps if not p.is_zero()]).filter(bool)


def sympy_basis(gens, order):
    xs = sympy.symbols(gens[0].vars)
    K = gens[0].field
    exprs = [sympy.sympify(str(g).replace("^", "**")) for g in gens]
    kw = {"modulus": K.characteristic} if K.characteristic else {}
    G = sympy.groebner(exprs, *xs, order=order, **kw)
    out = set()
    for g in G.exprs:
        p = parse_poly(str(sympy.expand(g)).replace("**", "^"), gens[0].vars, K)
        out.add(p / p.leading_coefficient(order))
    return out


def test_examples():
    assert buchberger([P("x")]).polys == [P("x")]
    assert buchberger([P("x^2-1"), P("x-1")]).polys == [P("x-1")]
    assert buchberger([P("x"), P("x-1")]).is_unit()
    assert buchberger([], field=QQ, variables=VARS).is_zero_ideal()


def test_membership_examples():
    assert ideal_member(P("x-1"), buchberger([P("x-1")]))
    assert not ideal_member(P("x"), buchberger([P("x^2")]))
    vs = ("x", "w")
    G = buchberger([parse_poly("z^2-w", ("z", "w"), QQ).rename({"z": "x"})])
    assert ideal_member(parse_poly("x^2-w", vs, QQ), G)


def test_closure_examples():
    assert solvable_over_closure([P("x^2+1")])
    assert not solvable_over_closure([P("x"), P("x-1")])


def test_eliminate_examples():
    vs = ("z", "w")
    G = buchberger([parse_poly("z^2-w", vs, QQ)])
    assert eliminate(G, ["w"]).is_zero_ideal()
    G = buchberger([parse_poly("z-w", vs, QQ), parse_poly("z-1", vs, QQ)])
    assert eliminate(G, ["w"]).polys == [parse_poly("w-1", ("w",), QQ)]
    G = buchberger([parse_poly("1", vs, QQ)])
    assert eliminate(G, ["w"]).is_unit()


def test_radical_examples():
    assert radical_member(P("x"), [P("x^2")])
    assert not radical_member(P("x"), [P("y")])
    assert radical_member(P("x+y"), [P("x^2"), P("y^2")])
    assert ideal_member(P("x+y") ** 3, buchberger([P("x^2"), P("y^2")]))


@pytest.mark.parametrize("K", [QQ, GF(3), GF(7)])
@pytest.mark.parametrize("order", ["grevlex", "lex"])
@given(data=st.data())
def test_agrees_with_sympy(K, order, data):
    gens = data.draw(system(K))
    G = buchberger(gens, order)
    assert set(G.polys) == sympy_basis(gens, order)


@given(system(GF(5), 4, 3))
def test_basis_invariants(gens):
    G = buchberger(gens)
    for g in gens:
        assert ideal_member(g, G)
    # auto-reduced: no leading monomial divides a term of another element
    lms = G.leading_monomials()
    for i, p in enumerate(G.polys):
        assert p.leading_coefficient(G.order) == GF(5)(1)
        for j, lm in enumerate(lms):
            if i != j:
                assert not any(all(a <= b for a, b in zip(lm, e)) for e in p.terms)
    # every S-polynomial reduces to zero, and re-running changes nothing
    assert buchberger(G.polys) == G
    for a, b in itertools.combinations(G.polys, 2):
        la, lb = a.leading_monomial(G.order), b.leading_monomial(G.order)
        l = tuple(max(u, v) for u, v in zip(la, lb))
        ma = Poly(GF(5), a.vars, {tuple(x - y for x, y in zip(l, la)): 1})
        mb = Poly(GF(5), b.vars, {tuple(x - y for x, y in zip(l, lb)): 1})
        assert G.reduce(ma * a - mb * b).is_zero()


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_closure_solvability_matches_point_search(p, data):
    K = GF(p)
    nvars = data.draw(st.integers(1, 3))
    gens = data.draw(system(K, 3, 2, nvars))
    vs = VARS[:nvars]
    found = any(
        point_search(GF(p ** k), [g.change_field(GF(p ** k)) for g in gens], vs) is not None
        for k in (1, 2, 3)
    )
    assert solvable_over_closure(gens) == found


@given(system(QQ, 3, 2))
def test_elimination_is_monotone(gens):
    G = buchberger(gens)
    one_step = eliminate(G, ["z"])
    two_step = eliminate(eliminate(G, ["y", "z"]), ["z"])
    assert one_step == two_step
