from polystrength.fields import GF, QQ, parse_field_spec
from polystrength.poly import parse_poly
from polystrength.solve import NONE, SOLUTION, UNDECIDED, rational_solution


def P(text, vs, K=QQ):
    return parse_poly(text, vs, K)


def check(gens, point):
    K = gens[0].field
    vals = {v: K.element(c) for v, c in point.items()}
    return all(g.subs(vals).is_zero() for g in gens)


def test_zero_dimensional_rational_point():
    vs = ("x", "y")
    gens = [P("x^2-2*y", vs), P("y-2", vs)]
    r = rational_solution(gens, vs)
    assert r.status == SOLUTION and check(gens, r.point)


def test_no_rational_point_reports_obstruction():
    vs = ("x",)
    r = rational_solution([P("x^2+1", vs)], vs)
    assert r.status == NONE
    assert r.obstructions and len(r.obstructions[0]) == 3


def test_inconsistent():
    vs = ("x", "y")
    assert rational_solution([P("x", vs), P("x-1", vs)], vs).status == NONE


def test_positive_dimensional_specialisation():
    vs = ("x", "y", "z")
    gens = [P("x*y-z", vs)]
    r = rational_solution(gens, vs)
    assert r.status == SOLUTION and check(gens, r.point)


def test_over_finite_and_function_fields():
    K = GF(5)
    vs = ("x", "y")
    gens = [P("x^2-4", vs, K), P("x*y-1", vs, K)]
    r = rational_solution(gens, vs)
    assert r.status == SOLUTION and check(gens, r.point)
    L = parse_field_spec("GF(2)(t)")
    r = rational_solution([P("x^2+t", ("x",), L)], ("x",))
    assert r.status == NONE


def test_statuses_are_distinct():
    assert len({SOLUTION, NONE, UNDECIDED}) == 3
