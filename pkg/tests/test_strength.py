import random

import pytest
import sympy
from hypothesis import given, strategies as st

from polystrength.fields import GF, QQ, parse_field_spec
from polystrength.oracles import gf2_strength, gfp_strength_small
from polystrength.poly import Poly, monomials_of_degree, parse_poly
from polystrength.strength import (
    BOUNDS_ONLY,
    EXACT,
    EXHAUSTION,
    IRREDUCIBILITY_BOUND,
    RANK_BOUND,
    DegreePattern,
    Form,
    PreconditionError,
    astr,
    astr_report,
    extension_inequality_check,
    extension_lift_search,
    gap_bound,
    patterns,
    quadratic_rank,
    str_bounds,
    str_exact_finite_field,
    strength,
    theta_system,
)


def F(text, K=QQ, vs=None):
    return Form.parse(text, K, vs)


def eqs(polys):
    return sorted(str(p) for p in polys)


# --- theta systems


def test_theta_system_examples():
    f = F("x1*x2")
    P = DegreePattern.of(2, [1])
    assert eqs(theta_system(f, 1, P)) == sorted(["a1*b1", "a2*b1+a1*b2-1", "a2*b2"])
    g = F("x1^2+x2^2")
    assert eqs(theta_system(g, 1, P)) == sorted(["a1*b1-1", "a2*b1+a1*b2", "a2*b2-1"])
    zero_s = theta_system(F("x1^2+3*x1*x2"), 0, DegreePattern.of(2, []))
    assert sorted(p.constant_value() for p in zero_s) == sorted([QQ(-1).value, QQ(-3).value, QQ.zero])
    with pytest.raises(ValueError):
        theta_system(f, 2, P)


def test_patterns_sorted_by_unknowns():
    ps = patterns(4, 2, 3)
    counts = [p.unknown_count(3) for p in ps]
    assert counts == sorted(counts)
    assert all(p.s == 2 and p.d == 4 for p in ps)
    assert DegreePattern.of(4, [3, 1]) == DegreePattern.of(4, [1, 3])


def test_theta_system_solution_reproduces_form():
    # a solution of the theta system is a decomposition: plug in x1*x2 = (x1)(x2)
    f = F("x1*x2")
    system = theta_system(f, 1, DegreePattern.of(2, [1]))
    point = {"a1": 1, "a2": 0, "b1": 0, "b2": 1}
    assert all(p.subs(point).is_zero() for p in system)


# --- absolute strength


def test_astr_examples():
    assert astr(F("x1^2+x2^2")) == 1
    assert astr(F("x1^2+x2^2"), method="groebner") == 1
    assert astr(F("t1*x1^2+t2*x2^2", parse_field_spec("GF(2)(t1,t2)"))) == 1
    diag = F("x1^2+2*x2^2+3*x3^2+5*x4^2")
    assert astr(diag) == 2 and astr(diag, method="groebner") == 2
    # matrix rank 4 forces at least two products of rank <= 2 each
    assert quadratic_rank(diag) == 4


def test_astr_zero_and_low_degree():
    z = Form(Poly(QQ, ("x1",)), degree=3)
    r = astr_report(z)
    assert r.value == 0 and r.zero_form
    with pytest.raises(ValueError):
        F("x1+x2")
    with pytest.raises(ValueError):
        F("x1^2+x2")


def test_astr_respects_monomial_bound():
    f = F("x1^3+x2^3+x3^3")
    r = astr_report(f, method="groebner")
    assert r.value <= 3 and r.value == 2  # Fermat cubic: x^3+y^3 splits over the closure


def test_fast_path_refuses_char_2():
    with pytest.raises(ValueError):
        astr_report(F("x1*x2", GF(2)), method="fast")


# --- exact strength over finite fields


def test_exact_examples():
    c = str_exact_finite_field(F("x1*x2+x3*x4", GF(2)))
    assert c.status == EXACT and c.upper == 2 and c.lower_reason == EXHAUSTION and c.verify()
    c = str_exact_finite_field(F("x1^2+x2^2", GF(2)))
    assert c.upper == 1 and c.verify()
    g, h = c.witness[0]
    assert g == h == parse_poly("x1+x2", ("x1", "x2"), GF(2))
    c = str_exact_finite_field(F("x1^3+x2^3", GF(3)))
    assert c.upper == 1 and c.verify()


def test_exact_budget_exceeded_gives_bounds_only():
    f = F("x1*x2*x3+x4*x5*x6+x1*x4*x5", GF(3))
    c = str_exact_finite_field(f, budget=10)
    assert c.status == BOUNDS_ONLY and c.lower <= c.upper and c.verify()


def test_exact_needs_finite_field():
    with pytest.raises(ValueError):
        str_exact_finite_field(F("x1*x2"))


def gf2_cubic(bits):
    K = GF(2)
    monos = monomials_of_degree(3, 3)
    return Form(Poly(K, ("x1", "x2", "x3"), {m: 1 for i, m in enumerate(monos) if bits >> i & 1}))


@given(st.integers(1, 1023))
def test_gf2_cubics_against_bfs_oracle(bits):
    f = gf2_cubic(bits)
    c = str_exact_finite_field(f)
    assert c.exact and c.verify()
    assert c.upper == gf2_strength({e: 1 for e in f.poly.terms}, 3, 3)
    assert astr(f) <= c.upper


def test_gf2_quadratics_in_four_variables_against_oracle():
    K = GF(2)
    rng = random.Random(7)
    monos = monomials_of_degree(4, 2)
    for _ in range(40):
        bits = rng.randrange(1, 1 << len(monos))
        f = Form(Poly(K, ("x1", "x2", "x3", "x4"), {m: 1 for i, m in enumerate(monos) if bits >> i & 1}))
        assert str_exact_finite_field(f).upper == gf2_strength({e: 1 for e in f.poly.terms}, 4, 2)


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4).filter(any))
def test_gf3_binary_cubics_against_enumeration(cs):
    K = GF(3)
    monos = monomials_of_degree(2, 3)
    f = Form(Poly(K, ("x1", "x2"), {m: c for m, c in zip(monos, cs) if c}))
    want = gfp_strength_small({m: c for m, c in zip(monos, cs)}, 2, 3, 3)
    assert str_exact_finite_field(f).upper == want


def test_astr_equals_small_extension_strength():
    # closure points of these systems already live in GF(2^k), k <= 3
    rng = random.Random(11)
    for _ in range(12):
        f = gf2_cubic(rng.randrange(1, 1024))
        best = min(str_exact_finite_field(f.change_field(GF(2 ** k))).upper for k in (1, 2, 3))
        assert astr(f) == best


def test_strength_monotone_under_extension():
    rng = random.Random(3)
    for _ in range(10):
        f = gf2_cubic(rng.randrange(1, 1024))
        s2 = str_exact_finite_field(f).upper
        s4 = str_exact_finite_field(f.change_field(GF(4))).upper
        assert astr(f) <= s4 <= s2


# --- bounds over arbitrary fields


def test_bounds_examples():
    K = parse_field_spec("GF(2)(t1,t2)")
    c = str_bounds(F("t1*x1^2+t2*x2^2", K))
    assert (c.lower, c.upper, c.status) == (2, 2, EXACT)
    assert c.lower_reason == IRREDUCIBILITY_BOUND and c.verify()
    c = str_bounds(F("x1^2+x2^2"))
    assert (c.lower, c.upper, c.status) == (2, 2, EXACT) and c.verify()
    c = str_bounds(F("x1^2"))
    assert (c.lower, c.upper) == (1, 1)


def test_bounds_quadratic_rank_tag():
    c = str_bounds(F("x1*x2+x3*x4"))
    assert c.exact and c.upper == 2 and c.lower_reason == RANK_BOUND


def test_strength_dispatch():
    assert strength(F("x1*x2+x3*x4", GF(2))).lower_reason == EXHAUSTION
    assert strength(F("x1^2+x2^2")).exact


# --- extensions


def test_lift_examples():
    lift = extension_lift_search(F("x1^2+x2^2"), 1, 2)
    assert lift.degree == 2 and lift.field.spec == "QQ[i]/(i^2+1)"
    (g, h), = lift.witness
    i = lift.field.gen("i")
    x1, x2 = (Poly.var(lift.field, ("x1", "x2"), v) for v in ("x1", "x2"))
    assert {g, h} == {x1 + x2 * i, x1 - x2 * i}

    K = parse_field_spec("GF(2)(t1,t2)")
    f = F("t1*x1^2+t2*x2^2", K)
    lift = extension_lift_search(f, 1, 2)
    assert lift.degree == 2
    r = lift.field.gen("r")
    assert r ** 2 == lift.field.gen("t2") / lift.field.gen("t1")
    (g, h), = lift.witness
    assert g * h == f.change_field(lift.field).poly

    lift = extension_lift_search(F("x1*x2", GF(5)), 1, 3)
    assert lift.degree == 1 and lift.field == GF(5)


def test_lift_precondition():
    with pytest.raises(PreconditionError):
        extension_lift_search(F("x1*x2+x3*x4"), 1, 2)


def test_lift_over_finite_field():
    f = F("x1^2+x1*x2+x2^2", GF(2))  # irreducible over GF(2), splits over GF(4)
    lift = extension_lift_search(f, 1, 2)
    assert lift.degree == 2 and lift.field.is_finite()


def test_inequality_examples():
    Ki = parse_field_spec("QQ[i]/(i^2+1)")
    r = extension_inequality_check(F("x1^2+x2^2"), Ki)
    assert r["holds"] and r["degree"] == 2 and r["str_K"] == [2, 2] and r["str_L"] == [1, 1]
    r = extension_inequality_check(F("x1*x2+x3^2", GF(3)), GF(3))
    assert r["holds"] and r["str_K"] == r["str_L"]
    rng = random.Random(9)
    monos = monomials_of_degree(3, 3)
    for _ in range(8):
        terms = {m: rng.randrange(3) for m in monos}
        terms = {m: c for m, c in terms.items() if c}
        if not terms:
            continue
        f = Form(Poly(GF(3), ("x1", "x2", "x3"), terms))
        r = extension_inequality_check(f, GF(9))
        assert r["holds"] and r["exact"]


def test_gap_bound_examples():
    assert gap_bound(2, 1) == 2
    assert gap_bound(1, 5) == 5
    assert gap_bound(8, 3) == 24


# --- quadratic fast path against an independent rank computation


@pytest.mark.parametrize("p", [3, 5, 0])
@given(data=st.data())
def test_quadratic_rank_against_sympy(p, data):
    K = GF(p) if p else QQ
    n = 3
    vs = tuple(f"x{i}" for i in range(1, n + 1))
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
    monos = monomials_of_degree(n, 2)
    terms = {m: K(c).value for m, c in zip(monos, coeffs) if K(c) != K(0)}
    if not terms:
        return
    f = Form(Poly(K, vs, terms))
    M = sympy.zeros(n, n)
    for m, c in zip(monos, coeffs):
        idx = [i for i, k in enumerate(m) for _ in range(k)]
        if idx[0] == idx[1]:
            M[idx[0], idx[0]] += 2 * c
        else:
            M[idx[0], idx[1]] += c
            M[idx[1], idx[0]] += c
    rank = _rank_mod_p(M, p) if p else M.rank()
    assert quadratic_rank(f) == rank
    assert astr(f) == -(-rank // 2)


def _rank_mod_p(M, p):
    rows = [[int(x) % p for x in M.row(i)] for i in range(M.rows)]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                t = rows[i][c]
                rows[i] = [(a - t * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3).filter(any))
def test_quadratic_fast_path_matches_nullstellensatz(cs):
    K = GF(5)
    f = Form(Poly(K, ("x1", "x2", "x3"), {m: K(c).value for m, c in zip(monomials_of_degree(3, 2)[::2], cs) if c}))
    assert astr_report(f, method="fast").value == astr_report(f, method="groebner").value


def test_certificate_dict_shape():
    d = str_bounds(F("x1^2+x2^2")).to_dict()
    assert d["status"] == EXACT and d["lower"]["reason"] == IRREDUCIBILITY_BOUND
    assert d["upper"]["witness"] and d["field"] == "QQ"
