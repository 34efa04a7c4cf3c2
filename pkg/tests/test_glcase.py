import itertools
import random

import pytest
from hypothesis import given, strategies as st

from polystrength.fields import GF
from polystrength.glcase import (
    Sum,
    Sym,
    Twist,
    gl_act,
    level_basis,
    ns_example_check,
    ns_example_ideal,
    shift_decompose,
    span_stable,
)
from polystrength.groebner import buchberger, eliminate
from polystrength.poly import Poly


def test_level_basis_examples():
    assert level_basis(Sym(2), 2) == ["e1^2", "e1*e2", "e2^2"]
    assert level_basis(Twist(Sym(1), 2), 3) == ["e1^(2)", "e2^(2)", "e3^(2)"]
    assert Sum(Sym(1), Sym(2)).dim(1) == 2
    assert len(level_basis(Sum(Sym(1), Sym(1)), 2)) == 4


@given(st.integers(0, 5), st.integers(0, 4))
def test_sym_dimension_formula(a, n):
    S = Sym(a)
    assert S.dim(n) == len(set(S.basis(n)))


@given(st.integers(0, 5), st.integers(0, 4), st.integers(0, 4))
def test_shift_decomposition_sums_to_total(a, m, n):
    pieces = shift_decompose(a, m, n)
    assert sum(d for _, d in pieces) == Sym(a).dim(m + n)
    assert pieces[0] == (0, Sym(a).dim(n))


def test_shift_examples():
    assert shift_decompose(2, 1, 2) == [(0, 3), (1, 2), (2, 1)]
    assert [d for _, d in shift_decompose(1, 1, 5)] == [5, 1]
    assert sum(d for _, d in shift_decompose(3, 2, 2)) == 20


def test_twist_degree_law():
    for P in (Sym(1), Sym(3), Sum(Sym(1), Sym(2)), Twist(Sym(2), 2)):
        for q in (1, 2, 4, 3):
            assert Twist(P, q).degree() == q * P.degree()
            assert Twist(P, q).dim(3) == P.dim(3)


def test_ns_ideal_examples():
    assert ns_example_ideal(0) == ((), [])
    _, gens = ns_example_ideal(1)
    assert [str(g) for g in gens] == ["z1^2+w1111"]
    _, gens = ns_example_ideal(2)
    assert [str(g) for g in gens] == ["z1^2+w1111", "z2^2+w2222"]


def test_ns_ideal_against_multinomial_oracle():
    # coefficient of e^alpha in v^4 is the multinomial 4!/prod(k!), which is
    # odd only for alpha = 4*e_i
    for n in (2, 3, 4):
        vs, gens = ns_example_ideal(n)
        odd = [a for a in itertools.combinations_with_replacement(range(1, n + 1), 4) if len(set(a)) == 1]
        assert len(gens) == len(odd) == n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ns_check_passes(n):
    rep = ns_example_check(n)
    assert rep.passed and rep.injective and rep.squares_in_image
    assert rep.elimination_basis == []


def test_ns_check_rejects_bad_n():
    with pytest.raises(ValueError):
        ns_example_check(0)


def test_injectivity_test_can_fail():
    # control: adding z1 - w1111 forces w1111^2 = w1111, a relation among the w's
    K = GF(2)
    vs, gens = ns_example_ideal(1)
    extra = Poly.var(K, vs, "z1") - Poly.var(K, vs, "w1111")
    G = buchberger(gens + [extra], "block(1)")
    assert not eliminate(G, ["w1111"]).is_zero_ideal()


def _random_gl(n, rng):
    while True:
        g = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        # determinant mod 2 via elimination
        m = [row[:] for row in g]
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, n) if m[i][c]), None)
            if piv is None:
                break
            m[r], m[piv] = m[piv], m[r]
            for i in range(n):
                if i != r and m[i][c]:
                    m[i] = [(a + b) % 2 for a, b in zip(m[i], m[r])]
            r += 1
        if r == n:
            return g


@pytest.mark.parametrize("n", [2, 3])
def test_generator_span_is_gl_stable(n):
    rng = random.Random(n)
    for perm in itertools.permutations(range(n)):
        g = [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)]
        assert span_stable(n, g)
    for i, j in itertools.permutations(range(n), 2):
        g = [[int(a == b) for b in range(n)] for a in range(n)]
        g[i][j] = 1
        assert span_stable(n, g)
    for _ in range(5):
        assert span_stable(n, _random_gl(n, rng))


def test_gl_action_is_a_ring_map():
    n = 2
    K = GF(2)
    vs, gens = ns_example_ideal(n)
    g = [[1, 1], [0, 1]]
    f, h = gens
    assert gl_act(n, g, f * h) == gl_act(n, g, f) * gl_act(n, g, h)
    assert gl_act(n, [[1, 0], [0, 1]], f) == f.with_vars(gl_act(n, g, f).vars)
