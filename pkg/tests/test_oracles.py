"""Sanity checks of the brute-force references on hand-computed values."""
from collections import Counter

from polystrength.fields import GF
from polystrength.oracles import (
    diagonal_quadratic_rank,
    expand_shift,
    gf2_strength,
    gf2_strength_table,
    gfp_strength_small,
    point_search,
)
from polystrength.poly import parse_poly


def test_gf2_binary_quadratics_by_hand():
    # forms in x1, x2 of degree 2 over GF(2): x1^2, x1x2, x2^2 and sums
    table = gf2_strength_table(2, 2)
    assert len(table) == 8 and table[0] == 0
    # every nonzero binary quadratic over GF(2) is a product: x1^2+x1x2+x2^2 is not
    irreducible = gf2_strength({(2, 0): 1, (1, 1): 1, (0, 2): 1}, 2, 2)
    assert irreducible == 2
    assert gf2_strength({(2, 0): 1, (0, 2): 1}, 2, 2) == 1  # (x1+x2)^2


def test_gf2_cubic_table_shape():
    table = gf2_strength_table(3, 3)
    assert len(table) == 1024
    assert max(table.values()) == 3
    assert gf2_strength({(1, 1, 1): 1}, 3, 3) == 1
    c = Counter(table.values())
    assert c[0] == 1


def test_gfp_small():
    assert gfp_strength_small({(1, 1): 1}, 2, 2, 3) == 1
    assert gfp_strength_small({(2, 0): 1, (0, 2): 1}, 2, 2, 3) == 2  # x^2+y^2, -1 not a square mod 3
    assert gfp_strength_small({(2, 0): 1, (0, 2): 1}, 2, 2, 5) == 1  # -1 = 2^2 mod 5


def test_expand_shift():
    comps = expand_shift({(2,): 1}, [0])
    assert comps == {0: {((2,), (0,)): 1}, 1: {((1,), (1,)): 2}, 2: {((0,), (2,)): 1}}
    assert 1 not in expand_shift({(2,): 1}, [0], 2)


def test_point_search_and_rank():
    K = GF(4)
    f = parse_poly("x^2+x+1", ("x",), K)
    assert point_search(K, [f], ("x",)) is not None
    g = parse_poly("x^2+x+1", ("x",), GF(2))
    assert point_search(GF(2), [g], ("x",)) is None
    assert diagonal_quadratic_rank([1, 0, 3, 5], 5) == 2
