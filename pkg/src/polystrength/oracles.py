"""Brute-force reference computations, deliberately independent of the solvers.

Nothing here touches the theta systems, Groebner bases or the field classes'
higher machinery; inputs are plain exponent dictionaries.
"""
from __future__ import annotations

import itertools
from math import comb
from typing import Dict, Iterable, List, Tuple


def _monomials(n, d):
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            out.append(tuple(acc + [left]))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, acc + [k])

    rec(0, d, [])
    return out


class GF2FormSpace:
    """Forms of degree d in n variables over GF(2) as bitmasks."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.monos = _monomials(n, d)
        self.index = {m: i for i, m in enumerate(self.monos)}

    def mask(self, terms: Dict[Tuple[int, ...], int]) -> int:
        out = 0
        for e, c in terms.items():
            if c % 2:
                out ^= 1 << self.index[tuple(e)]
        return out

    def terms(self, mask: int) -> Dict[Tuple[int, ...], int]:
        return {m: 1 for i, m in enumerate(self.monos) if mask >> i & 1}


def _gf2_forms(n, d):
    monos = _monomials(n, d)
    for bits in range(1, 1 << len(monos)):
        yield {m: 1 for i, m in enumerate(monos) if bits >> i & 1}


def _gf2_product(a, b):
    out = {}
    for ea in a:
        for eb in b:
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) ^ 1
    return {e: 1 for e, c in out.items() if c}


def gf2_strength_table(n: int, d: int) -> Dict[int, int]:
    """Strength of every form of degree d in n variables over GF(2), by
    breadth-first search over XOR sums of products g*h, 0 < deg g < d."""
    space = GF2FormSpace(n, d)
    products = set()
    for a in range(1, d // 2 + 1):
        for g in _gf2_forms(n, a):
            for h in _gf2_forms(n, d - a):
                m = space.mask(_gf2_product(g, h))
                if m:
                    products.add(m)
    dist = {0: 0}
    frontier = [0]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for m in frontier:
            for p in products:
                x = m ^ p
                if x not in dist:
                    dist[x] = level
                    nxt.append(x)
        frontier = nxt
    return dist


_TABLES: Dict[Tuple[int, int], Dict[int, int]] = {}


def gf2_strength(terms: Dict[Tuple[int, ...], int], n: int, d: int) -> int:
    key = (n, d)
    if key not in _TABLES:
        _TABLES[key] = gf2_strength_table(n, d)
    return _TABLES[key][GF2FormSpace(n, d).mask(terms)]


def gfp_strength_small(terms: Dict[Tuple[int, ...], int], n: int, d: int, p: int, s_max: int = 3):
    """Strength over GF(p) by enumerating all s-tuples of products; tiny sizes only."""
    monos = _monomials(n, d)
    idx = {m: i for i, m in enumerate(monos)}
    target = tuple(terms.get(m, 0) % p for m in monos)
    if not any(target):
        return 0

    def forms(k):
        ms = _monomials(n, k)
        for cs in itertools.product(range(p), repeat=len(ms)):
            if any(cs):
                yield {m: c for m, c in zip(ms, cs) if c}

    prods = set()
    for a in range(1, d // 2 + 1):
        for g in forms(a):
            for h in forms(d - a):
                v = [0] * len(monos)
                for eg, cg in g.items():
                    for eh, ch in h.items():
                        e = tuple(x + y for x, y in zip(eg, eh))
                        v[idx[e]] = (v[idx[e]] + cg * ch) % p
                if any(v):
                    prods.add(tuple(v))
    reach = {tuple([0] * len(monos))}
    for s in range(1, s_max + 1):
        reach = {tuple((a + b) % p for a, b in zip(r, q)) for r in reach for q in prods}
        if target in reach:
            return s
    return None


def expand_shift(terms: Dict[Tuple[int, ...], int], fiber: Iterable[int], p: int = 0):
    """Components of f(x + y) by y-degree, with integer (or mod p) coefficients.

    Variables in ``fiber`` are shifted; the result maps i to a dict over
    exponent pairs (e_x, e_y), computed with binomial coefficients directly.
    """
    fiber = list(fiber)
    out: Dict[int, Dict] = {}
    for e, c in terms.items():
        choices = [range(e[j] + 1) if j in fiber else (0,) for j in range(len(e))]
        for ks in itertools.product(*choices):
            coef = c
            for j, k in enumerate(ks):
                coef *= comb(e[j], k)
            if p:
                coef %= p
            if not coef:
                continue
            ex = tuple(a - k for a, k in zip(e, ks))
            ey = tuple(ks[j] for j in fiber)
            comp = out.setdefault(sum(ey), {})
            key = (ex, ey)
            comp[key] = comp.get(key, 0) + coef
            if p:
                comp[key] %= p
    return {i: {k: v for k, v in comp.items() if v} for i, comp in out.items()
            if any(comp.values())}


def diagonal_quadratic_rank(coeffs: List[int], p: int) -> int:
    return sum(1 for c in coeffs if c % p)


def point_search(K, polys, variables):
    """First common zero of ``polys`` with coordinates in the finite field K, or None.

    Polynomials are evaluated term by term on internal field values.
    """
    compiled = [[(e, c) for e, c in p.with_vars(variables).terms.items()] for p in polys]
    elems = list(K.elements())
    for point in itertools.product(elems, repeat=len(variables)):
        for terms in compiled:
            acc = K.zero
            for e, c in terms:
                v = c
                for x, k in zip(point, e):
                    if k:
                        v = K.mul(v, K.pow(x, k))
                acc = K.add(acc, v)
            if not K.is_zero(acc):
                break
        else:
            return point
    return None
