"""Buchberger's algorithm with the sugar strategy and Gebauer-Moeller pair criteria.

Internally a polynomial is a monic pair ``(lm, tail)`` where ``tail`` is a list
of ``(exponent, coefficient)`` terms below the leading monomial.
"""
from __future__ import annotations

import heapq
from operator import add as _iadd
from typing import List, Sequence

from .poly import Poly, get_order


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Engine:
    """Reduction machinery bound to one field and one monomial order."""

    def __init__(self, K, order):
        self.K = K
        self.key = order.key
        self.graded = order.graded

    def negkey(self, e):
        return tuple(-x for x in self.key(e))

    def lead(self, terms):
        return max(terms, key=self.key)

    def monic(self, terms):
        """dict -> (lm, tail) with leading coefficient one."""
        K = self.K
        lm = self.lead(terms)
        inv = K.inv(terms[lm])
        tail = [(e, K.mul(inv, c)) for e, c in terms.items() if e != lm]
        tail.sort(key=lambda t: self.key(t[0]), reverse=True)
        return lm, tail

    def normal_form(self, terms, basis):
        """Fully reduce a term dict modulo monic ``basis``; returns a dict."""
        K = self.K
        mul, sub, neg, is_zero = K.mul, K.sub, K.neg, K.is_zero
        negkey = self.negkey
        h = dict(terms)
        heap = [(negkey(e), e) for e in h]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = h.pop(e, None)
            if c is None:
                continue
            for lm, tail in basis:
                if _divides(lm, e):
                    shift = tuple(x - y for x, y in zip(e, lm))
                    for te, tc in tail:
                        ne = tuple(map(_iadd, te, shift))
                        v = mul(c, tc)
                        old = h.get(ne)
                        if old is None:
                            h[ne] = neg(v)
                            heapq.heappush(heap, (negkey(ne), ne))
                        else:
                            nv = sub(old, v)
                            if is_zero(nv):
                                del h[ne]
                            else:
                                h[ne] = nv
                    break
            else:
                out[e] = c
        return out

    def spoly(self, f, g):
        K = self.K
        (lf, tf), (lg, tg) = f, g
        l = _lcm(lf, lg)
        mf = tuple(x - y for x, y in zip(l, lf))
        mg = tuple(x - y for x, y in zip(l, lg))
        out = {}
        for e, c in tf:
            out[tuple(map(_iadd, e, mf))] = c
        for e, c in tg:
            ne = tuple(map(_iadd, e, mg))
            if ne in out:
                v = K.sub(out[ne], c)
                if K.is_zero(v):
                    del out[ne]
                else:
                    out[ne] = v
            else:
                out[ne] = K.neg(c)
        return out


def _is_constant(lm):
    return not any(lm)


def _buchberger_raw(engine: _Engine, polys: List[dict]):
    """Reduced Groebner basis of the given term dicts, as (lm, tail) pairs."""
    key = engine.key
    # sugar for graded orders; smallest lcm first otherwise (sugar stalls on lex)
    graded = engine.graded
    basis = []  # all polys ever added: (lm, tail)
    sugar = []
    active: List[int] = []
    pairs = []  # heap of (sugar, key(lcm), i, j), first two swapped if not graded

    def update(hi):
        nonlocal active, pairs
        lh = basis[hi][0]
        cands = list(active)
        keep = []
        # Gebauer-Moeller criterion M and F on new pairs
        while cands:
            g1 = cands.pop()
            l1 = _lcm(lh, basis[g1][0])
            if _disjoint(lh, basis[g1][0]):
                keep.append(g1)
                continue
            dominated = False
            for g2 in cands + keep:
                if _divides(_lcm(lh, basis[g2][0]), l1):
                    dominated = True
                    break
            if not dominated:
                keep.append(g1)
        new_pairs = [g for g in keep if not _disjoint(lh, basis[g][0])]
        # criterion B on old pairs
        old = []
        for item in pairs:
            _, _, i, j = item
            l = _lcm(basis[i][0], basis[j][0])
            if (
                _divides(lh, l)
                and _lcm(basis[i][0], lh) != l
                and _lcm(basis[j][0], lh) != l
            ):
                continue
            old.append(item)
        for g in new_pairs:
            l = _lcm(lh, basis[g][0])
            s = max(sugar[hi] + sum(l) - sum(lh), sugar[g] + sum(l) - sum(basis[g][0]))
            old.append((s, key(l), g, hi) if graded else (key(l), s, g, hi))
        heapq.heapify(old)
        pairs = old
        active = [g for g in active if not _divides(lh, basis[g][0])] + [hi]

    def add(terms, sg):
        f = engine.monic(terms)
        basis.append(f)
        sugar.append(sg)
        update(len(basis) - 1)
        return f

    # inter-reduce the input first, lowest leading term first
    inputs = [p for p in polys if p]
    inputs.sort(key=lambda t: key(engine.lead(t)))
    for terms in inputs:
        r = engine.normal_form(terms, [basis[i] for i in active])
        if r:
            f = add(r, max(sum(e) for e in terms))
            if _is_constant(f[0]):
                return [f]

    while pairs:
        a, b, i, j = heapq.heappop(pairs)
        s = a if graded else b
        sp = engine.spoly(basis[i], basis[j])
        if not sp:
            continue
        r = engine.normal_form(sp, [basis[k] for k in active])
        if r:
            f = add(r, s)
            if _is_constant(f[0]):
                return [f]

    # auto-reduce
    current = [basis[i] for i in active]
    current.sort(key=lambda f: key(f[0]))
    out = []
    for idx, (lm, tail) in enumerate(current):
        others = current[:idx] + current[idx + 1:]
        red = engine.normal_form(dict(tail), others) if tail else {}
        t = sorted(red.items(), key=lambda t: key(t[0]), reverse=True)
        out.append((lm, t))
    return out


class GroebnerBasis:
    """A reduced Groebner basis together with the ideal's original generators."""

    def __init__(self, polys: Sequence[Poly], order, generators: Sequence[Poly], field, variables):
        self.polys = list(polys)
        self.order = get_order(order)
        self.generators = list(generators)
        self.field = field
        self.vars = tuple(variables)
        self._engine = _Engine(field, self.order)
        self._raw = [self._engine.monic(p.terms) for p in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.polys))}], order={self.order.name})"

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.vars == other.vars
            and self.order == other.order
            and set(self.polys) == set(other.polys)
        )

    def __hash__(self):
        return hash((self.vars, self.order, frozenset(self.polys)))

    def is_unit(self):
        """True if the ideal is the whole ring."""
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def is_zero_ideal(self):
        return not self.polys

    def reduce(self, f: Poly) -> Poly:
        f = f.with_vars(self.vars) if f.vars != self.vars else f
        return Poly(self.field, self.vars, self._engine.normal_form(f.terms, self._raw))

    def leading_monomials(self):
        return [p.leading_monomial(self.order) for p in self.polys]

    def as_strings(self):
        return [str(p) for p in self.polys]


def _common_ring(gens):
    if not gens:
        raise ValueError("cannot infer a ring from an empty generator list")
    K = gens[0].field
    variables = list(gens[0].vars)
    for g in gens[1:]:
        if g.field != K:
            raise ValueError("generators live over different fields")
        variables += [v for v in g.vars if v not in variables]
    return K, tuple(variables)


def buchberger(gens: Sequence[Poly], order=None, *, field=None, variables=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    order = get_order(order)
    gens = list(gens)
    if gens:
        K, vs = _common_ring(gens)
        if variables is not None:
            vs = tuple(variables)
        field = K
    else:
        if field is None:
            raise ValueError("an empty generator list needs an explicit field")
        vs = tuple(variables or ())
    gens = [g.with_vars(vs) for g in gens]
    engine = _Engine(field, order)
    raw = _buchberger_raw(engine, [g.terms for g in gens])
    polys = []
    for lm, tail in raw:
        terms = dict(tail)
        terms[lm] = field.one
        polys.append(Poly(field, vs, terms))
    polys.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return GroebnerBasis(polys, order, gens, field, vs)


def ideal_member(f: Poly, G: GroebnerBasis) -> bool:
    return G.reduce(f).is_zero()


def solvable_over_closure(gens: Sequence[Poly]) -> bool:
    """Weak Nullstellensatz: a common zero exists over the algebraic closure
    iff the reduced basis is not {1}."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return True
    return not buchberger(gens).is_unit()


def eliminate(G: GroebnerBasis, keep: Sequence[str]) -> GroebnerBasis:
    """Basis of the elimination ideal in the ``keep`` variables."""
    keep = [v for v in G.vars if v in keep] + [v for v in keep if v not in G.vars]
    drop = [v for v in G.vars if v not in keep]
    ring = drop + keep
    full = buchberger([g.with_vars(ring) for g in G.polys], f"block({len(drop)})",
                      field=G.field, variables=ring)
    kept = []
    for p in full.polys:
        if not any(any(e[: len(drop)]) for e in p.terms):
            kept.append(Poly(G.field, keep, {e[len(drop):]: c for e, c in p.terms.items()}))
    return buchberger(kept, "grevlex", field=G.field, variables=keep)


def radical_member(f: Poly, gens: Sequence[Poly]) -> bool:
    """Rabinowitsch: some power of f lies in the ideal iff 1 is in (gens, 1 - u f)."""
    K, vs = _common_ring(list(gens) + [f])
    u = "u"
    while u in vs or u in K.gens:
        u += "0"
    ring = vs + (u,)
    uu = Poly.var(K, ring, u)
    extra = Poly.constant(K, ring, 1) - uu * f.with_vars(ring)
    return buchberger([g.with_vars(ring) for g in gens] + [extra]).is_unit()
