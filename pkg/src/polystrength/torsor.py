"""Calculus on a split torsor algebra B = A[x_1, ..., x_n].

The vector group acts by translating the fiber variables, so the coaction is
f -> f(x + y) with a fresh shadow variable y_j for each fiber variable x_j.
Its component of shadow degree i is Delta_i(f).

The second half of the module is a finite model of the shift of Sym^d:
coordinates z_m on Sym^d(U + V) indexed by monomials in a basis u_1..u_m of U
and e_1..e_n of V, the one-parameter family phi_t = 1 + t*phi for phi: U -> V,
and the witness w = f_d^phi whose translation behaviour is checked exactly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .fields import Field, char_power_exponent
from .groebner import GroebnerBasis, buchberger, ideal_member
from .poly import Poly, double_substitute, parse_poly


class TorsorError(ValueError):
    pass


def _shadow(v, letter, taken):
    cand = letter + v[1:] if v.startswith("x") else v + letter
    while cand in taken:
        cand += "'"
    return cand


class TorsorAlgebra:
    """B = A[fiber] with A generated by the base variables."""

    def __init__(self, field: Field, base: Sequence[str], fiber: Sequence[str]):
        base, fiber = tuple(base), tuple(fiber)
        if set(base) & set(fiber):
            raise TorsorError("base and fiber variables must be disjoint")
        if len(set(fiber)) != len(fiber) or len(set(base)) != len(base):
            raise TorsorError("duplicate variable names")
        self.field = field
        self.base = base
        self.fiber = fiber
        self.vars = base + fiber
        taken = set(self.vars) | set(field.gens)
        self.shadow = {}
        for v in fiber:
            s = _shadow(v, "y", taken)
            taken.add(s)
            self.shadow[v] = s
        self.shadow2 = {}
        for v in fiber:
            s = _shadow(v, "z", taken)
            taken.add(s)
            self.shadow2[v] = s

    def __repr__(self):
        return f"TorsorAlgebra({self.field}, base={list(self.base)}, fiber={list(self.fiber)})"

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self.vars, self.field)

    def element(self, f: Poly) -> Poly:
        extra = set(f.used_vars()) - set(self.vars)
        if extra:
            raise TorsorError(f"{sorted(extra)} are not variables of {self}")
        return f.with_vars(self.vars) if f.vars != self.vars else f

    @property
    def shadow_vars(self):
        return tuple(self.shadow[v] for v in self.fiber)

    def fiber_degree(self, f: Poly) -> int:
        return self.element(f).degree_in(self.fiber)


@dataclass
class DeltaExpansion:
    components: Dict[int, Poly]
    algebra: TorsorAlgebra
    shadows: Tuple[str, ...]

    def __getitem__(self, i) -> Poly:
        if i in self.components:
            return self.components[i]
        return Poly(self.algebra.field, self.algebra.vars + self.shadows)

    def total(self) -> Poly:
        out = Poly(self.algebra.field, self.algebra.vars + self.shadows)
        for c in self.components.values():
            out = out + c
        return out

    def degrees(self):
        return sorted(self.components)

    def to_dict(self):
        return {str(i): str(c) for i, c in sorted(self.components.items())}


def delta(f: Poly, T: TorsorAlgebra) -> DeltaExpansion:
    """Components of f(x + y) by total degree in the shadow variables y."""
    f = T.element(f)
    D = double_substitute(f, T.shadow)
    shadows = T.shadow_vars
    comps = {}
    for i in range(T.fiber_degree(f) + 1):
        c = D.part_of_degree_in(shadows, i)
        if not c.is_zero():
            comps[i] = c
    return DeltaExpansion(comps, T, shadows)


def _covector_values(T, r: Mapping[str, object]):
    K = T.field
    out = {}
    for v in T.fiber:
        val = r.get(v, 0)
        out[T.shadow[v]] = val if hasattr(val, "field") else K(val)
    unknown = set(r) - set(T.fiber)
    if unknown:
        raise TorsorError(f"covector mentions non-fiber variables {sorted(unknown)}")
    return out


def directional_derivative(f: Poly, r: Mapping[str, object], T: TorsorAlgebra) -> Poly:
    """Pair the shadow factor of Delta_1(f) with the covector r."""
    d1 = delta(f, T)[1]
    return d1.subs(_covector_values(T, r), T.vars)


def filtration_level(f: Poly, T: TorsorAlgebra) -> Optional[int]:
    """Least n with f in B_{<=n}; None (undefined) for f = 0."""
    f = T.element(f)
    if f.is_zero():
        return None
    return max(delta(f, T).degrees())


def init(f: Poly, T: TorsorAlgebra) -> Poly:
    """Top fiber-degree part of f."""
    n = filtration_level(f, T)
    if n is None:
        raise TorsorError("init of the zero element is undefined")
    return T.element(f).part_of_degree_in(T.fiber, n)


# ----------------------------------------------------------------------------
# Frobenius descent


@dataclass
class Descent:
    q: int
    # f = sum a * b^q with a in A and b a fiber monomial
    rewrite: List[Tuple[Poly, Poly]]
    algebra: TorsorAlgebra

    def reconstruct(self) -> Poly:
        out = Poly(self.algebra.field, self.algebra.vars)
        for a, b in self.rewrite:
            out = out + a * b ** self.q
        return out

    def to_dict(self):
        return {"q": self.q, "rewrite": [[str(a), str(b)] for a, b in self.rewrite]}


def frobenius_descend(f: Poly, T: TorsorAlgebra) -> Descent:
    """Minimal characteristic power q with Delta_q(f) != 0, and f as an
    A-combination of q-th powers of fiber monomials."""
    f = T.element(f)
    if f.degree_in(T.fiber) <= 0:
        raise TorsorError("f lies in the base ring; nothing to descend")
    p = T.field.characteristic
    D = delta(f, T)
    q = 1
    if p:
        while D[q].is_zero():
            q *= p
            if q > T.fiber_degree(f):
                raise AssertionError("no non-zero component at a characteristic power")
    for i in range(1, q):
        if not D[i].is_zero():
            raise AssertionError(f"Delta_{i} should vanish below q={q}")
    idx = [T.vars.index(v) for v in T.fiber]
    groups: Dict[Tuple[int, ...], Dict] = {}
    for e, c in f.terms.items():
        fe = tuple(e[i] for i in idx)
        if any(k % q for k in fe):
            raise AssertionError("fiber exponent not divisible by q")
        be = list(e)
        for i in idx:
            be[i] = 0
        groups.setdefault(fe, {})[tuple(be)] = c
    K = T.field
    rewrite = []
    for fe in sorted(groups, reverse=True):
        mono = [0] * len(T.vars)
        for i, k in zip(idx, fe):
            mono[i] = k // q
        rewrite.append((Poly(K, T.vars, groups[fe]), Poly(K, T.vars, {tuple(mono): K.one})))
    return Descent(q, rewrite, T)


def twisted_delta_check(f: Poly, T: TorsorAlgebra, q: int) -> bool:
    """Delta^{(q)}_i(f) == Delta_{qi}(f) for every i, where the twisted
    coaction treats X_j = x_j^q as the fiber coordinates."""
    f = T.element(f)
    p = T.field.characteristic
    if q != 1:
        if p == 0:
            raise TorsorError("q > 1 needs positive characteristic")
        char_power_exponent(q, p)
    idx = [T.vars.index(v) for v in T.fiber]
    if any(e[i] % q for e in f.terms for i in idx):
        raise TorsorError(f"some fiber exponent of {f} is not divisible by {q}")
    if f.degree_in(T.fiber) <= 0:
        return True
    # f regarded in the twisted coordinates X_j = x_j^q
    g = Poly(f.field, f.vars, {
        tuple(k // q if i in idx else k for i, k in enumerate(e)): c for e, c in f.terms.items()
    })
    twisted = delta(g, T)
    untwist = {y: Poly.var(T.field, T.vars + T.shadow_vars, y) ** q for y in T.shadow_vars}
    untwist.update({x: Poly.var(T.field, T.vars + T.shadow_vars, x) ** q for x in T.fiber})
    D = delta(f, T)
    top = T.fiber_degree(g)
    for i in range(top + 1):
        lhs = twisted[i].subs(untwist, T.vars + T.shadow_vars)
        if lhs != D[q * i]:
            return False
    return True


def coassociativity_check(f: Poly, T: TorsorAlgebra) -> bool:
    """(Delta x 1) Delta f == (1 x Delta) Delta f, compared by bidegree."""
    f = T.element(f)
    K = T.field
    ys, zs = T.shadow_vars, tuple(T.shadow2[v] for v in T.fiber)
    ring = T.vars + ys + zs
    D = double_substitute(f, T.shadow).with_vars(ring)
    left = D.subs({x: Poly.var(K, ring, x) + Poly.var(K, ring, T.shadow2[x]) for x in T.fiber}, ring)
    right = D.subs({T.shadow[x]: Poly.var(K, ring, T.shadow[x]) + Poly.var(K, ring, T.shadow2[x])
                    for x in T.fiber}, ring)
    top = T.fiber_degree(f)
    for i in range(top + 1):
        for j in range(top + 1 - i):
            a = left.part_of_degree_in(ys, i).part_of_degree_in(zs, j)
            b = right.part_of_degree_in(ys, i).part_of_degree_in(zs, j)
            if a != b:
                return False
    return True


def counit_check(f: Poly, T: TorsorAlgebra) -> bool:
    D = delta(f, T).total()
    return D.subs({y: 0 for y in T.shadow_vars}, T.vars) == T.element(f)


# ----------------------------------------------------------------------------
# the shift model of Sym^d


def _multisets(labels, d):
    return list(itertools.combinations_with_replacement(labels, d))


class SymShiftModel:
    """Coordinates on Sym^d(U + V) with dim U = m and dim V = n.

    The coordinate ``z<labels>`` is evaluation at the monomial whose factors
    are the listed basis vectors, e.g. ``zu1e2`` for u_1 e_2.
    """

    def __init__(self, field: Field, m: int, n: int, d: int = 2):
        if d < 1:
            raise ValueError("d must be positive")
        self.field = field
        self.m, self.n, self.d = m, n, d
        self.u = tuple(f"u{i}" for i in range(1, m + 1))
        self.e = tuple(f"e{k}" for k in range(1, n + 1))
        self.labels = self.u + self.e
        self.monomials = _multisets(self.labels, d)
        self.coord = {mono: "z" + "".join(mono) for mono in self.monomials}
        self.vars = tuple(self.coord[mono] for mono in self.monomials)
        self.u_block = tuple(self.coord[mo] for mo in _multisets(self.u, d))
        self.fiber = tuple(self.coord[mo] for mo in _multisets(self.e, d))
        self.base = tuple(v for v in self.vars if v not in self.fiber)
        # translations by R{V}: the fiber of the torsor Sh_U(Y) -> Sh_U(Y)/A(R)
        self.torsor = TorsorAlgebra(field, self.base, self.fiber)
        # translations by R{U}, for derivatives of f in K[Y{U}]
        self.u_torsor = TorsorAlgebra(field, tuple(v for v in self.vars if v not in self.u_block), self.u_block)

    def z(self, *labels) -> Poly:
        return Poly.var(self.field, self.vars, self.coord[tuple(sorted(labels, key=self.labels.index))])

    def poly(self, text) -> Poly:
        return parse_poly(text, self.vars, self.field)

    def rank_one_ideal(self) -> List[Poly]:
        """2x2 minors of the symmetric coordinate matrix (d = 2)."""
        if self.d != 2:
            raise ValueError("the rank-one ideal is modelled for d = 2")
        L = self.labels
        M = {(a, b): self.z(a, b) for a in L for b in L}
        gens = []
        seen = set()
        for (i, j) in itertools.combinations(range(len(L)), 2):
            for (k, l) in itertools.combinations(range(len(L)), 2):
                minor = M[L[i], L[k]] * M[L[j], L[l]] - M[L[i], L[l]] * M[L[j], L[k]]
                if not minor.is_zero() and minor not in seen and -minor not in seen:
                    seen.add(minor)
                    gens.append(minor)
        return gens

    def u_minors(self) -> List[Poly]:
        """The generators of the rank-one ideal that live on Sym^2(U)."""
        ub = set(self.u_block)
        return [g for g in self.rank_one_ideal() if set(g.used_vars()) <= ub]

    # --- phi and its transpose
    def check_phi(self, phi: Mapping[str, Mapping[str, object]]):
        K = self.field
        rows = []
        for u in self.u:
            img = phi.get(u, {})
            bad = set(img) - set(self.e)
            if bad:
                raise ValueError(f"phi({u}) mentions {sorted(bad)}, not basis vectors of V")
            rows.append([K(img.get(e, 0)).value for e in self.e])
        if linalg.rank(K, rows) < self.m:
            raise ValueError("phi is not injective")
        return rows

    def _apply_to_monomial(self, mono, images):
        """Expand prod_j images[b_j] into {monomial: coefficient Poly}."""
        acc = {(): Poly.constant(self.field, ("t",), 1)}
        for b in mono:
            new = {}
            for part, c in acc.items():
                for b2, c2 in images[b]:
                    key = tuple(sorted(part + (b2,), key=self.labels.index))
                    new[key] = new.get(key, Poly(self.field, ("t",))) + c * c2
            acc = {k: v for k, v in new.items() if not v.is_zero()}
        return acc

    def phi_t_substitution(self, phi) -> Dict[str, Poly]:
        """z_m -> y(Sym^d(phi_t) m) as polynomials in the coordinates and t."""
        rows = self.check_phi(phi)
        K = self.field
        t = Poly.var(K, ("t",), "t")
        one = Poly.constant(K, ("t",), 1)
        images = {}
        for i, u in enumerate(self.u):
            images[u] = [(u, one)] + [(e, t * K.element(rows[i][k])) for k, e in enumerate(self.e)
                                      if not K.is_zero(rows[i][k])]
        for e in self.e:
            images[e] = [(e, one)]
        ring = self.vars + ("t",)
        sub = {}
        for mono in self.monomials:
            out = Poly(K, ring)
            for m2, c in self._apply_to_monomial(mono, images).items():
                out = out + c.with_vars(ring) * Poly.var(K, ring, self.coord[m2])
            sub[self.coord[mono]] = out
        return sub

    def phi_star(self, r: Mapping[str, object], phi) -> Dict[str, object]:
        """phi^*(r) = r o Sym^d(phi), a vector on the Sym^d(U) coordinates."""
        rows = self.check_phi(phi)
        K = self.field
        one = Poly.constant(K, ("t",), 1)
        images = {u: [(e, one * K.element(rows[i][k])) for k, e in enumerate(self.e)
                      if not K.is_zero(rows[i][k])] for i, u in enumerate(self.u)}
        out = {}
        for mo in _multisets(self.u, self.d):
            val = K.zero
            for m2, c in self._apply_to_monomial(mo, images).items():
                rv = r.get(self.coord[m2], 0)
                rv = rv.value if hasattr(rv, "field") else K(rv).value
                val = K.add(val, K.mul(c.constant_value(), rv))
            out[self.coord[mo]] = K.element(val)
        return out


@dataclass
class PhiExpansion:
    coefficients: List[Poly]

    @property
    def e(self):
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Poly(self.coefficients[0].field, self.coefficients[0].vars)

    def to_dict(self):
        return {str(i): str(c) for i, c in enumerate(self.coefficients)}


def phi_expand(f: Poly, phi, model: SymShiftModel) -> PhiExpansion:
    """Coefficients of t in phi_t . f, the pullback along 1 + t*phi."""
    f = f.with_vars(model.vars)
    sub = model.phi_t_substitution(phi)
    ring = model.vars + ("t",)
    g = f.subs(sub, ring)
    parts = g.coefficients_in(["t"])
    top = max((k[0] for k in parts), default=0)
    coeffs = []
    for i in range(top + 1):
        c = parts.get((i,))
        coeffs.append(c.with_vars(model.vars) if c is not None else Poly(model.field, model.vars))
    if coeffs[0] != f:
        raise AssertionError("phi_t . f does not reduce to f at t = 0")
    return PhiExpansion(coeffs)


def _vector_derivative(F: Poly, vec: Mapping[str, object]) -> Poly:
    out = Poly(F.field, F.vars)
    for v, c in vec.items():
        c = c if hasattr(c, "field") else F.field(c)
        if not c.is_zero():
            out = out + F.diff(v) * c
    return out


@dataclass
class WitnessReport:
    h: Poly
    w: Poly
    f_in_J: bool
    level_at_most_one: bool
    w_in_J: bool
    derivative_identity: bool
    translation_identity: bool
    samples: int
    details: List[str] = dc_field(default_factory=list)

    @property
    def passed(self):
        return (self.f_in_J and self.level_at_most_one and self.w_in_J
                and self.derivative_identity and self.translation_identity)

    def to_dict(self):
        return {
            "h": str(self.h),
            "w": str(self.w),
            "checks": {
                "f_in_J": self.f_in_J,
                "w_level_at_most_one": self.level_at_most_one,
                "w_in_J": self.w_in_J,
                "derivative_identity": self.derivative_identity,
                "translation_identity": self.translation_identity,
            },
            "samples": self.samples,
            "passed": self.passed,
        }


def random_fiber_covector(model: SymShiftModel, rng: random.Random, spread=3):
    K = model.field
    if K.is_finite():
        elems = list(K.elements())
        return {v: K.element(rng.choice(elems)) for v in model.fiber}
    return {v: K(rng.randint(-spread, spread)) for v in model.fiber}


def embed_witness(f: Poly, r0: Mapping[str, object], phi, model: SymShiftModel,
                  J, *, samples: int = 5, seed: int = 0) -> WitnessReport:
    """h = d_{r0} f and w = f_d^phi, with the three membership/identity checks.

    ``J`` is a list of generators or a Groebner basis of the ideal of Sh_U(Z).
    Checks are exact; a failed check is reported, not raised.
    """
    f = f.with_vars(model.vars)
    if set(f.used_vars()) - set(model.u_block):
        raise TorsorError("f must be a function on Y{U}, i.e. involve only the Sym^d(U) coordinates")
    if set(r0) - set(model.u_block):
        raise TorsorError("r0 must be a vector on the Sym^d(U) coordinates")
    G = J if isinstance(J, GroebnerBasis) else buchberger([g.with_vars(model.vars) for g in J])
    f_in_J = ideal_member(f, G)
    if not f_in_J:
        raise TorsorError("f does not vanish on the subvariety (not in J)")
    h = _vector_derivative(f, r0)
    exp = phi_expand(f, phi, model)
    w = exp[model.d]
    T = model.torsor
    lvl = filtration_level(w, T)
    level_ok = lvl is None or lvl <= 1
    w_in_J = ideal_member(w, G)
    rng = random.Random(seed)
    K = model.field
    u = "u"
    while u in model.vars:
        u += "0"
    ring = model.vars + (u,)
    U = Poly.var(K, ring, u)
    deriv_ok = trans_ok = True
    details = []
    covectors = [random_fiber_covector(model, rng) for _ in range(samples)]
    for r in covectors:
        lhs = _vector_derivative(w, r)
        rhs = _vector_derivative(f, model.phi_star(r, phi))
        if lhs != rhs:
            deriv_ok = False
            details.append(f"derivative mismatch for r={ {k: str(v) for k, v in r.items()} }")
        shifted = w.subs({v: Poly.var(K, ring, v) + U * r[v] for v in model.fiber}, ring)
        if shifted != w.with_vars(ring) + U * rhs.with_vars(ring):
            trans_ok = False
            details.append("translation identity fails")
    return WitnessReport(h, w, f_in_J, level_ok, w_in_J, deriv_ok, trans_ok, samples, details)
