"""Finite-level GL constructions and the twisted F-elementary example in characteristic 2."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import List, Sequence, Tuple

from . import linalg
from .fields import GF
from .groebner import buchberger, eliminate, ideal_member
from .poly import Poly


# ----------------------------------------------------------------------------
# level spaces


class LevelSpace:
    def degree(self) -> int:
        raise NotImplementedError

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def basis(self, n: int) -> List[str]:
        raise NotImplementedError


def _mono_label(idx: Sequence[int]) -> str:
    if not idx:
        return "1"
    parts = []
    for i, grp in itertools.groupby(idx):
        k = len(list(grp))
        parts.append(f"e{i}" if k == 1 else f"e{i}^{k}")
    return "*".join(parts)


@dataclass(frozen=True)
class Sym(LevelSpace):
    a: int

    def __post_init__(self):
        if self.a < 0:
            raise ValueError("Sym degree must be non-negative")

    def degree(self):
        return self.a

    def dim(self, n):
        return comb(n + self.a - 1, self.a) if n else int(self.a == 0)

    def basis(self, n):
        return [_mono_label(c) for c in itertools.combinations_with_replacement(range(1, n + 1), self.a)]

    def __str__(self):
        return f"Sym({self.a})"


@dataclass(frozen=True)
class Twist(LevelSpace):
    inner: LevelSpace
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("twist exponent must be positive")

    def degree(self):
        return self.q * self.inner.degree()

    def dim(self, n):
        return self.inner.dim(n)

    def basis(self, n):
        out = []
        for b in self.inner.basis(n):
            b = b if "*" not in b and "^" not in b else f"({b})"
            out.append(f"{b}^({self.q})")
        return out

    def __str__(self):
        return f"Twist({self.inner}, {self.q})"


@dataclass(frozen=True)
class Sum(LevelSpace):
    parts: Tuple[LevelSpace, ...]

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = tuple(parts[0])
        object.__setattr__(self, "parts", tuple(parts))

    def degree(self):
        return max((p.degree() for p in self.parts), default=0)

    def dim(self, n):
        return sum(p.dim(n) for p in self.parts)

    def basis(self, n):
        return [f"[{k}]{b}" for k, p in enumerate(self.parts) for b in p.basis(n)]

    def __str__(self):
        return "Sum(" + ", ".join(map(str, self.parts)) + ")"


def level_basis(S: LevelSpace, n: int) -> List[str]:
    return S.basis(n)


def shift_decompose(a: int, m: int, n: int) -> List[Tuple[int, int]]:
    """Pieces of Sym^a(K^m + K^n) by degree i in the first summand."""
    return [(i, Sym(i).dim(m) * Sym(a - i).dim(n)) for i in range(a + 1)]


# ----------------------------------------------------------------------------
# the ideal generated by [v^2]^2 - [v^4] over GF(2)


def _w_name(alpha, n):
    sep = "_" if n >= 10 else ""
    return "w" + sep.join(str(i) for i in alpha)


def ns_ring(n: int):
    zs = [f"z{i}" for i in range(1, n + 1)]
    alphas = list(itertools.combinations_with_replacement(range(1, n + 1), 4))
    ws = [_w_name(a, n) for a in alphas]
    return zs, ws, alphas


def ns_example_ideal(n: int):
    """(variables, generators) over GF(2), by coefficient extraction in v = sum c_i e_i."""
    K = GF(2)
    zs, ws, alphas = ns_ring(n)
    if n == 0:
        return (), []
    cs = [f"c{i}" for i in range(1, n + 1)]
    ring = tuple(zs + ws + cs)
    c = [Poly.var(K, ring, x) for x in cs]
    # [v^2] = sum c_i^2 z_i  (the twist is Frobenius-semilinear)
    v2 = Poly(K, ring)
    for ci, z in zip(c, zs):
        v2 = v2 + ci ** 2 * Poly.var(K, ring, z)
    # [v^4] = sum over monomials e^alpha of the coefficient of e^alpha in v^4
    v4 = Poly(K, ring)
    for alpha, w in zip(alphas, ws):
        coef = Poly.constant(K, ring, 1)
        counts = {}
        for i in alpha:
            coef = coef * c[i - 1]
            counts[i] = counts.get(i, 0) + 1
        mult = 24
        for k in counts.values():
            mult //= _fact(k)
        v4 = v4 + coef * mult * Poly.var(K, ring, w)
    expr = v2 ** 2 - v4
    gens = []
    for _, g in sorted(expr.coefficients_in(cs).items(), reverse=True):
        g = g.with_vars(zs + ws)
        if not g.is_zero() and g not in gens:
            gens.append(g)
    return tuple(zs + ws), gens


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@dataclass
class NSReport:
    n: int
    generators: List[str]
    elimination_basis: List[str]
    injective: bool
    squares_in_image: bool
    details: List[str] = dc_field(default_factory=list)

    @property
    def passed(self):
        return self.injective and self.squares_in_image

    def to_dict(self):
        return {
            "n": self.n,
            "generators": self.generators,
            "elimination_basis": self.elimination_basis,
            "injective": self.injective,
            "squares_in_image": self.squares_in_image,
            "passed": self.passed,
            "details": self.details,
        }


def ns_example_check(n: int) -> NSReport:
    """Injectivity of K[w] -> K[z, w]/I and membership of every squared
    generator in the image subalgebra."""
    if n < 1:
        raise ValueError("n must be at least 1")
    K = GF(2)
    variables, gens = ns_example_ideal(n)
    zs, ws, alphas = ns_ring(n)
    # block order with the z's eliminated first
    G = buchberger(gens, f"block({len(zs)})", field=K, variables=variables)
    E = eliminate(G, ws)
    injective = E.is_zero_ideal()
    details = []
    ok = True
    for z in zs:
        sq = Poly.var(K, variables, z) ** 2
        nf = G.reduce(sq)
        if nf.degree_in(zs) > 0:
            ok = False
            details.append(f"{z}^2 reduces to {nf}, which still involves the z's")
        i = int(z[1:])
        target = Poly.var(K, variables, _w_name((i,) * 4, n))
        if not ideal_member(sq - target, G):
            ok = False
            details.append(f"{z}^2 - {target} not in I")
    return NSReport(n, [str(g) for g in gens], E.as_strings(), injective, ok, details)


def gl_act(n: int, g, f: Poly) -> Poly:
    """Apply g in GL_n(GF(2)) (columns = images of e_j) to an element of R."""
    K = GF(2)
    zs, ws, alphas = ns_ring(n)
    ring = tuple(zs + ws)
    col = lambda j: [(i + 1, g[i][j - 1] % 2) for i in range(n) if g[i][j - 1] % 2]
    images = {}
    for j, z in enumerate(zs, start=1):
        # semilinear: squares of the entries, trivial over GF(2)
        img = Poly(K, ring)
        for i, _ in col(j):
            img = img + Poly.var(K, ring, f"z{i}")
        images[z] = img
    for alpha, w in zip(alphas, ws):
        terms = {(): 1}
        for j in alpha:
            new = {}
            for mono, c in terms.items():
                for i, a in col(j):
                    key = tuple(sorted(mono + (i,)))
                    new[key] = (new.get(key, 0) + c * a) % 2
            terms = {k: v for k, v in new.items() if v}
        img = Poly(K, ring)
        for mono, c in terms.items():
            img = img + Poly.var(K, ring, _w_name(mono, n))
        images[w] = img
    return f.with_vars(ring).subs(images, ring)


def span_stable(n: int, g) -> bool:
    """Is the span of the generators of I mapped into itself by g?"""
    K = GF(2)
    _, gens = ns_example_ideal(n)
    if not gens:
        return True
    moved = [gl_act(n, g, f) for f in gens]
    monos = sorted({e for f in gens + moved for e in f.terms})
    vec = lambda f: [f.terms.get(e, 0) for e in monos]
    base = [vec(f) for f in gens]
    r = linalg.rank(K, base)
    return all(linalg.rank(K, base + [vec(f)]) == r for f in moved)
