"""Search for K-rational points of polynomial systems.

Zero-dimensional systems are solved exactly by back-substitution through a
lexicographic Groebner basis.  Positive-dimensional systems are specialised
heuristically; failure to find a point there is reported as undecided.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from . import upoly
from .fields import UndecidedError, find_roots
from .groebner import buchberger
from .poly import Poly

SOLUTION = "solution"
NONE = "none"
UNDECIDED = "undecided"


@dataclass
class SolveResult:
    status: str
    point: Optional[Dict[str, object]] = None  # variable -> internal field value
    # univariate polynomials (internal coefficient tuples) with no root in K,
    # or whose roots could not be decided; used to propose field extensions
    obstructions: List[Tuple] = dc_field(default_factory=list)


def _univariate(p: Poly, var: str):
    i = p.vars.index(var)
    deg = max((e[i] for e in p.terms), default=-1)
    out = [p.field.zero] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return upoly.trim(p.field, out)


def _is_zero_dimensional(G, variables):
    pure = set()
    for p in G.polys:
        lm = p.leading_monomial(G.order)
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) == len(variables)


def _back_substitute(G, variables, obstructions, undecided):
    """All K-points of a zero-dimensional lex basis, lazily; first one wins."""
    K = G.field
    n = len(variables)
    # basis elements grouped by their smallest-index variable
    levels = {k: [] for k in range(n)}
    for p in G.polys:
        used = [i for i in range(n) if any(e[i] for e in p.terms)]
        if used:
            levels[min(used)].append(p)

    def rec(k, point):
        if k < 0:
            return point
        var = variables[k]
        sub = {variables[j]: point[variables[j]] for j in range(k + 1, n)}
        g = ()
        for p in levels[k]:
            q = p.subs({v: K.element(c) for v, c in sub.items()}, variables) if sub else p
            if q.is_zero():
                continue
            if q.is_constant():
                return None  # dead branch
            u = _univariate(q, var)
            g = u if not g else upoly.gcd(K, g, u)
        if not g:
            raise AssertionError("zero-dimensional basis lost a pure power")
        try:
            roots = find_roots(K, g)
        except UndecidedError:
            undecided.append(g)
            return None
        if not roots and len(g) > 2:
            obstructions.append(g)
        for r in roots:
            point[var] = r
            found = rec(k - 1, point)
            if found is not None:
                return found
            del point[var]
        return None

    return rec(n - 1, {})


def _check(gens, point):
    K = gens[0].field
    vals = {v: K.element(c) for v, c in point.items()}
    return all(g.subs(vals).is_zero() for g in gens)


_SPECIALISATION_VALUES = (0, 1, -1, 2, -2, 3)


def rational_solution(gens: Sequence[Poly], variables: Sequence[str] | None = None,
                      *, depth: int = 6) -> SolveResult:
    """Find a K-rational common zero of ``gens``.

    ``variables`` fixes the lex order (first = largest); variables that should
    be eliminated first belong at the front.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return SolveResult(SOLUTION, {})
    K = gens[0].field
    if variables is None:
        variables = []
        for g in gens:
            variables += [v for v in g.vars if v not in variables]
    variables = tuple(variables)
    gens = [g.with_vars(variables) for g in gens]
    if buchberger(gens).is_unit():
        return SolveResult(NONE)
    G = buchberger(gens, "lex")
    obstructions: List = []
    undecided: List = []
    if _is_zero_dimensional(G, variables):
        point = _back_substitute(G, variables, obstructions, undecided)
        if point is not None:
            return SolveResult(SOLUTION, dict(point), obstructions + undecided)
        status = UNDECIDED if undecided else NONE
        return SolveResult(status, None, obstructions + undecided)
    if depth == 0:
        return SolveResult(UNDECIDED)
    # positive-dimensional: fix a variable that is not bounded by a pure power
    bounded = set()
    for p in G.polys:
        lm = p.leading_monomial(G.order)
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            bounded.add(nz[0])
    free = [i for i in range(len(variables)) if i not in bounded]
    var = variables[free[-1]]
    rest = tuple(v for v in variables if v != var)
    collected: List = []
    if K.is_finite():
        values = list(K.elements())[:8]
    else:
        values = [K.from_int(v) for v in _SPECIALISATION_VALUES]
    for val in values:
        sub = [g.subs({var: K.element(val)}, rest) for g in gens]
        res = rational_solution(sub, rest, depth=depth - 1)
        collected += res.obstructions
        if res.status == SOLUTION:
            point = dict(res.point)
            point[var] = val
            return SolveResult(SOLUTION, point, collected)
    return SolveResult(UNDECIDED, None, collected)
