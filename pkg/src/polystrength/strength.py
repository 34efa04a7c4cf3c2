"""Strength and absolute strength of homogeneous forms.

A form f of degree d has strength <= s when f = g_1 h_1 + ... + g_s h_s with
every g_i, h_i homogeneous of degree strictly between 0 and d.  Writing the
g's and h's with unknown coefficients and matching coefficients gives the
theta system of a degree pattern; its solvability over the algebraic closure
is decided by a Groebner basis, over a finite field by enumeration.

Gauge fixing.  Within the summands of one g-degree e, the g's can be replaced
by any basis of their span (the h's absorb the inverse change of basis).  If
the g's are dependent the sum has fewer terms.  So when s is searched in
ascending order it suffices to take the g's of each group in reduced row
echelon form: g_i = m_{p_i} + sum of later non-pivot monomials.  One system per
choice of pivots ("chart") replaces the single ungauged system.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from operator import add as _iadd
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, upoly
from .fields import (
    Field,
    FieldSpecError,
    QQ,
    _first_irreducible,
    algebraic_extension,
    is_irreducible,
    is_qth_power,
    parse_field_spec,
)
from .groebner import solvable_over_closure
from .poly import Poly, monomials_of_degree, parse_poly
from .solve import NONE, SOLUTION, UNDECIDED, rational_solution

EXACT = "Exact"
BOUNDS_ONLY = "BoundsOnly"

ASTR_BOUND = "AstrBound"
RANK_BOUND = "RankBound"
IRREDUCIBILITY_BOUND = "IrreducibilityBound"
EXHAUSTION = "Exhaustion"


class PreconditionError(ValueError):
    pass


# ----------------------------------------------------------------------------
# forms and patterns


class Form:
    """A homogeneous polynomial of degree >= 2 (or the zero form)."""

    def __init__(self, poly: Poly, degree: Optional[int] = None):
        if not poly.is_homogeneous():
            raise ValueError(f"{poly} is not homogeneous")
        d = poly.degree() if not poly.is_zero() else degree
        if d is None:
            raise ValueError("the zero form needs an explicit degree")
        if d <= 1:
            raise ValueError(f"forms of degree {d} have no strength (degree must exceed 1)")
        self.poly = poly
        self.d = d

    @classmethod
    def parse(cls, text, field, variables=None):
        if isinstance(field, str):
            field = parse_field_spec(field)
        return cls(parse_poly(text, variables, field))

    @property
    def field(self):
        return self.poly.field

    @property
    def vars(self):
        return self.poly.vars

    @property
    def n(self):
        return len(self.poly.vars)

    def is_zero(self):
        return self.poly.is_zero()

    def change_field(self, L):
        return Form(self.poly.change_field(L), self.d)

    def __eq__(self, other):
        return isinstance(other, Form) and self.poly == other.poly and self.d == other.d

    def __hash__(self):
        return hash((self.poly, self.d))

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"Form({self.poly}, d={self.d}, field={self.field})"


def _as_form(f) -> Form:
    return f if isinstance(f, Form) else Form(f)


@dataclass(frozen=True, order=True)
class DegreePattern:
    """Multiset of degree pairs {e, d-e}, stored with e <= d-e, sorted."""

    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, d, es):
        pairs = []
        for e in es:
            if not 1 <= e <= d - 1:
                raise ValueError(f"degree {e} is not strictly between 0 and {d}")
            pairs.append((min(e, d - e), max(e, d - e)))
        return cls(tuple(sorted(pairs)))

    @property
    def s(self):
        return len(self.pairs)

    @property
    def d(self):
        return self.pairs[0][0] + self.pairs[0][1] if self.pairs else None

    @property
    def es(self):
        return [e for e, _ in self.pairs]

    def unknown_count(self, n):
        return sum(math.comb(n + e - 1, e) + math.comb(n + de - 1, de) for e, de in self.pairs)

    def __str__(self):
        return "+".join(f"{{{a},{b}}}" for a, b in self.pairs) or "{}"


def patterns(d, s, n=None):
    """All degree patterns with s summands, cheapest first when n is given."""
    out = [DegreePattern.of(d, es) for es in itertools.combinations_with_replacement(range(1, d // 2 + 1), s)]
    if n is not None:
        out.sort(key=lambda P: (P.unknown_count(n), P.pairs))
    return out


# ----------------------------------------------------------------------------
# theta systems


def _unknown_name(kind, i, j, s):
    return f"{kind}{j}" if s == 1 else f"{kind}{i}p{j}"


def _collect(f: Form, summands, R_vars):
    """Coefficient-matching equations of f = sum g_i h_i.

    ``summands`` holds (g, h) as dicts {x-exponent: Poly in the unknowns}.
    """
    K = f.field
    zero = Poly(K, R_vars)
    acc: Dict = {}
    for g, h in summands:
        for eg, cg in g.items():
            for eh, ch in h.items():
                e = tuple(map(_iadd, eg, eh))
                acc[e] = acc.get(e, zero) + cg * ch
    eqs = []
    for m in monomials_of_degree(f.n, f.d):
        c = f.poly.terms.get(m)
        lhs = acc.get(m, zero)
        eqs.append(lhs - K.element(c) if c is not None else lhs)
    return eqs


def theta_system(f, s: int, pattern: Optional[DegreePattern] = None) -> List[Poly]:
    """Equations in the unknown coefficients of g_i (a's) and h_i (b's).

    Unknowns are named a1, a2, ... and b1, b2, ... when s = 1, and
    a{i}p{j}, b{i}p{j} for summand i otherwise; monomials are indexed in
    descending lex order.
    """
    f = _as_form(f)
    if pattern is None:
        if s != 0:
            raise ValueError("a degree pattern is required for s > 0")
        pattern = DegreePattern(())
    if pattern.s != s:
        raise ValueError(f"pattern {pattern} has {pattern.s} summands, expected {s}")
    if s and pattern.d != f.d:
        raise ValueError(f"pattern {pattern} does not sum to degree {f.d}")
    names_a, names_b, specs = [], [], []
    for i, (e, de) in enumerate(pattern.pairs, 1):
        ga = [_unknown_name("a", i, j, s) for j in range(1, math.comb(f.n + e - 1, e) + 1)]
        hb = [_unknown_name("b", i, j, s) for j in range(1, math.comb(f.n + de - 1, de) + 1)]
        names_a += ga
        names_b += hb
        specs.append((e, ga, de, hb))
    R_vars = names_a + names_b
    K = f.field
    summands = []
    for e, ga, de, hb in specs:
        g = {m: Poly.var(K, R_vars, a) for m, a in zip(monomials_of_degree(f.n, e), ga)}
        h = {m: Poly.var(K, R_vars, b) for m, b in zip(monomials_of_degree(f.n, de), hb)}
        summands.append((g, h))
    return _collect(f, summands, R_vars)


@dataclass
class _Chart:
    """A gauge-fixed theta system: one pivot choice per g-degree group."""

    pattern: DegreePattern
    equations: List[Poly]
    variables: Tuple[str, ...]  # h-unknowns first, then g-parameters
    g_templates: List[Dict]
    h_templates: List[Dict]
    pivots: Tuple


def _group_indices(pattern):
    groups: Dict[int, List[int]] = {}
    for i, (e, _) in enumerate(pattern.pairs):
        groups.setdefault(e, []).append(i)
    return groups


def _pivot_choices(N, k):
    """(pivots, free positions per row) for k x N reduced echelon forms."""
    for piv in itertools.combinations(range(N), k):
        free = tuple(tuple(j for j in range(p + 1, N) if j not in piv) for p in piv)
        yield piv, free


def _charts(f: Form, pattern: DegreePattern):
    n, K = f.n, f.field
    groups = _group_indices(pattern)
    group_keys = sorted(groups)
    per_group = []
    for e in group_keys:
        N = math.comb(n + e - 1, e)
        per_group.append(list(_pivot_choices(N, len(groups[e]))))
    s = pattern.s
    for combo in itertools.product(*per_group):
        a_names, b_names = [], []
        g_shape = [None] * s
        for e, (piv, free), in zip(group_keys, combo):
            for row, i in enumerate(groups[e]):
                g_shape[i] = (e, piv[row], free[row])
        for i, (e, de) in enumerate(pattern.pairs):
            a_names += [f"a{i + 1}p{j + 1}" for j in g_shape[i][2]]
            b_names += [f"b{i + 1}p{j + 1}" for j in range(math.comb(n + de - 1, de))]
        variables = tuple(b_names + a_names)
        g_t, h_t = [], []
        for i, (e, de) in enumerate(pattern.pairs):
            monos_e = monomials_of_degree(n, e)
            _, p, free = g_shape[i]
            g = {monos_e[p]: Poly.constant(K, variables, 1)}
            for j in free:
                g[monos_e[j]] = Poly.var(K, variables, f"a{i + 1}p{j + 1}")
            h = {m: Poly.var(K, variables, f"b{i + 1}p{j + 1}")
                 for j, m in enumerate(monomials_of_degree(n, de))}
            g_t.append(g)
            h_t.append(h)
        eqs = _collect(f, list(zip(g_t, h_t)), variables)
        yield _Chart(pattern, eqs, variables, g_t, h_t, combo)


def _instantiate(f: Form, templates, point):
    K = f.field
    vals = {v: K.element(c) for v, c in point.items()}
    out = []
    for tmpl in templates:
        terms = {}
        for m, c in tmpl.items():
            cv = c.subs(vals, ()).constant_value()
            if not K.is_zero(cv):
                terms[m] = cv
        out.append(Poly(K, f.vars, terms))
    return out


def _witness_from_point(f, chart, point):
    # unknowns left free by the solver can take any value; use zero
    full = {v: point.get(v, f.field.zero) for v in chart.variables}
    gs = _instantiate(f, chart.g_templates, full)
    hs = _instantiate(f, chart.h_templates, full)
    return list(zip(gs, hs))


# ----------------------------------------------------------------------------
# certificates


@dataclass
class StrengthCertificate:
    status: str
    lower: int
    lower_reason: str
    upper: int
    witness: List[Tuple[Poly, Poly]]
    field: Field
    form: Form
    extension: Optional["LiftResult"] = None
    notes: List[str] = dc_field(default_factory=list)

    def verify(self):
        """The witness multiplies out to the form exactly."""
        total = Poly(self.form.field, self.form.vars)
        for g, h in self.witness:
            total = total + g * h
        return total == self.form.poly and len(self.witness) == self.upper and self.lower <= self.upper

    @property
    def exact(self):
        return self.status == EXACT

    @property
    def value(self):
        if not self.exact:
            raise ValueError("strength is only bounded, not determined")
        return self.upper

    def to_dict(self):
        d = {
            "status": self.status,
            "lower": {"value": self.lower, "reason": self.lower_reason},
            "upper": {"value": self.upper, "witness": [[str(g), str(h)] for g, h in self.witness]},
            "field": self.field.spec,
            "form": str(self.form),
            "notes": list(self.notes),
        }
        if self.extension is not None:
            d["extension"] = self.extension.to_dict()
        return d


@dataclass
class LiftResult:
    field: Field
    degree: int
    witness: List[Tuple[Poly, Poly]]

    def to_dict(self):
        return {
            "field": self.field.spec,
            "degree": self.degree,
            "witness": [[str(g), str(h)] for g, h in self.witness],
        }


# ----------------------------------------------------------------------------
# elementary witnesses


def monomial_split(f: Form):
    """f = sum_i x_i * h_i grouping monomials by their first variable."""
    K = f.field
    groups: Dict[int, Dict] = {}
    for e, c in f.poly.terms.items():
        i = next(k for k, x in enumerate(e) if x)
        rest = list(e)
        rest[i] -= 1
        groups.setdefault(i, {})[tuple(rest)] = c
    return [(Poly.var(K, f.vars, f.vars[i]), Poly(K, f.vars, t)) for i, t in sorted(groups.items())]


def frobenius_collapse(f: Form):
    """A one-term witness g * g^(q-1) when f = g^q for a characteristic power q > 1."""
    K = f.field
    p = K.characteristic
    if p == 0 or f.is_zero():
        return None
    q = p
    best = None
    while f.d % q == 0:
        terms = {}
        for e, c in f.poly.terms.items():
            if any(x % q for x in e):
                return best
            r = is_qth_power(K.element(c), q)
            if r is None:
                return best
            terms[tuple(x // q for x in e)] = r.value
        g = Poly(K, f.vars, terms)
        best = [(g, g ** (q - 1))]
        q *= p
    return best


def quadratic_rank(f: Form) -> int:
    """Rank of the symmetric matrix of a quadratic form (characteristic != 2)."""
    f = _as_form(f)
    K = f.field
    if f.d != 2 or K.characteristic == 2:
        raise ValueError("quadratic rank needs d = 2 and characteristic != 2")
    n = f.n
    half = K.inv(K.from_int(2))
    M = [[K.zero] * n for _ in range(n)]
    for e, c in f.poly.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            M[i][i] = c
        else:
            M[i][j] = M[j][i] = K.mul(c, half)
    return linalg.rank(K, M)


def quadratic_astr(f: Form) -> int:
    return -(-quadratic_rank(f) // 2)


# ----------------------------------------------------------------------------
# absolute strength


@dataclass
class AstrResult:
    value: int
    pattern: Optional[DegreePattern]
    method: str
    zero_form: bool = False
    systems_checked: int = 0


def _astr_bound(f: Form):
    return min(len(f.poly.terms), len(f.poly.used_vars()))


def astr_report(f, *, method="auto", max_s=None) -> AstrResult:
    f = _as_form(f)
    if f.is_zero():
        return AstrResult(0, None, "convention", zero_form=True)
    K = f.field
    if method not in ("auto", "groebner", "fast"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "fast") and f.d == 2 and K.characteristic != 2:
        return AstrResult(quadratic_astr(f), DegreePattern.of(2, [1] * quadratic_astr(f)), "rank")
    if method == "fast":
        raise ValueError("the quadratic fast path needs d = 2 and characteristic != 2")
    bound = _astr_bound(f)
    if max_s is not None:
        bound = min(bound, max_s)
    checked = 0
    for s in range(1, bound + 1):
        for P in patterns(f.d, s, f.n):
            for chart in _charts(f, P):
                checked += 1
                if solvable_over_closure(chart.equations):
                    return AstrResult(s, P, "nullstellensatz", systems_checked=checked)
    if max_s is not None and max_s < _astr_bound(f):
        raise PreconditionError(f"absolute strength exceeds max_s={max_s}")
    # unreachable: the monomial split is a witness at s = bound
    raise AssertionError("absolute strength search exceeded the monomial bound")


@lru_cache(maxsize=4096)
def _astr_cached(f: Form, method: str) -> int:
    return astr_report(f, method=method).value


def astr(f, *, method="auto") -> int:
    """Absolute strength: strength over the algebraic closure of the field."""
    return _astr_cached(_as_form(f), method)


# ----------------------------------------------------------------------------
# exact strength over finite fields


def _gaussian_binomial(N, k, Q):
    num = den = 1
    for i in range(k):
        num *= Q ** (N - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def search_size(f: Form, s: int) -> int:
    """Number of g-configurations enumerated for strength s."""
    Q = f.field.size
    total = 0
    for P in patterns(f.d, s, f.n):
        prod = 1
        for e, idx in _group_indices(P).items():
            prod *= _gaussian_binomial(math.comb(f.n + e - 1, e), len(idx), Q)
        total += prod
    return total


def _subspace_bases(K, N, k):
    """All k-dimensional subspaces of K^N as reduced echelon row lists."""
    elems = list(K.elements())
    for piv, free in _pivot_choices(N, k):
        slots = [(r, j) for r in range(k) for j in free[r]]
        for vals in itertools.product(elems, repeat=len(slots)):
            rows = [[K.zero] * N for _ in range(k)]
            for r, p in enumerate(piv):
                rows[r][p] = K.one
            for (r, j), v in zip(slots, vals):
                rows[r][j] = v
            yield rows


def _membership(f: Form, pattern, g_rows, monos):
    """Solve f = sum g_i h_i for the h's given the g's; witness or None."""
    K = f.field
    n, d = f.n, f.d
    target_monos = monomials_of_degree(n, d)
    index = {m: i for i, m in enumerate(target_monos)}
    cols, labels = [], []
    for i, (e, de) in enumerate(pattern.pairs):
        g = {m: c for m, c in zip(monos[e], g_rows[i]) if not K.is_zero(c)}
        for m2 in monos[de]:
            col = [K.zero] * len(target_monos)
            for m1, c in g.items():
                col[index[tuple(map(_iadd, m1, m2))]] = c
            cols.append(col)
            labels.append((i, m2))
    rhs = [f.poly.terms.get(m, K.zero) for m in target_monos]
    x = linalg.solve(K, cols, rhs)
    if x is None:
        return None
    hs = [dict() for _ in pattern.pairs]
    for (i, m2), v in zip(labels, x):
        if not K.is_zero(v):
            hs[i][m2] = v
    out = []
    for i, (e, de) in enumerate(pattern.pairs):
        g = {m: c for m, c in zip(monos[e], g_rows[i]) if not K.is_zero(c)}
        out.append((Poly(K, f.vars, g), Poly(K, f.vars, hs[i])))
    return out


def _finite_search(f: Form, s: int):
    """Witness of strength <= s with exactly s summands, or None."""
    K = f.field
    monos = {e: monomials_of_degree(f.n, e) for e in range(1, f.d)}
    for P in patterns(f.d, s, f.n):
        groups = _group_indices(P)
        keys = sorted(groups)
        spaces = [list(_subspace_bases(K, len(monos[e]), len(groups[e]))) for e in keys]
        for combo in itertools.product(*spaces):
            g_rows = [None] * s
            for e, rows in zip(keys, combo):
                for r, i in enumerate(groups[e]):
                    g_rows[i] = rows[r]
            w = _membership(f, P, g_rows, monos)
            if w is not None:
                # a zero h would mean strength < s, already excluded
                return w
    return None


DEFAULT_BUDGET = 200_000


def str_exact_finite_field(f, *, budget: int = DEFAULT_BUDGET) -> StrengthCertificate:
    """Exact strength over a finite field by enumerating the g-subspaces."""
    f = _as_form(f)
    K = f.field
    if not K.is_finite():
        raise ValueError(f"{K} is not a finite field")
    if f.is_zero():
        return StrengthCertificate(EXACT, 0, EXHAUSTION, 0, [], K, f, notes=["zero form"])
    split = monomial_split(f)
    upper, witness = len(split), split
    collapse = frobenius_collapse(f)
    if collapse:
        upper, witness = 1, collapse
    spent = 0
    for s in range(1, upper):
        size = search_size(f, s)
        if spent + size > budget:
            return StrengthCertificate(
                BOUNDS_ONLY, s, EXHAUSTION, upper, witness, K, f,
                notes=[f"search budget {budget} exhausted at s={s}"],
            )
        spent += size
        w = _finite_search(f, s)
        if w is not None:
            return StrengthCertificate(EXACT, s, EXHAUSTION, s, w, K, f)
    return StrengthCertificate(EXACT, upper, EXHAUSTION, upper, witness, K, f)


# ----------------------------------------------------------------------------
# bounds over arbitrary fields


def _rational_attempt(f: Form, s: int):
    """Try every pattern and chart at s.  Returns (status, witness, obstructions)."""
    obstructions = []
    undecided = False
    for P in patterns(f.d, s, f.n):
        for chart in _charts(f, P):
            res = rational_solution(chart.equations, chart.variables)
            obstructions += res.obstructions
            if res.status == SOLUTION:
                return SOLUTION, _witness_from_point(f, chart, res.point), obstructions
            if res.status == UNDECIDED:
                undecided = True
    return (UNDECIDED if undecided else NONE), None, obstructions


def str_bounds(f, *, max_s: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> StrengthCertificate:
    """Certified lower and upper bounds on the strength over the form's field."""
    f = _as_form(f)
    K = f.field
    if f.is_zero():
        return StrengthCertificate(EXACT, 0, EXHAUSTION, 0, [], K, f, notes=["zero form"])
    if K.is_finite():
        cert = str_exact_finite_field(f, budget=budget)
        if cert.exact:
            return cert
    a = astr(f)
    lower, reason = a, ASTR_BOUND
    if f.d == 2 and K.characteristic != 2:
        reason = RANK_BOUND
    notes = []
    witness = monomial_split(f)
    collapse = frobenius_collapse(f)
    if collapse:
        witness = collapse
    upper = len(witness)
    refuted_through = 0
    contiguous = True
    top = upper - 1 if max_s is None else min(upper - 1, max_s)
    for s in range(1, top + 1):
        if s < a:
            # impossible already over the closure
            if contiguous:
                refuted_through = s
            continue
        status, w, _ = _rational_attempt(f, s)
        if status == SOLUTION:
            upper, witness = s, w
            break
        if status == NONE and contiguous:
            refuted_through = s
            if s + 1 > lower:
                lower = s + 1
                reason = IRREDUCIBILITY_BOUND if s == 1 else EXHAUSTION
        else:
            contiguous = False
            notes.append(f"K-rational solvability undecided at s={s}")
    lower = min(lower, upper)
    status = EXACT if lower == upper else BOUNDS_ONLY
    return StrengthCertificate(status, lower, reason, upper, witness, K, f, notes=notes)


def strength(f, **kw) -> StrengthCertificate:
    """Exact strength over finite fields, certified bounds otherwise."""
    f = _as_form(f)
    if f.field.is_finite():
        return str_exact_finite_field(f, **kw)
    return str_bounds(f, **kw)


# ----------------------------------------------------------------------------
# extensions


def _fresh_name(base, taken):
    name = base
    k = 1
    while name in taken:
        name = f"{base}{k}"
        k += 1
    return name


def _extension_candidates(f: Form, s: int, budget: int):
    """(field, degree) candidates in ascending degree."""
    K = f.field
    taken = set(f.vars) | set(K.gens)
    out = []
    seen = set()

    def push(M, deg):
        if M.spec not in seen and 1 < deg <= budget:
            seen.add(M.spec)
            out.append((M, deg))

    if K.is_finite():
        for k in range(2, budget + 1):
            m = _first_irreducible(K, k)
            push(algebraic_extension(K, _fresh_name("b", taken), m), k)
        return out
    derived = []
    for t in range(1, s + 1):
        _, _, obs = _rational_attempt(f, t)
        derived += obs
    polys = []
    for g in derived:
        g = upoly.monic(K, g)
        if 2 <= len(g) - 1 <= budget and g not in polys:
            polys.append(g)
    if K.characteristic == 0:
        for g in list(polys):
            if len(g) == 3:  # X^2 + bX + c -> X^2 - disc
                disc = K.sub(K.mul(g[1], g[1]), K.mul(K.from_int(4), g[0]))
                polys.append((K.neg(disc), K.zero, K.one))
        if K == QQ:
            for cyc in _cyclotomics(budget):
                polys.append(tuple(K.from_int(c) for c in cyc))
    polys.sort(key=len)
    for g in polys:
        try:
            if not is_irreducible(K, g):
                continue
        except FieldSpecError:
            continue
        name = "i" if (K.characteristic == 0 and g == (K.one, K.zero, K.one)) else "r"
        name = _fresh_name(name, taken)
        try:
            push(algebraic_extension(K, name, g), len(g) - 1)
        except FieldSpecError:
            continue
    out.sort(key=lambda t: t[1])
    return out


def _cyclotomics(budget):
    """Integer coefficient lists (low-to-high) of cyclotomic polynomials of degree <= budget."""
    out = []
    m = 3
    while m <= 4 * budget + 8:
        phi = _cyclotomic(m)
        if len(phi) - 1 <= budget:
            out.append(phi)
        m += 1
    return out


def _cyclotomic(m):
    # X^m - 1 divided by the cyclotomics of the proper divisors
    poly = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            poly = _int_div(poly, _cyclotomic(k))
    return poly


def _int_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    return q


def _strength_at_most(f: Form, s: int, budget: int):
    K = f.field
    if K.is_finite():
        cert = str_exact_finite_field(f, budget=budget)
        if cert.upper <= s:
            return cert.witness
        return None
    for c in (frobenius_collapse(f), monomial_split(f)):
        if c and len(c) <= s:
            return c
    for t in range(1, s + 1):
        status, w, _ = _rational_attempt(f, t)
        if status == SOLUTION:
            return w
    return None


def extension_lift_search(f, s: int, degree_budget: int, *, budget: int = DEFAULT_BUDGET) -> Optional[LiftResult]:
    """Smallest-degree extension found within budget realising strength <= s."""
    f = _as_form(f)
    if astr(f) > s:
        raise PreconditionError(f"absolute strength of {f} exceeds {s}")
    K = f.field
    w = _strength_at_most(f, s, budget)
    if w is not None:
        return LiftResult(K, 1, w)
    for M, deg in _extension_candidates(f, s, degree_budget):
        fM = f.change_field(M)
        w = _strength_at_most(fM, s, budget)
        if w is not None:
            return LiftResult(M, deg, w)
    return None


def extension_inequality_check(f, L: Field, *, budget: int = DEFAULT_BUDGET) -> dict:
    """Check str_K(f) <= e * str_L(f) with e = [L : K]."""
    f = _as_form(f)
    K = f.field
    e = L.degree_over(K)
    if e is None:
        raise ValueError(f"{L} is not a finite extension of {K}")
    cK = strength(f, budget=budget)
    cL = strength(f.change_field(L), budget=budget)
    exact = cK.exact and cL.exact
    holds = cK.lower <= e * cL.upper
    return {
        "degree": e,
        "str_K": [cK.lower, cK.upper],
        "str_L": [cL.lower, cL.upper],
        "exact": exact,
        "holds": holds,
        "witness_L": cL.witness,
    }


def gap_bound(e: int, s: int) -> int:
    """Threshold s' = e*s: str(f) > s' forces astr(f) > s when lifts need degree <= e."""
    if e < 1 or s < 0:
        raise ValueError("e must be positive and s non-negative")
    return e * s
