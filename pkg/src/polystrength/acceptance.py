"""The ten acceptance checks, each with its runtime limit.

Every check returns a ``CriterionResult``; ``run_all`` runs them in order.
Used by the test-suite and by ``polystrength verify``.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List

from .fields import GF, QQ, char_power_exponent, lift_degree_bound, p_degree, parse_field_spec
from .glcase import ns_example_check
from .oracles import diagonal_quadratic_rank, expand_shift, gf2_strength
from .poly import Poly, monomials_of_degree
from .strength import (
    EXACT,
    Form,
    astr,
    astr_report,
    extension_inequality_check,
    extension_lift_search,
    gap_bound,
    str_bounds,
    str_exact_finite_field,
)
from .torsor import (
    SymShiftModel,
    TorsorAlgebra,
    coassociativity_check,
    counit_check,
    delta,
    embed_witness,
    filtration_level,
    frobenius_descend,
    init,
    twisted_delta_check,
)
from .groebner import buchberger


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    detail: str = ""
    failures: List[str] = dc_field(default_factory=list)

    @property
    def ok(self):
        return self.passed and self.seconds <= self.limit

    def line(self):
        tag = "PASS" if self.ok else "FAIL"
        extra = "" if self.seconds <= self.limit else " (over time limit)"
        return f"[{tag}] criterion {self.number}: {self.title} ({self.seconds:.1f}s / {self.limit:.0f}s){extra} {self.detail}".rstrip()

    def to_dict(self):
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.ok,
            "seconds": round(self.seconds, 3),
            "limit": self.limit,
            "detail": self.detail,
            "failures": self.failures[:20],
        }


_REGISTRY: Dict[int, Callable[[], CriterionResult]] = {}


def _criterion(number, title, limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            failures: List[str] = []
            detail = fn(failures) or ""
            return CriterionResult(number, title, not failures, time.perf_counter() - t0, limit, detail, failures)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        _REGISTRY[number] = run
        return run

    return wrap


def _expect(failures, cond, message):
    if not cond:
        failures.append(message)


# ----------------------------------------------------------------------------


@_criterion(1, "sum of two squares over QQ", 5)
def criterion_1(failures):
    f = Form.parse("x1^2+x2^2", QQ)
    _expect(failures, astr(f, method="groebner") == 1, "astr (Nullstellensatz) != 1")
    _expect(failures, astr(f, method="fast") == 1, "astr (rank) != 1")
    c = str_bounds(f)
    _expect(failures, c.status == EXACT and c.upper == 2 and c.verify(), f"str_bounds gave {c.to_dict()}")
    lift = extension_lift_search(f, 1, 2)
    if lift is None:
        failures.append("no lift found")
        return ""
    prod = lift.witness[0][0] * lift.witness[0][1]
    _expect(failures, lift.degree == 2 and "i^2+1" in lift.field.spec, f"lift field {lift.field.spec}")
    _expect(failures, len(lift.witness) == 1 and prod == f.change_field(lift.field).poly, "lift witness wrong")
    return f"lift: {lift.field.spec}, ({lift.witness[0][0]})*({lift.witness[0][1]})"


@_criterion(2, "t1*x1^2+t2*x2^2 over GF(2)(t1,t2)", 30)
def criterion_2(failures):
    f = Form.parse("t1*x1^2+t2*x2^2", "GF(2)(t1,t2)")
    _expect(failures, astr(f) == 1, "astr != 1")
    c = str_bounds(f)
    _expect(failures, c.status == EXACT and c.upper == 2 and c.verify(), f"str_bounds gave {c.to_dict()}")
    lift = extension_lift_search(f, 1, 2)
    if lift is None:
        failures.append("no lift found")
        return ""
    g, h = lift.witness[0]
    _expect(failures, lift.degree == 2 and len(lift.witness) == 1, "lift degree or length")
    _expect(failures, g * h == f.change_field(lift.field).poly, "lift witness wrong")
    return f"lift: {lift.field.spec}"


def cubic_corpus(size=200, seed=20240531):
    """Pseudo-random non-zero cubic forms in x1, x2, x3 over GF(2)."""
    K = GF(2)
    variables = ("x1", "x2", "x3")
    monos = monomials_of_degree(3, 3)
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        bits = rng.randrange(1, 1 << len(monos))
        terms = {m: K.one for i, m in enumerate(monos) if bits >> i & 1}
        out.append(Form(Poly(K, variables, terms)))
    return out


@_criterion(3, "GF(2) cubic corpus against brute force", 600)
def criterion_3(failures):
    corpus = cubic_corpus()
    F4, F8 = GF(4), GF(8)
    for k, f in enumerate(corpus):
        c = str_exact_finite_field(f)
        oracle = gf2_strength({e: 1 for e in f.poly.terms}, 3, 3)
        _expect(failures, c.exact and c.upper == oracle and c.verify(), f"#{k} {f}: str {c.upper} vs oracle {oracle}")
        _expect(failures, astr(f) <= c.upper, f"#{k} {f}: astr > str")
        for L in (F4, F8):
            chk = extension_inequality_check(f, L)
            _expect(failures, chk["holds"], f"#{k} {f}: inequality fails over {L.spec}")
    return f"{len(corpus)} forms"


def _random_torsor_poly(rng, K, T, max_deg=4, p=0):
    """Random element of T; in characteristic p sometimes an A-combination of p-th powers."""
    vs = T.vars
    monos = [e for d in range(max_deg + 1) for e in itertools.product(range(d + 1), repeat=len(vs)) if sum(e) == d]
    fib = [vs.index(x) for x in T.fiber]
    if p and rng.random() < 0.5:
        q = p if p ** 2 > max_deg else rng.choice([p, p * p])
        monos = [e for e in monos if all(e[i] % q == 0 for i in fib)]
    terms = {}
    for _ in range(rng.randint(1, 5)):
        c = rng.randint(1, p - 1) if p else rng.choice([-3, -2, -1, 1, 2, 3])
        terms[rng.choice(monos)] = K(c).value
    return Poly(K, vs, terms)


def _components_match(f, T, D, p):
    ref = expand_shift({e: int(c) for e, c in f.terms.items()}, [T.vars.index(x) for x in T.fiber], p)
    n = len(T.vars)
    got = {}
    for i, comp in D.components.items():
        got[i] = {(e[:n], e[n:]): int(c) for e, c in comp.terms.items()}
    if p == 0:
        return got == ref
    return got == {i: {k: v % p for k, v in c.items()} for i, c in ref.items()}


@_criterion(4, "torsor calculus suite", 120)
def criterion_4(failures):
    rng = random.Random(4)
    count = 0
    for p in (0, 2, 3):
        K = QQ if p == 0 else GF(p)
        for k in range(100):
            nb, nf = rng.randint(0, 2), rng.randint(1, 3)
            T = TorsorAlgebra(K, ["a", "b"][:nb], [f"x{i}" for i in range(1, nf + 1)])
            f = _random_torsor_poly(rng, K, T, 4, p)
            count += 1
            D = delta(f, T)
            _expect(failures, _components_match(f, T, D, p),
                    f"char {p}: Delta of {f} disagrees with the binomial expansion")
            _expect(failures, counit_check(f, T), f"char {p}: counit fails for {f}")
            _expect(failures, coassociativity_check(f, T), f"char {p}: coassociativity fails for {f}")
            if f.degree_in(T.fiber) <= 0:
                continue
            if p == 0:
                _expect(failures, not D[1].is_zero(), f"Delta_1 vanishes on {f}")
                continue
            d = frobenius_descend(f, T)
            q = d.q
            try:
                char_power_exponent(q, p)
            except ValueError:
                failures.append(f"q={q} is not a power of {p}")
            _expect(failures, not D[q].is_zero(), f"Delta_q vanishes for {f}")
            _expect(failures, all(D[i].is_zero() for i in range(1, q)), f"low components survive for {f}")
            _expect(failures, d.reconstruct() == f, f"rewrite of {f} does not reconstruct it")
            _expect(failures, twisted_delta_check(f, T, q), f"twisted Delta fails for {f}, q={q}")
    return f"{count} elements"


@_criterion(5, "init is multiplicative over a domain", 60)
def criterion_5(failures):
    rng = random.Random(5)
    for k in range(100):
        p = (0, 2, 3)[k % 3]
        K = QQ if p == 0 else GF(p)
        T = TorsorAlgebra(K, ["a", "b"], ["x1", "x2"])
        f = _random_torsor_poly(rng, K, T, 3, p)
        g = _random_torsor_poly(rng, K, T, 3, p)
        lf, lg = filtration_level(f, T), filtration_level(g, T)
        fg = f * g
        _expect(failures, filtration_level(fg, T) == lf + lg, f"level not additive for {f}, {g}")
        _expect(failures, init(fg, T) == init(f, T) * init(g, T), f"init not multiplicative for {f}, {g}")
    return "100 pairs"


def witness_cases(count=24, seed=6):
    """(model, f, phi, r0, J-basis) for the Sym^2 shift model, n <= 3."""
    rng = random.Random(seed)
    bases = {}
    out = []
    fields = [QQ, GF(2), GF(3)]
    for k in range(count):
        K = fields[k % 3]
        n = 2 + (k // 3) % 2
        M = SymShiftModel(K, 2, n)
        if (K.spec, n) not in bases:
            bases[(K.spec, n)] = buchberger(M.rank_one_ideal())
        minors = M.u_minors()
        f = Poly(K, M.vars)
        for g in minors:
            mult = Poly.constant(K, M.vars, rng.randint(1, 3))
            if rng.random() < 0.5:
                mult = mult * Poly.var(K, M.vars, rng.choice(M.u_block))
            f = f + g * mult
        while True:
            rows = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(2)]
            phi = {u: {e: c for e, c in zip(M.e, row) if c} for u, row in zip(M.u, rows)}
            try:
                M.check_phi(phi)
                break
            except ValueError:
                continue
        r0 = {v: K(rng.randint(0, 2)) for v in M.u_block}
        out.append((M, f, phi, r0, bases[(K.spec, n)]))
    return out


@_criterion(6, "embedding witness in the Sym^2 model", 120)
def criterion_6(failures):
    triples = 0
    for M, f, phi, r0, G in witness_cases():
        rep = embed_witness(f, r0, phi, M, G, samples=3, seed=triples)
        triples += rep.samples
        _expect(failures, rep.passed, f"{M.field.spec} n={M.n}: {rep.to_dict()['checks']} for f={f}")
        _expect(failures, not rep.w.is_zero() or f.is_zero(), f"trivial witness for {f}")
    return f"{triples} (f, phi, r) triples"


@_criterion(7, "twisted F-elementary example, n = 1, 2, 3", 120)
def criterion_7(failures):
    for n in (1, 2, 3):
        rep = ns_example_check(n)
        _expect(failures, rep.passed, f"n={n}: {rep.to_dict()}")
    return ""


LIFT_TABLE = [
    # (d, q, c, e) with e = d * c^k, q = p^k
    (2, 1, 4, 2),
    (2, 2, 4, 8),
    (3, 4, 4, 48),
    (1, 2, 2, 2),
    (2, 8, 2, 16),
    (3, 3, 3, 9),
    (2, 9, 3, 18),
    (5, 1, 1, 5),
    (4, 4, 1, 4),
    (2, 27, 3, 54),
]


@_criterion(8, "semi-perfect degree arithmetic", 1)
def criterion_8(failures):
    K = parse_field_spec("GF(2)(t1,t2)")
    _expect(failures, p_degree(K) == (2, 4), f"p_degree = {p_degree(K)}")
    basis = sorted(K.format(b) for b in K.p_basis())
    _expect(failures, basis == sorted(["1", "t1", "t2", "t1*t2"]), f"p-basis {basis}")
    for d, q, c, e in LIFT_TABLE:
        _expect(failures, lift_degree_bound(d, q, c) == e, f"lift_degree_bound{(d, q, c)} != {e}")
    return f"basis {basis}"


@_criterion(9, "diagonal quadratics over GF(3), GF(5)", 300)
def criterion_9(failures):
    count = 0
    for p in (3, 5):
        K = GF(p)
        for n in range(1, 5):
            variables = tuple(f"x{i}" for i in range(1, n + 1))
            for cs in itertools.product(range(p), repeat=n):
                if not any(cs):
                    continue
                terms = {tuple(2 if j == i else 0 for j in range(n)): K(c).value for i, c in enumerate(cs) if c}
                f = Form(Poly(K, variables, terms))
                want = -(-diagonal_quadratic_rank(list(cs), p) // 2)
                fast = astr_report(f, method="fast").value
                slow = astr_report(f, method="groebner").value
                count += 1
                _expect(failures, fast == want == slow, f"GF({p}) {f}: fast {fast}, generic {slow}, expected {want}")
    return f"{count} forms"


@_criterion(10, "strength gap bound on the cubic corpus", 600)
def criterion_10(failures):
    corpus = cubic_corpus()
    strs = [str_exact_finite_field(f).upper for f in corpus]
    astrs = [astr(f) for f in corpus]
    st_of = dict(zip(corpus, strs))
    e = 1
    missing = 0
    for f, a in zip(corpus, astrs):
        for s in (1, 2):
            if a > s:
                continue
            lift = extension_lift_search(f, s, 3)
            if lift is None:
                missing += 1
                continue
            e = max(e, lift.degree)
            # the per-instance form of the bound: str_K <= [L:K] * str_L
            _expect(failures, st_of[f] <= lift.degree * s, f"{f}: str {st_of[f]} > {lift.degree}*{s}")
    for s in (1, 2):
        s2 = gap_bound(e, s)
        for f, st, a in zip(corpus, strs, astrs):
            _expect(failures, not (st > s2 and a <= s), f"{f}: str {st} > {s2} but astr {a} <= {s}")
    vacuous = gap_bound(e, 1) >= max(strs)
    return f"e = {e}, lifts not found within budget: {missing}" + (", threshold not reached by any str" if vacuous else "")


def run_all(numbers=None) -> List[CriterionResult]:
    numbers = sorted(_REGISTRY) if numbers is None else numbers
    return [_REGISTRY[n]() for n in numbers]


def get(number: int) -> Callable[[], CriterionResult]:
    return _REGISTRY[number]
