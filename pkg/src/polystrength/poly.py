"""Sparse multivariate polynomials over an exact field.

A ``Poly`` stores a map from exponent tuples to nonzero internal field values.
Values are immutable; every operation returns a new polynomial.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from . import _expr
from .fields import Field, FieldElement, FieldSpecError, format_terms

Exp = Tuple[int, ...]


# ----------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """A total order on exponent tuples, given by a sort key (larger = leading)."""

    def __init__(self, name, key, graded=False):
        self.name = name
        self.key = key
        self.graded = graded

    def __repr__(self):
        return f"MonomialOrder({self.name})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


# Keys are flat integer tuples so that negating them elementwise reverses the order.
lex = MonomialOrder("lex", lambda e: e)
grlex = MonomialOrder("grlex", lambda e: (sum(e),) + e, graded=True)
grevlex = MonomialOrder("grevlex", _grevlex_key, graded=True)


def block_order(k):
    """Elimination order: the first k variables dominate, grevlex inside blocks."""

    def key(e):
        return _grevlex_key(e[:k]) + _grevlex_key(e[k:])

    return MonomialOrder(f"block({k})", key)


def get_order(order):
    if isinstance(order, MonomialOrder):
        return order
    if order is None:
        return grevlex
    named = {"lex": lex, "grlex": grlex, "grevlex": grevlex}
    if order in named:
        return named[order]
    m = re.fullmatch(r"block\((\d+)\)", order)
    if m:
        return block_order(int(m.group(1)))
    raise ValueError(f"unknown monomial order {order!r}")


def natural_key(name):
    return [int(t) if t.isdigit() else t for t in re.findall(r"\d+|\D+", name)]


# ----------------------------------------------------------------------------
# the polynomial type


class Poly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: Field, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.field = field
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        is_zero = field.is_zero
        self.terms: Dict[Exp, object] = {e: c for e, c in (terms or {}).items() if not is_zero(c)}
        self._hash = None

    # --- constructors
    @classmethod
    def constant(cls, field, variables, c):
        if isinstance(c, FieldElement):
            c = field.coerce(c.value, c.field)
        elif not isinstance(c, (int, Fraction)):
            pass
        else:
            c = field(c).value
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, field, variables, name):
        i = list(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(field, variables, {tuple(e): field.one})

    @classmethod
    def gens(cls, field, variables):
        return [cls.var(field, variables, v) for v in variables]

    def _new(self, terms, variables=None):
        p = Poly.__new__(Poly)
        p.field = self.field
        p.vars = self.vars if variables is None else tuple(variables)
        p.terms = terms
        p._hash = None
        return p

    # --- ring compatibility
    def _lift(self, other):
        """Return (a, b) over a common variable list."""
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            if other.vars == self.vars:
                return self, other
            union = list(self.vars) + [v for v in other.vars if v not in self.vars]
            return self.with_vars(union), other.with_vars(union)
        return self, Poly.constant(self.field, self.vars, self._scalar(other))

    def _scalar(self, c):
        K = self.field
        if isinstance(c, FieldElement):
            return K.coerce(c.value, c.field)
        return K(c).value

    def with_vars(self, variables):
        """The same polynomial regarded in a (super)set of variables."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v in variables:
                pos.append(variables.index(v))
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.vars[i]!r} is not in {variables}")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return self._new(out, variables)

    # --- arithmetic
    def __add__(self, other):
        a, b = self._lift(other)
        K = a.field
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = K.add(out[e], c)
                if K.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return a._new(out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return self._new({e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._lift(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._lift(other)
        return b + (-a)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self._scalar(other)
            K = self.field
            if K.is_zero(c):
                return self._new({})
            return self._new({e: K.mul(v, c) for e, v in self.terms.items()})
        a, b = self._lift(other)
        K = a.field
        add, mul, is_zero = K.add, K.mul, K.is_zero
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], v)
                else:
                    out[e] = v
        return a._new({e: c for e, c in out.items() if not is_zero(c)})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant() and not other.is_zero():
                other = other.field.element(other.constant_value())
            else:
                raise ValueError("only division by nonzero constants is supported")
        c = self._scalar(other)
        return self * self.field.element(self.field.inv(c))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                return False
            if other.vars != self.vars:
                try:
                    a, b = self._lift(other)
                except ValueError:
                    return False
                return a.terms == b.terms
            return self.terms == other.terms
        try:
            return self == Poly.constant(self.field, self.vars, self._scalar(other))
        except (TypeError, ValueError, FieldSpecError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            used = self.used_vars()
            p = self.with_vars(used)
            self._hash = hash((self.field, p.vars, frozenset(p.terms.items())))
        return self._hash

    # --- queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.field.zero)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]):
        idx = [self.vars.index(n) for n in names if n in self.vars]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coefficient(self, exp) -> FieldElement:
        return self.field.element(self.terms.get(tuple(exp), self.field.zero))

    def monomials(self, order=None):
        key = get_order(order).key
        return sorted(self.terms, key=key, reverse=True)

    def leading_monomial(self, order=None):
        key = get_order(order).key
        return max(self.terms, key=key)

    def leading_coefficient(self, order=None):
        return self.field.element(self.terms[self.leading_monomial(order)])

    def __len__(self):
        return len(self.terms)

    # --- transformations
    def homogeneous_components(self):
        out: Dict[int, Dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: self._new(t) for d, t in sorted(out.items())}

    def part_of_degree_in(self, names, k):
        """Terms whose degree in ``names`` is exactly k."""
        idx = [self.vars.index(n) for n in names if n in self.vars]
        return self._new({e: c for e, c in self.terms.items() if sum(e[i] for i in idx) == k})

    def rename(self, mapping: Mapping[str, str]):
        new = [mapping.get(v, v) for v in self.vars]
        return self._new(dict(self.terms), new)

    def subs(self, mapping: Mapping[str, "Poly"], variables=None):
        """Substitute polynomials for variables.

        Variables not in ``mapping`` are kept.  The result lives in
        ``variables`` if given, else in the union of the kept variables and
        the variables of the images.
        """
        K = self.field
        if variables is None:
            kept = [v for v in self.vars if v not in mapping]
            extra = []
            for img in mapping.values():
                if isinstance(img, Poly):
                    extra.extend(w for w in img.vars if w not in kept and w not in extra)
            variables = kept + extra
        variables = tuple(variables)
        images = []
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, Poly):
                    img = Poly.constant(K, variables, img)
                images.append(img.with_vars(variables))
            else:
                images.append(Poly.var(K, variables, v))
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                if k == 1:
                    cache[key] = images[i]
                else:
                    half = power(i, k // 2)
                    sq = half * half
                    cache[key] = sq * images[i] if k % 2 else sq
            return cache[key]

        acc: Dict = {}
        for e, c in self.terms.items():
            term = {tuple([0] * len(variables)): c}
            t = Poly(K, variables, term)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t.terms.items():
                acc[te] = K.add(acc[te], tc) if te in acc else tc
        return Poly(K, variables, acc)

    def evaluate(self, point: Mapping[str, object]):
        """Substitute field values for some variables; returns a Poly."""
        return self.subs({k: v for k, v in point.items()})

    def diff(self, name):
        K = self.field
        if name not in self.vars:
            return self._new({})
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = K.mul(K.from_int(k), c)
                if not K.is_zero(v):
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return self._new(out)

    def coefficients_in(self, names: Sequence[str]):
        """Split by monomials in ``names``: {exp over names: Poly in the other vars}."""
        idx = [self.vars.index(n) for n in names]
        rest = [i for i in range(len(self.vars)) if i not in idx]
        rest_vars = [self.vars[i] for i in rest]
        out: Dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            out.setdefault(key, {})[tuple(e[i] for i in rest)] = c
        return {k: self._new(t, rest_vars) for k, t in out.items()}

    def change_field(self, L: Field):
        K = self.field
        if L == K:
            return self
        p = Poly(L, self.vars)
        p.terms = {e: L.coerce(c, K) for e, c in self.terms.items()}
        return p

    def map_coefficients(self, fn):
        return Poly(self.field, self.vars, {e: fn(c) for e, c in self.terms.items()})

    # --- display
    def __str__(self):
        K = self.field
        pairs = []
        for e in self.monomials():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            pairs.append((K.format(self.terms[e]), mono))
        return format_terms(pairs)

    def __repr__(self):
        return f"Poly({self}, vars={list(self.vars)}, field={self.field})"


# ----------------------------------------------------------------------------
# parsing


def parse_poly(text: str, variables: Sequence[str] | None, K: Field) -> Poly:
    """Parse ``text`` over K.  Names that are field generators become
    coefficients; with ``variables=None`` the remaining names become variables
    in natural order."""
    try:
        node = _expr.parse(text)
    except _expr.ExprSyntaxError as exc:
        raise ValueError(str(exc)) from None
    if variables is None:
        variables = sorted((n for n in _expr.names(node) if n not in K.gens), key=natural_key)
    variables = tuple(variables)
    for v in variables:
        if v in K.gens:
            raise ValueError(f"variable {v!r} clashes with a generator of {K}")

    def name(n):
        if n in variables:
            return Poly.var(K, variables, n)
        if n in K.gens:
            return Poly(K, variables, {(0,) * len(variables): K.gens[n]})
        raise ValueError(f"unknown name {n!r} (not a variable, not a generator of {K})")

    def div(a, b):
        if not b.is_constant() or b.is_zero():
            raise ValueError("division only by nonzero constants")
        return a * K.element(K.inv(b.constant_value()))

    return _expr.fold(
        node,
        num=lambda n: Poly.constant(K, variables, n),
        name=name,
        add=lambda a, b: a + b,
        sub=lambda a, b: a - b,
        mul=lambda a, b: a * b,
        div=div,
        pow=lambda a, e: a ** e,
        neg=lambda a: -a,
    )


# ----------------------------------------------------------------------------
# operations


def homogeneous_components(f: Poly):
    return f.homogeneous_components()


def double_substitute(f: Poly, pairs: Mapping[str, str]) -> Poly:
    """f with x -> x + y for each (x, y) in ``pairs``; y's are appended."""
    partners = list(pairs.values())
    if len(set(partners)) != len(partners):
        raise ValueError("partner names must be distinct")
    for y in partners:
        if y in f.vars or y in f.field.gens:
            raise ValueError(f"partner name {y!r} collides with an existing name")
    for x in pairs:
        if x not in f.vars:
            raise ValueError(f"{x!r} is not a variable of the polynomial")
    variables = list(f.vars) + partners
    K = f.field
    mapping = {x: Poly.var(K, variables, x) + Poly.var(K, variables, y) for x, y in pairs.items()}
    return f.subs(mapping, variables)


def poly_frobenius_twist(f: Poly, q: int) -> Poly:
    """Multiply exponents by q and raise coefficients to the q-th power."""
    K = f.field
    if q == 1:
        return f
    p = K.characteristic
    if p == 0:
        raise ValueError("Frobenius twist with q > 1 needs positive characteristic")
    k = q
    while k % p == 0:
        k //= p
    if k != 1:
        raise ValueError(f"q={q} is not a power of {p}")
    return Poly(K, f.vars, {tuple(x * q for x in e): K.pow(c, q) for e, c in f.terms.items()})


def monomials_of_degree(n: int, d: int):
    """Exponent tuples of degree d in n variables, in descending lex order."""
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix, left, i):
        if i == n - 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, i + 1)

    rec([], d, 0)
    return out
