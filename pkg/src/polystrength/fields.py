"""Exact fields built as towers over QQ or GF(p).

A tower is a chain of ``Field`` objects, each one a layer over the previous:

* ``RationalFunctionField``  -- adjoin a transcendental ``t``;
* ``AlgebraicExtension``     -- adjoin a root of an irreducible polynomial;
* ``FiniteExtensionField``   -- same, over a finite base, with log tables;
* ``FrobeniusRootField``     -- ``K^(1/q)``, all q-th roots of ``K`` at once.

Fields operate on *internal values* (ints, Fractions, nested tuples) so the
polynomial and Groebner code can run without wrapper overhead.  The public
``FieldElement`` wraps a value together with its field.

In characteristic p every field also carries a p-basis: a basis ``b_1 = 1,
..., b_c`` of K over K^p together with a decomposition ``x = sum b_i y_i^p``.
This is what ``p_degree`` and ``is_qth_power`` are computed from.
"""
from __future__ import annotations

import math
import random as _random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _expr
from . import linalg
from . import upoly

TABLE_LIMIT = 1 << 16


class FieldSpecError(ValueError):
    """Malformed field spec, reducible minimal polynomial, and the like."""


class UndecidedError(Exception):
    """An exact question this toolkit cannot settle for the given field."""


# ----------------------------------------------------------------------------
# layer records


@dataclass(frozen=True)
class Transcendental:
    name: str


@dataclass(frozen=True)
class Algebraic:
    name: str
    minpoly: str
    degree: int


@dataclass(frozen=True)
class PthRoot:
    q: int
    target: Optional[str] = None  # None: every generator of the tower


# ----------------------------------------------------------------------------
# formatting helpers


def _needs_parens(s):
    body = s[1:] if s.startswith("-") else s
    if re.fullmatch(r"\d+/\d+", body):
        return False
    return any(ch in body for ch in "+-/")


def format_terms(pairs):
    """Join (coefficient string, monomial string) pairs into a sum."""
    if not pairs:
        return "0"
    parts = []
    for coeff, mono in pairs:
        if not mono:
            parts.append(coeff)
        elif coeff == "1":
            parts.append(mono)
        elif coeff == "-1":
            parts.append("-" + mono)
        elif _needs_parens(coeff):
            parts.append(f"({coeff})*{mono}")
        else:
            parts.append(f"{coeff}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _format_upoly(K, coeffs, name):
    pairs = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if K.is_zero(c):
            continue
        mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
        pairs.append((K.format(c), mono))
    return format_terms(pairs)


# ----------------------------------------------------------------------------
# element wrapper


class FieldElement:
    """A value of a ``Field`` with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other.value
            return self.field.coerce(other.value, other.field)
        return self.field(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except (TypeError, ValueError, FieldSpecError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def is_zero(self):
        return self.field.is_zero(self.value)

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __repr__(self):
        return self.field.format(self.value)

    __str__ = __repr__


# ----------------------------------------------------------------------------
# base class


class Field:
    characteristic: int = 0
    base: Optional["Field"] = None
    layers: tuple = ()
    size: Optional[int] = None
    spec: str = ""

    # --- arithmetic defaults, overridden where cheaper
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero(self, a):
        return a == self.zero

    # --- identity / comparison
    def __eq__(self, other):
        return isinstance(other, Field) and type(self) is type(other) and self.spec == other.spec

    def __hash__(self):
        return hash((type(self).__name__, self.spec))

    def __repr__(self):
        return self.spec

    # --- construction of elements
    def __call__(self, x=0):
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            return FieldElement(self, self.coerce(x.value, x.field))
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return FieldElement(self, self.from_int(x))
        if isinstance(x, Fraction):
            return FieldElement(self, self.div(self.from_int(x.numerator), self.from_int(x.denominator)))
        if isinstance(x, str):
            return FieldElement(self, self.parse_value(x))
        raise TypeError(f"cannot build an element of {self} from {x!r}")

    def element(self, value):
        return FieldElement(self, value)

    def gen(self, name):
        try:
            return FieldElement(self, self.gens[name])
        except KeyError:
            raise KeyError(f"{name!r} is not a generator of {self}") from None

    def parse_value(self, text):
        node = _expr.parse(text)

        def name(n):
            if n not in self.gens:
                raise FieldSpecError(f"unknown field generator {n!r} in {text!r} over {self}")
            return self.gens[n]

        return _expr.fold(
            node,
            num=self.from_int,
            name=name,
            add=self.add,
            sub=self.sub,
            mul=self.mul,
            div=self._checked_div,
            pow=self.pow,
            neg=self.neg,
        )

    def _checked_div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero in field literal")
        return self.div(a, b)

    # --- towers
    def tower(self):
        out = []
        K = self
        while K is not None:
            out.append(K)
            K = K.base
        return out[::-1]

    def contains(self, K):
        return any(F == K for F in self.tower())

    def coerce(self, value, src):
        """Map ``value`` of the subfield ``src`` into this field."""
        if src == self:
            return value
        if self.base is None:
            raise TypeError(f"{src} is not a subfield of {self}")
        return self.embed_base(self.base.coerce(value, src))

    def degree_over(self, K):
        """[self : K] as an int, or None when infinite."""
        if self == K:
            return 1
        if self.base is None:
            raise TypeError(f"{K} is not a subfield of {self}")
        below = self.base.degree_over(K)
        step = self.layer_degree()
        if below is None or step is None:
            return None
        return below * step

    def layer_degree(self):
        return None

    def prime_field(self):
        return self.tower()[0]

    # --- finite fields
    def is_finite(self):
        return self.size is not None

    def elements(self):
        raise TypeError(f"{self} is infinite")

    def sort_key(self, a):
        s = self.format(a)
        return (len(s), s)

    # --- char p structure
    def p_basis(self):
        raise TypeError("p-basis is only defined in positive characteristic")

    def p_decompose(self, a):
        raise TypeError("p-basis is only defined in positive characteristic")

    def pth_root(self, a):
        """The unique y with y^p = a, or None if a is not a p-th power."""
        comps = self.p_decompose(a)
        if any(not self.is_zero(c) for c in comps[1:]):
            return None
        return comps[0]

    def sqrt(self, a):
        """A square root of ``a`` in this field, or None.  Raises UndecidedError."""
        raise UndecidedError(f"square roots are not implemented over {self}")

    def renamed(self, rename):
        raise NotImplementedError


# ----------------------------------------------------------------------------
# prime fields


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.spec = "QQ"
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.gens = {}
        self.layers = ()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def format(self, a):
        return str(a)

    def random(self, rng):
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    def sqrt(self, a):
        if a < 0:
            return None
        n, d = a.numerator, a.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def renamed(self, rename):
        return self


class PrimeFiniteField(Field):
    def __init__(self, p):
        if p < 2 or any(p % k == 0 for k in range(2, math.isqrt(p) + 1)):
            raise FieldSpecError(f"GF({p}): {p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.spec = f"GF({p})"
        self.zero = 0
        self.one = 1
        self.gens = {}
        self.layers = ()
        self._int_indexed = True

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def format(self, a):
        return str(a)

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def sort_key(self, a):
        return a

    def p_basis(self):
        return [1]

    def p_decompose(self, a):
        return [a]

    def sqrt(self, a):
        for y in range(self.p):
            if y * y % self.p == a:
                return y
        return None

    def renamed(self, rename):
        return self


# ----------------------------------------------------------------------------
# K(t)


class RationalFunctionField(Field):
    """K(t): values are (num, den) coefficient tuples, den monic, coprime."""

    def __init__(self, base, name):
        if name in base.gens:
            raise FieldSpecError(f"generator {name!r} already used in {base}")
        self.base = base
        self.name = name
        self.characteristic = base.characteristic
        B = base
        self.zero = ((), (B.one,))
        self.one = ((B.one,), (B.one,))
        if isinstance(base, RationalFunctionField) and base.spec.endswith(")"):
            self.spec = base.spec[:-1] + f",{name})"
        else:
            self.spec = f"{base.spec}({name})"
        self.layers = base.layers + (Transcendental(name),)
        self.gens = {k: self.embed_base(v) for k, v in base.gens.items()}
        self.gens[name] = ((B.zero, B.one), (B.one,))
        self._pbasis = None

    def _norm(self, n, d):
        B = self.base
        n = upoly.trim(B, n)
        if not n:
            return self.zero
        d = upoly.trim(B, d)
        if len(d) > 1 and len(n) > 0:
            g = upoly.gcd(B, n, d)
            if len(g) > 1:
                n = upoly.divmod_(B, n, g)[0]
                d = upoly.divmod_(B, d, g)[0]
        lc = d[-1]
        if lc != B.one:
            il = B.inv(lc)
            n = upoly.scale(B, n, il)
            d = upoly.scale(B, d, il)
        return (n, d)

    def embed_base(self, b):
        if self.base.is_zero(b):
            return self.zero
        return ((b,), (self.base.one,))

    def add(self, a, b):
        B = self.base
        (n1, d1), (n2, d2) = a, b
        if not n1:
            return b
        if not n2:
            return a
        if d1 == d2:
            return self._norm(upoly.add(B, n1, n2), d1)
        return self._norm(
            upoly.add(B, upoly.mul(B, n1, d2), upoly.mul(B, n2, d1)), upoly.mul(B, d1, d2)
        )

    def neg(self, a):
        return (upoly.neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        B = self.base
        if not a[0] or not b[0]:
            return self.zero
        return self._norm(upoly.mul(B, a[0], b[0]), upoly.mul(B, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self._norm(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def from_int(self, n):
        return self.embed_base(self.base.from_int(n))

    def format(self, a):
        n, d = a
        ns = _format_upoly(self.base, n, self.name)
        if len(d) == 1:
            return ns
        ds = _format_upoly(self.base, d, self.name)
        if _needs_parens(ns):
            ns = f"({ns})"
        if not re.fullmatch(r"[a-z0-9]+", ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def random(self, rng):
        B = self.base
        n = tuple(B.random(rng) for _ in range(rng.randint(1, 3)))
        d = tuple(B.random(rng) for _ in range(rng.randint(0, 1))) + (B.one,)
        return self._norm(n, d)

    def p_basis(self):
        if self._pbasis is None:
            B = self.base
            out = []
            for j in range(self.characteristic):
                for b in B.p_basis():
                    out.append(self._norm((B.zero,) * j + (b,), (B.one,)))
            self._pbasis = out
        return self._pbasis

    def p_decompose(self, a):
        B = self.base
        p = self.characteristic
        n, d = a
        cb = len(B.p_basis())
        N = upoly.mul(B, n, upoly.pow_(B, d, p - 1)) if len(d) > 1 else n
        parts = [[[] for _ in range(cb)] for _ in range(p)]
        for k, coeff in enumerate(N):
            j, ell = k % p, k // p
            dec = B.p_decompose(coeff)
            for beta in range(cb):
                col = parts[j][beta]
                while len(col) < ell:
                    col.append(B.zero)
                col.append(dec[beta])
        return [self._norm(tuple(parts[j][beta]), d) for j in range(p) for beta in range(cb)]

    def sqrt(self, a):
        if self.characteristic == 2:
            return self.pth_root(a)
        B = self.base
        n, d = a
        if not n:
            return self.zero
        nd = upoly.mul(B, n, d)
        s = _poly_sqrt(B, nd)
        if s is None:
            return None
        return self._norm(s, d)

    def renamed(self, rename):
        return RationalFunctionField(self.base.renamed(rename), rename(self.name))


def _poly_sqrt(B, a):
    if not a:
        return ()
    if (len(a) - 1) % 2:
        return None
    k = (len(a) - 1) // 2
    lead = B.sqrt(a[-1])
    if lead is None:
        return None
    s = [B.zero] * (k + 1)
    s[k] = lead
    two_lead_inv = B.inv(B.mul(B.from_int(2), lead))
    for i in range(k - 1, -1, -1):
        rest = B.zero
        for j in range(i + 1, k):
            ell = k + i - j
            if i < ell <= k:
                rest = B.add(rest, B.mul(s[j], s[ell]))
        s[i] = B.mul(B.sub(a[k + i], rest), two_lead_inv)
    s = upoly.trim(B, s)
    return s if upoly.mul(B, s, s) == upoly.trim(B, a) else None


# ----------------------------------------------------------------------------
# K[g]/(m(g))


class AlgebraicExtension(Field):
    """K[g]/(m): values are coefficient tuples of length deg m."""

    def __init__(self, base, name, minpoly, *, verify=True):
        if name in base.gens:
            raise FieldSpecError(f"generator {name!r} already used in {base}")
        B = base
        m = upoly.monic(B, upoly.trim(B, minpoly))
        if len(m) < 2:
            raise FieldSpecError("minimal polynomial must have positive degree")
        if verify:
            ok = is_irreducible(B, m)
            if not ok:
                raise FieldSpecError(f"{_format_upoly(B, m, name)} is reducible over {B}")
        self.base = base
        self.name = name
        self.minpoly = m
        self.deg = len(m) - 1
        self.characteristic = base.characteristic
        self.size = base.size ** self.deg if base.size else None
        self.zero = (B.zero,) * self.deg
        self.one = (B.one,) + (B.zero,) * (self.deg - 1)
        mtext = _format_upoly(B, m, name)
        self.spec = f"{base.spec}[{name}]/({mtext})"
        self.layers = base.layers + (Algebraic(name, mtext, self.deg),)
        self.gens = {k: self.embed_base(v) for k, v in base.gens.items()}
        g = [B.zero] * self.deg
        if self.deg == 1:
            g = [B.neg(m[0])]
        else:
            g[1] = B.one
        self.gens[name] = tuple(g)
        self._pb = None

    def layer_degree(self):
        return self.deg

    def _pad(self, a):
        return tuple(a) + (self.base.zero,) * (self.deg - len(a))

    def embed_base(self, b):
        return (b,) + (self.base.zero,) * (self.deg - 1)

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        prod = upoly.mul(B, upoly.trim(B, a), upoly.trim(B, b))
        if len(prod) > self.deg:
            prod = upoly.rem(B, prod, self.minpoly)
        return self._pad(prod)

    def inv(self, a):
        B = self.base
        g, s, _ = upoly.xgcd(B, upoly.trim(B, a), self.minpoly)
        if not g:
            raise ZeroDivisionError("inverse of zero")
        return self._pad(upoly.rem(B, s, self.minpoly))

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def from_int(self, n):
        return self.embed_base(self.base.from_int(n))

    def format(self, a):
        return _format_upoly(self.base, upoly.trim(self.base, a), self.name)

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.deg))

    def elements(self):
        if self.size is None:
            raise TypeError(f"{self} is infinite")
        import itertools

        for combo in itertools.product(list(self.base.elements()), repeat=self.deg):
            yield tuple(combo)

    # --- p-basis by row reduction over the base
    def _p_data(self):
        if self._pb is not None:
            return self._pb
        B = self.base
        p = self.characteristic
        g = self.gens[self.name]
        gp = [self.pow(g, p * j) for j in range(self.deg)]

        def coords(z):
            v = []
            for x in z:
                v.extend(B.p_decompose(x))
            return v

        candidates = []
        for k in range(self.deg):
            for b in B.p_basis():
                candidates.append(self.mul(self.embed_base(b), self.pow(g, k)))
        chosen, cols = [], []
        current = 0
        for s in candidates:
            new = [coords(self.mul(s, x)) for x in gp]
            r = linalg.rank(B, cols + new)
            if r == current + self.deg:
                chosen.append(s)
                cols.extend(new)
                current = r
        self._pb = (chosen, cols, coords)
        return self._pb

    def p_basis(self):
        return list(self._p_data()[0])

    def p_decompose(self, a):
        chosen, cols, coords = self._p_data()
        B = self.base
        lam = linalg.solve(B, cols, coords(a))
        if lam is None:  # pragma: no cover - the chosen set spans by construction
            raise ArithmeticError("p-basis does not span")
        out = []
        for i in range(len(chosen)):
            out.append(tuple(lam[i * self.deg:(i + 1) * self.deg]))
        return out

    def sqrt(self, a):
        if self.characteristic == 2:
            return self.pth_root(a)
        if self.is_finite():
            for y in self.elements():
                if self.mul(y, y) == a:
                    return y
            return None
        if self.deg == 1:
            r = self.base.sqrt(a[0])
            return None if r is None else (r,)
        if self.deg != 2:
            raise UndecidedError(f"square roots over degree-{self.deg} layer {self}")
        # write g = h - beta/2 with h^2 = D, then solve in the basis {1, h}
        B = self.base
        gamma, beta = self.minpoly[0], self.minpoly[1]
        half = B.inv(B.from_int(2))
        hb = B.mul(beta, half)
        D = B.sub(B.mul(hb, hb), gamma)
        u0 = B.sub(a[0], B.mul(a[1], hb))
        u1 = a[1]
        cands = []
        if B.is_zero(u1):
            s = B.sqrt(u0)
            if s is not None:
                cands.append((s, B.zero))
            v = B.sqrt(B.div(u0, D))
            if v is not None:
                cands.append((B.zero, v))
        else:
            n = B.sqrt(B.sub(B.mul(u0, u0), B.mul(D, B.mul(u1, u1))))
            if n is not None:
                for sgn in (n, B.neg(n)):
                    s = B.sqrt(B.mul(B.add(u0, sgn), half))
                    if s is not None and not B.is_zero(s):
                        cands.append((s, B.div(u1, B.mul(B.from_int(2), s))))
        for s, v in cands:
            y = (B.add(s, B.mul(v, hb)), v)
            if self.mul(y, y) == tuple(a):
                return y
        return None

    def renamed(self, rename):
        return AlgebraicExtension(self.base.renamed(rename), rename(self.name), self.minpoly, verify=False)


# ----------------------------------------------------------------------------
# finite extensions with tables


class FiniteExtensionField(Field):
    """GF(Q) as a layer over a finite int-indexed base; values are ints 0..Q-1.

    The index of c_0 + c_1 g + ... is sum c_k * |base|^k, so 0 is zero, 1 is
    one, and base values embed as themselves.
    """

    def __init__(self, base, name, minpoly, *, spec=None, verify=True):
        inner = AlgebraicExtension(base, name, minpoly, verify=verify)
        self._inner = inner
        self.base = base
        self.name = name
        self.minpoly = inner.minpoly
        self.deg = inner.deg
        self.characteristic = base.characteristic
        self.size = Q = inner.size
        self.spec = spec or inner.spec
        self.layers = inner.layers
        self.zero = 0
        self.one = 1
        self._int_indexed = True
        qb = base.size
        self._qb = qb

        def to_tuple(i):
            out = []
            for _ in range(self.deg):
                out.append(i % qb)
                i //= qb
            return tuple(out)

        def to_index(t):
            i = 0
            for c in reversed(t):
                i = i * qb + c
            return i

        self._to_tuple, self._to_index = to_tuple, to_index
        # log / exp tables from a primitive element
        order = Q - 1
        prime_factors = [r for r in range(2, order + 1) if order % r == 0 and all(r % s for s in range(2, math.isqrt(r) + 1))]
        gen = None
        for cand in range(2, Q) if Q > 2 else []:
            ct = to_tuple(cand)
            if all(inner.pow(ct, order // r) != inner.one for r in prime_factors):
                gen = ct
                break
        if Q == 2:
            gen = inner.one
        exp = [0] * (2 * order)
        log = [0] * Q
        x = inner.one
        for k in range(order):
            idx = to_index(x)
            exp[k] = exp[k + order] = idx
            log[idx] = k
            x = inner.mul(x, gen)
        self._exp, self._log, self._order = exp, log, order
        if self.characteristic == 2 and getattr(base, "_xor_add", base.characteristic == 2):
            self._xor_add = True
            self.add = self.sub = lambda a, b: a ^ b
            self.neg = lambda a: a
        else:
            self._xor_add = False
            self._add_table = None
            if Q <= 729:
                self._add_table = [[to_index(inner.add(to_tuple(a), to_tuple(b))) for b in range(Q)] for a in range(Q)]
            self._neg_table = [to_index(inner.neg(to_tuple(a))) for a in range(Q)]
        self.gens = {k: self.embed_base(v) for k, v in base.gens.items()}
        self.gens[name] = to_index(inner.gens[name])

    def layer_degree(self):
        return self.deg

    def embed_base(self, b):
        return b

    def add(self, a, b):
        if self._add_table is not None:
            return self._add_table[a][b]
        t = self._inner.add(self._to_tuple(a), self._to_tuple(b))
        return self._to_index(t)

    def neg(self, a):
        return self._neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._order - self._log[a]) % self._order]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self._order]

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % self._order]

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return self.base.from_int(n)

    def format(self, a):
        return self._inner.format(self._to_tuple(a))

    def random(self, rng):
        return rng.randrange(self.size)

    def elements(self):
        return range(self.size)

    def sort_key(self, a):
        return a

    def p_basis(self):
        return [1]

    def p_decompose(self, a):
        if a == 0:
            return [0]
        # Frobenius inverse: a^(Q/p)
        return [self._exp[(self._log[a] * (self.size // self.characteristic)) % self._order]]

    def sqrt(self, a):
        if a == 0:
            return 0
        if self.characteristic == 2:
            return self.pth_root(a)
        if self._log[a] % 2:
            return None
        return self._exp[self._log[a] // 2]

    def renamed(self, rename):
        return FiniteExtensionField(self.base.renamed(rename), rename(self.name), self.minpoly, verify=False)


# ----------------------------------------------------------------------------
# K^(1/q)


class FrobeniusRootField(Field):
    """K^(1/q), modelled as a renamed copy K' of K with K -> K', x |-> x'^q.

    Generator ``t`` of K becomes ``t`` + "r" + str(q) in the copy and stands
    for t^(1/q); the original name ``t`` remains available as (tr q)^q.
    """

    def __init__(self, base, q):
        p = base.characteristic
        if p == 0:
            raise FieldSpecError("p-th root layers need positive characteristic")
        if not _is_char_power(q, p) or q == 1:
            raise FieldSpecError(f"q={q} is not a positive power of the characteristic {p}")
        self.base = base
        self.q = q
        suffix = f"r{q}"
        self._rename = lambda n: f"{n}{suffix}"
        copy = base.renamed(self._rename)
        self._copy = copy
        self.characteristic = p
        self.size = base.size
        self.zero, self.one = copy.zero, copy.one
        for op in ("add", "sub", "neg", "mul", "inv", "div", "pow", "is_zero", "from_int", "format",
                   "random", "sqrt", "p_basis", "p_decompose", "sort_key"):
            setattr(self, op, getattr(copy, op))
        if base.size:
            self.elements = copy.elements
        self.spec = f"{base.spec}^(1/{q})"
        self.layers = base.layers + (PthRoot(q),)
        self.gens = dict(copy.gens)
        for name, v in base.gens.items():
            self.gens.setdefault(name, copy.pow(v, q))

    def embed_base(self, b):
        return self._copy.pow(b, self.q)

    def layer_degree(self):
        c = len(self.base.p_basis())
        k = round(math.log(self.q, self.characteristic))
        return c ** k

    def renamed(self, rename):
        return FrobeniusRootField(self.base.renamed(rename), self.q)


# ----------------------------------------------------------------------------
# irreducibility and roots


def _is_char_power(q, p):
    if q == 1:
        return True
    if p == 0 or q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def _prime_divisors(n):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(K, m):
    """Irreducibility of a monic univariate polynomial over K (internal values)."""
    m = upoly.monic(K, upoly.trim(K, m))
    n = len(m) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    if K.is_finite():
        Q = K.size
        X = (K.zero, K.one)
        if upoly.sub(K, upoly.powmod(K, X, Q ** n, m), X):
            return False
        for r in _prime_divisors(n):
            h = upoly.sub(K, upoly.powmod(K, X, Q ** (n // r), m), X)
            if len(upoly.gcd(K, h, m)) > 1:
                return False
        return True
    p = K.characteristic
    if p and _is_char_power(n, p) and all(K.is_zero(c) for c in m[1:-1]):
        # X^q - c is irreducible iff c is not a p-th power
        return K.pth_root(K.neg(m[0])) is None
    if n in (2, 3):
        try:
            return not find_roots(K, m)
        except UndecidedError as exc:
            raise FieldSpecError(f"cannot verify irreducibility over {K}: {exc}") from None
    raise FieldSpecError(f"cannot verify irreducibility of a degree-{n} polynomial over {K}")


def _rational_roots(m):
    """Rational roots of a polynomial with Fraction coefficients."""
    den = 1
    for c in m:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in m]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots = set()
    if len(m) > len(ints):
        roots.add(Fraction(0))
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])
    if max(a0, an) > 10 ** 12:
        raise UndecidedError("rational root search: coefficients too large")

    def divisors(n):
        out = []
        for k in range(1, math.isqrt(n) + 1):
            if n % k == 0:
                out.extend((k, n // k))
        return set(out)

    for num in divisors(a0):
        for d in divisors(an):
            for sgn in (1, -1):
                r = Fraction(sgn * num, d)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * r + c
                if acc == 0:
                    roots.add(r)
    return sorted(roots)


def find_roots(K, coeffs):
    """All roots in K of a univariate polynomial (internal values, low-to-high).

    Raises ``UndecidedError`` when the field gives no complete method.
    """
    m = upoly.trim(K, coeffs)
    if len(m) <= 1:
        if not m:
            raise ValueError("the zero polynomial has every element as a root")
        return []
    roots = []
    if K.is_zero(m[0]):
        roots.append(K.zero)
        while m and K.is_zero(m[0]):
            m = m[1:]
    m = upoly.monic(K, m)
    n = len(m) - 1
    if n == 0:
        found = []
    elif n == 1:
        found = [K.neg(m[0])]
    elif K.is_finite() and K.size <= TABLE_LIMIT:
        found = [x for x in K.elements() if K.is_zero(upoly.evaluate(K, m, x))]
    elif isinstance(K, RationalField):
        found = _rational_roots(m)
    elif K.characteristic and _is_char_power(n, K.characteristic) and all(K.is_zero(c) for c in m[1:-1]):
        y = K.neg(m[0])
        for _ in range(round(math.log(n, K.characteristic))):
            y = None if y is None else K.pth_root(y)
        found = [] if y is None else [y]
    elif n == 2:
        b, c = m[1], m[0]
        if K.characteristic == 2:
            raise UndecidedError(f"Artin-Schreier root finding over {K}")
        disc = K.sub(K.mul(b, b), K.mul(K.from_int(4), c))
        s = K.sqrt(disc)
        if s is None:
            found = []
        else:
            half = K.inv(K.from_int(2))
            found = [K.mul(K.sub(s, b), half), K.mul(K.sub(K.neg(s), b), half)]
    else:
        raise UndecidedError(f"root finding for degree {n} over {K}")
    for r in found:
        if r not in roots:
            roots.append(r)
    return sorted(roots, key=K.sort_key)


# ----------------------------------------------------------------------------
# field-spec parsing


def _first_irreducible(K, degree):
    import itertools

    elems = list(K.elements())
    for tail in itertools.product(elems, repeat=degree):
        m = tuple(tail) + (K.one,)
        if not K.is_zero(m[0]) and is_irreducible(K, m):
            return m
    raise FieldSpecError(f"no irreducible polynomial of degree {degree} over {K}")


def finite_field(q, name="a"):
    """GF(q) for a prime power q, using the first irreducible polynomial in
    lexicographic order when q is not prime."""
    ps = _prime_divisors(q)
    if len(ps) != 1:
        raise FieldSpecError(f"GF({q}): {q} is not a prime power")
    p = ps[0]
    Fp = PrimeFiniteField(p)
    if q == p:
        return Fp
    k = round(math.log(q, p))
    return algebraic_extension(Fp, name, _first_irreducible(Fp, k), spec=f"GF({q})")


def algebraic_extension(K, name, minpoly, *, spec=None):
    """K[name]/(minpoly), table-backed when K is a small finite field."""
    size = K.size ** (len(upoly.trim(K, minpoly)) - 1) if K.size else None
    if size is not None and size <= TABLE_LIMIT and getattr(K, "_int_indexed", False):
        return FiniteExtensionField(K, name, minpoly, spec=spec)
    F = AlgebraicExtension(K, name, minpoly)
    if spec:
        F.spec = spec
    return F


def _match_paren(text, i):
    depth = 0
    for j in range(i, len(text)):
        if text[j] == "(":
            depth += 1
        elif text[j] == ")":
            depth -= 1
            if depth == 0:
                return j
    raise FieldSpecError(f"unbalanced parentheses in {text!r}")


def _parse_upoly(K, text, var):
    node = _expr.parse(text)
    X = (K.zero, K.one)

    def name(n):
        if n == var:
            return X
        if n in K.gens:
            return (K.gens[n],)
        raise FieldSpecError(f"unknown symbol {n!r} in minimal polynomial {text!r}")

    def div(a, b):
        b = upoly.trim(K, b)
        if len(b) != 1:
            raise FieldSpecError("only division by constants is allowed in a minimal polynomial")
        return upoly.scale(K, a, K.inv(b[0]))

    return _expr.fold(
        node,
        num=lambda n: upoly.trim(K, (K.from_int(n),)),
        name=name,
        add=lambda a, b: upoly.add(K, a, b),
        sub=lambda a, b: upoly.sub(K, a, b),
        mul=lambda a, b: upoly.mul(K, a, b),
        div=div,
        pow=lambda a, e: upoly.pow_(K, a, e),
        neg=lambda a: upoly.neg(K, a),
    )


def parse_field_spec(spec: str) -> Field:
    """Build a field from ``QQ``, ``GF(p)`` and the suffixes ``(t1,...)``,
    ``[g]/(m(g))`` and ``^(1/q)``."""
    text = spec.replace(" ", "")
    if text.startswith("QQ"):
        K, i = RationalField(), 2
    elif text.startswith("GF("):
        j = text.find(")")
        if j < 0:
            raise FieldSpecError(f"unclosed parenthesis in {spec!r}")
        try:
            q = int(text[3:j])
        except ValueError:
            raise FieldSpecError(f"bad GF size in {spec!r}") from None
        K, i = finite_field(q), j + 1
    else:
        raise FieldSpecError(f"field spec must start with QQ or GF(p): {spec!r}")
    while i < len(text):
        ch = text[i]
        if ch == "(":
            j = _match_paren(text, i)
            names = [n for n in text[i + 1:j].split(",")]
            for n in names:
                if not re.fullmatch(r"[a-z][a-z0-9]*", n):
                    raise FieldSpecError(f"bad transcendental name {n!r} in {spec!r}")
                K = RationalFunctionField(K, n)
            i = j + 1
        elif ch == "[":
            j = text.index("]", i)
            g = text[i + 1:j]
            if not g or not g[0].isalpha():
                raise FieldSpecError(f"bad generator name {g!r} in {spec!r}")
            if text[j + 1:j + 3] != "/(":
                raise FieldSpecError(f"expected '/(' after [{g}] in {spec!r}")
            k = _match_paren(text, j + 2)
            try:
                m = _parse_upoly(K, text[j + 3:k], g)
            except _expr.ExprSyntaxError as exc:
                raise FieldSpecError(str(exc)) from None
            K = algebraic_extension(K, g, m)
            i = k + 1
        elif text.startswith("^(1/", i):
            j = text.index(")", i)
            try:
                q = int(text[i + 4:j])
            except ValueError:
                raise FieldSpecError(f"bad root exponent in {spec!r}") from None
            if K.characteristic == 0:
                raise FieldSpecError("p-th root layers are only allowed in positive characteristic")
            K = FrobeniusRootField(K, q)
            i = j + 1
        else:
            raise FieldSpecError(f"unexpected {ch!r} at {i} in {spec!r}")
    return K


# ----------------------------------------------------------------------------
# public operations


def p_degree(K: Field):
    """(p, c) with c = [K : K^p]; c is 1 in characteristic 0."""
    if K.characteristic == 0:
        return 0, 1
    return K.characteristic, len(K.p_basis())


def char_power_exponent(q, p):
    """k with q = p^k; raises ValueError when q is not a characteristic power."""
    if q == 1:
        return 0
    if not _is_char_power(q, p):
        raise ValueError(f"{q} is not a characteristic power for characteristic {p}")
    k = 0
    while q > 1:
        q //= p
        k += 1
    return k


def lift_degree_bound(d: int, q: int, c: int, p: Optional[int] = None) -> int:
    """Extension degree bound e = d * c^k for q = p^k.

    Without ``p`` the prime is read off q itself.
    """
    if c < 1 or d < 1:
        raise ValueError("d and c must be positive")
    if q == 1:
        return d
    if p is None:
        ps = _prime_divisors(q)
        if len(ps) != 1:
            raise ValueError(f"{q} is not a characteristic power")
        p = ps[0]
    return d * c ** char_power_exponent(q, p)


def is_qth_power(x: FieldElement, q: int) -> Optional[FieldElement]:
    """y with y^q = x if one exists in x's field, else None."""
    K = x.field
    if q == 1:
        return x
    p = K.characteristic
    if p == 0:
        raise ValueError("q must be 1 in characteristic 0")
    k = char_power_exponent(q, p)
    y = x.value
    for _ in range(k):
        y = K.pth_root(y)
        if y is None:
            return None
    return FieldElement(K, y)


QQ = RationalField()


def GF(q):
    return finite_field(q)


def random_elements(K, n, seed=0):
    rng = _random.Random(seed)
    return [FieldElement(K, K.random(rng)) for _ in range(n)]
