"""Dense univariate polynomials over a field, stored as tuples low-to-high.

Coefficients are the field's internal values.  Every function takes the
field first so the helpers work unchanged at any level of a tower.
"""


def trim(K, a):
    a = list(a)
    while a and K.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def degree(a):
    return len(a) - 1


def add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return trim(K, out)


def neg(K, a):
    return tuple(K.neg(c) for c in a)


def sub(K, a, b):
    return add(K, a, neg(K, b))


def scale(K, a, c):
    if K.is_zero(c):
        return ()
    return trim(K, [K.mul(x, c) for x in a])


def mul(K, a, b):
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return trim(K, out)


def divmod_(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lc = K.inv(b[-1])
    q = [K.zero] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = K.mul(a[-1], inv_lc)
        k = len(a) - 1 - db
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] = K.sub(a[k + j], K.mul(c, y))
        a = list(trim(K, a))
    return trim(K, q), trim(K, a)


def rem(K, a, b):
    return divmod_(K, a, b)[1]


def monic(K, a):
    if not a:
        return a
    return scale(K, a, K.inv(a[-1]))


def gcd(K, a, b):
    a, b = trim(K, a), trim(K, b)
    while b:
        a, b = b, rem(K, a, b)
    return monic(K, a)


def xgcd(K, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(K, a), trim(K, b)
    s0, s1 = (K.one,), ()
    t0, t1 = (), (K.one,)
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
        t0, t1 = t1, sub(K, t0, mul(K, q, t1))
    if not r0:
        return (), (), ()
    c = K.inv(r0[-1])
    return scale(K, r0, c), scale(K, s0, c), scale(K, t0, c)


def evaluate(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K, a):
    return trim(K, [K.mul(K.from_int(i), c) for i, c in enumerate(a)][1:])


def powmod(K, base, e, m):
    result = (K.one,)
    base = rem(K, base, m)
    while e:
        if e & 1:
            result = rem(K, mul(K, result, base), m)
        base = rem(K, mul(K, base, base), m)
        e >>= 1
    return result


def pow_(K, a, e):
    result = (K.one,)
    while e:
        if e & 1:
            result = mul(K, result, a)
        a = mul(K, a, a)
        e >>= 1
    return result
