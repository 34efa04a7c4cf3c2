"""Gaussian elimination over an exact field (internal values)."""


def row_reduce(K, rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    is_zero, mul, sub, inv = K.is_zero, K.mul, K.sub, K.inv
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != K.one:
            il = inv(lead)
            rows[r] = [mul(il, x) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not is_zero(f):
                    rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(K, rows):
    return len(row_reduce(K, rows)[1])


def solve(K, columns, rhs):
    """Find x with sum_j x_j * columns[j] == rhs, or None.

    ``columns`` is a list of column vectors (each of length len(rhs)).
    Free variables are set to zero.
    """
    m = len(rhs)
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    red, pivots = row_reduce(K, rows)
    if pivots and pivots[-1] == n:
        return None
    x = [K.zero] * n
    for row, c in zip(red, pivots):
        x[c] = row[n]
    return x


def nullspace(K, rows, ncols):
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[K.one if i == j else K.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(K, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [K.zero] * ncols
        v[fcol] = K.one
        for row, c in zip(red, pivots):
            v[c] = K.neg(row[fcol])
        basis.append(v)
    return basis
