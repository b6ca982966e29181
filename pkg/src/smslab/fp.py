"""Exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p). Every routine is
deterministic: pivots are chosen left to right, top to bottom, so bases
derived from reduced echelon forms are stable across runs.
"""

import numpy as np

DTYPE = np.int64


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def inv(a, p):
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, p - 2, p)


def asmat(a, p, shape=None):
    m = np.array(a, dtype=DTYPE) % p
    if shape is not None:
        m = m.reshape(shape)
    return m


def zeros(r, c):
    return np.zeros((r, c), dtype=DTYPE)


def eye(n):
    return np.eye(n, dtype=DTYPE)


def mul(a, b, p):
    # int64 is safe for p < 2**31 as long as the inner dimension stays small;
    # chunk the reduction to avoid overflow on long inner products
    k = a.shape[1]
    if k == 0:
        return zeros(a.shape[0], b.shape[1])
    bound = (2 ** 62) // ((p - 1) ** 2 + 1)
    if k <= bound:
        return (a @ b) % p
    out = zeros(a.shape[0], b.shape[1])
    for s in range(0, k, bound):
        out = (out + a[:, s:s + bound] @ b[s:s + bound, :]) % p
    return out


def rref(a, p):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    m = np.array(a, dtype=DTYPE) % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Columns form a basis of {x : a x = 0}."""
    a = np.asarray(a, dtype=DTYPE)
    n = a.shape[1]
    if a.shape[0] == 0:
        return eye(n)
    r, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, c in enumerate(piv):
            basis[c, k] = (-r[i, f]) % p
    return basis


def left_nullspace(a, p):
    """Rows form a basis of {y : y a = 0}."""
    return nullspace(np.asarray(a).T, p).T


def colspace(a, p):
    """Columns of a that form a basis of its column span (first pivots)."""
    a = np.asarray(a, dtype=DTYPE)
    if a.shape[1] == 0:
        return zeros(a.shape[0], 0)
    _, piv = rref(a, p)
    return a[:, piv] % p


def row_basis(a, p):
    """Rows spanning the row space of a, in reduced echelon form."""
    a = np.asarray(a, dtype=DTYPE)
    if a.shape[0] == 0:
        return zeros(0, a.shape[1])
    r, piv = rref(a, p)
    return r[:len(piv)]


def inverse(a, p):
    a = np.asarray(a, dtype=DTYPE)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("not square")
    if n == 0:
        return zeros(0, 0)
    r, piv = rref(np.hstack([a, eye(n)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def is_invertible(a, p):
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def solve(a, b, p):
    """One solution x of a x = b (b may be a matrix), or None."""
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    n = a.shape[1]
    if a.shape[0] == 0:
        if np.any(b % p):
            return None
        x = zeros(n, b.shape[1])
        return x[:, 0] if vec else x
    r, piv = rref(np.hstack([a, b]), p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x[:, 0] if vec else x


def complement(sub, n, p):
    """Standard basis vectors completing the columns of sub to a basis of F_p^n.

    Returns an n x k matrix; columns are unit vectors chosen left to right.
    """
    sub = np.asarray(sub, dtype=DTYPE)
    if n == 0:
        return zeros(0, 0)
    sub = sub.reshape(n, -1)
    if sub.shape[1] == 0:
        return eye(n)
    _, piv = rref(np.hstack([sub, eye(n)]), p)
    k = sub.shape[1]
    extra = [c - k for c in piv if c >= k]
    return eye(n)[:, extra]


def coords(basis, v, p):
    """Coordinates of v (vector or matrix columns) in the column basis."""
    x = solve(basis, v, p)
    if x is None:
        raise ValueError("vector not in span")
    return x


def in_span(basis, v, p):
    basis = np.asarray(basis, dtype=DTYPE)
    if basis.shape[1] == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.column_stack([basis, v]), p) == rank(basis, p)


def intersect(a, b, p):
    """Basis (columns) of colspan(a) ∩ colspan(b)."""
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    if a.shape[1] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], 0)
    ns = nullspace(np.hstack([a, (-b) % p]), p)
    if ns.shape[1] == 0:
        return zeros(a.shape[0], 0)
    return colspace(mul(a, ns[:a.shape[1]], p), p)


def matpow_poly(coeffs, x, p):
    """Evaluate sum coeffs[k] * x**k (coeffs low degree first) by Horner."""
    n = x.shape[0]
    out = zeros(n, n)
    for c in reversed(coeffs):
        out = (mul(out, x, p) + int(c) % p * eye(n)) % p
    return out


def charpoly(x, p):
    """Characteristic polynomial of a square matrix, low degree first, monic.

    Hessenberg reduction followed by the standard recurrence; O(n^3).
    """
    h = np.array(x, dtype=DTYPE) % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.nonzero(h[j + 2:, j])[0]
        if h[j + 1, j] == 0:
            if nz.size == 0:
                continue
            k = j + 2 + nz[0]
            h[[j + 1, k]] = h[[k, j + 1]]
            h[:, [j + 1, k]] = h[:, [k, j + 1]]
        piv = inv(h[j + 1, j], p)
        for i in range(j + 2, n):
            if h[i, j] == 0:
                continue
            u = (h[i, j] * piv) % p
            h[i] = (h[i] - u * h[j + 1]) % p
            h[:, j + 1] = (h[:, j + 1] + u * h[:, i]) % p
    # polys[k] = char poly of leading k x k block, low degree first
    polys = [np.array([1], dtype=DTYPE)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=DTYPE)
        cur[1:] = prev
        cur[:k] = (cur[:k] - h[k - 1, k - 1] * prev) % p
        t = 1
        for i in range(1, k):
            t = (t * h[k - i, k - i - 1]) % p
            term = (t * h[k - i - 1, k - 1]) % p
            if term:
                q = polys[k - i - 1]
                cur[:len(q)] = (cur[:len(q)] - term * q) % p
        polys.append(cur % p)
    return [int(c) for c in polys[n]]
