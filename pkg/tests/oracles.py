"""Brute-force oracles over GF(p), written independently of the package's search code.

Everything is pointwise evaluation over all of GF(p)^n or raw exhaustion
over all matrices. At p = 5 every identity used here has degree < p in
each variable, so pointwise vanishing is equivalent to symbolic vanishing.
"""

from __future__ import annotations

import itertools

import numpy as np


def points(p, n):
    return list(itertools.product(range(p), repeat=n))


def pmul(sc, x, y, p):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            c = x[i] * y[j]
            for k in range(n):
                out[k] += c * int(sc[i][j][k])
    return tuple(v % p for v in out)


def papply(M, x, p):
    n = len(M)
    return tuple(sum(int(M[i][j]) * x[j] for j in range(len(x))) % p for i in range(n))


def padd(x, y, p):
    return tuple((a + b) % p for a, b in zip(x, y))


def psub(x, y, p):
    return tuple((a - b) % p for a, b in zip(x, y))


def pdot(w, x, p):
    return sum(int(a) * b for a, b in zip(w, x)) % p


def is_zero(v):
    return not any(v)


def four_algebra_pointwise(sc, p):
    n = len(sc)
    for x in points(p, n):
        s = pmul(sc, x, x, p)
        if not is_zero(pmul(sc, s, s, p)):
            return False
    return True


def bernstein_pointwise(sc, w, p):
    n = len(sc)
    for a in points(p, n):
        s = pmul(sc, a, a, p)
        lhs = pmul(sc, s, s, p)
        wa = pdot(w, a, p)
        rhs = tuple(wa * wa * c % p for c in s)
        if lhs != rhs:
            return False
    return True


def normal_pointwise(sc, w, p):
    n = len(sc)
    pts = points(p, n)
    for a in pts:
        s = pmul(sc, a, a, p)
        wa = pdot(w, a, p)
        for b in pts:
            if pmul(sc, s, b, p) != tuple(wa * c % p for c in pmul(sc, a, b, p)):
                return False
    return True


def idempotent(M, p):
    M = np.asarray(M, dtype=np.int64)
    return bool(np.array_equal(M @ M % p, M % p))


def bo_pointwise(sc, M, p):
    if not idempotent(M, p):
        return False
    n = len(sc)
    for x in points(p, n):
        s = pmul(sc, x, x, p)
        ox = papply(M, x, p)
        if not is_zero(pmul(sc, s, ox, p)):
            return False
        if padd(pmul(sc, ox, ox, p), papply(M, s, p), p) != s:
            return False
    return True


def nbo_pointwise(sc, M, p):
    if not idempotent(M, p):
        return False
    n = len(sc)
    pts = points(p, n)
    for x in pts:
        if not is_zero(papply(M, pmul(sc, x, x, p), p)):
            return False
        ox = papply(M, x, p)
        for y in pts:
            if pmul(sc, ox, y, p) != pmul(sc, x, y, p):
                return False
    return True


def digits(p, width, start=0, stop=None):
    """Base-p digits (most significant first) of the integers ``start..stop-1``."""
    stop = p**width if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)[:, None]
    return idx // p ** np.arange(width - 1, -1, -1, dtype=np.int64) % p


def all_matrices(p, m, n):
    """Every m x n matrix over GF(p) as an ``(p**(m*n), m, n)`` array, row-major lexicographic."""
    return digits(p, m * n).reshape(-1, m, n)


def idempotent_matrices(p, n):
    mats = all_matrices(p, n, n)
    return mats[np.all((np.matmul(mats, mats) % p == mats).reshape(len(mats), -1), axis=1)]


def brute_operators(sc, p, normal=False):
    """Operators by pointwise test on every idempotent matrix; returned as sorted list of tuples."""
    test = nbo_pointwise if normal else bo_pointwise
    out = []
    for M in idempotent_matrices(p, len(sc)):
        if test(sc, M.tolist(), p):
            out.append(tuple(tuple(r) for r in M.tolist()))
    return sorted(out)


def brute_baric_maps(sc1, w1, sc2, w2, p, invertible=False, chunk=1 << 16):
    """All (n2 x n1) matrices M with w2 M = w1 and M(e_i e_j) = M e_i . M e_j; returns the array."""
    sc1, sc2 = np.asarray(sc1, dtype=np.int64), np.asarray(sc2, dtype=np.int64)
    w1, w2 = np.asarray(w1, dtype=np.int64), np.asarray(w2, dtype=np.int64)
    n1, n2 = sc1.shape[0], sc2.shape[0]
    keep = []
    total = p ** (n1 * n2)
    if total > 1 << 22:
        raise ValueError("search space too large for the oracle")
    for s in range(0, total, chunk):
        M = digits(p, n1 * n2, s, min(total, s + chunk)).reshape(-1, n2, n1)
        M = M[np.all((np.einsum("i,nij->nj", w2, M) - w1) % p == 0, axis=1)]
        for i in range(n1):
            for j in range(i, n1):
                if not len(M):
                    break
                lhs = np.einsum("nkl,l->nk", M, sc1[i, j]) % p
                outer = (M[:, :, i, None] * M[:, None, :, j]).reshape(len(M), -1)
                rhs = outer @ sc2.reshape(n2 * n2, n2) % p
                M = M[np.all(lhs == rhs, axis=1)]
        if invertible:
            M = M[_det_batch(M, p) != 0] if n1 == n2 else M[:0]
        keep.append(M)
    return np.concatenate(keep) if keep else np.zeros((0, n2, n1), dtype=np.int64)


def _det_batch(M, p):
    # Leibniz expansion over permutations
    n = M.shape[-1]
    total = np.zeros(len(M), dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = np.ones(len(M), dtype=np.int64)
        for r, c in enumerate(perm):
            term = term * M[:, r, c] % p
        total = (total + (-1) ** inv * term) % p
    return total


def brute_weights(sc, p):
    n = len(sc)
    out = []
    for w in points(p, n):
        if not any(w):
            continue
        if all(pdot(w, sc[i][j], p) == w[i] * w[j] % p for i in range(n) for j in range(n)):
            out.append(w)
    return out


def semidirect_tables(sc, Om, p):
    """Structure tensor and weight of V x| k built directly from the multiplication rule."""
    n = len(sc)
    half = pow(2, -1, p)
    N = n + 1
    out = np.zeros((N, N, N), dtype=np.int64)
    out[:n, :n, :n] = np.asarray(sc, dtype=np.int64)
    for i in range(n):
        col = [half * int(Om[r][i]) % p for r in range(n)]
        out[i, n, :n] = col
        out[n, i, :n] = col
    out[n, n, n] = 1
    w = [0] * n + [1]
    return out, w
