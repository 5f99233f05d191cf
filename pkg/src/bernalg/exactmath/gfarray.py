"""Vectorized GF(p) helpers on numpy integer arrays.

Everything here works on batches: a leading axis indexes candidates in an
exhaustive search. Entries stay reduced in ``[0, p)``; products are
accumulated in int64 and reduced once, which is exact for the small
primes and dimensions this package searches over.
"""

from __future__ import annotations

import itertools

import numpy as np


def all_vectors(p: int, n: int) -> np.ndarray:
    """All of ``GF(p)^n`` as a ``(p**n, n)`` array in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(p, dtype=np.int64)] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def bmul(sc: np.ndarray, X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """Batched product ``x . y`` for structure constants ``sc[i, j, k]``; broadcasts leading axes."""
    n = sc.shape[0]
    X, Y = np.broadcast_arrays(X, Y)
    outer = (X[..., :, None] * Y[..., None, :]).reshape(X.shape[:-1] + (n * n,))
    return outer @ sc.reshape(n * n, -1) % p


def bapply(M: np.ndarray, X: np.ndarray, p: int) -> np.ndarray:
    """Batched ``M @ x`` (column convention)."""
    return np.einsum("...ij,...j->...i", M, X) % p


def bmatmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(A, B) % p


def _perm_sign(perm) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def bdet(M: np.ndarray, p: int) -> np.ndarray:
    """Determinants mod p of a batch ``(N, n, n)`` via the Leibniz expansion (n <= 5)."""
    n = M.shape[-1]
    if n == 0:
        return np.ones(M.shape[:-2], dtype=np.int64)
    total = np.zeros(M.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        term = np.ones(M.shape[:-2], dtype=np.int64)
        for i, j in enumerate(perm):
            term = term * M[..., i, j] % p
        total = (total + _perm_sign(perm) * term) % p
    return total


def binv(M: np.ndarray, p: int) -> np.ndarray:
    """Inverses of a batch of invertible matrices by Gauss-Jordan elimination mod p."""
    n = M.shape[-1]
    lead = M.shape[:-2]
    A = np.concatenate([M.reshape((-1, n, n)) % p, np.broadcast_to(np.eye(n, dtype=np.int64), (int(np.prod(lead, dtype=np.int64)), n, n))], axis=2)
    A = A.astype(np.int64)
    inv_table = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    idx = np.arange(A.shape[0])
    for c in range(n):
        nz = A[:, c:, c] != 0
        if not nz.any(axis=1).all():
            raise ZeroDivisionError("singular matrix in batch inverse")
        r = c + np.argmax(nz, axis=1)
        row_r = A[idx, r].copy()
        A[idx, r] = A[:, c]
        A[:, c] = row_r * inv_table[row_r[:, c]][:, None] % p
        factors = A[:, :, c].copy()
        factors[:, c] = 0
        A = (A - factors[:, :, None] * A[:, c][:, None, :]) % p
    return A[:, :, n:].reshape(lead + (n, n))


def lex_keys(A: np.ndarray, p: int) -> np.ndarray:
    """Integer key per row of a ``(N, ...)`` array; ordering matches row-major lexicographic order."""
    flat = A.reshape(A.shape[0], int(np.prod(A.shape[1:], dtype=np.int64)))
    weights = p ** np.arange(flat.shape[1] - 1, -1, -1, dtype=object)
    if flat.shape[1] <= 26 and p ** flat.shape[1] < 2**62:
        w = weights.astype(np.int64)
        return flat @ w
    return np.array([int(sum(int(a) * int(b) for a, b in zip(row, weights))) for row in flat], dtype=object)
