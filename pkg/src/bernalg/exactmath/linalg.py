"""Exact dense linear algebra over a :class:`Field`.

Matrices are tuples of row tuples of raw field values. A matrix acting on
a vector space uses the column convention: column ``j`` holds the image of
the ``j``-th basis vector, so ``apply(M, x) = M @ x``.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DimensionMismatch, ZeroInverse
from .field import Field, Raw

Matrix = tuple  # tuple[tuple[Raw, ...], ...]
Vector = tuple  # tuple[Raw, ...]


def as_matrix(F: Field, rows) -> Matrix:
    return tuple(tuple(F.coerce(x) for x in row) for row in rows)


def as_vector(F: Field, xs) -> Vector:
    return tuple(F.coerce(x) for x in xs)


def zeros(F: Field, n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((F.zero,) * m for _ in range(n))


def identity(F: Field, n: int) -> Matrix:
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M)) if M else ()


def column(M: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in M)


def from_columns(F: Field, cols: Sequence[Vector], nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def matmul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    n, k = shape(A)
    k2, m = len(B), (len(B[0]) if B else 0)
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = F.zero
            for t in range(k):
                if A[i][t] != 0 and B[t][j] != 0:
                    s = F.add(s, F.mul(A[i][t], B[t][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def apply(F: Field, M: Matrix, x: Vector) -> Vector:
    if M and len(M[0]) != len(x):
        raise DimensionMismatch(f"matrix with {len(M[0])} columns applied to length-{len(x)} vector")
    out = []
    for row in M:
        s = F.zero
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                s = F.add(s, F.mul(a, b))
        out.append(s)
    return tuple(out)


def add(F: Field, A, B):
    if isinstance(A[0] if A else None, tuple):
        return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    return tuple(F.add(a, b) for a, b in zip(A, B))


def sub(F: Field, A, B):
    if isinstance(A[0] if A else None, tuple):
        return tuple(tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    return tuple(F.sub(a, b) for a, b in zip(A, B))


def scale(F: Field, c: Raw, A):
    if isinstance(A[0] if A else None, tuple):
        return tuple(tuple(F.mul(c, a) for a in row) for row in A)
    return tuple(F.mul(c, a) for a in A)


def rref(F: Field, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in M]
    n, m = shape(M)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return tuple(tuple(row) for row in rows), pivots


def rank(F: Field, M: Matrix) -> int:
    return len(rref(F, M)[1]) if M and M[0] else 0


def nullspace(F: Field, M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : M x = 0}``, one vector per free column in ascending order."""
    m = ncols if ncols is not None else shape(M)[1]
    if not M:
        return [tuple(F.one if i == j else F.zero for i in range(m)) for j in range(m)]
    R, pivots = rref(F, M)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * m
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(tuple(v))
    return basis


def solve(F: Field, A: Matrix, b: Vector) -> Vector | None:
    """One solution of ``A x = b`` (free variables set to 0), or ``None``."""
    n, m = shape(A)
    aug = tuple(tuple(A[i]) + (b[i],) for i in range(n))
    R, pivots = rref(F, aug)
    if m in pivots:
        return None
    x = [F.zero] * m
    for r, pc in enumerate(pivots):
        x[pc] = R[r][m]
    return tuple(x)


def inverse(F: Field, M: Matrix) -> Matrix:
    n, m = shape(M)
    if n != m:
        raise DimensionMismatch("only square matrices are invertible")
    aug = tuple(tuple(M[i]) + identity(F, n)[i] for i in range(n))
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroInverse("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def is_invertible(F: Field, M: Matrix) -> bool:
    n, m = shape(M)
    return n == m and rank(F, M) == n


def span_basis(F: Field, vectors: Sequence[Vector], dim: int) -> list[Vector]:
    """Row-reduced basis of the span of ``vectors`` in ``F^dim``."""
    vecs = [v for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return []
    R, pivots = rref(F, tuple(vecs))
    return [R[i] for i in range(len(pivots))]


def coordinates(F: Field, basis: Sequence[Vector], v: Vector) -> Vector:
    """Coordinates of ``v`` in the (independent) ``basis``; raises if ``v`` is outside the span."""
    B = from_columns(F, list(basis), len(v))
    x = solve(F, B, v)
    if x is None:
        raise ValueError("vector is not in the span of the basis")
    return x
