"""Bernstein operators and normal Bernstein operators on 4-algebras.

An operator is an ``n x n`` matrix whose column ``j`` is the image of
``e_j``. A Bernstein operator is an idempotent ``W`` with
``x^2 . W(x) = 0`` and ``W(x)^2 + W(x^2) = x^2``; a normal one is an
idempotent with ``W(x^2) = 0`` and ``W(x) . y = x . y``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algcore import (
    Algebra,
    Violation,
    basis_vector,
    check_4algebra,
    first_violation,
    mul,
    sym_apply,
    sym_mul,
    sym_vector,
)
from .errors import DimensionMismatch, Not4Algebra, NotOperator
from .exactmath import linalg as la
from .exactmath.gfarray import all_vectors, bmul
from .search import DEFAULT_BUDGET, Constraint, SearchStats, frontier_search, sort_lex

CUBIC = "x^2 . Omega(x) = 0"
QUADRATIC = "Omega(x)^2 + Omega(x^2) = x^2"
IDEMPOTENT = "Omega^2 = Omega"


def endo(F, rows):
    """Coerce nested rows into an exact square matrix."""
    M = la.as_matrix(F, rows)
    if any(len(r) != len(M) for r in M):
        raise DimensionMismatch("operator must be square")
    return M


@dataclass(frozen=True)
class BernsteinDatum:
    """A 4-algebra together with a Bernstein operator on it."""

    V: Algebra
    omega_op: tuple

    def __post_init__(self):
        object.__setattr__(self, "omega_op", endo(self.V.field, self.omega_op))
        if len(self.omega_op) != self.V.dim:
            raise DimensionMismatch("operator size does not match the algebra")
        if not is_bernstein_operator(self.V, self.omega_op):
            raise NotOperator("not a Bernstein operator on this 4-algebra")

    @property
    def field(self):
        return self.V.field

    @property
    def dim(self):
        return self.V.dim


def _require_four(V: Algebra, Om):
    if len(Om) != V.dim or any(len(r) != V.dim for r in Om):
        raise DimensionMismatch(f"operator must be {V.dim} x {V.dim}")
    if not check_4algebra(V):
        raise Not4Algebra("the underlying algebra does not satisfy (x^2)^2 = 0")


def _idempotent_violation(V: Algebra, Om) -> Violation | None:
    F = V.field
    sq = la.matmul(F, Om, Om)
    for i in range(V.dim):
        for j in range(V.dim):
            if sq[i][j] != Om[i][j]:
                d = F.sub(sq[i][j], Om[i][j])
                return Violation(IDEMPOTENT, f"entry ({i + 1},{j + 1})", "1", F.fmt(d))
    return None


def bernstein_operator_violation(V: Algebra, Om) -> Violation | None:
    """First failing defining identity (idempotency, then the cubic, then the quadratic one)."""
    F = V.field
    Om = endo(F, Om)
    _require_four(V, Om)
    bad = _idempotent_violation(V, Om)
    if bad:
        return bad
    n = V.dim
    X = sym_vector(F, n, n)
    S = sym_mul(V, X, X)
    OX = sym_apply(F, Om, X)
    names = [f"x{i + 1}" for i in range(n)]
    bad = first_violation(CUBIC, sym_mul(V, S, OX), V.basis, names)
    if bad:
        return bad
    lhs = [a + b for a, b in zip(sym_mul(V, OX, OX), sym_apply(F, Om, S))]
    return first_violation(QUADRATIC, [l - s for l, s in zip(lhs, S)], V.basis, names)


def is_bernstein_operator(V: Algebra, Om) -> bool:
    return bernstein_operator_violation(V, Om) is None


def bernstein_operator_violation_linearized(V: Algebra, Om) -> Violation | None:
    """Same predicate with the quadratic identity polarized to basis pairs:
    ``W(e_i) W(e_j) + W(e_i e_j) = e_i e_j``."""
    F = V.field
    Om = endo(F, Om)
    _require_four(V, Om)
    bad = _idempotent_violation(V, Om)
    if bad:
        return bad
    n = V.dim
    X = sym_vector(F, n, n)
    bad = first_violation(
        CUBIC, sym_mul(V, sym_mul(V, X, X), sym_apply(F, Om, X)), V.basis, [f"x{i + 1}" for i in range(n)]
    )
    if bad:
        return bad
    cols = [la.column(Om, j) for j in range(n)]
    for i in range(n):
        for j in range(i, n):
            lhs = la.add(F, mul(V, cols[i], cols[j]), la.apply(F, Om, V.sc[i][j]))
            diff = la.sub(F, lhs, V.sc[i][j])
            for k, d in enumerate(diff):
                if d != 0:
                    return Violation(
                        "Omega(x).Omega(y) + Omega(x.y) = x.y",
                        V.basis[k],
                        f"{V.basis[i]}*{V.basis[j]}",
                        F.fmt(d),
                    )
    return None


def normal_operator_violation(V: Algebra, Om) -> Violation | None:
    F = V.field
    Om = endo(F, Om)
    _require_four(V, Om)
    bad = _idempotent_violation(V, Om)
    if bad:
        return bad
    n = V.dim
    for i in range(n):
        for j in range(i, n):
            img = la.apply(F, Om, V.sc[i][j])
            for k, d in enumerate(img):
                if d != 0:
                    return Violation("Omega(x^2) = 0", V.basis[k], f"{V.basis[i]}*{V.basis[j]}", F.fmt(d))
    cols = [la.column(Om, j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            diff = la.sub(F, mul(V, cols[i], basis_vector(F, n, j)), V.sc[i][j])
            for k, d in enumerate(diff):
                if d != 0:
                    return Violation(
                        "Omega(x) . y = x . y", V.basis[k], f"Omega({V.basis[i]})*{V.basis[j]}", F.fmt(d)
                    )
    return None


def is_normal_bernstein_operator(V: Algebra, Om) -> bool:
    return normal_operator_violation(V, Om) is None


def is_idempotent(F, M) -> bool:
    return la.matmul(F, M, M) == M


# -- exhaustive enumeration over GF(p) --------------------------------------


def _pair_constraints(sc: np.ndarray, p: int, normal: bool):
    n = sc.shape[0]
    cons = []
    supp = {(i, j): frozenset(np.nonzero(sc[i, j])[0].tolist()) for i in range(n) for j in range(n)}
    if normal:
        for i in range(n):
            for j in range(i, n):
                target = sc[i, j]
                ks = supp[(i, j)]
                if ks:

                    def fn(cols, target=target, ks=tuple(ks)):
                        img = sum(int(target[k]) * cols[k] for k in ks) % p
                        return ~np.any(img, axis=1)

                    cons.append(Constraint(ks, fn, f"Omega(e{i}e{j})=0"))
        for i in range(n):

            def fn(cols, i=i):
                ok = np.ones(cols[i].shape[0], dtype=bool)
                for j in range(n):
                    e_j = np.zeros(n, dtype=np.int64)
                    e_j[j] = 1
                    prod = bmul(sc, cols[i], e_j[None, :], p)
                    ok &= np.all(prod == sc[i, j], axis=1)
                return ok

            cons.append(Constraint(frozenset([i]), fn, f"Omega(e{i}).y"))
        return cons
    if not sc.any():
        return cons
    for i in range(n):
        for j in range(i, n):
            ks = supp[(i, j)]

            def fn(cols, i=i, j=j, ks=tuple(ks)):
                lhs = bmul(sc, cols[i], cols[j], p)
                for k in ks:
                    lhs = lhs + int(sc[i, j, k]) * cols[k]
                return np.all(lhs % p == sc[i, j], axis=1)

            cons.append(Constraint(frozenset({i, j}) | ks, fn, f"pair({i},{j})"))
    # cubic: coefficient of x_i x_j x_l in x^2 . Omega(x)
    for trip in itertools.combinations_with_replacement(range(n), 3):
        orders = set(itertools.permutations(trip))
        if not any(sc[a, b].any() for a, b, _ in orders):
            continue

        def fn(cols, orders=tuple(orders)):
            acc = 0
            for a, b, c in orders:
                vec = np.broadcast_to(sc[a, b], cols[c].shape)
                acc = acc + bmul(sc, vec, cols[c], p)
            return ~np.any(acc % p, axis=1)

        cons.append(Constraint(frozenset(trip), fn, f"cubic{trip}"))
    return cons


def _idempotent_mask(mats: np.ndarray, p: int) -> np.ndarray:
    sq = np.matmul(mats, mats) % p
    return np.all((sq == mats).reshape(mats.shape[0], -1), axis=1)


def enumerate_operators_array(
    V: Algebra, mode: str = "bernstein", budget: int = DEFAULT_BUDGET, stats: SearchStats | None = None
) -> np.ndarray:
    """All (normal) Bernstein operators as an ``(N, n, n)`` array, row-major lexicographic order."""
    if mode not in ("bernstein", "normal"):
        raise ValueError(f"unknown mode {mode!r}")
    p = V.field.require_prime_field("operator enumeration")
    if not check_4algebra(V):
        raise Not4Algebra("the underlying algebra does not satisfy (x^2)^2 = 0")
    n = V.dim
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    sc = V.to_numpy()
    cand = all_vectors(p, n)
    cons = _pair_constraints(sc, p, normal=(mode == "normal"))
    mats = frontier_search(
        n, [cand] * n, cons, p, final=lambda M: _idempotent_mask(M, p), budget=budget, stats=stats
    )
    return sort_lex(mats)


def enumerate_operators(V: Algebra, mode: str = "bernstein", budget: int = DEFAULT_BUDGET) -> list[tuple]:
    """All (normal) Bernstein operators on ``V`` as exact matrices."""
    arr = enumerate_operators_array(V, mode, budget)
    return [tuple(tuple(int(x) for x in row) for row in M) for M in arr]
