"""Morphisms between semidirect products, automorphism groups, and operator classification.

A baric morphism ``V x|_{Om} k -> W x|_{Om'} k`` is ``(x, a) -> (f(x) + a v0, a)``
for a pair ``(v0, f)`` with

* ``f(x y) = f(x) f(y)``,
* ``f(Om(x)) - Om'(f(x)) = 2 f(x) v0``,
* ``Om'(v0) = v0 - v0^2``;

it is an isomorphism iff ``f`` is. Searches are exhaustive over GF(p);
over Q only witness verification is available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algcore import (
    Algebra,
    BaricAlgebra,
    Violation,
    first_violation,
    mul,
    sym_apply,
    sym_mul,
    sym_vector,
)
from .bernop import BernsteinDatum, endo, enumerate_operators_array, is_bernstein_operator
from .construct import decompose, semidirect
from .errors import DimensionMismatch, Not4Algebra, NotOperator, UnsupportedField
from .exactmath import linalg as la
from .exactmath.field import Field
from .exactmath.gfarray import all_vectors, bdet, binv, bmul, lex_keys
from .search import CHUNK, DEFAULT_BUDGET, Constraint, SearchStats, frontier_search, sort_lex


@dataclass(frozen=True)
class MorphismWitness:
    """``v0`` in the target kernel and ``f`` a (target dim) x (source dim) matrix."""

    v0: tuple
    f: tuple

    @classmethod
    def of(cls, F: Field, v0, f) -> "MorphismWitness":
        return cls(la.as_vector(F, v0), la.as_matrix(F, f))

    def matrix(self, F: Field) -> tuple:
        """The map ``(x, a) -> (f x + a v0, a)`` as a matrix on ``V + k`` (``f`` last)."""
        m = len(self.f)
        n = len(self.f[0]) if m else 0
        rows = [tuple(self.f[i]) + (self.v0[i],) for i in range(m)]
        rows.append(tuple([F.zero] * n) + (F.one,))
        return tuple(rows)


def _check_dims(src: BernsteinDatum, dst: BernsteinDatum, w: MorphismWitness):
    n, m = src.dim, dst.dim
    if len(w.v0) != m or len(w.f) != m or any(len(r) != n for r in w.f):
        raise DimensionMismatch(f"witness must have v0 in k^{m} and f of shape {m}x{n}")
    if src.field != dst.field:
        raise DimensionMismatch("source and target live over different fields")


def morphism_violation(src: BernsteinDatum, dst: BernsteinDatum, w: MorphismWitness) -> Violation | None:
    """First failing compatibility among the three morphism conditions, checked symbolically."""
    _check_dims(src, dst, w)
    F = src.field
    V, W = src.V, dst.V
    n, m = V.dim, W.dim
    X = sym_vector(F, 2 * n, n)
    Y = sym_vector(F, 2 * n, n, offset=n)
    lhs = sym_apply(F, w.f, sym_mul(V, X, Y))
    rhs = sym_mul(W, sym_apply(F, w.f, X), sym_apply(F, w.f, Y))
    names2 = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
    bad = first_violation("f(x.y) = f(x).f(y)", [a - b for a, b in zip(lhs, rhs)], W.basis, names2)
    if bad:
        return bad
    X1 = sym_vector(F, n, n)
    fX = sym_apply(F, w.f, X1)
    two_v0 = la.scale(F, F.coerce(2), w.v0)
    from .exactmath.poly import MultiPoly

    V0 = [MultiPoly.constant(F, n, c) for c in two_v0]
    lhs = [a - b for a, b in zip(sym_apply(F, w.f, sym_apply(F, src.omega_op, X1)), sym_apply(F, dst.omega_op, fX))]
    rhs = sym_mul(W, fX, V0)
    bad = first_violation(
        "f(Omega(x)) - Omega'(f(x)) = 2 f(x).v0",
        [a - b for a, b in zip(lhs, rhs)],
        W.basis,
        [f"x{i + 1}" for i in range(n)],
    )
    if bad:
        return bad
    lhs = la.apply(F, dst.omega_op, w.v0)
    rhs = la.sub(F, w.v0, mul(W, w.v0, w.v0))
    for k, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return Violation("Omega'(v0) = v0 - v0^2", W.basis[k], "1", F.fmt(F.sub(a, b)))
    return None


def is_morphism_witness(src: BernsteinDatum, dst: BernsteinDatum, w: MorphismWitness) -> bool:
    return morphism_violation(src, dst, w) is None


def apply_witness(F: Field, w: MorphismWitness, x, alpha) -> tuple[tuple, object]:
    """``(x, a) -> (f(x) + a v0, a)``."""
    x = la.as_vector(F, x)
    alpha = F.coerce(alpha)
    y = la.add(F, la.apply(F, w.f, x), la.scale(F, alpha, w.v0))
    return y, alpha


def inverse_witness(F: Field, w: MorphismWitness) -> MorphismWitness:
    """Witness of the inverse map ``(x, a) -> (f^-1(x) - a f^-1(v0), a)``; ``f`` must be invertible."""
    finv = la.inverse(F, w.f)
    return MorphismWitness(la.scale(F, F.neg(F.one), la.apply(F, finv, w.v0)), finv)


def compose_witness(F: Field, outer: MorphismWitness, inner: MorphismWitness) -> MorphismWitness:
    """Witness of ``psi_outer o psi_inner``; this is the group law ``(w, g) * (v, f) = (w + g v, g f)``."""
    return MorphismWitness(la.add(F, outer.v0, la.apply(F, outer.f, inner.v0)), la.matmul(F, outer.f, inner.f))


# -- homomorphism search ------------------------------------------------------------


def _hom_constraints(scA: np.ndarray, scB: np.ndarray, p: int) -> list[Constraint]:
    n = scA.shape[0]
    cons = []
    for i in range(n):
        for j in range(i, n):
            ks = tuple(np.nonzero(scA[i, j])[0].tolist())
            coef = [int(scA[i, j, k]) for k in ks]

            def fn(cols, i=i, j=j, ks=ks, coef=coef):
                rhs = bmul(scB, cols[i], cols[j], p)
                lhs = 0
                for c, k in zip(coef, ks):
                    lhs = lhs + c * cols[k]
                return np.all((lhs - rhs) % p == 0, axis=1)

            cons.append(Constraint(frozenset((i, j) + ks), fn, f"hom({i},{j})"))
    return cons


def _adapted_basis(A: Algebra) -> tuple[tuple, int]:
    """Columns: a complement of ``A.A`` taken from the standard basis, then a basis of ``A.A``."""
    from .algcore import basis_vector, subspace_product

    F = A.field
    n = A.dim
    std = [basis_vector(F, n, i) for i in range(n)]
    sq = subspace_product(A, std, std)
    comp = []
    for v in std:
        if la.rank(F, comp + sq + [v]) > len(comp) + len(sq):
            comp.append(v)
    return la.from_columns(F, comp + sq, n), len(sq)


def hom_search(
    A: Algebra,
    B: Algebra,
    *,
    invertible: bool = False,
    weights: tuple | None = None,
    order: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    stats: SearchStats | None = None,
) -> np.ndarray:
    """All algebra maps ``A -> B`` over GF(p) as ``(N, dim B, dim A)`` matrices.

    ``weights=(wA, wB)`` restricts to baric maps; ``invertible`` keeps only
    bijections. Output is in row-major lexicographic order.

    Without an explicit ``order`` both algebras are first rewritten in bases
    adapted to their squares: the columns spanning ``A.A`` are searched first,
    and only inside ``B.B``, since every map sends ``A.A`` into ``B.B``.
    """
    if A.field != B.field:
        raise DimensionMismatch("algebras over different fields")
    F = A.field
    p = F.require_prime_field("homomorphism search")
    n, m = A.dim, B.dim
    if invertible and n != m:
        return np.zeros((0, m, n), dtype=np.int64)
    QA = QB = None
    dA = dB = 0
    if order is None and n and m:
        from .algcore import change_basis

        QA, dA = _adapted_basis(A)
        QB, dB = _adapted_basis(B)
        if invertible and dA != dB:
            return np.zeros((0, m, n), dtype=np.int64)
        A, B = change_basis(A, QA), change_basis(B, QB)
        if weights is not None:
            weights = tuple(
                tuple(sum(int(w[i]) * int(Q[i][j]) for i in range(len(w))) % p for j in range(len(w)))
                for w, Q in zip(weights, (QA, QB))
            )
        order = list(range(n - dA, n)) + list(range(n - dA))
    cand_all = all_vectors(p, m)
    in_square = np.all(cand_all[:, : m - dB] == 0, axis=1) if QB is not None else None
    cands = []
    for j in range(n):
        c = cand_all
        if QA is not None and j >= n - dA:
            c = c[in_square]
        if weights is not None:
            wA, wB = (np.array(w, dtype=np.int64) for w in weights)
            c = c[(c @ wB) % p == int(wA[j]) % p]
        cands.append(c)
    cons = _hom_constraints(A.to_numpy(), B.to_numpy(), p)
    final = (lambda M: bdet(M, p) != 0) if invertible else None
    mats = frontier_search(n, cands, cons, p, order=order, final=final, budget=budget, stats=stats)
    if QA is not None and mats.shape[0]:
        qa_inv = np.array(la.inverse(F, QA), dtype=np.int64)
        qb = np.array(QB, dtype=np.int64)
        mats = np.matmul(np.matmul(qb, mats) % p, qa_inv) % p
    return sort_lex(mats)


_AUT_CACHE: dict = {}


def algebra_automorphisms(V: Algebra, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``Aut(V)`` as a read-only ``(N, n, n)`` array; cached per algebra."""
    key = (V.field, V.sc)
    if key not in _AUT_CACHE:
        arr = hom_search(V, V, invertible=True, budget=budget)
        arr.setflags(write=False)
        _AUT_CACHE[key] = arr
    return _AUT_CACHE[key]


def _automorphisms_with_inverses(V: Algebra, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    Fs = algebra_automorphisms(V, budget)
    key = ("inv", V.field, V.sc)
    if key not in _AUT_CACHE:
        p = V.field.p
        inv = np.concatenate([binv(Fs[s : s + CHUNK], p) for s in range(0, Fs.shape[0], CHUNK)]) if Fs.size else Fs.copy()
        inv.setflags(write=False)
        _AUT_CACHE[key] = inv
    return Fs, _AUT_CACHE[key]


def _mats_to_exact(arr: np.ndarray) -> list[tuple]:
    return [tuple(tuple(int(x) for x in row) for row in M) for M in arr]


def _vec(arr) -> tuple:
    return tuple(int(x) for x in arr)


def _left_mul_matrices(sc: np.ndarray, vs: np.ndarray, p: int) -> np.ndarray:
    """``L_v`` for each ``v`` in ``vs``: column ``j`` of ``L_v`` is ``e_j . v``."""
    # L[v, k, j] = sum_i v_i c[j, i, k]
    return np.einsum("vi,jik->vkj", vs, sc) % p


def _mor3_mask(sc: np.ndarray, Om: np.ndarray, vs: np.ndarray, p: int) -> np.ndarray:
    lhs = vs @ Om.T % p
    rhs = (vs - bmul(sc, vs, vs, p)) % p
    return np.all(lhs == rhs, axis=1)


# -- morphisms ------------------------------------------------------------------


def enumerate_morphisms(
    src: BernsteinDatum, dst: BernsteinDatum, budget: int = DEFAULT_BUDGET
) -> list[MorphismWitness]:
    """All witnesses ``(v0, f)``, i.e. all baric morphisms between the semidirect products."""
    F = src.field
    p = F.require_prime_field("morphism enumeration")
    V, W = src.V, dst.V
    stats = SearchStats()
    homs = hom_search(V, W, budget=budget, stats=stats)
    scW = W.to_numpy() if W.dim else np.zeros((0, 0, 0), dtype=np.int64)
    Om = np.array(src.omega_op, dtype=np.int64).reshape(V.dim, V.dim)
    OmP = np.array(dst.omega_op, dtype=np.int64).reshape(W.dim, W.dim)
    vs = all_vectors(p, W.dim)
    vs = vs[_mor3_mask(scW, OmP, vs, p)] if W.dim else vs
    stats.explored += homs.shape[0] * vs.shape[0]
    if stats.explored > budget:
        from .errors import BudgetExceeded

        raise BudgetExceeded(stats.explored, budget)
    L2 = 2 * _left_mul_matrices(scW, vs, p) % p if W.dim else np.zeros((vs.shape[0], 0, 0), dtype=np.int64)
    out = []
    step = max(1, CHUNK // max(vs.shape[0], 1))
    for start in range(0, homs.shape[0], step):
        Fs = homs[start : start + step]
        D = (np.matmul(Fs, Om) - np.matmul(OmP, Fs)) % p  # (b, m, n)
        # 2 f(e_j) . v0 = 2 L_{v0} f e_j  ->  (b, v, m, n)
        rhs = np.matmul(L2[None, :, :, :], Fs[:, None, :, :]) % p
        ok = np.all((rhs == D[:, None]).reshape(Fs.shape[0], vs.shape[0], -1), axis=2)
        for a, b in zip(*np.nonzero(ok)):
            out.append(MorphismWitness(_vec(vs[b]), _mats_to_exact(Fs[a : a + 1])[0]))
    return out


def _iso_witness_search(
    V: Algebra, Om, W: Algebra, OmP, Fs: np.ndarray, p: int, normalized: bool = True
) -> tuple[int, np.ndarray] | None:
    """Find ``(f, v0)`` with ``f Om f^-1 - Om' = 2 L_{v0}`` (and ``Om'(v0) = v0 - v0^2``)."""
    if Fs.shape[0] == 0:
        return None
    n = W.dim
    Om = np.array(Om, dtype=np.int64).reshape(V.dim, V.dim)
    OmP = np.array(OmP, dtype=np.int64).reshape(n, n)
    if n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    scW = W.to_numpy()
    vs = all_vectors(p, n)
    if normalized:
        vs = vs[_mor3_mask(scW, OmP, vs, p)]
    if vs.shape[0] == 0:
        return None
    L2 = 2 * _left_mul_matrices(scW, vs, p) % p
    lookup = {}
    for idx, k in enumerate(lex_keys(L2, p).tolist()):
        lookup.setdefault(k, idx)
    for start in range(0, Fs.shape[0], CHUNK):
        block = Fs[start : start + CHUNK]
        D = (np.matmul(np.matmul(block, Om), binv(block, p)) - OmP) % p
        for a, k in enumerate(lex_keys(D, p).tolist()):
            if k in lookup:
                return start + a, vs[lookup[k]]
    return None


@dataclass
class IsoResult:
    is_isomorphic: bool
    witness: MorphismWitness | None = None
    matrix: tuple | None = None

    def __bool__(self):
        return self.is_isomorphic


def is_isomorphic(A: BaricAlgebra, B: BaricAlgebra, budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Decide whether two Bernstein algebras over GF(p) are isomorphic.

    On success ``witness`` relates the decomposed data and ``matrix`` is an
    explicit baric isomorphism ``A -> B`` in the original coordinates.
    """
    if A.field != B.field:
        raise DimensionMismatch("algebras over different fields")
    F = A.field
    p = F.require_prime_field("isomorphism search")
    if A.dim != B.dim:
        return IsoResult(False)
    dA, dB = decompose(A), decompose(B)
    Fs = hom_search(dA.V, dB.V, invertible=True, budget=budget)
    found = _iso_witness_search(dA.V, dA.omega_op, dB.V, dB.omega_op, Fs, p)
    if found is None:
        return IsoResult(False)
    idx, v0 = found
    w = MorphismWitness(_vec(v0), _mats_to_exact(Fs[idx : idx + 1])[0])
    psiA_inv = la.inverse(F, dA.psi)
    full = la.matmul(F, dB.psi, la.matmul(F, w.matrix(F), psiA_inv))
    return IsoResult(True, w, full)


# -- equivalence of operators ------------------------------------------------------------


def _require_ops(V: Algebra, *ops):
    F = V.field
    out = []
    for Om in ops:
        Om = endo(F, Om)
        if len(Om) != V.dim:
            raise DimensionMismatch("operator size does not match the algebra")
        if not is_bernstein_operator(V, Om):
            raise NotOperator("not a Bernstein operator")
        out.append(Om)
    return out


def _relation(V: Algebra, Om, OmP, normalized: bool, budget: int) -> tuple[bool, MorphismWitness | None]:
    p = V.field.require_prime_field("equivalence search")
    Fs = algebra_automorphisms(V, budget)
    found = _iso_witness_search(V, Om, V, OmP, Fs, p, normalized=normalized)
    if found is None:
        return False, None
    idx, v0 = found
    return True, MorphismWitness(_vec(v0), _mats_to_exact(Fs[idx : idx + 1])[0])


def are_equivalent(V: Algebra, Om, OmP, budget: int = DEFAULT_BUDGET) -> tuple[bool, MorphismWitness | None]:
    """``Om ~ Om'``: some algebra automorphism ``f`` and ``v0`` with
    ``Om' = f Om f^-1 - 2 L_{v0}`` and ``Om'(v0) = v0 - v0^2``; the witness is ``(v0, f)``."""
    Om, OmP = _require_ops(V, Om, OmP)
    return _relation(V, Om, OmP, True, budget)


def dot_similar(V: Algebra, Om, OmP, budget: int = DEFAULT_BUDGET) -> tuple[bool, MorphismWitness | None]:
    """The same relation without the condition on ``Om'(v0)``; for zero multiplication it is similarity."""
    F = V.field
    Om, OmP = endo(F, Om), endo(F, OmP)
    if len(Om) != V.dim or len(OmP) != V.dim:
        raise DimensionMismatch("operator size does not match the algebra")
    from .algcore import check_4algebra

    if not check_4algebra(V):
        raise Not4Algebra("the underlying algebra does not satisfy (x^2)^2 = 0")
    return _relation(V, Om, OmP, False, budget)


@dataclass
class EquivalenceClass:
    representative: tuple
    members: list
    witness_map: dict = field(repr=False)
    aliases: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)


def _orbit(V: Algebra, Om: np.ndarray, Fs: np.ndarray, Finv: np.ndarray, p: int):
    """Every ``Om'`` equivalent to ``Om``, keyed, with one witness ``(v0, f)`` each."""
    n = V.dim
    sc = V.to_numpy()
    vs = all_vectors(p, n)
    L2 = 2 * _left_mul_matrices(sc, vs, p) % p
    conj_keys, conj_f = {}, {}
    for start in range(0, Fs.shape[0], CHUNK):
        block = Fs[start : start + CHUNK]
        C = np.matmul(np.matmul(block, Om), Finv[start : start + CHUNK]) % p
        keys = lex_keys(C, p)
        uniq, first = np.unique(keys, return_index=True)
        for k, i in zip(uniq.tolist(), first.tolist()):
            if k not in conj_keys:
                conj_keys[k] = C[i]
                conj_f[k] = block[i]
    out = {}
    v_sq = (vs - bmul(sc, vs, vs, p)) % p
    for k, C in conj_keys.items():
        cand = (C[None] - L2) % p  # (v, n, n)
        lhs = np.einsum("vij,vj->vi", cand, vs) % p
        ok = np.all(lhs == v_sq, axis=1)
        for b in np.nonzero(ok)[0]:
            ck = int(lex_keys(cand[b : b + 1], p)[0])
            if ck not in out:
                out[ck] = (cand[b], vs[b], conj_f[k])
    return out


def classify_operators(
    V: Algebra,
    mode: str = "bernstein",
    budget: int = DEFAULT_BUDGET,
    aliases: dict | None = None,
) -> list[EquivalenceClass]:
    """Partition the (normal) Bernstein operators of ``V`` into equivalence classes.

    Representatives are the lexicographically least members; ``aliases``
    maps names to operators, attached to whichever class contains them.
    """
    F = V.field
    p = F.require_prime_field("operator classification")
    ops = enumerate_operators_array(V, mode, budget)
    n = V.dim
    Fs, Finv = _automorphisms_with_inverses(V, budget)
    op_keys = lex_keys(ops, p).tolist() if n else [0]
    key_to_op = dict(zip(op_keys, range(len(op_keys))))
    alias_keys = {}
    for name, M in (aliases or {}).items():
        arr = np.array(endo(F, M), dtype=np.int64).reshape(1, n, n)
        alias_keys.setdefault(int(lex_keys(arr, p)[0]), []).append(name)
    assigned: dict = {}
    classes = []
    for idx, key in enumerate(op_keys):
        if key in assigned:
            continue
        rep = ops[idx]
        orbit = _orbit(V, rep, Fs, Finv, p) if n else {0: (rep, np.zeros(0, dtype=np.int64), np.eye(0, dtype=np.int64))}
        members, wmap, names = [], {}, []
        for k in sorted(orbit, key=lambda k: key_to_op.get(k, -1)):
            if k not in key_to_op:
                raise AssertionError("equivalence class escaped the enumerated operator set")
            M, v0, f = orbit[k]
            ex = _mats_to_exact(M[None])[0]
            members.append(ex)
            wmap[ex] = MorphismWitness(_vec(v0), _mats_to_exact(f[None])[0])
            assigned[k] = len(classes)
            names.extend(alias_keys.get(k, []))
        classes.append(EquivalenceClass(_mats_to_exact(rep[None])[0], members, wmap, names))
    return classes


# -- automorphism groups --------------------------------------------------------------


@dataclass
class AutomorphismGroup:
    """Pairs ``(v, f)`` with ``f`` in ``Aut(V)``, ``Om(v) = v - v^2`` and
    ``f Om - Om f = 2 L_v f``; group law ``(w, g) * (v, f) = (w + g v, g f)``.

    ``vs``/``fs`` hold the elements when ``order <= max_elements``.
    """

    datum: BernsteinDatum
    order: int
    vs: np.ndarray | None = None
    fs: np.ndarray | None = None

    @property
    def p(self) -> int:
        return self.datum.field.p

    def elements(self) -> list[MorphismWitness]:
        if self.vs is None:
            raise ValueError("group too large; elements were not stored")
        return [MorphismWitness(_vec(v), _mats_to_exact(f[None])[0]) for v, f in zip(self.vs, self.fs)]

    def theta(self, vs: np.ndarray | None = None, fs: np.ndarray | None = None) -> np.ndarray:
        """Matrices of ``(x, a) -> (f x + a v, a)`` on the semidirect product, batched."""
        vs = self.vs if vs is None else vs
        fs = self.fs if fs is None else fs
        N, n = vs.shape
        out = np.zeros((N, n + 1, n + 1), dtype=np.int64)
        out[:, :n, :n] = fs
        out[:, :n, n] = vs
        out[:, n, n] = 1
        return out

    def compose(self, w, g, v, f):
        """Batched group law; arguments are arrays with matching leading axes."""
        p = self.p
        return (w + np.einsum("...ij,...j->...i", g, v)) % p, np.matmul(g, f) % p

    def inverse(self, v, f):
        p = self.p
        finv = binv(f, p)
        return (-np.einsum("...ij,...j->...i", finv, v)) % p, finv


def automorphism_group(
    datum: BernsteinDatum, budget: int = DEFAULT_BUDGET, max_elements: int = 2_000_000
) -> AutomorphismGroup:
    F = datum.field
    p = F.require_prime_field("automorphism group")
    V = datum.V
    n = V.dim
    if n == 0:
        return AutomorphismGroup(datum, 1, np.zeros((1, 0), dtype=np.int64), np.zeros((1, 0, 0), dtype=np.int64))
    Fs, Finv = _automorphisms_with_inverses(V, budget)
    sc = V.to_numpy()
    Om = np.array(datum.omega_op, dtype=np.int64).reshape(n, n)
    vs = all_vectors(p, n)
    vs = vs[_mor3_mask(sc, Om, vs, p)]
    L2 = 2 * _left_mul_matrices(sc, vs, p) % p
    buckets: dict = {}
    for idx, k in enumerate(lex_keys(L2, p).tolist()):
        buckets.setdefault(k, []).append(idx)
    order = 0
    sel_f, sel_v = [], []
    for start in range(0, Fs.shape[0], CHUNK):
        block = Fs[start : start + CHUNK]
        D = (np.matmul(np.matmul(block, Om), Finv[start : start + CHUNK]) - Om) % p
        for a, k in enumerate(lex_keys(D, p).tolist()):
            hit = buckets.get(k)
            if hit:
                order += len(hit)
                if order <= max_elements:
                    sel_f.extend([start + a] * len(hit))
                    sel_v.extend(hit)
    if order > max_elements:
        return AutomorphismGroup(datum, order)
    return AutomorphismGroup(datum, order, vs[np.array(sel_v, dtype=np.int64)].reshape(-1, n), Fs[np.array(sel_f, dtype=np.int64)].reshape(-1, n, n))


def bernstein_automorphisms_direct(B: BaricAlgebra, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """``Aut(B)`` of a baric algebra by direct search over weight-preserving bijections."""
    order = None
    if B.distinguished is not None:
        order = [B.distinguished] + [i for i in range(B.dim) if i != B.distinguished]
    return hom_search(B.alg, B.alg, invertible=True, weights=(B.weight, B.weight), order=order, budget=budget)


def certify_theta(group: AutomorphismGroup, sample_pairs: int | None = None, seed: int = 0) -> dict:
    """Check that ``(v, f) -> theta(v, f)`` is a bijective homomorphism onto ``Aut`` of the semidirect product.

    The image is compared with a direct search; the homomorphism property is
    tested on all pairs, or on ``sample_pairs`` random pairs.
    """
    if group.vs is None:
        raise ValueError("certification needs the group elements")
    p = group.p
    datum = group.datum
    B = semidirect(datum.V, datum.omega_op)
    direct = bernstein_automorphisms_direct(B)
    T = group.theta()
    tk = set(lex_keys(T, p).tolist())
    dk = set(lex_keys(direct, p).tolist())
    N = group.order
    rng = np.random.default_rng(seed)
    hom_ok = True
    if sample_pairs is None:
        hom_ok = _theta_all_pairs_ok(group, T)
    else:
        ia, ib = rng.integers(0, N, sample_pairs), rng.integers(0, N, sample_pairs)
        hom_ok = _theta_pairs_ok(group, T, ia, ib)
    return {
        "order": N,
        "direct_order": int(direct.shape[0]),
        "injective": len(tk) == N,
        "onto": tk == dk,
        "homomorphism": bool(hom_ok),
    }


def _theta_pairs_ok(group, T, ia, ib) -> bool:
    p = group.p
    v, f = group.compose(group.vs[ia], group.fs[ia], group.vs[ib], group.fs[ib])
    lhs = group.theta(v, f)
    rhs = np.matmul(T[ia], T[ib]) % p
    return bool(np.array_equal(lhs, rhs))


def _theta_all_pairs_ok(group, T) -> bool:
    # blocks of left factors against every right factor; float products are exact at these sizes
    p = group.p
    N, k = T.shape[0], T.shape[1]
    n = k - 1
    Tf, fs, vs = T.astype(np.float64), group.fs.astype(np.float64), group.vs.astype(np.float64)
    step = max(1, CHUNK // max(N * k, 1))
    for start in range(0, N, step):
        a = slice(start, min(N, start + step))
        rhs = np.tensordot(Tf[a], Tf, axes=([2], [1])).transpose(0, 2, 1, 3).astype(np.int64) % p
        gf = np.tensordot(fs[a], fs, axes=([2], [1])).transpose(0, 2, 1, 3).astype(np.int64) % p
        gv = np.tensordot(fs[a], vs, axes=([2], [1])).transpose(0, 2, 1).astype(np.int64)
        wv = (gv + group.vs[a][:, None, :]) % p
        if not (
            np.array_equal(rhs[:, :, :n, :n], gf)
            and np.array_equal(rhs[:, :, :n, n], wv)
            and not rhs[:, :, n, :n].any()
            and np.all(rhs[:, :, n, n] == 1)
        ):
            return False
    return True
