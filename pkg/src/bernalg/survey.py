"""Evidence for the question whether ``BO(V)/~`` is nonempty with at most ``n + 1`` classes.

For ``n <= 2`` every symmetric structure tensor over GF(p) is generated,
4-algebras are kept, and they are grouped into isomorphism classes by a
canonical form (least tensor in the GL(n, p) orbit). For ``n = 3``
4-algebras are drawn by rejection sampling. Nothing here asserts an
answer; instances with no class or more than ``n + 1`` are flagged.
"""

from __future__ import annotations

import numpy as np

from .algcore import Algebra, four_algebra_mask
from .construct import catalog
from .errors import BudgetExceeded, InputError
from .exactmath.field import Field
from .exactmath.gfarray import all_vectors, bdet, binv, lex_keys
from .morphcls import classify_operators
from .search import DEFAULT_BUDGET

EXHAUSTIVE_MAX_DIM = 2
MAX_DIM = 3
# named small 4-algebras that are reported by name when they turn up
NAMED = {1: ("abelian1",), 2: ("V0", "V1", "V2"), 3: ("abelian3", "exnetri")}


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _expand(free: np.ndarray, n: int) -> np.ndarray:
    """``(N, len(pairs) * n)`` free entries to symmetric ``(N, n, n, n)`` tensors."""
    N = free.shape[0]
    sc = np.zeros((N, n, n, n), dtype=np.int64)
    for t, (i, j) in enumerate(_pairs(n)):
        block = free[:, t * n : (t + 1) * n]
        sc[:, i, j] = block
        sc[:, j, i] = block
    return sc


def all_symmetric_tensors(p: int, n: int) -> np.ndarray:
    return _expand(all_vectors(p, len(_pairs(n)) * n), n)


def general_linear(p: int, n: int) -> np.ndarray:
    mats = all_vectors(p, n * n).reshape(-1, n, n)
    return mats[bdet(mats, p) != 0]


def transform(sc: np.ndarray, G: np.ndarray, Ginv: np.ndarray, p: int) -> np.ndarray:
    """Structure tensors in the basis given by the columns of each ``G``: shape ``(N, |G|, n, n, n)``."""
    # (G e_a)(G e_b) = sum G[i,a] G[j,b] c[i,j,:], then coordinates via G^-1
    t = np.einsum("gia,nijc->ngajc", G, sc) % p
    t = np.einsum("gjb,ngajc->ngabc", G, t) % p
    return np.einsum("gkc,ngabc->ngabk", Ginv, t) % p


def canonical_forms(sc: np.ndarray, p: int, G=None, Ginv=None, chunk: int = 64) -> np.ndarray:
    """Least tensor (row-major lexicographic) in each GL-orbit, as ``(N, n, n, n)``."""
    n = sc.shape[1]
    if G is None:
        G = general_linear(p, n)
        Ginv = binv(G, p)
    out = np.empty_like(sc)
    for s in range(0, sc.shape[0], chunk):
        T = transform(sc[s : s + chunk], G, Ginv, p)
        b, g = T.shape[0], T.shape[1]
        keys = lex_keys(T.reshape(b * g, -1), p).reshape(b, g)
        best = np.argmin(keys, axis=1)
        out[s : s + b] = T[np.arange(b), best]
    return out


def _named_keys(F: Field, n: int, G, Ginv) -> dict:
    p = F.p
    out = {}
    for name in NAMED.get(n, ()):
        sc = catalog(name, F).value.to_numpy()[None]
        can = canonical_forms(sc, p, G, Ginv) if G is not None else sc
        out[int(lex_keys(can, p)[0])] = name
    return out


def _classify(A: Algebra, budget: int) -> dict:
    try:
        classes = classify_operators(A, budget=budget)
    except BudgetExceeded as exc:
        return {"classes": None, "error": str(exc)}
    return {"classes": len(classes), "class_sizes": [c.size for c in classes]}


def _instance(F, n, sc, budget, **extra) -> dict:
    A = Algebra(F, sc.tolist())
    rec = {"sc": _sparse(sc), **extra, **_classify(A, budget)}
    k = rec["classes"]
    rec["flagged"] = k is not None and (k == 0 or k > n + 1)
    return rec


def _sparse(sc: np.ndarray) -> list:
    n = sc.shape[0]
    return [[i, j, k, int(sc[i, j, k])] for i, j in _pairs(n) for k in range(n) if sc[i, j, k]]


def _summary(n, instances) -> dict:
    counts = [r["classes"] for r in instances if r["classes"] is not None]
    return {
        "instances": len(instances),
        "computed": len(counts),
        "budget_exceeded": len(instances) - len(counts),
        "min_classes": min(counts) if counts else None,
        "max_classes": max(counts) if counts else None,
        "bound": n + 1,
        "flagged": sum(1 for r in instances if r["flagged"]),
    }


def exhaustive(F: Field, n: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Every n-dim 4-algebra over GF(p), one instance per isomorphism class."""
    p = F.require_prime_field("class-count survey")
    if n > EXHAUSTIVE_MAX_DIM:
        raise InputError(f"exhaustive survey supports n <= {EXHAUSTIVE_MAX_DIM}")
    tensors = all_symmetric_tensors(p, n)
    four = tensors[four_algebra_mask(tensors, p)]
    G = general_linear(p, n)
    Ginv = binv(G, p)
    can = canonical_forms(four, p, G, Ginv)
    keys = lex_keys(can, p)
    uniq, first, counts = np.unique(keys, return_index=True, return_counts=True)
    names = _named_keys(F, n, G, Ginv)
    instances = []
    for k, i, c in zip(uniq.tolist(), first.tolist(), counts.tolist()):
        instances.append(_instance(F, n, can[i], budget, name=names.get(int(k)), tensors_in_class=int(c)))
    return {
        "mode": "exhaustive",
        "four_algebras": int(four.shape[0]),
        "isomorphism_classes": len(instances),
        "instances": instances,
        "summary": _summary(n, instances),
    }


def sampled(
    F: Field,
    n: int,
    samples: int,
    seed: int = 0,
    density: float = 0.15,
    max_draws: int = 10**6,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Rejection-sample ``samples`` 4-algebras: each free entry is nonzero with probability ``density``.

    Named catalog algebras of this dimension are always included first.
    """
    p = F.require_prime_field("class-count survey")
    if n > MAX_DIM:
        raise InputError(f"survey supports n <= {MAX_DIM}")
    if not 0 <= density <= 1:
        raise InputError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    width = len(_pairs(n)) * n
    instances = [
        _instance(F, n, catalog(name, F).value.to_numpy(), budget, name=name) for name in NAMED.get(n, ())
    ]
    accepted, draws = [], 0
    while len(accepted) < samples and draws < max_draws:
        b = min(4096, max_draws - draws)
        mask = rng.random((b, width)) < density
        vals = rng.integers(1, p, (b, width))
        sc = _expand(np.where(mask, vals, 0), n)
        ok = four_algebra_mask(sc, p)
        draws += b
        for t in np.nonzero(ok)[0]:
            if len(accepted) < samples:
                accepted.append(sc[t])
    for idx, sc in enumerate(accepted):
        instances.append(_instance(F, n, sc, budget, sample=idx))
    return {
        "mode": "sampled",
        "seed": seed,
        "density": density,
        "draws": draws,
        "accepted": len(accepted),
        "instances": instances,
        "summary": _summary(n, instances),
    }


def question3(F: Field, n: int, samples: int = 5, seed: int = 0, density: float = 0.15, budget: int = DEFAULT_BUDGET) -> dict:
    if n < 1 or n > MAX_DIM:
        raise InputError(f"n must be between 1 and {MAX_DIM}")
    if n <= EXHAUSTIVE_MAX_DIM:
        return exhaustive(F, n, budget)
    return sampled(F, n, samples, seed, density, budget=budget)


__all__ = ["question3", "exhaustive", "sampled", "canonical_forms", "transform", "general_linear"]
