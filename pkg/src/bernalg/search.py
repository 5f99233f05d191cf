"""Column-by-column pruned enumeration over GF(p).

A search assigns the columns of an unknown matrix one at a time. Each
constraint declares which columns it reads; it is applied as soon as all
of them are assigned, so cheap linear consequences cut the frontier before
later columns multiply it. Work is done in vectorized chunks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 18

ConstraintFn = Callable[[dict], np.ndarray]


@dataclass
class Constraint:
    needs: frozenset
    fn: ConstraintFn
    name: str = ""


@dataclass
class SearchStats:
    explored: int = 0
    frontier_sizes: list = field(default_factory=list)


def frontier_search(
    ncols: int,
    candidates: Sequence[np.ndarray],
    constraints: Sequence[Constraint],
    p: int,
    *,
    order: Sequence[int] | None = None,
    final: ConstraintFn | None = None,
    budget: int = DEFAULT_BUDGET,
    stats: SearchStats | None = None,
) -> np.ndarray:
    """Return all full assignments as an array ``(N, m, ncols)`` (columns in natural order).

    ``candidates[j]`` is a ``(C_j, m)`` array of allowed values for column ``j``.
    ``final`` is an extra predicate on complete matrices ``(N, m, ncols)``.
    """
    order = list(range(ncols)) if order is None else list(order)
    stats = stats if stats is not None else SearchStats()
    m = candidates[0].shape[1] if ncols else 0
    pending = list(constraints)
    frontier = np.zeros((1, 0, m), dtype=np.int8)
    assigned: list[int] = []
    for col in order:
        cand = np.asarray(candidates[col], dtype=np.int8)
        stats.explored += frontier.shape[0] * cand.shape[0]
        if stats.explored > budget:
            raise BudgetExceeded(stats.explored, budget)
        assigned.append(col)
        ready = [c for c in pending if c.needs <= set(assigned)]
        pending = [c for c in pending if not c.needs <= set(assigned)]
        frontier = _extend(frontier, cand, assigned, ready, p)
        stats.frontier_sizes.append(int(frontier.shape[0]))
        if frontier.shape[0] == 0:
            break
    if frontier.shape[0] == 0 or ncols == 0:
        if ncols == 0:
            return np.zeros((1, m, 0), dtype=np.int64)
        return np.zeros((0, m, ncols), dtype=np.int64)
    # frontier is (N, ncols, m) in assignment order; reorder to natural column order
    perm = np.argsort(np.array(assigned))
    mats = np.transpose(frontier[:, perm, :], (0, 2, 1)).astype(np.int64)
    if final is not None:
        keep = []
        for start in range(0, mats.shape[0], CHUNK):
            keep.append(final(mats[start : start + CHUNK]))
        mats = mats[np.concatenate(keep)] if keep else mats
    return mats


def _extend(frontier, cand, assigned, ready, p):
    N, C = frontier.shape[0], cand.shape[0]
    rows_per_chunk = max(1, CHUNK // max(C, 1))
    out = []
    for start in range(0, N, rows_per_chunk):
        block = frontier[start : start + rows_per_chunk]
        b = block.shape[0]
        new = np.concatenate(
            [np.repeat(block, C, axis=0), np.tile(cand, (b, 1))[:, None, :]], axis=1
        )
        if ready:
            wide = new.astype(np.int64)
            cols = {c: wide[:, s, :] for s, c in enumerate(assigned)}
            mask = np.ones(new.shape[0], dtype=bool)
            for con in ready:
                mask &= con.fn(cols)
                if not mask.any():
                    break
            new = new[mask]
        out.append(new)
    if not out:
        return np.zeros((0, frontier.shape[1] + 1, frontier.shape[2]), dtype=np.int8)
    return np.concatenate(out, axis=0)


def sort_lex(mats: np.ndarray) -> np.ndarray:
    """Sort matrices by their row-major flattening (lexicographic order of residues)."""
    if mats.shape[0] <= 1:
        return mats
    flat = mats.reshape(mats.shape[0], -1)
    idx = np.lexsort(flat.T[::-1])
    return mats[idx]
