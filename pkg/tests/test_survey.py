import itertools

import numpy as np
import pytest

import oracles as o
from bernalg.algcore import Algebra, change_basis
from bernalg.errors import InputError
from bernalg.exactmath import GF
from bernalg.survey import all_symmetric_tensors, canonical_forms, general_linear, question3, transform

F5 = GF(5)


def brute_four_algebras(p, n):
    """Sparse keys of every symmetric tensor passing the pointwise 4-algebra test."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for free in itertools.product(range(p), repeat=len(pairs) * n):
        sc = [[[0] * n for _ in range(n)] for _ in range(n)]
        for t, (i, j) in enumerate(pairs):
            for k in range(n):
                sc[i][j][k] = sc[j][i][k] = free[t * n + k]
        if o.four_algebra_pointwise(sc, p):
            out.append(sc)
    return out


def brute_orbits(tensors, p, n):
    # union-find over the GL action, with the basis change done through the pointwise product
    key = {np.array(t).tobytes(): i for i, t in enumerate(np.array(tensors, dtype=np.int64))}
    gl = [g for g in o.all_matrices(p, n, n) if round(np.linalg.det(g)) % p]
    parent = list(range(len(tensors)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gl:
        ginv = np.round(np.linalg.inv(g) * np.linalg.det(g)).astype(np.int64) * pow(int(round(np.linalg.det(g))) % p, -1, p) % p
        for idx, sc in enumerate(tensors):
            new = np.zeros((n, n, n), dtype=np.int64)
            for a in range(n):
                for b in range(n):
                    prod = o.pmul(sc, tuple(g[:, a]), tuple(g[:, b]), p)
                    new[a, b] = ginv @ np.array(prod) % p
            j = key[new.tobytes()]
            ra, rb = find(idx), find(j)
            if ra != rb:
                parent[ra] = rb
    return sorted(
        [sum(1 for i in range(len(tensors)) if find(i) == r) for r in set(find(i) for i in range(len(tensors)))]
    )


def test_n1_exhaustive():
    r = question3(F5, 1)
    assert r["four_algebras"] == 1 == len(brute_four_algebras(5, 1))
    (inst,) = r["instances"]
    assert inst["name"] == "abelian1" and inst["classes"] == 2
    assert r["summary"]["max_classes"] == 2 == r["summary"]["bound"]


def test_n2_exhaustive_matches_oracles():
    r = question3(F5, 2)
    tensors = brute_four_algebras(5, 2)
    assert r["four_algebras"] == len(tensors) == 145
    assert sorted(i["tensors_in_class"] for i in r["instances"]) == brute_orbits(tensors, 5, 2) == [1, 24, 120]
    assert {i["name"]: i["classes"] for i in r["instances"]} == {"V0": 3, "V1": 2, "V2": 1}
    s = r["summary"]
    assert s["min_classes"] == 1 and s["max_classes"] == 3 and s["flagged"] == 0


def test_n2_at_p3():
    r = question3(GF(3), 2)
    tensors = brute_four_algebras(3, 2)
    assert r["four_algebras"] == len(tensors)
    assert sorted(i["tensors_in_class"] for i in r["instances"]) == brute_orbits(tensors, 3, 2)
    assert r["summary"]["flagged"] == 0


def test_transform_agrees_with_change_basis():
    rng = np.random.default_rng(1)
    G = general_linear(5, 3)
    from bernalg.exactmath.gfarray import binv

    picks = G[rng.integers(0, len(G), 10)]
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 1, 0] = sc[1, 0, 0] = 1
    sc[2, 2, 1] = 3
    T = transform(sc[None], picks, binv(picks, 5), 5)[0]
    for t, g in zip(T, picks):
        ref = change_basis(Algebra(F5, sc.tolist()), g.tolist()).to_numpy()
        assert np.array_equal(t, ref)


def test_canonical_forms_are_orbit_invariants():
    tensors = all_symmetric_tensors(5, 2)
    assert tensors.shape == (5**6, 2, 2, 2)
    rng = np.random.default_rng(2)
    sample = tensors[rng.integers(0, len(tensors), 20)]
    G = general_linear(5, 2)
    assert len(G) == 480
    from bernalg.exactmath.gfarray import binv

    can = canonical_forms(sample, 5)
    moved = transform(sample, G[:7], binv(G[:7], 5), 5)
    for c, row in zip(can, moved):
        assert np.array_equal(canonical_forms(row, 5), np.repeat(c[None], 7, axis=0))


def test_n3_sampled_is_seeded_and_includes_named():
    a = question3(F5, 3, samples=2, seed=7)
    b = question3(F5, 3, samples=2, seed=7)
    assert a == b
    names = [i.get("name") for i in a["instances"]]
    assert names[:2] == ["abelian3", "exnetri"]
    assert a["instances"][0]["classes"] == 4 and a["instances"][1]["classes"] == 3
    assert a["accepted"] == 2 and a["summary"]["instances"] == 4
    assert all(0 < i["classes"] <= 4 for i in a["instances"])


def test_budget_recorded_not_fatal():
    r = question3(F5, 2, budget=200)
    assert r["summary"]["budget_exceeded"] > 0
    assert any(i["classes"] is None and "error" in i for i in r["instances"])


def test_bad_arguments():
    with pytest.raises(InputError):
        question3(F5, 4)
    with pytest.raises(InputError):
        question3(F5, 3, density=2.0)
