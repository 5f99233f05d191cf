"""Acceptance suite: one test per criterion; the summary prints an ``ACn PASS/FAIL`` line for each.

Every count here is exact. Time limits are wall-clock on a single core.
"""

import itertools
import random

import pytest

import oracles as o
from bernalg.algcore import Algebra, BaricAlgebra, change_basis_baric, check_4algebra, check_bernstein, check_normal_bernstein, find_weights, mul
from bernalg.bernop import BernsteinDatum, enumerate_operators, is_bernstein_operator, is_normal_bernstein_operator
from bernalg.construct import catalog, catalog_bernstein_algebras, decompose, semidirect
from bernalg.exactmath import GF, Q
from bernalg.exactmath import linalg as la
from bernalg.exactmath.gfarray import lex_keys
from bernalg.morphcls import (
    are_equivalent,
    automorphism_group,
    certify_theta,
    classify_operators,
    enumerate_morphisms,
    is_isomorphic,
)
from bernalg.reproduce import run_dim2, run_exnetri

F5 = GF(5)
criterion = pytest.mark.criterion


def all_ok(result):
    bad = [c for c in result["checks"] if not c["ok"]]
    assert not bad, bad


@criterion(1, "two isomorphism types of 2-dim Bernstein algebras over GF(5); Q catalog verified; pipeline timed < 1 s")
def test_ac1_dimension_two(stopwatch):
    with stopwatch() as t:
        res = run_dim2(F5)
    all_ok(res)
    assert len(res["classes"]) == 2
    assert t.seconds < 1.0
    # independent route: every 2-dim Bernstein algebra over GF(5) by raw exhaustion of tensors and weights
    reps = [catalog("A1").value, catalog("A2").value]
    hit = [0, 0]
    pairs = [(0, 0), (0, 1), (1, 1)]
    for free in itertools.product(range(5), repeat=6):
        sc = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
        for t_, (i, j) in enumerate(pairs):
            sc[i][j] = sc[j][i] = list(free[2 * t_ : 2 * t_ + 2])
        for w in o.brute_weights(sc, 5):
            if not o.bernstein_pointwise(sc, w, 5):
                continue
            B = BaricAlgebra(Algebra(F5, sc), w)
            iso = [bool(is_isomorphic(B, R)) for R in reps]
            assert sum(iso) == 1
            hit[iso.index(True)] += 1
    assert hit[0] > 0 and hit[1] > 0
    for name in ("A1", "A2"):
        assert check_bernstein(catalog(name, Q).value)


@criterion(2, "abelian kernels of dim 1, 2, 3 over GF(5) give n+1 classes, one per rank; n = 3 in < 30 s")
def test_ac2_abelian_kernels(stopwatch):
    for n in (1, 2, 3):
        with stopwatch() as t:
            classes = classify_operators(Algebra.abelian(F5, n))
        assert len(classes) == n + 1
        ranks = [{la.rank(F5, M) for M in cl.members} for cl in classes]
        assert all(len(r) == 1 for r in ranks)
        assert sorted(r.pop() for r in ranks) == list(range(n + 1))
        # members are exactly the idempotents, found independently
        assert sum(cl.size for cl in classes) == len(o.idempotent_matrices(5, n))
        if n == 3:
            assert t.seconds < 30


@criterion(3, "exnetri over GF(5): 50 operators = two families; 3 classes matching Omega1-3; |Aut_Alg| = 80; orders 80/80/20; < 5 min")
def test_ac3_exnetri(stopwatch):
    with stopwatch() as t:
        res = run_exnetri(F5)
        W = catalog("exnetri").value
        ops = enumerate_operators(W)
        assert ops == o.brute_operators(W.to_numpy().tolist(), 5)
        classes = classify_operators(W)
        assert len(classes) == 3
        aliases = [catalog(f"exnetri.Omega{i}").value for i in (1, 2, 3)]
        table = [[are_equivalent(W, cl.representative, A)[0] for A in aliases] for cl in classes]
        # each class is equivalent to exactly one of the three, and each of the three is hit once
        assert sorted(map(tuple, table)) == sorted([(True, False, False), (False, True, False), (False, False, True)])
        orders = [automorphism_group(BernsteinDatum(W, A)).order for A in aliases]
    all_ok(res)
    assert len(ops) == 50
    assert orders == [80, 80, 20]
    assert t.seconds < 300


def random_pair(rng):
    n = rng.choice([1, 2, 3])
    kernels = [catalog(k, F5).value for k in ("abelian1", "V0", "V1", "V2", "exnetri")]
    kernels += [Algebra.abelian(F5, 3), Algebra.from_products(F5, 3, {(0, 0): (0, 1, 0)})]
    roll = rng.random()
    if roll < 0.5:
        V = rng.choice([K for K in kernels if K.dim == n] or kernels)
    else:
        sc = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if rng.random() < 0.2:
                        sc[i][j][k] = sc[j][i][k] = rng.randrange(1, 5)
        V = Algebra(F5, sc)
    n = V.dim
    if check_4algebra(V) and rng.random() < 0.5:
        ops = enumerate_operators(V)
        if ops:
            return V, rng.choice(ops)
    return V, [[rng.randrange(5) for _ in range(n)] for _ in range(n)]


@criterion(4, "200 random (V, Omega) over GF(5), dims <= 3: Bernstein/normal semidirect iff 4-algebra and (normal) operator")
def test_ac4_semidirect_equivalence():
    rng = random.Random(2024)
    seen = {"bo": 0, "nbo": 0, "none": 0, "non4": 0}
    for _ in range(200):
        V, Om = random_pair(rng)
        B = semidirect(V, Om)
        four = check_4algebra(V)
        bo = four and is_bernstein_operator(V, Om)
        nbo = four and is_normal_bernstein_operator(V, Om)
        assert check_bernstein(B) == bo
        assert check_normal_bernstein(B) == nbo
        # the pointwise oracle on the product table agrees as well
        tab, w = o.semidirect_tables(V.to_numpy().tolist(), Om, 5)
        assert o.bernstein_pointwise(tab.tolist(), w, 5) == bo
        seen["bo"] += bo
        seen["nbo"] += nbo
        seen["none"] += not bo
        seen["non4"] += not four
    assert min(seen.values()) >= 5, seen


def weight_preserving_change(rng, B, p=5):
    N = B.dim
    b = next(i for i, c in enumerate(B.weight) if c != 0)
    winv = pow(int(B.weight[b]), -1, p)
    while True:
        P = [[rng.randrange(p) for _ in range(N)] for _ in range(N)]
        for j in range(N):
            rest = sum(int(B.weight[i]) * P[i][j] for i in range(N) if i != b)
            P[b][j] = (int(B.weight[j]) - rest) * winv % p
        if la.is_invertible(F5, P):
            return P


@criterion(5, "decompose then semidirect is isomorphic to the input for every catalog Bernstein algebra x 50 basis changes; psi fixes the kernel")
def test_ac5_structure_round_trip():
    rng = random.Random(5)
    failures = []
    for name, B in catalog_bernstein_algebras(F5).items():
        for trial in range(50):
            B2 = change_basis_baric(B, weight_preserving_change(rng, B))
            assert B2.weight == B.weight
            d = decompose(B2)
            S = semidirect(d.V, d.omega_op)
            N, n = B2.dim, d.V.dim
            ok = bool(is_isomorphic(S, B2)) and bool(is_isomorphic(S, B))
            # psi(x, 0) = x for x in ker w, psi(0, 1) = e, and psi is multiplicative
            for i in range(n):
                ok &= tuple(la.column(d.psi, i)) == d.kernel_basis[i]
                ok &= sum(a * b for a, b in zip(B2.weight, d.kernel_basis[i])) % 5 == 0
            ok &= tuple(la.column(d.psi, n)) == d.e
            ok &= mul(B2.alg, d.e, d.e) == d.e
            for i, j in itertools.product(range(N), repeat=2):
                ei, ej = (tuple(int(k == t) for k in range(N)) for t in (i, j))
                ok &= la.apply(F5, d.psi, mul(S.alg, ei, ej)) == mul(B2.alg, la.column(d.psi, i), la.column(d.psi, j))
            if not ok:
                failures.append((name, trial))
    assert failures == []


def morphism_data(F):
    out = []
    for name in ("abelian1", "V0", "V1", "V2"):
        V = catalog(name, F).value
        for cl in classify_operators(V):
            out.append(BernsteinDatum(V, cl.representative))
            if cl.size > 1:
                out.append(BernsteinDatum(V, cl.members[-1]))
    return out


def raw_count(src, dst, p):
    t1, w1 = o.semidirect_tables(src.V.sc, src.omega_op, p)
    t2, w2 = o.semidirect_tables(dst.V.sc, dst.omega_op, p)
    return len(o.brute_baric_maps(t1, w1, t2, w2, p))


@criterion(6, "witness counts equal raw counts of baric maps, kernels of dim <= 2, GF(3) and GF(5)")
def test_ac6_morphism_bijection():
    mismatches = []
    for p in (3, 5):
        F = GF(p)
        if p == 3:
            data = [
                BernsteinDatum(catalog(k, F).value, Om)
                for k in ("abelian1", "V0", "V1", "V2")
                for Om in enumerate_operators(catalog(k, F).value)
            ]
        else:
            data = morphism_data(F)
        for src, dst in itertools.product(data, repeat=2):
            a, b = len(enumerate_morphisms(src, dst)), raw_count(src, dst, p)
            if a != b:
                mismatches.append((p, src, dst, a, b))
    assert mismatches == []


@criterion(7, "exactly one weight on every catalog Bernstein algebra over GF(5)")
def test_ac7_weight_uniqueness():
    for name, B in catalog_bernstein_algebras(F5).items():
        ws = find_weights(B.alg)
        assert ws == [tuple(B.weight)], name
        assert o.brute_weights(B.alg.to_numpy().tolist(), 5) == [tuple(int(c) for c in B.weight)], name


@criterion(8, "NBO inside BO; Aut orders 480 and 12000 over GF(5) by exhaustion; theta a homomorphism on all pairs; < 5 min")
def test_ac8_automorphisms(stopwatch):
    with stopwatch() as t:
        for V in [catalog(k).value for k in ("abelian1", "V0", "V1", "V2", "exnetri")] + [Algebra.abelian(F5, 3)]:
            normal = set(enumerate_operators(V, "normal"))
            assert normal <= set(enumerate_operators(V))
        V = Algebra.abelian(F5, 2)
        for Om, order in (([[0, 0], [0, 0]], 480), ([[1, 0], [0, 1]], 12000)):
            G = automorphism_group(BernsteinDatum(V, Om))
            tab, w = o.semidirect_tables(V.sc, Om, 5)
            raw = o.brute_baric_maps(tab, w, tab, w, 5, invertible=True)
            assert G.order == len(raw) == order
            assert set(lex_keys(G.theta(), 5).tolist()) == set(lex_keys(raw, 5).tolist())
            cert = certify_theta(G)
            assert cert == {"order": order, "direct_order": order, "injective": True, "onto": True, "homomorphism": True}
        for i in (1, 2, 3):
            G = automorphism_group(BernsteinDatum(catalog("exnetri").value, catalog(f"exnetri.Omega{i}").value))
            cert = certify_theta(G, sample_pairs=1000, seed=i)
            assert cert["onto"] and cert["injective"] and cert["homomorphism"]
    assert t.seconds < 300
