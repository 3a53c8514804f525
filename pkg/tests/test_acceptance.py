"""Acceptance suite: eight criteria, each at its stated size, tolerance and time limit.

Every criterion records one PASS/FAIL line (printed in the terminal summary)
before asserting.
"""

import itertools
import math
import random
import time
from fractions import Fraction

from tropgeom.bipartite import BipartiteGraph
from tropgeom.caratheodory import ColorfulInstance, colorful, column_offsets, generalized_colorful
from tropgeom.certificates import RadonCertificate
from tropgeom.maxplus import BOTTOM, membership
from tropgeom.oracles import enumerate_all_tverberg, membership_oracle, tropical_system_feasible
from tropgeom.radon_helly import radon
from tropgeom.sierksma import genericity_check, partition_with_equal_neighborhoods, sierksma_count
from tropgeom.tverberg import tverberg

from _brute import equal_neighbourhood_families, feasible_assignments
from _report import record

F = Fraction


def rat(rng, lo=-200, hi=200):
    return F(rng.randint(lo, hi), rng.choice((1, 2, 3)))


def rand_set(rng, n, d, bottom=0.0, lo=-200, hi=200):
    """Random rational points, none of them entirely bottom."""
    while True:
        X = [tuple(BOTTOM if rng.random() < bottom else rat(rng, lo, hi) for _ in range(d)) for _ in range(n)]
        if all(any(c is not BOTTOM for c in x) for x in X):
            return X


def combine_exact(points, lambdas):
    dim = len(points[0])
    out = [BOTTOM] * dim
    for lam, x in zip(lambdas, points):
        if lam is BOTTOM:
            continue
        for k, c in enumerate(x):
            if c is not BOTTOM and (out[k] is BOTTOM or lam + c > out[k]):
                out[k] = lam + c
    return tuple(out)


def key(parts):
    return frozenset(frozenset(p) for p in parts)


# ----------------------------------------------------------------- 1


def test_criterion_1_sierksma_bound_planar():
    rng = random.Random(1001)
    start = time.perf_counter()
    failures, done, draws, counts = [], 0, 0, {}
    while done < 100:
        X = rand_set(rng, 7, 2, bottom=0.1)
        draws += 1
        if not genericity_check(X).generic:
            continue
        res = sierksma_count(X, 3)
        counts[res.count] = counts.get(res.count, 0) + 1
        if res.count < 4:
            failures.append((X, res.count))
        for cert in res.partitions:
            if not cert.verify(X):
                failures.append((X, cert))
        done += 1
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    record(1, ok, f"100 generic 7-point sets in Rmax^2 ({draws} draws), counts {dict(sorted(counts.items()))}, "
                  f"{len(failures)} failures, {elapsed:.1f}s (limit 120s)")
    assert not failures
    assert elapsed < 120


# ----------------------------------------------------------------- 2


def test_criterion_2_sierksma_line():
    X = [(0,), (1,), (2,), (3,), (4,)]
    oracle = {key(parts) for parts, _ in enumerate_all_tverberg(X, 3)}
    expected = {key([(2,), (1, 3), (0, 4)]), key([(2,), (1, 4), (0, 3)])}
    res = sierksma_count(X, 3)
    found = {c.partition_key() for c in res.partitions}
    ok3 = oracle == expected and res.count >= 2 and expected <= found and all(c.verify(X) for c in res.partitions)

    Y = [(0,), (1,), (3,)]
    res2 = sierksma_count(Y, 2)
    oracle2 = {key(parts) for parts, _ in enumerate_all_tverberg(Y, 2)}
    found2 = {c.partition_key() for c in res2.partitions}
    ok2 = res2.count >= 1 and found2 <= oracle2 and all(c.verify(Y) for c in res2.partitions)
    record(2, ok3 and ok2, f"q=3: oracle {len(oracle)} partitions, pipeline {res.count} (both found: {expected <= found}); "
                           f"q=2: pipeline {res2.count}, oracle {len(oracle2)}")
    assert oracle == expected
    assert res.count >= 2 and expected <= found
    assert ok2


# ----------------------------------------------------------------- 3


def test_criterion_3_radon_totality():
    rng = random.Random(1003)
    start = time.perf_counter()
    failures, checked = [], 0
    for k in range(500):
        d = 1 + k % 3
        X = rand_set(rng, d + 2, d, bottom=0.1, lo=-30, hi=30)
        cert = radon(X)
        if not cert.verify(X):
            failures.append(X)
            continue
        if d <= 2 and cert.S and cert.T:
            checked += 1
            if tropical_system_feasible([cert.S, cert.T], X) is None:
                failures.append(X)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(3, ok, f"500 Radon instances (d<=3), {checked} oracle-confirmed, {len(failures)} failures, {elapsed:.1f}s (limit 60s)")
    assert not failures
    assert elapsed < 60


# ----------------------------------------------------------------- 4


def test_criterion_4_tverberg_totality():
    rng = random.Random(1004)
    start = time.perf_counter()
    failures, radon_checked = [], 0
    cases = [(1, 2), (1, 3), (2, 2), (2, 3)]
    for k in range(100):
        d, q = cases[k % 4]
        X = rand_set(rng, (d + 1) * (q - 1) + 1, d, bottom=0.1)
        cert = tverberg(X, q)
        if not cert.verify(X) or tropical_system_feasible(cert.parts, X) is None:
            failures.append((X, q))
            continue
        if q == 2:
            S, T = cert.parts
            as_radon = RadonCertificate(S, T, cert.lambdas, cert.common)
            if not (as_radon.verify(X) and radon(X).verify(X)):
                failures.append((X, q))
            radon_checked += 1
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    record(4, ok, f"100 Tverberg instances over (d,q) in {cases}, {radon_checked} q=2 cases checked as Radon, "
                  f"{len(failures)} failures, {elapsed:.1f}s (limit 300s)")
    assert not failures
    assert elapsed < 300


# ----------------------------------------------------------------- 5


def test_criterion_5_tightness():
    rng = random.Random(1005)
    nonempty, done = [], {}
    for d, q in [(1, 3), (2, 2)]:
        n = (d + 1) * (q - 1)
        done[(d, q)] = 0
        while done[(d, q)] < 50:
            X = rand_set(rng, n, d, lo=-100, hi=100)
            if not genericity_check(X).generic:
                continue
            if enumerate_all_tverberg(X, q):
                nonempty.append((X, q))
            done[(d, q)] += 1
    record(5, not nonempty, f"50 generic instances each for (d,q) in {list(done)} with (d+1)(q-1) points, "
                            f"{len(nonempty)} with a partition")
    assert not nonempty


# ----------------------------------------------------------------- 6


def class_around(rng, p, size, bottom=0.15):
    """Points whose hull contains ``p``: shifted copies dominated by ``p`` plus free extras."""
    d = len(p)
    core = max(1, size - rng.randint(0, 2))
    pts, lams = [], []
    zero = rng.randrange(core)
    for i in range(core):
        s = F(0) if i == zero else F(rng.randint(0, 6), rng.choice((1, 2)))
        x = []
        for k in range(d):
            if p[k] is BOTTOM or rng.random() < bottom:
                x.append(BOTTOM)
            else:
                x.append(p[k] - F(rng.randint(0, 4)) + s)
        if all(c is BOTTOM for c in x):
            k = next(k for k in range(d) if p[k] is not BOTTOM)
            x[k] = p[k] - F(rng.randint(0, 4)) + s
        pts.append(x)
        lams.append(-s)
    # make sure every coordinate of p is attained, with coefficients kept
    for k in range(d):
        if p[k] is not BOTTOM:
            i = rng.randrange(core)
            pts[i][k] = p[k] - lams[i]
    pts = [tuple(x) for x in pts]
    pts += [tuple(rat(rng, -20, 20) for _ in range(d)) for _ in range(size - core)]
    rng.shuffle(pts)
    return pts


def test_criterion_6_colorful():
    rng = random.Random(1006)
    failures = []
    for k in range(200):
        d = 1 + k % 3
        p = tuple(BOTTOM if rng.random() < 0.1 else rat(rng, -10, 10) for _ in range(d))
        if all(c is BOTTOM for c in p):
            p = (F(0),) + p[1:]
        classes = [class_around(rng, p, rng.randint(1, 4)) for _ in range(d + 1)]
        t = colorful(ColorfulInstance(classes, p))
        chosen = [classes[i][t.picks[i]] for i in range(d + 1)]
        if max(t.lambdas) != 0 or combine_exact(chosen, t.lambdas) != p:
            failures.append(("colorful", p, classes))
    gen_ok = 0
    for k in range(50):
        d = 1 + k % 2
        C = rand_set(rng, rng.randint(2, 4), d, lo=-10, hi=10)
        witnesses, classes = [], []
        for _ in range(d + 1):
            lam = [F(-rng.randint(0, 5)) for _ in C]
            lam[rng.randrange(len(C))] = F(0)
            b = combine_exact(C, lam)
            witnesses.append(b)
            classes.append(class_around(rng, b, rng.randint(1, 4)))
        t = generalized_colorful(classes, C, witnesses)
        chosen = [classes[i][t.picks[i]] for i in range(d + 1)]
        valid = (max(lam for lam in t.lambdas if lam is not BOTTOM) == 0
                 and combine_exact(chosen, t.lambdas) == t.point
                 and membership(t.point, C) is not None
                 and membership_oracle(t.point, C) is not None)
        if valid:
            gen_ok += 1
        else:
            failures.append(("generalized", C, classes, witnesses))
    record(6, not failures, f"200 colorful instances (d<=3) and 50 generalized instances (d<=2), "
                            f"{gen_ok} generalized verified, {len(failures)} failures")
    assert not failures


# ----------------------------------------------------------------- 7


def test_criterion_7_column_offsets():
    rng = random.Random(1007)
    failures = []
    for _ in range(200):
        n = rng.randint(1, 4)
        m = rng.randint(n, 6)
        A = [[BOTTOM if rng.random() < 0.2 else rat(rng, -6, 6) for _ in range(m)] for _ in range(n)]
        for row in A:
            if all(a is BOTTOM for a in row):
                row[rng.randrange(m)] = rat(rng, -6, 6)
        lams, assign = column_offsets(A)
        attained = True
        for r, row in enumerate(A):
            vals = [BOTTOM if lam is BOTTOM or a is BOTTOM else lam + a for lam, a in zip(lams, row)]
            top = max(vals)
            if vals[assign[r]] != top:
                attained = False
        brute = feasible_assignments(A)
        if not (attained and len(set(assign)) == n and max(lams) == 0 and assign in brute):
            failures.append(A)
    record(7, not failures, f"200 matrices (n<=4, m<=6, 20% bottom) against brute force, {len(failures)} failures")
    assert not failures


# ----------------------------------------------------------------- 8


def canonical(neigh, nw):
    """Relabelling-invariant key of a bipartite graph given by point neighbourhoods.

    Returns the key and, for each point, its position in the canonical order.
    """
    best = None
    for perm in itertools.permutations(range(nw)):
        mapped = [tuple(sorted(perm[w] for w in nb)) for nb in neigh]
        order = sorted(range(len(neigh)), key=lambda u: mapped[u])
        k = tuple(mapped[u] for u in order)
        if best is None or k < best[0]:
            best = (k, {u: pos for pos, u in enumerate(order)})
    return best


def test_criterion_8_equal_neighbourhood_count():
    cache: dict = {}
    failures, graphs = [], 0
    for q in (1, 2, 3):
        for nw in (1, 2):
            subsets = [s for r in range(1, nw + 1) for s in itertools.combinations(range(nw), r)]
            for nu in range((q - 1) * nw + 1, 7):
                for neigh in itertools.product(subsets, repeat=nu):
                    if {w for nb in neigh for w in nb} != set(range(nw)):
                        continue
                    graphs += 1
                    G = BipartiteGraph(nw, nu, tuple((w, u) for u, nb in enumerate(neigh) for w in nb))
                    res = partition_with_equal_neighborhoods(G, q)
                    ck, pos = canonical(neigh, nw)
                    if (q, ck) not in cache:
                        adj = {u: set(nb) for u, nb in enumerate(ck)}
                        cache[(q, ck)] = equal_neighbourhood_families(adj, frozenset(range(nw)), list(range(nu)), q)
                    brute = cache[(q, ck)]
                    mapped = {frozenset(frozenset(pos[u] for u in part) for part in fam) for fam in res.families}
                    bound = math.factorial(q - 1) ** (len(res.neighborhood) - 1)
                    if len(mapped) < bound or len(mapped) != len(res.families) or not mapped <= brute:
                        failures.append((q, neigh))
    record(8, not failures, f"{graphs} labelled graphs (|U|<=6, |W|<=2, q<=3), {len(cache)} brute-force classes, "
                            f"{len(failures)} failures")
    assert not failures
