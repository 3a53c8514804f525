import math
import random
from fractions import Fraction

import pytest

from tropgeom.bipartite import BipartiteGraph
from tropgeom.certificates import TverbergCertificate
from tropgeom.maxplus import BOTTOM, PointSet
from tropgeom.sierksma import (
    ConditionViolation,
    NonGenericError,
    PerturbationFailed,
    coincidence_graph,
    condition_star,
    full_partition,
    genericity_check,
    partition_with_equal_neighborhoods,
    perturb,
    sierksma_count,
)

from _brute import equal_neighbourhood_families, partitions_with_full_neighbourhoods

F = Fraction


def complete(nw, nu):
    return BipartiteGraph(nw, nu, tuple((w, u) for w in range(nw) for u in range(nu)))


def adjacency(G):
    adj = {u: set() for u in range(G.n_right)}
    for w, u in G.edges:
        adj[u].add(w)
    return adj


def test_coincidence_graph_interval():
    X = [(0,), (1,), (2,), (3,), (4,)]
    cert = TverbergCertificate(((0, 3), (1, 4), (2,)), (0, 0, 0, -1, -2), (2,), "convex")
    assert cert.verify(X)
    cg = coincidence_graph(X, cert)
    adj = adjacency(cg.graph)
    # lifted coordinate 1 is attained by the points with lambda 0
    assert {u for u in adj if 1 in adj[u]} == {0, 1, 2}
    assert {u for u in adj if 0 in adj[u]} == {2, 3, 4}


def test_coincidence_graph_rejects_bad_certificate():
    bad = TverbergCertificate(((0,), (1,)), (0, 0), (0,), "convex")
    with pytest.raises(ValueError):
        coincidence_graph([(0,), (1,)], bad)


def test_single_coordinate_star():
    res = partition_with_equal_neighborhoods(complete(1, 3), 3)
    assert res.neighborhood == frozenset({0})
    assert res.bound == 1
    assert all(len(p) == 1 for p in res.parts)


def test_k52_bound_and_brute_force():
    G = complete(2, 5)
    res = partition_with_equal_neighborhoods(G, 3)
    assert res.bound == 2
    assert len(res.families) >= 2
    brute = equal_neighbourhood_families(adjacency(G), frozenset({0, 1}), list(range(5)), 3)
    assert {frozenset(f) for f in res.families} <= brute


def test_too_few_points():
    with pytest.raises(ValueError):
        partition_with_equal_neighborhoods(complete(2, 4), 3)


def test_condition_star_detects_violation():
    G = BipartiteGraph(2, 5, ((0, 0), (0, 1), (1, 1), (1, 2), (1, 3), (1, 4)))
    assert condition_star(G, 3) == frozenset({0})
    with pytest.raises(ConditionViolation) as err:
        full_partition(G, 3)
    assert err.value.Y == frozenset({0})


def test_full_partition_complete_graph():
    G = complete(2, 5)
    fp = full_partition(G, 3)
    brute = partitions_with_full_neighbourhoods(adjacency(G), frozenset({0, 1}), 5, 3)
    assert {frozenset(p) for p in fp.partitions} <= brute
    assert len(fp.partitions) >= fp.bound == 2


def test_full_partition_random_graphs():
    rng = random.Random(8)
    checked = 0
    for _ in range(300):
        nw, q = rng.randint(1, 3), rng.randint(2, 3)
        nu = (q - 1) * nw + 1 + rng.randint(0, 1)
        edges = tuple((w, u) for w in range(nw) for u in range(nu) if rng.random() < 0.6)
        G = BipartiteGraph(nw, nu, edges)
        if condition_star(G, q) is not None:
            continue
        fp = full_partition(G, q)
        brute = partitions_with_full_neighbourhoods(adjacency(G), frozenset(range(nw)), nu, q)
        assert {frozenset(p) for p in fp.partitions} <= brute
        assert len(fp.partitions) >= math.factorial(q - 1) ** (nw - 1)
        checked += 1
    assert checked > 20


def test_genericity_examples():
    report = genericity_check([(0,), (1,), (2,), (3,)])
    assert not report.generic
    assert report.sums[0] == report.sums[1]
    assert genericity_check([(0,), (1,), (3,)]).generic
    # three points on a line leave no room for a four-point cycle
    assert genericity_check([(0,), (1,), (2,)]).generic
    assert not genericity_check([(1, 1), (1, 1), (0, 5)]).generic
    shared = genericity_check([(BOTTOM, 1), (BOTTOM, 2), (0, 0)])
    assert not shared.generic and shared.sums == (BOTTOM, BOTTOM)


def test_perturb_deterministic_and_generic():
    X = [(0,), (1,), (2,), (3,), (4,)]
    a = perturb(X, seed=3)
    b = perturb(X, seed=3)
    assert a == b
    assert genericity_check(a).generic
    for p, q in zip(a, PointSet.of(X)):
        assert abs(p[0] - q[0]) <= F(1, 4)
    assert [p[0] for p in a] == sorted(p[0] for p in a)


def test_perturb_separates_duplicates_and_keeps_bottoms():
    X = [(1, 1), (1, 1), (0, BOTTOM)]
    Y = perturb(X, seed=1)
    assert Y[0] != Y[1] and Y[2][1] is BOTTOM
    with pytest.raises(PerturbationFailed):
        perturb([(BOTTOM, 1), (BOTTOM, 2)])


def test_sierksma_interval_example():
    res = sierksma_count([(0,), (1,), (2,), (3,), (4,)], 3)
    count, partitions = res
    assert count == 2 and res.bound == 2
    keys = {c.partition_key() for c in partitions}
    assert frozenset({frozenset({0, 3}), frozenset({1, 4}), frozenset({2})}) in keys
    assert frozenset({frozenset({0, 4}), frozenset({1, 3}), frozenset({2})}) in keys
    assert all(c.common == res.base.common for c in partitions)


def test_sierksma_line_q2():
    res = sierksma_count([(0,), (5,), (F(3, 2),)], 2)
    assert res.count >= 1
    assert all(c.verify(res.points) for c in res.partitions)


def test_sierksma_random_planar():
    rng = random.Random(9)
    done = 0
    while done < 3:
        X = [(F(rng.randint(-1000, 1000)), F(rng.randint(-1000, 1000))) for _ in range(7)]
        if not genericity_check(X).generic:
            continue
        res = sierksma_count(X, 3)
        assert res.count >= 4
        assert all(c.verify(X) for c in res.partitions)
        done += 1


def test_non_generic_raises_unless_perturbed():
    X = [(0, 0)] * 7
    with pytest.raises(NonGenericError):
        sierksma_count(X, 3)
    res = sierksma_count(X, 3, allow_perturb=True, seed=4)
    assert res.perturbed and res.count >= 4
    assert all(c.verify(res.points) for c in res.partitions)


def test_equal_neighbourhood_count_larger_graphs():
    rng = random.Random(10)
    checked = 0
    while checked < 60:
        nw, q = rng.randint(1, 3), rng.randint(2, 3)
        if (q - 1) * nw + 1 > 7:
            continue
        nu = rng.randint((q - 1) * nw + 1, 7)
        neigh = [frozenset(w for w in range(nw) if rng.random() < 0.5) for _ in range(nu)]
        if any(not nb for nb in neigh) or set().union(*neigh) != set(range(nw)):
            continue
        G = BipartiteGraph(nw, nu, tuple((w, u) for u, nb in enumerate(neigh) for w in nb))
        res = partition_with_equal_neighborhoods(G, q)
        brute = equal_neighbourhood_families(dict(enumerate(neigh)), frozenset(range(nw)), list(range(nu)), q)
        assert {frozenset(f) for f in res.families} <= brute
        assert len(res.families) >= math.factorial(q - 1) ** (len(res.neighborhood) - 1)
        checked += 1
