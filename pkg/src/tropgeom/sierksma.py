"""Counting max-plus Tverberg partitions through a coincidence graph.

Bipartite graphs follow the package convention: the left side ``W`` holds
coordinates and the right side ``U`` holds point indices.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bipartite import BipartiteGraph, semi_matching
from .certificates import TverbergCertificate
from .maxplus import BOTTOM, PointSet, as_pointset, lift
from .tverberg import tverberg, tverberg_conic

GENERICITY_CAP = 4


class ConditionViolation(ValueError):
    """Some nonempty ``Y`` of coordinates has too few neighbouring points."""

    def __init__(self, message: str, Y: frozenset):
        super().__init__(message)
        self.Y = Y


class NonGenericError(ValueError):
    pass


class PerturbationFailed(RuntimeError):
    pass


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class CoincidenceGraph:
    graph: BipartiteGraph
    certificate: TverbergCertificate
    isolated: tuple = ()

    @property
    def W(self) -> range:
        return range(self.graph.n_left)

    @property
    def U(self) -> range:
        return range(self.graph.n_right)


def coincidence_graph(X, certificate: TverbergCertificate) -> CoincidenceGraph:
    """Edge ``(j, i)`` whenever coordinate ``j`` of ``lambda_i + x_i`` equals the common point's.

    Convex certificates are read on lifted points, so ``W`` has ``d + 1``
    coordinates.
    """
    X = as_pointset(X)
    if not certificate.verify(X):
        raise ValueError("certificate does not verify against these points")
    if certificate.mode == "convex":
        X, cert = lift(X), certificate.lifted()
    else:
        cert = certificate
    edges = []
    for i, x in enumerate(X):
        lam = cert.lambdas[i]
        if lam is BOTTOM:
            continue
        for j, c in enumerate(x):
            if c is not BOTTOM and lam + c == cert.common[j]:
                edges.append((j, i))
    G = BipartiteGraph(X.dim, len(X), tuple(edges))
    adj = G.adjacency("right")
    for part in cert.parts:
        covered = {j for i in part for j in adj[i]}
        finite = {j for j, c in enumerate(cert.common) if c is not BOTTOM}
        if covered != finite:
            raise AssertionError(f"part {part} does not cover every finite coordinate")
    isolated = tuple(i for i in range(len(X)) if not adj[i])
    return CoincidenceGraph(G, certificate, isolated)


def _adjacency(G: BipartiteGraph) -> dict:
    adj: dict = {u: set() for u in range(G.n_right)}
    for w, u in G.edges:
        adj[u].add(w)
    return adj


def _nbhd(adj: dict, X, W) -> frozenset:
    return frozenset(w for u in X for w in adj[u] if w in W)


# ------------------------------------------------ equal-neighbourhood subsets


@dataclass(frozen=True)
class EqualNeighborhoods:
    """Subsets ``U_1..U_q`` sharing the neighbourhood ``neighborhood``.

    ``families`` are all distinct unordered outputs of the construction,
    ``ordered_count`` the number of ordered runs, and ``bound`` the
    guaranteed minimum number of distinct unordered families.
    """

    parts: tuple
    neighborhood: frozenset
    families: tuple
    ordered_count: int
    bound: int


def _construct(adj: dict, q: int, U: Sequence[int], W: frozenset) -> tuple[frozenset, list]:
    """All ordered runs of the construction on the subgraph induced by ``U`` and ``W``."""
    U = sorted(U)
    if q == 1:
        return _nbhd(adj, U, W), [(frozenset(U),)]
    # a small subset with too many points for its neighbourhood is handled first
    for size in range(1, len(U)):
        for X in itertools.combinations(U, size):
            NX = _nbhd(adj, X, W)
            if size >= (q - 1) * len(NX) + 1:
                return _construct(adj, q, X, NX)
    Wl = sorted(W)
    if len(U) != (q - 1) * len(Wl) + 1:
        raise AssertionError("reduced graph must have exactly (q-1)|W|+1 points")
    Uprime = U[: (q - 1) * len(Wl)]
    rest = frozenset(U) - frozenset(Uprime)
    wi = {w: k for k, w in enumerate(Wl)}
    ui = {u: k for k, u in enumerate(U)}
    local = BipartiteGraph(len(Wl), len(U), tuple((wi[w], ui[u]) for u in U for w in adj[u] if w in W))
    F = semi_matching(local, q, right=[ui[u] for u in Uprime])
    Y = {w: tuple(U[k] for k in F.neighbors_of(wi[w])) for w in Wl}
    # order so that each w already touches a vertex placed earlier
    order: list = []
    placed = set(rest)
    todo = list(Wl)
    while todo:
        w = next((w for w in todo if any(w in adj[u] for u in placed)), None)
        if w is None:
            raise AssertionError("no admissible processing order; Hall condition failed")
        order.append(w)
        todo.remove(w)
        placed.update(Y[w])

    runs: list = []

    def rec(step, parts):
        if step == len(order):
            runs.append(tuple(frozenset(p) for p in parts))
            return
        w = order[step]
        jstar = next(j for j, p in enumerate(parts) if any(w in adj[u] for u in p))
        others = [j for j in range(q) if j != jstar]
        for perm in itertools.permutations(Y[w]):
            new = [set(p) for p in parts]
            for j, u in zip(others, perm):
                new[j].add(u)
            rec(step + 1, new)

    w1 = order[0]
    for home in range(q):
        others = [j for j in range(q) if j != home]
        for perm in itertools.permutations(Y[w1]):
            parts = [set() for _ in range(q)]
            parts[home].update(rest)
            for j, u in zip(others, perm):
                parts[j].add(u)
            rec(1, parts)
    for run in runs:
        for p in run:
            if _nbhd(adj, p, W) != W:
                raise AssertionError("construction produced a part with a smaller neighbourhood")
    return W, runs


def _unordered(runs) -> list:
    seen: dict = {}
    for run in runs:
        key = frozenset(run)
        if key not in seen:
            seen[key] = run
    return list(seen.values())


def partition_with_equal_neighborhoods(G: BipartiteGraph, q: int) -> EqualNeighborhoods:
    """``q`` disjoint point subsets with one common neighbourhood, by the inductive construction."""
    if q < 1:
        raise ValueError("q must be positive")
    adj = _adjacency(G)
    W = frozenset(range(G.n_left))
    U = list(range(G.n_right))
    if any(not adj[u] for u in U) or any(not any(w in adj[u] for u in U) for w in W):
        raise ValueError("graph has isolated vertices")
    if len(U) < (q - 1) * len(W) + 1:
        raise ValueError(f"need at least {(q - 1) * len(W) + 1} points, got {len(U)}")
    N, runs = _construct(adj, q, U, W)
    fams = _unordered(runs)
    bound = math.factorial(q - 1) ** (len(N) - 1) if N else 1
    if len(fams) < bound:
        raise AssertionError(f"only {len(fams)} distinct families, bound {bound}")
    return EqualNeighborhoods(runs[0], N, tuple(fams), len(runs), bound)


# ------------------------------------------------------------ full partition


@dataclass(frozen=True)
class FullPartition:
    parts: tuple
    partitions: tuple
    bound: int
    rounds: tuple = ()


def condition_star(G: BipartiteGraph, q: int) -> frozenset | None:
    """First nonempty ``Y`` (by size, then lexicographically) with ``|N(Y)| < (q-1)|Y| + 1``."""
    adj = G.adjacency("left")
    for size in range(1, G.n_left + 1):
        for Y in itertools.combinations(range(G.n_left), size):
            if len({u for w in Y for u in adj[w]}) < (q - 1) * size + 1:
                return frozenset(Y)
    return None


def full_partition(G: BipartiteGraph, q: int) -> FullPartition:
    """Partition all points into ``q`` parts, each seeing every coordinate.

    The construction is repeated on the coordinates not yet covered; points
    left over at the end join the first part.
    """
    if q < 1:
        raise ValueError("q must be positive")
    bad = condition_star(G, q)
    if bad is not None:
        raise ConditionViolation(f"coordinates {sorted(bad)} have too few neighbouring points", bad)
    adj = _adjacency(G)
    U = set(range(G.n_right))
    W = frozenset(range(G.n_left))
    rounds = []
    remaining_W, remaining_U = W, set(U)
    while remaining_W:
        active = [u for u in sorted(remaining_U) if adj[u] & remaining_W]
        N, runs = _construct(adj, q, active, remaining_W)
        rounds.append((N, runs))
        used = set().union(*runs[0])
        remaining_W = remaining_W - N
        remaining_U -= used
    leftovers = frozenset(remaining_U)
    seen: dict = {}
    for combo in itertools.product(*(runs for _, runs in rounds)):
        parts = [set() for _ in range(q)]
        for run in combo:
            for j, p in enumerate(run):
                parts[j] |= p
        parts[0] |= leftovers
        key = frozenset(frozenset(p) for p in parts)
        if key not in seen:
            seen[key] = tuple(frozenset(p) for p in parts)
    partitions = tuple(seen.values())
    for parts in partitions:
        for p in parts:
            if _nbhd(adj, p, W) != W:
                raise AssertionError("full partition part misses a coordinate")
    bound = math.factorial(q - 1) ** (len(W) - 1) if W else 1
    if len(partitions) < bound:
        raise AssertionError(f"only {len(partitions)} distinct partitions, bound {bound}")
    return FullPartition(partitions[0], partitions, bound, tuple(N for N, _ in rounds))


# --------------------------------------------------------------- genericity


@dataclass(frozen=True)
class GenericityReport:
    """``cycle`` lists ``(point, coordinate)`` pairs; ``sums`` are the two equal totals."""

    generic: bool
    cycle: tuple | None = None
    sums: tuple | None = None
    cap: int = GENERICITY_CAP

    def __bool__(self):
        return self.generic


def genericity_check(X, mode: str = "convex", cap: int = GENERICITY_CAP) -> GenericityReport:
    """Look for an equal-sum cycle of coincidences among at most ``cap`` points.

    A cycle visits distinct points ``i_1..i_m`` with coordinates ``j_1..j_m``
    (cyclically adjacent ones distinct); it is an obstruction when
    ``sum x[i_k][j_k] == sum x[i_k][j_{k-1}]``.  Two points sharing a bottom
    coordinate are reported too, since nothing rules that coincidence out.
    Convex mode checks the lifted points.
    """
    X = as_pointset(X)
    if mode == "convex":
        X = lift(X)
    elif mode != "conic":
        raise ValueError(f"unknown mode {mode!r}")
    n, D = len(X), X.dim
    for a, b in itertools.combinations(range(n), 2):
        for j in range(D):
            if X[a][j] is BOTTOM and X[b][j] is BOTTOM:
                return GenericityReport(False, ((a, j), (b, j)), (BOTTOM, BOTTOM), cap)
    for m in range(2, min(cap, n) + 1):
        for first in range(n):
            for rest in itertools.permutations(range(first + 1, n), m - 1):
                pts = (first,) + rest
                for js in itertools.product(range(D), repeat=m):
                    if any(js[k] == js[k - 1] for k in range(m)):
                        continue
                    lhs = [X[i][j] for i, j in zip(pts, js)]
                    rhs = [X[pts[k]][js[k - 1]] for k in range(m)]
                    if any(c is BOTTOM for c in lhs + rhs):
                        continue
                    if sum(lhs) == sum(rhs):
                        return GenericityReport(False, tuple(zip(pts, js)), (sum(lhs), sum(rhs)), cap)
    return GenericityReport(True, None, None, cap)


def perturb(X, seed: int = 0, mode: str = "convex", max_tries: int = 20, cap: int = GENERICITY_CAP) -> PointSet:
    """Deterministic tiny rational jitter on finite coordinates until the set checks generic.

    The jitter stays below a fraction of the smallest gap between distinct
    coordinate values, so strict order relations are kept.  Bottom entries
    are left alone; a coincidence of bottoms therefore cannot be removed.
    """
    X = as_pointset(X)
    report = genericity_check(X, mode, cap)
    if not report.generic and report.sums == (BOTTOM, BOTTOM):
        raise PerturbationFailed(f"points share a bottom coordinate: {report.cycle}")
    values = sorted({c for x in X for c in x if c is not BOTTOM} | ({Fraction(0)} if mode == "convex" else set()))
    gaps = [b - a for a, b in zip(values, values[1:])]
    gap = min(gaps) if gaps else Fraction(1)
    rng = random.Random(seed)
    scale = gap / 4
    # a coarse grid keeps denominators small, which keeps the exponents
    # used by the Tverberg solver small; it is refined only on failure
    grid = 4
    for _ in range(max_tries):
        pts = tuple(
            tuple(c if c is BOTTOM else c + scale * Fraction(rng.randint(-grid, grid), grid) for c in x)
            for x in X
        )
        Y = PointSet(X.dim, pts)
        if genericity_check(Y, mode, cap).generic:
            return Y
        grid *= 2
    raise PerturbationFailed(f"no generic perturbation found in {max_tries} tries")


# ----------------------------------------------------------------- pipeline


@dataclass
class SierksmaResult:
    count: int
    partitions: list
    bound: int
    base: TverbergCertificate
    graph: CoincidenceGraph
    genericity: GenericityReport
    points: PointSet
    perturbed: bool = False
    construction: FullPartition | None = None
    notes: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.count, self.partitions))


def _regroupings(n: int, q: int):
    """Set partitions of ``range(n)`` into ``q`` nonempty blocks (restricted-growth order)."""
    def rec(i, labels, used):
        if n - i < q - used:
            return
        if i == n:
            if used == q:
                yield tuple(tuple(k for k in range(n) if labels[k] == b) for b in range(q))
            return
        for b in range(min(used + 1, q)):
            labels.append(b)
            yield from rec(i + 1, labels, max(used, b + 1))
            labels.pop()

    yield from rec(0, [], 0)


def sierksma_count(X, q: int, mode: str = "convex", allow_perturb: bool = False, seed: int = 0) -> SierksmaResult:
    """Certified lower bound on the number of Tverberg partitions sharing one Tverberg point.

    One certificate is computed, then every regrouping of the points whose
    parts all see every coordinate of the coincidence graph is re-certified
    with the same coefficients and common point.
    """
    X = as_pointset(X)
    D = X.dim + 1 if mode == "convex" else X.dim
    if len(X) != D * (q - 1) + 1:
        raise ValueError(f"need {D * (q - 1) + 1} points for q={q}, got {len(X)}")
    d = D - 1
    bound = math.factorial(q - 1) ** d
    report = genericity_check(X, mode)
    notes: list = []
    perturbed = False
    points = X
    while True:
        base = tverberg(points, q) if mode == "convex" else tverberg_conic(points, q)
        cg = coincidence_graph(points, base)
        bad = condition_star(cg.graph, q)
        if bad is None:
            break
        if report.generic:
            notes.append(f"anomaly: generic input but coordinates {sorted(bad)} violate the neighbourhood condition")
        if not allow_perturb or perturbed:
            raise NonGenericError(
                f"coincidence graph violates the neighbourhood condition at {sorted(bad)}; "
                "input is not generic (pass allow_perturb=True to jitter it)"
            )
        points = perturb(X, seed, mode)
        report = genericity_check(points, mode)
        perturbed = True
        notes.append(f"input perturbed with seed {seed}")
    construction = full_partition(cg.graph, q)
    adj = _adjacency(cg.graph)
    W = frozenset(range(cg.graph.n_left))
    certs = []
    keys = set()
    for parts in _regroupings(len(points), q):
        if all(_nbhd(adj, p, W) == W for p in parts):
            cert = TverbergCertificate(parts, base.lambdas, base.common, base.mode)
            if not cert.verify(points):
                raise AssertionError(f"regrouping {parts} failed to verify")
            certs.append(cert)
            keys.add(cert.partition_key())
    for parts in construction.partitions:
        if frozenset(parts) not in keys:
            raise AssertionError("constructed partition missing from the enumeration")
    if len(certs) < bound:
        raise AssertionError(f"count {len(certs)} below the bound {bound}")
    return SierksmaResult(len(certs), certs, bound, base, cg, report, points, perturbed, construction, notes)
