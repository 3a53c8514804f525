"""Bipartite matching machinery with exact rational weights.

Vertices on each side are ``0..n-1``.  By convention the *left* side holds
rows / coordinates and the *right* side holds columns / points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

Side = Literal["left", "right"]


class HallViolation(ValueError):
    """No matching saturates the requested side; ``violator`` proves it."""

    def __init__(self, message: str, violator: frozenset, side: str):
        super().__init__(message)
        self.violator = violator
        self.side = side


@dataclass(frozen=True)
class BipartiteGraph:
    n_left: int
    n_right: int
    edges: tuple
    weights: tuple | None = None

    def __post_init__(self):
        edges = tuple((int(w), int(u)) for w, u in self.edges)
        for w, u in edges:
            if not (0 <= w < self.n_left and 0 <= u < self.n_right):
                raise ValueError(f"edge {(w, u)} references a missing vertex")
        object.__setattr__(self, "edges", edges)
        if self.weights is not None:
            ws = tuple(Fraction(x) for x in self.weights)
            if len(ws) != len(edges):
                raise ValueError("one weight per edge required")
            object.__setattr__(self, "weights", ws)

    @classmethod
    def from_neighbors(cls, n_left: int, n_right: int, right_neighbors: Iterable[Iterable[int]]) -> "BipartiteGraph":
        """Build from, for each right vertex, the left vertices it touches."""
        edges = [(w, u) for u, nbrs in enumerate(right_neighbors) for w in sorted(set(nbrs))]
        return cls(n_left, n_right, tuple(edges))

    def adjacency(self, side: Side = "left") -> list[list[int]]:
        n = self.n_left if side == "left" else self.n_right
        adj: list[list[int]] = [[] for _ in range(n)]
        for w, u in self.edges:
            if side == "left":
                if u not in adj[w]:
                    adj[w].append(u)
            elif w not in adj[u]:
                adj[u].append(w)
        for a in adj:
            a.sort()
        return adj

    def neighborhood(self, vertices: Iterable[int], side: Side = "left") -> frozenset:
        adj = self.adjacency(side)
        return frozenset(x for v in vertices for x in adj[v])

    def flipped(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n_right, self.n_left, tuple((u, w) for w, u in self.edges), self.weights)


def _kuhn(adj: list[list[int]], n_other: int) -> tuple[list, list]:
    """Augmenting-path maximum matching; deterministic in vertex order."""
    match_a: list = [None] * len(adj)
    match_b: list = [None] * n_other

    def augment(a: int, seen: list) -> bool:
        for b in adj[a]:
            if seen[b]:
                continue
            seen[b] = True
            if match_b[b] is None or augment(match_b[b], seen):
                match_a[a] = b
                match_b[b] = a
                return True
        return False

    for a in range(len(adj)):
        augment(a, [False] * n_other)
    return match_a, match_b


def max_matching(G: BipartiteGraph) -> dict[int, int]:
    """Maximum-cardinality matching as a ``left -> right`` dict."""
    match_l, _ = _kuhn(G.adjacency("left"), G.n_right)
    return {w: u for w, u in enumerate(match_l) if u is not None}


def hall_violator(G: BipartiteGraph, side: Side = "left") -> frozenset | None:
    """Subset X of ``side`` with ``|N(X)| < |X|``, or None if ``side`` is matchable.

    X is the set of ``side`` vertices reachable by alternating paths from the
    vertices left unsaturated by a maximum matching.
    """
    adj = G.adjacency(side)
    n_other = G.n_right if side == "left" else G.n_left
    match_a, match_b = _kuhn(adj, n_other)
    start = [a for a, b in enumerate(match_a) if b is None]
    if not start:
        return None
    reached = set(start)
    stack = list(start)
    seen_b = set()
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b in seen_b:
                continue
            seen_b.add(b)
            nxt = match_b[b]
            # b is saturated, otherwise the matching would not be maximum
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    return frozenset(reached)


@dataclass(frozen=True)
class Assignment:
    pairs: dict
    left_duals: tuple
    right_duals: tuple
    total: Fraction

    def check(self, G: BipartiteGraph) -> bool:
        """Exact dual feasibility and complementary slackness."""
        w = _best_weights(G)
        for (a, b), wt in w.items():
            if self.left_duals[a] + self.right_duals[b] < wt:
                return False
        for a, b in self.pairs.items():
            if self.left_duals[a] + self.right_duals[b] != w[(a, b)]:
                return False
        return sum((w[(a, b)] for a, b in self.pairs.items()), Fraction(0)) == self.total


def _best_weights(G: BipartiteGraph) -> dict:
    if G.weights is None:
        raise ValueError("graph has no weights")
    best: dict = {}
    for (a, b), wt in zip(G.edges, G.weights):
        if (a, b) not in best or wt > best[(a, b)]:
            best[(a, b)] = wt
    return best


def max_weight_assignment(G: BipartiteGraph) -> Assignment:
    """Maximum-weight matching saturating the left side, with exact duals.

    The returned potentials satisfy ``y_w + y_u >= weight(w, u)`` on every
    edge, with equality on assigned edges.
    """
    weights = _best_weights(G)
    violator = hall_violator(G, "left")
    if violator is not None:
        raise HallViolation("no matching saturates the left side", violator, "left")
    n, m = G.n_left, G.n_right
    if n == 0:
        return Assignment({}, (), tuple(Fraction(0) for _ in range(m)), Fraction(0))
    # Hungarian method on cost = -weight, rows 1..n, columns 1..m (index 0 is virtual)
    cost = [[None] * (m + 1) for _ in range(n + 1)]
    for (a, b), wt in weights.items():
        cost[a + 1][b + 1] = -wt
    zero = Fraction(0)
    u = [zero] * (n + 1)
    v = [zero] * (m + 1)
    p = [0] * (m + 1)
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv: list = [None] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = None
            j1 = None
            for j in range(1, m + 1):
                if used[j]:
                    continue
                c = cost[i0][j]
                if c is not None:
                    cur = c - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta = minv[j]
                    j1 = j
            if j1 is None:
                raise HallViolation("no augmenting path", frozenset(), "left")
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    pairs = {p[j] - 1: j - 1 for j in range(1, m + 1) if p[j] != 0}
    # weight(a,b) <= -u_a - v_b with equality on the assignment
    left = tuple(-u[i] for i in range(1, n + 1))
    right = tuple(-v[j] for j in range(1, m + 1))
    total = sum((weights[(a, b)] for a, b in pairs.items()), Fraction(0))
    result = Assignment(dict(sorted(pairs.items())), left, right, total)
    assert result.check(G), "assignment duals failed the slackness check"
    return result


@dataclass(frozen=True)
class SemiMatching:
    edges: tuple
    q: int

    def degrees(self) -> tuple[dict, dict]:
        dl: dict = {}
        dr: dict = {}
        for w, u in self.edges:
            dl[w] = dl.get(w, 0) + 1
            dr[u] = dr.get(u, 0) + 1
        return dl, dr

    def neighbors_of(self, w: int) -> tuple:
        return tuple(u for a, u in self.edges if a == w)


def semi_matching(G: BipartiteGraph, q: int, right: Iterable[int] | None = None) -> SemiMatching:
    """Edge set F with ``deg_F(w) = q - 1`` on the left and ``<= 1`` on the right.

    Each left vertex is copied ``q - 1`` times and an ordinary matching is
    found.  ``right`` optionally restricts the usable right vertices.
    """
    if q < 1:
        raise ValueError("q must be positive")
    allowed = None if right is None else set(right)
    edges = [(w, u) for w, u in G.edges if allowed is None or u in allowed]
    k = q - 1
    copies = BipartiteGraph(G.n_left * k, G.n_right, tuple((w * k + c, u) for w, u in edges for c in range(k)))
    violator = hall_violator(copies, "left")
    if violator is not None:
        orig = frozenset(x // k for x in violator)
        raise HallViolation(f"left vertices {sorted(orig)} cannot each get {k} private neighbours", orig, "left")
    match = max_matching(copies)
    F = tuple(sorted((c // k, u) for c, u in match.items()))
    return SemiMatching(F, q)
