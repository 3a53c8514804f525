"""Brute-force ground truth for small instances.

Nothing here calls the constructive modules: points are read as plain
tuples, maxima are recomputed locally and every decision comes from an
exhaustive search over attainment patterns.  Each pattern turns the max-plus
equalities into difference constraints, which are decided exactly by
negative-cycle detection.  Instances above the hard caps are refused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .maxplus import BOTTOM

PATTERN_CAP = 10 ** 6
MAX_POINTS = 9
MAX_DIM = 2
MAX_Q = 3


class OracleRefused(ValueError):
    """Instance is above the hard cap; the oracle never approximates."""


@dataclass(frozen=True)
class AttainmentPattern:
    """``choice[k]`` holds one attaining index per side, or None when coordinate ``k`` is bottom."""

    choice: tuple


@dataclass(frozen=True)
class OracleWitness:
    lambdas: tuple
    common: tuple
    pattern: AttainmentPattern


def _rows(X) -> list:
    pts = X.points if hasattr(X, "points") else X
    return [tuple(c if c is BOTTOM else Fraction(c) for c in x) for x in pts]


def _side_max(rows, side, lambdas, dim) -> tuple:
    out = [BOTTOM] * dim
    for i in side:
        if lambdas[i] is BOTTOM:
            continue
        for k in range(dim):
            c = rows[i][k]
            if c is not BOTTOM and (out[k] is BOTTOM or lambdas[i] + c > out[k]):
                out[k] = lambdas[i] + c
    return tuple(out)


def _bellman_ford(n_vars: int, edges: list) -> list | None:
    """Potentials with ``v_b - v_a <= w`` for every ``(a, b, w)``, or None on a negative cycle."""
    dist = [0] * n_vars
    for _ in range(n_vars + 1):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return dist
    return None


def _attainers(sides, rows, k):
    def rec(s, acc):
        if s == len(sides):
            yield tuple(acc)
            return
        for i in sides[s]:
            if rows[i][k] is not BOTTOM:
                acc.append(i)
                yield from rec(s + 1, acc)
                acc.pop()

    yield from rec(0, [])


def _search(sides: list, rows: list, dim: int, target=None):
    """Lambdas giving every side the same maximum (equal to ``target`` if given).

    Returns ``(lambdas, pattern)`` or None after exhausting all patterns.
    """
    # integer data keeps the constraint solver on plain ints
    L = 1
    for r in list(rows) + ([target] if target is not None else []):
        for c in r:
            if c is not BOTTOM:
                L = L * c.denominator // math.gcd(L, c.denominator)
    rows = [tuple(c if c is BOTTOM else int(c * L) for c in r) for r in rows]
    if target is not None:
        target = tuple(c if c is BOTTOM else int(c * L) for c in target)
    idx = sorted({i for s in sides for i in s})
    var = {i: t for t, i in enumerate(idx)}
    n_lam = len(idx)
    ref = n_lam + dim  # vertex pinned to 0, anchors a fixed target
    n_vars = ref + 1

    per_coord = 1
    for s in sides:
        per_coord *= len(s)
    size = (per_coord + 1) ** dim
    if size > PATTERN_CAP:
        raise OracleRefused(f"pattern space {size} exceeds cap {PATTERN_CAP}")

    choice: list = []
    dead: set = set()

    def constraints():
        edges = []
        for k, ch in enumerate(choice):
            if ch is None:
                continue
            yk = n_lam + k
            for side in sides:
                for i in side:
                    if i not in dead and rows[i][k] is not BOTTOM:
                        edges.append((yk, var[i], -rows[i][k]))
            for a in ch:
                edges.append((var[a], yk, rows[a][k]))
            if target is not None:
                edges.append((ref, yk, target[k]))
                edges.append((yk, ref, -target[k]))
        return edges

    def consistent():
        if any(all(i in dead for i in side) for side in sides):
            return False
        if any(a in dead for ch in choice if ch is not None for a in ch):
            return False
        return _bellman_ford(n_vars, constraints()) is not None

    def options(k):
        if target is None or target[k] is BOTTOM:
            yield None
        if target is None or target[k] is not BOTTOM:
            yield from _attainers(sides, rows, k)

    def go(k):
        if k == dim:
            return _bellman_ford(n_vars, constraints()), set(dead), AttainmentPattern(tuple(choice))
        for ch in options(k):
            added = []
            if ch is None:
                for side in sides:
                    for i in side:
                        if rows[i][k] is not BOTTOM and i not in dead:
                            dead.add(i)
                            added.append(i)
            choice.append(ch)
            res = go(k + 1) if consistent() else None
            choice.pop()
            dead.difference_update(added)
            if res is not None:
                return res
        return None

    found = go(0)
    if found is None:
        return None
    dist, dead_set, pattern = found
    base = dist[ref] if target is not None else 0
    lambdas = [BOTTOM] * len(rows)
    for i in idx:
        if i not in dead_set:
            lambdas[i] = Fraction(dist[var[i]] - base, L)
    return lambdas, pattern


def _check_sides(sides, n) -> list:
    sides = [tuple(sorted(set(s))) for s in sides]
    seen: set = set()
    for s in sides:
        if not s:
            raise ValueError("sides must be nonempty")
        for i in s:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range")
            if i in seen:
                raise ValueError("sides must be pairwise disjoint")
            seen.add(i)
    return sides


def tropical_system_feasible(sides: Sequence, X, mode: str = "convex") -> OracleWitness | None:
    """Decide whether some lambdas make all sides combine to one point.

    Convex mode also asks for ``max lambda == 0`` on every side.
    """
    rows = _rows(X)
    if not rows:
        raise ValueError("empty point set")
    sides = _check_sides(sides, len(rows))
    dim = len(rows[0])
    if mode == "convex":
        work = [r + (Fraction(0),) for r in rows]
    elif mode == "conic":
        work = rows
    else:
        raise ValueError(f"unknown mode {mode!r}")
    wdim = len(work[0])
    found = _search(sides, work, wdim)
    if found is None:
        return None
    lambdas, pattern = found
    # conic answers are shift invariant; normalise them the same way
    top = max(lam for lam in lambdas if lam is not BOTTOM)
    lambdas = [lam if lam is BOTTOM else lam - top for lam in lambdas]
    common = _side_max(work, sides[0], lambdas, wdim)
    for s in sides:
        assert _side_max(work, s, lambdas, wdim) == common, "oracle witness does not balance"
        if mode == "convex":
            assert max(lambdas[i] for i in s if lambdas[i] is not BOTTOM) == 0
    return OracleWitness(tuple(lambdas), common[:dim], pattern)


def membership_oracle(p: Sequence, X, mode: str = "convex") -> tuple | None:
    """Lambdas with ``max_i (lambda_i + x_i) == p``, found by pattern search, or None."""
    rows = _rows(X)
    if not rows:
        raise ValueError("empty point set")
    target = tuple(c if c is BOTTOM else Fraction(c) for c in p)
    if mode == "convex":
        rows = [r + (Fraction(0),) for r in rows]
        target = target + (Fraction(0),)
    elif mode != "conic":
        raise ValueError(f"unknown mode {mode!r}")
    if all(c is BOTTOM for c in target):
        # the empty conic combination
        return (BOTTOM,) * len(rows)
    found = _search([tuple(range(len(rows)))], rows, len(target), target)
    if found is None:
        return None
    lambdas = found[0]
    assert _side_max(rows, range(len(rows)), lambdas, len(target)) == target
    return tuple(lambdas)


def set_partitions(n: int, q: int):
    """All partitions of ``range(n)`` into ``q`` nonempty unordered blocks."""

    def rec(i, blocks):
        if i == n:
            if len(blocks) == q:
                yield tuple(tuple(b) for b in blocks)
            return
        if q - len(blocks) > n - i:
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < q:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def enumerate_all_tverberg(X, q: int, mode: str = "convex") -> list:
    """Every partition into ``q`` parts admitting a Tverberg witness, with one witness each."""
    rows = _rows(X)
    n = len(rows)
    dim = len(rows[0]) if rows else 0
    conic_dim = dim + 1 if mode == "convex" else dim
    if n > MAX_POINTS or conic_dim > MAX_DIM + 1 or q > MAX_Q:
        raise OracleRefused(
            f"instance ({n} points, dimension {dim}, q={q}) exceeds the caps "
            f"({MAX_POINTS} points, d <= {MAX_DIM}, q <= {MAX_Q})"
        )
    out = []
    for parts in set_partitions(n, q):
        w = tropical_system_feasible(parts, rows, mode)
        if w is not None:
            out.append((parts, w))
    return out
