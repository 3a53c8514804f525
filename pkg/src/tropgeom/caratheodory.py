"""Max-plus Caratheodory-type constructions.

Ties between several attaining generators are always broken towards the
lowest index so that every certificate is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bipartite import BipartiteGraph, hall_violator, max_weight_assignment
from .maxplus import (
    BOTTOM,
    Combination,
    PointSet,
    as_pointset,
    combine,
    lift,
    lift_point,
    membership,
    point,
    principal_solution,
    scalar,
    shift,
    vmax,
)


class NotInHull(ValueError):
    pass


def reduce_support(p, X) -> Combination:
    """Convex combination of ``p`` using at most ``dim + 1`` generators.

    Each coordinate is witnessed by a kept generator attaining it, plus one
    generator whose coefficient is 0 if none of those has it.
    """
    X = as_pointset(X)
    comb = membership(p, X, "convex")
    if comb is None:
        raise NotInHull("point is not in the max-plus convex hull")
    p = comb.result
    lams = comb.lambdas
    keep: list[int] = []
    for j, pj in enumerate(p):
        if pj is BOTTOM:
            continue
        hits = [i for i, x in enumerate(X) if lams[i] is not BOTTOM and lams[i] + x[j] == pj]
        # reuse a generator already kept, else take the lowest index
        if not any(i in keep for i in hits):
            keep.append(hits[0])
    if not any(lams[i] == 0 for i in keep):
        keep.append(next(i for i, lam in enumerate(lams) if lam == 0))
    reduced = tuple(lam if i in keep else BOTTOM for i, lam in enumerate(lams))
    out = combine(X, reduced, "convex")
    assert out.result == p
    return out


@dataclass(frozen=True)
class ColorfulInstance:
    classes: tuple
    target: tuple

    def __post_init__(self):
        classes = tuple(as_pointset(c) for c in self.classes)
        target = point(self.target)
        dim = len(target)
        if len(classes) != dim + 1:
            raise ValueError(f"need exactly {dim + 1} classes in dimension {dim}, got {len(classes)}")
        for k, c in enumerate(classes):
            if len(c) == 0:
                raise ValueError(f"class {k} is empty")
            if c.dim != dim:
                raise ValueError(f"class {k} has dimension {c.dim}, target has {dim}")
            if membership(target, c, "convex") is None:
                raise NotInHull(f"target is not in the hull of class {k}")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "target", target)


@dataclass(frozen=True)
class Transversal:
    """One pick per class, with its coefficient; ``point`` is the combination."""

    picks: tuple
    lambdas: tuple
    point: tuple

    def verify(self, classes: Sequence[PointSet]) -> bool:
        if max(self.lambdas) != 0:
            return False
        chosen = [as_pointset(c)[i] for c, i in zip(classes, self.picks)]
        dim = len(self.point)
        return vmax((shift(lam, x) for lam, x in zip(self.lambdas, chosen)), dim) == self.point


def colorful(instance: ColorfulInstance) -> Transversal:
    """Max-plus colorful Caratheodory: class ``i`` witnesses coordinate ``i``.

    The last class contributes a generator whose coefficient is exactly 0.
    """
    p = instance.target
    d = len(p)
    picks, mus = [], []
    for k, X in enumerate(instance.classes):
        lams = membership(p, X, "convex").lambdas
        choice = None
        if k < d and p[k] is not BOTTOM:
            choice = next(i for i, x in enumerate(X) if lams[i] is not BOTTOM and lams[i] + x[k] == p[k])
        else:
            choice = next(i for i, lam in enumerate(lams) if lam == 0)
        picks.append(choice)
        mus.append(lams[choice])
    t = Transversal(tuple(picks), tuple(mus), p)
    assert t.verify(instance.classes), "colorful transversal failed verification"
    return t


def column_offsets(A: Sequence[Sequence]) -> tuple[tuple, tuple]:
    """Column offsets making row maxima attainable in pairwise distinct columns.

    Returns ``(lambdas, assignment)`` where ``assignment[r]`` is the column
    attaining the maximum of row ``r`` after adding ``lambdas[c]`` to column
    ``c``.  Offsets are normalised to ``max(lambdas) == 0``.
    """
    rows = [[scalar(a) for a in row] for row in A]
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise ValueError("matrix is not rectangular")
    if m < n:
        raise ValueError(f"need at least as many columns as rows ({m} < {n})")
    for r, row in enumerate(rows):
        if all(a is BOTTOM for a in row):
            raise ValueError(f"row {r} has no finite entry")
    lams, assign = _offsets(rows, list(range(n)), list(range(m)))
    top = max(lams.values())
    out = tuple(lams[c] - top if lams[c] is not BOTTOM else BOTTOM for c in range(m))
    result = (out, tuple(assign[r] for r in range(n)))
    assert _offsets_ok(rows, *result), "column offsets failed verification"
    return result


def _offsets(A: list, rows: list, cols: list) -> tuple[dict, dict]:
    """Recursive step on the submatrix ``rows x cols``; returns dicts keyed by index."""
    edges, weights = [], []
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            if A[r][c] is not BOTTOM:
                edges.append((a, b))
                weights.append(A[r][c])
    G = BipartiteGraph(len(rows), len(cols), tuple(edges), tuple(weights))
    if hall_violator(G, "left") is None:
        asg = max_weight_assignment(G)
        # a_rc + lambda_c <= y_r, equality on assigned edges, with lambda_c = -y_c
        lams = {c: -asg.right_duals[b] for b, c in enumerate(cols)}
        return lams, {rows[a]: cols[b] for a, b in asg.pairs.items()}
    X = sorted(hall_violator(G, "right"))
    NX = sorted(G.neighborhood(X, "right"))
    sub_cols = [cols[b] for b in X]
    sub_rows = [rows[a] for a in NX]
    sub_lams, sub_assign = _offsets(A, sub_rows, sub_cols)
    lams = {c: BOTTOM for c in cols}
    lams.update(sub_lams)
    assign = dict(sub_assign)
    # rows outside N(X) are bottom everywhere now; give them unused columns
    free = [c for c in cols if c not in set(assign.values())]
    for r in rows:
        if r not in assign:
            assign[r] = free.pop(0)
    return lams, assign


def _offsets_ok(A: list, lams: tuple, assign: tuple) -> bool:
    if len(set(assign)) != len(assign) or max(lams) != 0:
        return False
    for r, row in enumerate(A):
        vals = [lam + a for lam, a in zip(lams, row)]
        if vals[assign[r]] != max(vals):
            return False
    return True


def generalized_colorful(classes: Sequence, C, witnesses: Sequence | None = None, max_iters: int = 1000) -> Transversal:
    """Transversal whose max-plus hull meets the max-plus convex hull of ``C``.

    ``witnesses[i]`` must lie in both ``C`` and the hull of class ``i``; when
    omitted they are searched with :func:`intersect_two_hulls`.
    """
    classes = tuple(as_pointset(c) for c in classes)
    C = as_pointset(C)
    d = C.dim
    if len(classes) != d + 1:
        raise ValueError(f"need exactly {d + 1} classes in dimension {d}")
    if witnesses is None:
        witnesses = []
        for k, X in enumerate(classes):
            b = intersect_two_hulls(X, C, max_iters)
            if b is None:
                raise NotInHull(f"no point of C found in the hull of class {k}")
            witnesses.append(b)
    witnesses = [point(b) for b in witnesses]
    decomps = []
    for k, (X, b) in enumerate(zip(classes, witnesses)):
        if membership(b, C, "convex") is None:
            raise NotInHull(f"witness {k} is not in C")
        comb = membership(b, X, "convex")
        if comb is None:
            raise NotInHull(f"witness {k} is not in the hull of class {k}")
        decomps.append(comb.lambdas)
    lifted = [lift_point(b) for b in witnesses]
    A = [[lifted[k][r] for k in range(d + 1)] for r in range(d + 1)]
    lams, assign = column_offsets(A)
    pbar = vmax((shift(lam, b) for lam, b in zip(lams, lifted)), d + 1)
    picks = [None] * (d + 1)
    mus = [BOTTOM] * (d + 1)
    for r, k in enumerate(assign):
        X, mu = lift(classes[k]), decomps[k]
        target = lifted[k][r]
        if lams[k] is BOTTOM:
            h = 0
        elif target is BOTTOM:
            h = next(i for i, m in enumerate(mu) if m is not BOTTOM)
        else:
            h = next(i for i, x in enumerate(X) if mu[i] is not BOTTOM and mu[i] + x[r] == target)
        picks[k] = h
        mus[k] = lams[k] + mu[h] if lams[k] is not BOTTOM and mu[h] is not BOTTOM else BOTTOM
    p = pbar[:-1]
    t = Transversal(tuple(picks), tuple(mus), p)
    assert t.verify(classes), "generalized colorful transversal failed verification"
    assert membership(p, C, "convex") is not None, "meeting point escaped C"
    return t


def intersect_hulls(sets: Sequence, max_iters: int = 1000):
    """Cyclic projections onto the lifted cones of several convex hulls.

    Returns a common point of all hulls when an exact fixed point is reached,
    or ``None`` if ``max_iters`` rounds pass (inconclusive, not a proof of
    emptiness).
    """
    lifted = [lift(as_pointset(s)) for s in sets]
    if not lifted:
        raise ValueError("no sets given")
    dim = lifted[0].dim
    for L in lifted:
        if L.dim != dim:
            raise ValueError("dimension mismatch")
        if len(L) == 0:
            return None
    tops = [vmax(L, dim) for L in lifted]
    x = tuple(min(t[j] for t in tops) for j in range(dim))
    for _ in range(max_iters):
        start = x
        for L in lifted:
            lams = principal_solution(x, L)
            x = vmax((shift(lam, y) for lam, y in zip(lams, L)), dim)
        if x == start:
            last = x[-1]
            if last is BOTTOM:
                return None
            return tuple(c - last for c in x[:-1])
    return None


def intersect_two_hulls(A, B, max_iters: int = 1000):
    A, B = as_pointset(A), as_pointset(B)
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    return intersect_hulls([A, B], max_iters)
