"""Max-plus Radon partitions from parametric determinants, and Helly points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .caratheodory import intersect_hulls
from .certificates import RadonCertificate
from .genpoly import ONE, ZERO, GenPolyMatrix, determinant, leading, max_nonzero_minor, monomial
from .maxplus import BOTTOM, PointSet, as_pointset, lift, membership, point


class TheoremViolation(AssertionError):
    """An internal self-check failed; this would contradict a proved theorem."""


def radon_conic(X) -> RadonCertificate:
    """Conic Radon certificate for ``d + 1`` points of ``Rmax^d``.

    Builds ``A(u)`` with entries ``u^{a_ij}`` (one column per point), takes a
    maximal nonzero minor, extends it by the lowest unused column and reads
    the alternating column minors.  Their leading exponents are the
    coefficients; their leading signs split the points into ``S`` and ``T``.
    """
    X = as_pointset(X)
    d, n = X.dim, len(X)
    if n != d + 1:
        raise ValueError(f"conic Radon needs {d + 1} points in dimension {d}, got {n}")
    A = GenPolyMatrix([[monomial(X[i][j]) for i in range(n)] for j in range(d)])
    r, rows, cols = max_nonzero_minor(A)
    extra = next(c for c in range(n) if c not in cols)
    sel = sorted(cols + (extra,))
    coeffs = {}
    for k, c in enumerate(sel):
        keep = [sel[t] for t in range(r + 1) if t != k]
        det = determinant(A.submatrix(rows, keep)) if r else ONE
        coeffs[c] = det if k % 2 == 0 else -det
    # the alternating minors annihilate every row of A(u)
    for j in range(d):
        total = sum((coeffs[c] * A[j, c] for c in sel), ZERO)
        if not total.is_zero():
            raise TheoremViolation(f"row {j}: alternating minors do not cancel")
    lambdas = [BOTTOM] * n
    S, T = [], []
    for c in sel:
        p = coeffs[c]
        if p.is_zero():
            continue
        lt = leading(p)
        lambdas[c] = lt.exponent
        (S if lt.sign > 0 else T).append(c)
    if not S and not T:
        raise TheoremViolation("all alternating minors vanished")
    # conic certificates are shift invariant; report them with max lambda 0
    top = max(lam for lam in lambdas if lam is not BOTTOM)
    lambdas = [lam if lam is BOTTOM else lam - top for lam in lambdas]
    common = _side_max(X, S or T, lambdas)
    cert = RadonCertificate(tuple(S), tuple(T), tuple(lambdas), common, "conic")
    if not cert.verify(X):
        raise TheoremViolation("leading-term reading failed to give equal maxima")
    return cert


def _side_max(X: PointSet, side, lambdas) -> tuple:
    out = [BOTTOM] * X.dim
    for i in side:
        for j, c in enumerate(X[i]):
            v = lambdas[i] + c
            if v > out[j]:
                out[j] = v
    return tuple(out)


def radon(X) -> RadonCertificate:
    """Convex max-plus Radon partition of ``d + 2`` points of ``Rmax^d``."""
    X = as_pointset(X)
    if len(X) != X.dim + 2:
        raise ValueError(f"Radon needs {X.dim + 2} points in dimension {X.dim}, got {len(X)}")
    conic = radon_conic(lift(X))
    top_s = max(conic.lambdas[i] for i in conic.S)
    top_t = max(conic.lambdas[i] for i in conic.T)
    # the lifted zero coordinate forces equal maxima on both sides
    if top_s != top_t:
        raise TheoremViolation("sides have different coefficient maxima")
    lambdas = tuple(BOTTOM if lam is BOTTOM else lam - top_s for lam in conic.lambdas)
    common = tuple(c - top_s for c in conic.common[:-1])
    cert = RadonCertificate(conic.S, conic.T, lambdas, common, "convex")
    if not cert.verify(X):
        raise TheoremViolation("normalised Radon certificate failed verification")
    return cert


def helly_point(collection: Sequence, witnesses: Sequence) -> tuple:
    """Common point of ``d + 2`` max-plus convex hulls.

    ``witnesses[i]`` must lie in every set except possibly set ``i``.
    """
    sets = [as_pointset(s) for s in collection]
    if not sets:
        raise ValueError("empty collection")
    d = sets[0].dim
    if len(sets) != d + 2:
        raise ValueError(f"need {d + 2} sets in dimension {d}, got {len(sets)}")
    if len(witnesses) != len(sets):
        raise ValueError("one witness per set required")
    ws = [point(w) for w in witnesses]
    for i, w in enumerate(ws):
        for j, C in enumerate(sets):
            if j != i and membership(w, C, "convex") is None:
                raise ValueError(f"witness {i} is not in set {j}")
    seen = {}
    x = None
    for i, w in enumerate(ws):
        if w in seen:
            x = w
            break
        seen[w] = i
    if x is None:
        x = radon(PointSet(d, tuple(ws))).common
    for j, C in enumerate(sets):
        if membership(x, C, "convex") is None:
            raise TheoremViolation(f"Helly point escaped set {j}")
    return x


@dataclass
class HellyReport:
    subfamilies: list = field(default_factory=list)
    points: dict = field(default_factory=dict)
    helly_point: tuple | None = None

    @property
    def all_found(self) -> bool:
        return all(self.points.get(s) is not None for s in self.subfamilies)

    def inconclusive(self) -> list:
        return [s for s in self.subfamilies if self.points.get(s) is None]


def helly_check(collection: Sequence, subset_size: int | None = None, max_iters: int = 1000) -> HellyReport:
    """Search a common point of every ``subset_size`` subfamily (default ``d + 1``).

    Never claims emptiness: a miss is reported as inconclusive.  When the
    collection has exactly ``d + 2`` members and all subfamilies succeed, the
    found points are fed to :func:`helly_point`.
    """
    sets = [as_pointset(s) for s in collection]
    if not sets:
        raise ValueError("empty collection")
    d = sets[0].dim
    k = d + 1 if subset_size is None else subset_size
    report = HellyReport()
    for combo in itertools.combinations(range(len(sets)), min(k, len(sets))):
        report.subfamilies.append(combo)
        report.points[combo] = intersect_hulls([sets[i] for i in combo], max_iters)
    if len(sets) == d + 2 and k == d + 1 and report.all_found:
        witnesses = [report.points[tuple(j for j in range(len(sets)) if j != i)] for i in range(len(sets))]
        report.helly_point = helly_point(sets, witnesses)
    return report
