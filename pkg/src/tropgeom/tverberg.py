"""Max-plus Tverberg partitions through the Sarkaria embedding.

For a fixed rational ``u`` the points ``alpha_i(u) = (u^{a_1i}, ..., u^{a_Di})``
are pushed through the block maps ``phi_j`` and a colourful transversal with
``0`` in its convex hull is found by exact linear programming.  The weights
are then recomputed symbolically as rational functions of ``u`` and their
leading exponents give the max-plus coefficients.  Whatever ``u`` is used,
the result is only returned after an exact check, and ``u`` grows until the
check passes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._lp import feasible_point
from .certificates import TverbergCertificate
from .genpoly import ONE, ZERO, cramer_solve, monomial
from .maxplus import BOTTOM, PointSet, as_pointset, lift

U_SCHEDULE = (2, 4, 16, 256, 65536, 2 ** 32)


class RetryBudgetExhausted(RuntimeError):
    pass


def sarkaria_embed(a: Sequence, j: int, q: int, zero=ZERO) -> tuple:
    """``phi_j`` applied to ``alpha(u)`` for the point ``a``; ``j`` is 0-based.

    Blocks ``0..q-2`` hold ``alpha`` in block ``j`` only; ``j = q - 1`` puts
    ``-alpha`` in every block.  Entries are :class:`GenPoly` unless ``a``
    already holds evaluated numbers (pass ``zero=0`` then).
    """
    if not 0 <= j < q:
        raise ValueError(f"block index {j} outside 0..{q - 1}")
    alpha = [monomial(c) for c in a] if zero is ZERO else list(a)
    D = len(alpha)
    out = [zero] * (D * (q - 1))
    if j < q - 1:
        out[j * D:(j + 1) * D] = alpha
    else:
        neg = [-x for x in alpha]
        for blk in range(q - 1):
            out[blk * D:(blk + 1) * D] = neg
    return tuple(out)


def _alpha(x: Sequence, u: Fraction) -> list:
    out = []
    for c in x:
        if c is BOTTOM:
            out.append(Fraction(0))
        elif c.denominator != 1:
            raise ValueError("coordinates must be integers to evaluate u^a exactly")
        else:
            out.append(u ** int(c))
    return out


@dataclass(frozen=True)
class ColorSolution:
    colors: tuple
    weights: tuple
    u_value: Fraction

    @property
    def support(self) -> tuple:
        return tuple(i for i, w in enumerate(self.weights) if w != 0)


def _system(alphas: list, colors: Sequence[int], q: int) -> list:
    """Columns ``(phi_{j_i}(alpha_i), 1)`` as a row-major matrix."""
    cols = [sarkaria_embed(al, j, q, zero=Fraction(0)) + (Fraction(1),) for al, j in zip(alphas, colors)]
    return [list(r) for r in zip(*cols)]


def _canonical_colorings(n: int, q: int):
    """Colourings up to renaming colours (first occurrences in increasing order)."""
    for colors in itertools.product(range(q), repeat=n):
        top = -1
        for c in colors:
            if c > top + 1:
                break
            top = max(top, c)
        else:
            yield colors


def _canonical(colors) -> tuple:
    names: dict = {}
    return tuple(names.setdefault(c, len(names)) for c in colors)


def find_colors(X, q: int, u_value=2, max_pivots: int | None = None) -> ColorSolution:
    """Colours ``j_i`` and weights ``mu_i >= 0`` with ``sum mu_i phi_{j_i}(alpha_i(u)) = 0``.

    A separating-functional pivot search runs first; exhaustive search over
    colourings is the guaranteed fallback.
    """
    X = as_pointset(X)
    D = X.dim
    n = len(X)
    if n != D * (q - 1) + 1:
        raise ValueError(f"need {D * (q - 1) + 1} points in dimension {D} for q={q}, got {n}")
    u = Fraction(u_value)
    if u <= 1:
        raise ValueError("u_value must exceed 1")
    alphas = [_alpha(x, u) for x in X]
    rhs = [Fraction(0)] * (D * (q - 1)) + [Fraction(1)]
    if q == 1:
        return ColorSolution((0,), (Fraction(1),), u)

    def attempt(colors):
        res = feasible_point(_system(alphas, colors, q), rhs)
        return res

    colors = [i % q for i in range(n)]
    steps = max_pivots if max_pivots is not None else 8 * n
    tried = set()
    for _ in range(steps):
        tried.add(_canonical(colors))
        res = attempt(colors)
        if res.x is not None:
            return _checked(alphas, tuple(colors), res.x, q, u)
        h = res.farkas[:-1]
        # every chosen point sits strictly on the positive side of h; move
        # the point and colour that drop the most, avoiding colourings
        # already tried up to renaming
        val = [[sum((a * b for a, b in zip(h, sarkaria_embed(al, j, q, Fraction(0)))), Fraction(0)) for j in range(q)] for al in alphas]
        moves = sorted((-val[i][colors[i]], val[i][j], i, j) for i in range(n) for j in range(q) if j != colors[i])
        for _, _, i, j in moves:
            cand = colors[:i] + [j] + colors[i + 1:]
            if _canonical(cand) not in tried:
                colors = cand
                break
        else:
            break
    for colors in _canonical_colorings(n, q):
        if colors in tried:
            continue
        res = attempt(colors)
        if res.x is not None:
            return _checked(alphas, colors, res.x, q, u)
    raise AssertionError("no colourful transversal found; contradicts colourful Caratheodory")


def _checked(alphas, colors, x, q, u) -> ColorSolution:
    M = _system(alphas, colors, q)
    assert all(w >= 0 for w in x) and sum(x) == 1
    assert all(sum((a * w for a, w in zip(row, x)), Fraction(0)) == 0 for row in M[:-1])
    return ColorSolution(tuple(colors), tuple(x), u)


def _independent_rows(M: list, cols: Sequence[int]) -> list:
    """Greedy row basis of ``M[:, cols]``, trying the last (sum) row first."""
    order = [len(M) - 1] + list(range(len(M) - 1))
    basis: list = []
    reduced: list = []
    for r in order:
        v = [M[r][c] for c in cols]
        for piv, bv in reduced:
            if v[piv]:
                f = v[piv] / bv[piv]
                v = [a - f * b for a, b in zip(v, bv)]
        piv = next((k for k, a in enumerate(v) if a), None)
        if piv is not None:
            reduced.append((piv, v))
            basis.append(r)
            if len(basis) == len(cols):
                break
    return sorted(basis)


def _scale(X: PointSet) -> tuple[PointSet, list, Fraction]:
    """Shift each coordinate to start at 0, clear denominators and common factors."""
    D = X.dim
    shifts = []
    for k in range(D):
        finite = [x[k] for x in X if x[k] is not BOTTOM]
        shifts.append(min(finite) if finite else Fraction(0))
    vals = [[BOTTOM if x[k] is BOTTOM else x[k] - shifts[k] for k in range(D)] for x in X]
    L = 1
    for row in vals:
        for c in row:
            if c is not BOTTOM:
                L = L * c.denominator // math.gcd(L, c.denominator)
    ints = [[BOTTOM if c is BOTTOM else int(c * L) for c in row] for row in vals]
    # positive rescaling preserves every partition, so drop a common factor
    g = math.gcd(*(c for row in ints for c in row if c is not BOTTOM)) or 1
    scaled = PointSet(D, tuple(tuple(BOTTOM if c is BOTTOM else Fraction(c // g) for c in row) for row in ints))
    return scaled, shifts, Fraction(L, g)


def _symbolic_certificate(X: PointSet, sol: ColorSolution, q: int) -> TverbergCertificate | None:
    support = sol.support
    alphas = [_alpha(x, sol.u_value) for x in X]
    M_num = _system(alphas, sol.colors, q)
    rows = _independent_rows(M_num, support)
    if len(rows) != len(support):
        return None
    cols_sym = {i: sarkaria_embed(X[i], sol.colors[i], q) + (ONE,) for i in support}
    n_rows = len(M_num)
    rhs = [ZERO] * (n_rows - 1) + [ONE]
    grid = [[cols_sym[i][r] for i in support] for r in rows]
    try:
        mus = cramer_solve(grid, [rhs[r] for r in rows])
    except ZeroDivisionError:
        return None
    den = mus[0].denominator
    # the remaining equations must hold identically in u
    for r in range(n_rows):
        total = sum((cols_sym[i][r] * mu.numerator for i, mu in zip(support, mus)), ZERO)
        if total != rhs[r] * den:
            return None
    lambdas = [BOTTOM] * len(X)
    parts: list = [[] for _ in range(q)]
    for i, mu in zip(support, mus):
        if mu.is_zero():
            continue
        lt = mu.leading()
        if lt.sign < 0:
            return None
        lambdas[i] = lt.exponent
        parts[sol.colors[i]].append(i)
    if any(not p for p in parts):
        return None
    common = _part_max(X, parts[0], lambdas)
    cert = TverbergCertificate(tuple(tuple(p) for p in parts), tuple(lambdas), common, "conic")
    return cert if cert.verify(X) else None


def _part_max(X: PointSet, part, lambdas) -> tuple:
    out = [BOTTOM] * X.dim
    for i in part:
        for k, c in enumerate(X[i]):
            v = lambdas[i] + c
            if v > out[k]:
                out[k] = v
    return tuple(out)


def tverberg_conic(X, q: int, schedule: Sequence = U_SCHEDULE, max_pivots: int | None = None) -> TverbergCertificate:
    """Conic max-plus Tverberg certificate for ``D (q - 1) + 1`` points of ``Rmax^D``."""
    X = as_pointset(X)
    D = X.dim
    if q < 1:
        raise ValueError("q must be positive")
    if len(X) != D * (q - 1) + 1:
        raise ValueError(f"need {D * (q - 1) + 1} points in dimension {D} for q={q}, got {len(X)}")
    if q == 1:
        cert = TverbergCertificate(((0,),), (Fraction(0),), X[0], "conic")
        assert cert.verify(X)
        return cert
    scaled, shifts, L = _scale(X)
    for u in schedule:
        sol = find_colors(scaled, q, u, max_pivots)
        cert = _symbolic_certificate(scaled, sol, q)
        if cert is None:
            continue
        top = max(lam for lam in cert.lambdas if lam is not BOTTOM)
        lambdas = tuple(BOTTOM if lam is BOTTOM else (lam - top) / L for lam in cert.lambdas)
        common = _part_max(X, cert.parts[0], lambdas)
        out = TverbergCertificate(cert.parts, lambdas, common, "conic")
        if out.verify(X):
            return out
    raise RetryBudgetExhausted(f"no verified certificate for u in {tuple(schedule)}")


def tverberg(X, q: int, schedule: Sequence = U_SCHEDULE, max_pivots: int | None = None) -> TverbergCertificate:
    """Convex max-plus Tverberg partition of ``(d + 1)(q - 1) + 1`` points of ``Rmax^d``."""
    X = as_pointset(X)
    d = X.dim
    if len(X) != (d + 1) * (q - 1) + 1:
        raise ValueError(f"need {(d + 1) * (q - 1) + 1} points in dimension {d} for q={q}, got {len(X)}")
    conic = tverberg_conic(lift(X), q, schedule, max_pivots)
    tops = {max(conic.lambdas[i] for i in part) for part in conic.parts}
    if len(tops) != 1:
        raise AssertionError("parts disagree on the lifted coordinate")
    top = tops.pop()
    lambdas = tuple(BOTTOM if lam is BOTTOM else lam - top for lam in conic.lambdas)
    common = tuple(c - top for c in conic.common[:-1])
    cert = TverbergCertificate(conic.parts, lambdas, common, "convex")
    if not cert.verify(X):
        raise AssertionError("normalised Tverberg certificate failed verification")
    return cert
