"""Exact phase-one simplex (Bland's rule) on an integer-preserving tableau."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    x: list | None
    farkas: list | None
    basis: list


def _integer_row(row: Sequence) -> tuple[list, int]:
    fr = [Fraction(a) for a in row]
    s = 1
    for a in fr:
        s = s * a.denominator // math.gcd(s, a.denominator)
    return [int(a * s) for a in fr], s


def feasible_point(A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Find ``x >= 0`` with ``A x = b``.

    On success ``x`` is a basic feasible solution.  Otherwise ``farkas`` is a
    vector ``z`` with ``z^T A >= 0`` and ``z^T b < 0``.

    The tableau holds integers ``T`` with the true entries ``T / den``;
    each pivot divides exactly by the previous pivot.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    scale = [1] * m
    T = []
    for r in range(m):
        row, s = _integer_row(list(A[r]) + [b[r]])
        if row[-1] < 0:
            row = [-a for a in row]
            s = -s
        scale[r] = s
        T.append(row[:-1] + [int(k == r) for k in range(m)] + [row[-1]])
    basis = [n + r for r in range(m)]
    width = n + m
    den = 1
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [0] * (width + 1)
    for r in range(m):
        for j in list(range(n)) + [width]:
            cost[j] -= T[r][j]
    while True:
        enter = next((j for j in range(width) if cost[j] * den < 0), None)
        if enter is None:
            break
        leave = None
        for r in range(m):
            a = T[r][enter]
            if a * den > 0:
                if leave is None:
                    leave = r
                    continue
                lhs = T[r][width] * T[leave][enter]
                rhs = T[leave][width] * a
                # ratios share the factor den; compare by cross multiplication
                if (lhs < rhs) if a * T[leave][enter] > 0 else (lhs > rhs):
                    leave = r
                elif lhs == rhs and basis[r] < basis[leave]:
                    leave = r
        if leave is None:
            raise AssertionError("phase-one objective is bounded below; unbounded ray impossible")
        den = _pivot(T, cost, leave, enter, den)
        basis[leave] = enter
    if cost[width] != 0:
        # optimum -cost[width] > 0: y_r = 1 - reduced cost of artificial r
        y = [1 - Fraction(cost[n + r], den) for r in range(m)]
        z = [-y[r] * scale[r] for r in range(m)]
        return LPResult(None, z, basis)
    # drive zero-level artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            j = next((j for j in range(n) if T[r][j] != 0), None)
            if j is not None:
                den = _pivot(T, cost, r, j, den)
                basis[r] = j
    x = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = Fraction(T[r][width], den)
    return LPResult(x, None, basis)


def _pivot(T: list, cost: list, r: int, c: int, den: int) -> int:
    """Integer-preserving pivot on ``(r, c)``; returns the new common denominator."""
    piv = T[r][c]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            T[i] = [(piv * a - f * b) // den for a, b in zip(T[i], row)]
    f = cost[c]
    cost[:] = [(piv * a - f * b) // den for a, b in zip(cost, row)]
    return piv
