"""Generalized polynomials ``sum_k a_k u^{b_k}`` with rational a_k and b_k.

These form an integral domain (the group ring of the rationals), so
determinants, fraction-free elimination and Cramer's rule all work exactly.
The zero polynomial plays the role of ``u^{-inf}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .maxplus import BOTTOM, scalar

LAPLACE_MAX = 5


def _norm(x):
    # integral values stay plain ints; int arithmetic is much cheaper
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a // b if a % b == 0 else Fraction(a, b)
    return _norm(Fraction(a) / b)


class GenPoly:
    """Immutable generalized polynomial; terms sorted by decreasing exponent."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple] | dict = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            e, c = _norm(Fraction(e)), _norm(Fraction(c))
            acc[e] = acc.get(e, 0) + c
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0), reverse=True))

    @classmethod
    def _raw(cls, terms: tuple) -> "GenPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c) -> "GenPoly":
        return cls(((0, c),))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GenPoly.constant(other)
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"u^{e}")
            elif c == -1:
                parts.append(f"-u^{e}")
            else:
                parts.append(f"{c}*u^{e}")
        return " + ".join(parts).replace("+ -", "- ")

    def _coerce(self, other) -> "GenPoly":
        if isinstance(other, GenPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return GenPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return GenPoly._raw(tuple(sorted(((e, _norm(c)) for e, c in acc.items() if c != 0), reverse=True)))

    __radd__ = __add__

    def __neg__(self):
        return GenPoly._raw(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1:
            e0, c0 = other.terms[0]
            return GenPoly._raw(tuple((_norm(e + e0), _norm(c * c0)) for e, c in self.terms))
        if len(self.terms) == 1:
            return other * self
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return GenPoly._raw(tuple(sorted(((_norm(e), _norm(c)) for e, c in acc.items() if c != 0), reverse=True)))

    __rmul__ = __mul__

    def leading(self) -> "LeadingTerm":
        return leading(self)

    def low_exponent(self) -> Fraction:
        if not self.terms:
            raise ValueError("zero polynomial has no terms")
        return Fraction(self.terms[-1][0])

    def evaluate(self, u) -> Fraction:
        """Exact value at a rational ``u``; every exponent must be an integer."""
        u = Fraction(u)
        total = Fraction(0)
        for e, c in self.terms:
            if Fraction(e).denominator != 1:
                raise ValueError(f"cannot evaluate u^{e} exactly at a rational u")
            total += c * u ** int(e)
        return total

    def exact_div(self, other: "GenPoly") -> "GenPoly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return ZERO
        if len(other.terms) == 1:
            e0, c0 = other.terms[0]
            return GenPoly._raw(tuple((_norm(e - e0), _div(c, c0)) for e, c in self.terms))
        lead_e, lead_c = other.terms[0]
        floor = self.low_exponent() - other.low_exponent()
        rem = self
        quot: list = []
        while rem.terms:
            e, c = rem.terms[0]
            qe = _norm(e - lead_e)
            if qe < floor:
                raise ArithmeticError("division is not exact")
            qc = _div(c, lead_c)
            quot.append((qe, qc))
            rem = rem - other * GenPoly._raw(((qe, qc),))
        return GenPoly._raw(tuple(quot))


ZERO = GenPoly()
ONE = GenPoly.constant(1)


def monomial(a) -> GenPoly:
    """``u^a``, with ``u^{-inf} = 0``."""
    a = scalar(a)
    if a is BOTTOM:
        return ZERO
    return GenPoly._raw(((a, Fraction(1)),))


@dataclass(frozen=True)
class LeadingTerm:
    sign: int
    exponent: Fraction


def leading(p: GenPoly) -> LeadingTerm:
    if not p.terms:
        raise ValueError("the zero polynomial has no leading term")
    e, c = p.terms[0]
    return LeadingTerm(1 if c > 0 else -1, Fraction(e))


@dataclass(frozen=True)
class RatFn:
    numerator: GenPoly
    denominator: GenPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        raise TypeError("RatFn equality is by cross-multiplication; not hashable")

    def leading(self) -> LeadingTerm:
        """Sign and exponent of the dominant term as ``u -> infinity``."""
        n, d = leading(self.numerator), leading(self.denominator)
        return LeadingTerm(n.sign * d.sign, n.exponent - d.exponent)


class GenPolyMatrix:
    """Rectangular grid of generalized polynomials."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(e if isinstance(e, GenPoly) else GenPoly.constant(e) for e in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix is not rectangular")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def from_exponents(cls, exps: Sequence[Sequence]) -> "GenPolyMatrix":
        return cls([[monomial(a) for a in row] for row in exps])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GenPolyMatrix":
        return GenPolyMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def __repr__(self):
        return f"GenPolyMatrix({[list(r) for r in self.entries]!r})"


def _as_grid(M) -> list:
    if isinstance(M, GenPolyMatrix):
        return [list(r) for r in M.entries]
    return [list(r) for r in M]


def _laplace(grid: list) -> GenPoly:
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    # expand along the sparsest row
    r = min(range(n), key=lambda i: sum(1 for e in grid[i] if e.terms))
    rest = grid[:r] + grid[r + 1:]
    total = ZERO
    for j, e in enumerate(grid[r]):
        if not e.terms:
            continue
        minor = _laplace([row[:j] + row[j + 1:] for row in rest])
        if not minor.terms:
            continue
        term = e * minor
        total = total + (term if (r + j) % 2 == 0 else -term)
    return total


def _bareiss(grid: list) -> GenPoly:
    a = [row[:] for row in grid]
    n = len(a)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k].terms:
            for i in range(k + 1, n):
                if a[i][k].terms:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = pivot * a[i][j] - aik * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = ZERO
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(M, method: str = "auto") -> GenPoly:
    """Exact determinant: Laplace expansion up to size 5, Bareiss above."""
    grid = _as_grid(M)
    n = len(grid)
    if any(len(r) != n for r in grid):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    if method == "auto":
        method = "laplace" if n <= LAPLACE_MAX else "bareiss"
    if method == "laplace":
        return _laplace(grid)
    if method == "bareiss":
        return _bareiss(grid)
    raise ValueError(f"unknown method {method!r}")


def max_nonzero_minor(M: GenPolyMatrix) -> tuple[int, tuple, tuple]:
    """Largest ``r`` with a nonzero ``r x r`` minor, plus the first witness.

    Row sets, then column sets, are scanned in lexicographic order.
    """
    grid = _as_grid(M)
    m, n = len(grid), len(grid[0])
    for r in range(min(m, n), 0, -1):
        for rows in itertools.combinations(range(m), r):
            sub_rows = [grid[i] for i in rows]
            for cols in itertools.combinations(range(n), r):
                if not determinant([[row[j] for j in cols] for row in sub_rows]).is_zero():
                    return r, rows, cols
    return 0, (), ()


def cramer_solve(M, rhs: Sequence[GenPoly]) -> list[RatFn]:
    """Solve ``M x = rhs`` for square nonsingular ``M``; shared denominator ``det M``."""
    grid = _as_grid(M)
    n = len(grid)
    if any(len(r) != n for r in grid):
        raise ValueError("Cramer's rule needs a square matrix")
    if len(rhs) != n:
        raise ValueError("right-hand side has the wrong length")
    det = determinant(grid)
    if det.is_zero():
        raise ZeroDivisionError("singular system")
    out = []
    for j in range(n):
        replaced = [row[:j] + [rhs[i]] + row[j + 1:] for i, row in enumerate(grid)]
        out.append(RatFn(determinant(replaced), det))
    return out
