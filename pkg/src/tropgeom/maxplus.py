"""Exact max-plus scalars, points and combinations.

A scalar is either a :class:`fractions.Fraction` or the singleton
:data:`BOTTOM` standing for minus infinity.  Points are plain tuples of
scalars.  Hull membership is decided with the residuation (principal
solution), which is exact: no tolerance exists anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence, Union

Mode = Literal["convex", "conic"]
MODES = ("convex", "conic")


class _Bottom:
    """The max-plus zero (minus infinity).  Compares below every rational."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_Bottom, ())

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "-inf"

    def __hash__(self):
        return hash("maxplus-bottom")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - (-inf) is undefined")
        return self


BOTTOM = _Bottom()

Scalar = Union[Fraction, _Bottom]
Point = tuple


def is_bottom(x) -> bool:
    return x is BOTTOM


def scalar(x) -> Scalar:
    """Coerce ``x`` to an exact max-plus scalar.

    Accepts ``BOTTOM``, ints, Fractions, floats (converted exactly; ``-inf``
    maps to ``BOTTOM``) and strings such as ``"3"``, ``"-7/2"`` or ``"-inf"``.
    """
    if x is BOTTOM:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not max-plus scalars")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x == float("-inf"):
            return BOTTOM
        if x != x or x == float("inf"):
            raise ValueError(f"{x!r} is not a max-plus scalar")
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("-inf", "-infinity", "bottom"):
            return BOTTOM
        try:
            return Fraction(s)
        except ValueError:
            raise ValueError(f"cannot parse {x!r} as a rational or -inf") from None
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def format_scalar(x: Scalar) -> str:
    if x is BOTTOM:
        return "-inf"
    return str(x)


def point(coords: Iterable) -> Point:
    return tuple(scalar(c) for c in coords)


def is_bottom_point(p: Sequence[Scalar]) -> bool:
    return all(c is BOTTOM for c in p)


def vmax(vectors: Iterable[Sequence[Scalar]], dim: int) -> Point:
    out = [BOTTOM] * dim
    for v in vectors:
        for j, c in enumerate(v):
            if c > out[j]:
                out[j] = c
    return tuple(out)


def shift(lam: Scalar, p: Sequence[Scalar]) -> Point:
    """``lam + p`` coordinatewise."""
    if lam is BOTTOM:
        return (BOTTOM,) * len(p)
    return tuple(lam + c for c in p)


def leq(p: Sequence[Scalar], q: Sequence[Scalar]) -> bool:
    return all(a <= b for a, b in zip(p, q))


@dataclass(frozen=True)
class PointSet:
    dim: int
    points: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        pts = tuple(point(p) for p in self.points)
        for i, p in enumerate(pts):
            if len(p) != self.dim:
                raise ValueError(f"point {i} has {len(p)} coordinates, expected {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Iterable], dim: int | None = None) -> "PointSet":
        pts = [point(p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("cannot infer the dimension of an empty point set")
            dim = len(pts[0])
        return cls(dim, tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        return PointSet(self.dim, tuple(self.points[i] for i in indices))


def as_pointset(X) -> PointSet:
    if isinstance(X, PointSet):
        return X
    return PointSet.of(X)


@dataclass(frozen=True)
class Combination:
    """Coefficients per generator, the combination mode and the combined point."""

    lambdas: tuple
    mode: str
    result: Point

    def support(self) -> tuple:
        return tuple(i for i, lam in enumerate(self.lambdas) if lam is not BOTTOM)

    def verify(self, X: PointSet) -> bool:
        if len(self.lambdas) != len(X):
            return False
        if self.mode == "convex" and max(self.lambdas, default=BOTTOM) != 0:
            return False
        return vmax((shift(lam, x) for lam, x in zip(self.lambdas, X)), X.dim) == self.result


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def combine(X, lambdas: Sequence, mode: Mode = "convex") -> Combination:
    """Max-plus combination ``max_i (lambda_i + x_i)`` of the points of ``X``."""
    _check_mode(mode)
    X = as_pointset(X)
    lams = tuple(scalar(lam) for lam in lambdas)
    if len(lams) != len(X):
        raise ValueError(f"{len(lams)} coefficients for {len(X)} generators")
    if mode == "convex" and max(lams, default=BOTTOM) != 0:
        raise ValueError("convex combination requires max lambda == 0")
    result = vmax((shift(lam, x) for lam, x in zip(lams, X)), X.dim)
    return Combination(lams, mode, result)


def lift(X) -> PointSet:
    """Append a zero coordinate to every point."""
    X = as_pointset(X)
    return PointSet(X.dim + 1, tuple(p + (Fraction(0),) for p in X))


def lift_point(p: Sequence) -> Point:
    return point(p) + (Fraction(0),)


def unlift(X: PointSet) -> PointSet:
    if X.dim < 2:
        raise ValueError("cannot unlift a one-dimensional point set")
    return PointSet(X.dim - 1, tuple(p[:-1] for p in X))


def principal_solution(p: Sequence[Scalar], X: PointSet) -> tuple:
    """Greatest ``lambda`` with ``max_i(lambda_i + x_i) <= p`` (conic).

    Generators that are bottom in every coordinate impose no constraint; they
    get ``BOTTOM`` since they cannot change the combination.
    """
    lams = []
    for x in X:
        lam = None
        for pj, xj in zip(p, x):
            if xj is BOTTOM:
                continue
            if pj is BOTTOM:
                lam = BOTTOM
                break
            d = pj - xj
            if lam is None or d < lam:
                lam = d
        lams.append(BOTTOM if lam is None else lam)
    return tuple(lams)


def _validate(p, X) -> tuple[Point, PointSet]:
    X = as_pointset(X)
    if len(X) == 0:
        raise ValueError("empty generator set")
    p = point(p)
    if len(p) != X.dim:
        raise ValueError(f"point has dimension {len(p)}, generators have {X.dim}")
    return p, X


def membership(p, X, mode: Mode = "convex") -> Combination | None:
    """Decide ``p in mpconv(X)`` (or the max-plus cone) via residuation.

    Returns the principal-solution combination on success, ``None`` otherwise.
    In convex mode generators that are bottom in every coordinate are rejected.
    """
    _check_mode(mode)
    p, X = _validate(p, X)
    if mode == "conic":
        lams = principal_solution(p, X)
        if vmax((shift(lam, x) for lam, x in zip(lams, X)), X.dim) != p:
            return None
        return Combination(lams, "conic", p)
    for i, x in enumerate(X):
        if is_bottom_point(x):
            raise ValueError(f"generator {i} is bottom in every coordinate; not allowed in convex mode")
    lifted = lift_point(p)
    lams = principal_solution(lifted, lift(X))
    if vmax((shift(lam, x) for lam, x in zip(lams, lift(X))), X.dim + 1) != lifted:
        return None
    return Combination(lams, "convex", p)


def project(p, X, mode: Mode = "conic") -> Point:
    """``combine(X, principal_solution(p))``: the greatest hull point below ``p``.

    In convex mode the computation happens on lifted points and the extra
    coordinate is dropped, so the result lies below ``p`` but belongs to the
    convex hull only when the lifted coordinate stays at 0.
    """
    _check_mode(mode)
    p, X = _validate(p, X)
    if mode == "conic":
        lams = principal_solution(p, X)
        return vmax((shift(lam, x) for lam, x in zip(lams, X)), X.dim)
    LX = lift(X)
    lams = principal_solution(lift_point(p), LX)
    return vmax((shift(lam, x) for lam, x in zip(lams, LX)), X.dim + 1)[:-1]
