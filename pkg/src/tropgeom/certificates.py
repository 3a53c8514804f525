"""Radon and Tverberg certificates and their exact checkers.

The checkers only use coordinatewise max and rational addition; they do not
call into any of the constructions, so a certificate can be trusted on its
own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .maxplus import BOTTOM, PointSet, as_pointset, lift, lift_point


def _part_max(points: PointSet, part, lambdas) -> tuple:
    out = [BOTTOM] * points.dim
    for i in part:
        lam = lambdas[i]
        if lam is BOTTOM:
            continue
        for j, c in enumerate(points[i]):
            if c is BOTTOM:
                continue
            v = lam + c
            if out[j] is BOTTOM or v > out[j]:
                out[j] = v
    return tuple(out)


@dataclass(frozen=True)
class TverbergCertificate:
    """``q`` disjoint index sets whose combinations with ``lambdas`` all equal ``common``.

    In convex mode every part also has ``max lambda == 0``.
    """

    parts: tuple
    lambdas: tuple
    common: tuple
    mode: str = "convex"

    @property
    def q(self) -> int:
        return len(self.parts)

    def partition_key(self) -> frozenset:
        return frozenset(frozenset(p) for p in self.parts)

    def verify(self, X) -> bool:
        X = as_pointset(X)
        if len(self.lambdas) != len(X) or len(self.common) != X.dim:
            return False
        seen: set = set()
        for part in self.parts:
            if not part:
                return False
            for i in part:
                if i in seen or not 0 <= i < len(X):
                    return False
                seen.add(i)
            finite = [self.lambdas[i] for i in part if self.lambdas[i] is not BOTTOM]
            if not finite:
                return False
            if self.mode == "convex" and max(finite) != 0:
                return False
            if _part_max(X, part, self.lambdas) != tuple(self.common):
                return False
        return True

    def lifted(self) -> "TverbergCertificate":
        """Conic certificate on the lifted points (convex mode only)."""
        if self.mode != "convex":
            raise ValueError("only convex certificates can be lifted")
        return TverbergCertificate(self.parts, self.lambdas, lift_point(self.common), "conic")


@dataclass(frozen=True)
class RadonCertificate:
    S: tuple
    T: tuple
    lambdas: tuple
    common: tuple
    mode: str = "convex"

    def as_tverberg(self) -> TverbergCertificate:
        return TverbergCertificate((self.S, self.T), self.lambdas, self.common, self.mode)

    def verify(self, X) -> bool:
        X = as_pointset(X)
        if set(self.S) & set(self.T):
            return False
        if self.mode == "conic" and (not self.S or not self.T):
            # one side may be empty only if the other combines to bottom
            side = self.S or self.T
            if not side or len(self.lambdas) != len(X):
                return False
            return _part_max(X, side, self.lambdas) == tuple(self.common) == (BOTTOM,) * X.dim
        return self.as_tverberg().verify(X)


def verify_lifted(cert: TverbergCertificate, X) -> bool:
    """Check a convex certificate through its conic form on lifted points."""
    return cert.lifted().verify(lift(as_pointset(X)))
