"""Deterministic SVG figures for planar point sets and their certificates."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .maxplus import BOTTOM, as_pointset, point

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def tropical_segment(a: Sequence, b: Sequence) -> list:
    """Vertices of the max-plus segment from ``a`` to ``b`` (finite points).

    Points are ``max(a, t + b)`` for ``t <= 0`` and ``max(a - t, b)`` for
    ``t >= 0``; the path is linear between the breakpoints ``a_k - b_k``.
    """
    a, b = point(a), point(b)
    if any(c is BOTTOM for c in a + b):
        raise ValueError("segment endpoints must be finite")

    def at(t):
        if t <= 0:
            return tuple(max(x, t + y) for x, y in zip(a, b))
        return tuple(max(x - t, y) for x, y in zip(a, b))

    ts = sorted({x - y for x, y in zip(a, b)} | {Fraction(0)})
    out: list = []
    for t in ts:
        p = at(t)
        if not out or out[-1] != p:
            out.append(p)
    if out[0] != a:
        out.insert(0, a)
    if out[-1] != b:
        out.append(b)
    return out


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def plot_svg(X, certificate=None, labels: Sequence[str] | None = None, size: int = 400, title: str | None = None) -> str:
    """SVG text: labelled points, parts joined by max-plus segments, common point marked.

    Bottom coordinates are drawn on the lower or left frame edge with a
    hollow marker.
    """
    X = as_pointset(X)
    if X.dim != 2:
        raise ValueError(f"plot needs dimension 2, got {X.dim}")
    labels = list(labels) if labels is not None else [f"x{i + 1}" for i in range(len(X))]
    if len(labels) != len(X):
        raise ValueError("one label per point required")
    common = None
    parts: tuple = ()
    if certificate is not None:
        common = tuple(certificate.common)
        parts = tuple(certificate.parts)
    finite = [c for p in list(X) + ([common] if common else []) for c in p if c is not BOTTOM]
    lo = min(finite, default=Fraction(0))
    hi = max(finite, default=Fraction(1))
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    pad = (hi - lo) / 10
    lo, hi = lo - pad, hi + pad
    edge = lo - pad / 2  # where bottom coordinates are drawn
    margin = 30
    span = float(hi - lo)

    def disp(p):
        return tuple(edge if c is BOTTOM else c for c in p)

    def sx(v):
        return margin + (float(v - lo) / span) * (size - 2 * margin)

    def sy(v):
        return size - margin - (float(v - lo) / span) * (size - 2 * margin)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{size // 2}" y="16" text-anchor="middle" font-size="12">{escape(title)}</text>')
    x0, y0, x1, y1 = sx(lo), sy(lo), sx(hi), sy(hi)
    out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" height="{_fmt(y0 - y1)}" fill="none" stroke="#999"/>')
    out.append(f'<text x="{_fmt(x0)}" y="{_fmt(y0 + 14)}" font-size="10">{escape(str(lo))}</text>')
    out.append(f'<text x="{_fmt(x1)}" y="{_fmt(y0 + 14)}" font-size="10" text-anchor="end">{escape(str(hi))}</text>')
    out.append(f'<text x="{_fmt(x0 - 4)}" y="{_fmt(y1 + 10)}" font-size="10" text-anchor="end">{escape(str(hi))}</text>')

    color = {}
    for k, part in enumerate(parts):
        c = PALETTE[k % len(PALETTE)]
        for i in part:
            color[i] = c
        idx = sorted(part)
        for a, b in zip(idx, idx[1:]):
            path = tropical_segment(disp(X[a]), disp(X[b]))
            pts = " ".join(f"{_fmt(sx(p[0]))},{_fmt(sy(p[1]))}" for p in path)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{c}" stroke-width="2"/>')

    for i, p in enumerate(X):
        q = disp(p)
        cx, cy = sx(q[0]), sy(q[1])
        c = color.get(i, "#333")
        if any(v is BOTTOM for v in p):
            out.append(f'<rect x="{_fmt(cx - 4)}" y="{_fmt(cy - 4)}" width="8" height="8" fill="white" stroke="{c}" stroke-width="2"/>')
        else:
            out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="4" fill="{c}"/>')
        out.append(f'<text x="{_fmt(cx + 6)}" y="{_fmt(cy - 6)}" font-size="11">{escape(labels[i])}</text>')

    if common is not None:
        q = disp(common)
        cx, cy = sx(q[0]), sy(q[1])
        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="7" fill="none" stroke="black" stroke-width="2"/>')
        out.append(f'<text x="{_fmt(cx + 8)}" y="{_fmt(cy + 14)}" font-size="11" font-weight="bold">x</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
