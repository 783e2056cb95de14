"""Flat-torus drawings as deterministic SVG 1.1."""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from .torus import TorusGraph

PALETTE = ("#2e8b57", "#c0392b", "#1f5fbf", "#d68910", "#7d3c98", "#17a589", "#a04000", "#566573")
SCALE = 360
MARGIN = 40


def _pieces(p, q):
    """Split a segment of the universal cover at the integer grid lines."""
    ts = {Fraction(0), Fraction(1)}
    for axis in (0, 1):
        lo, hi = sorted((p[axis], q[axis]))
        if lo == hi:
            continue
        for n in range(math.ceil(lo), math.floor(hi) + 1):
            ts.add((n - p[axis]) / (q[axis] - p[axis]))
    ts = sorted(t for t in ts if 0 <= t <= 1)
    out = []
    for t0, t1 in zip(ts, ts[1:]):
        a = (p[0] + t0 * (q[0] - p[0]), p[1] + t0 * (q[1] - p[1]))
        b = (p[0] + t1 * (q[0] - p[0]), p[1] + t1 * (q[1] - p[1]))
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        sx, sy = math.floor(mid[0]), math.floor(mid[1])
        out.append(((a[0] - sx, a[1] - sy), (b[0] - sx, b[1] - sy)))
    return out


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, tiles: int):
        self.tiles = tiles
        self.cell = SCALE / tiles
        self.size = SCALE + 2 * MARGIN
        self.lo = -(tiles // 2)

    def xy(self, p, dx=0, dy=0):
        x = MARGIN + (float(p[0]) + dx - self.lo) * self.cell
        y = MARGIN + (self.tiles - (float(p[1]) + dy - self.lo)) * self.cell
        return _num(x), _num(y)


def _arrow(c: _Canvas, a, b, count: int) -> list[str]:
    """Identification marks: ``count`` chevrons pointing from a to b."""
    out = []
    (x0, y0), (x1, y1) = [tuple(map(float, c.xy(p))) for p in (a, b)]
    ux, uy = (x1 - x0), (y1 - y0)
    norm = math.hypot(ux, uy)
    ux, uy = ux / norm, uy / norm
    for k in range(count):
        cx = (x0 + x1) / 2 + ux * 8 * k
        cy = (y0 + y1) / 2 + uy * 8 * k
        pts = [(cx - 6 * ux - 5 * uy, cy - 6 * uy + 5 * ux), (cx, cy), (cx - 6 * ux + 5 * uy, cy - 6 * uy - 5 * ux)]
        out.append(
            '<polyline points="{}" fill="none" stroke="#000" stroke-width="1.5"/>'.format(
                " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
            )
        )
    return out


def render(tg: TorusGraph, universal_cover: bool = False, title: str | None = None) -> str:
    tiles = 3 if universal_cover else 1
    c = _Canvas(tiles)
    shifts = [(dx, dy) for dy in range(c.lo, c.lo + tiles) for dx in range(c.lo, c.lo + tiles)]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c.size}" height="{c.size}" '
        f'viewBox="0 0 {c.size} {c.size}">',
    ]
    if title:
        lines.append(f"<title>{escape(title)}</title>")
    lines.append('<rect width="100%" height="100%" fill="#fff"/>')
    lines.append('<g id="frame" fill="none">')
    for dx, dy in shifts:
        x, y = c.xy((0, 1), dx, dy)
        home = (dx, dy) == (0, 0)
        colour, width = ("#000", 2) if home else ("#bbb", 1)
        lines.append(f'<rect x="{x}" y="{y}" width="{_num(c.cell)}" height="{_num(c.cell)}" stroke="{colour}" stroke-width="{width}"/>')
    lines += _arrow(c, (0, 0), (0, 1), 1) + _arrow(c, (1, 0), (1, 1), 1)
    lines += _arrow(c, (0, 0), (1, 0), 2) + _arrow(c, (0, 1), (1, 1), 2)
    lines.append("</g>")

    lines.append('<g id="edges" fill="none" stroke-width="2" stroke-linecap="round">')
    for e, poly in tg.lifts.items():
        tag = tg.curve.get(e)
        colour = "#000" if tag is None else PALETTE[tag % len(PALETTE)]
        dash = ' stroke-dasharray="6 4"' if tag is not None and tag % 2 == 1 else ""
        segs = [s for p, q in zip(poly, poly[1:]) for s in _pieces(p, q)]
        for dx, dy in shifts:
            for a, b in segs:
                (x1, y1), (x2, y2) = c.xy(a, dx, dy), c.xy(b, dx, dy)
                lines.append(
                    f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}"{dash} data-edge="{escape(str(e))}"/>'
                )
    lines.append("</g>")

    lines.append('<g id="vertices" font-family="sans-serif" font-size="11">')
    for v, p in tg.position.items():
        for dx, dy in shifts:
            x, y = c.xy(p, dx, dy)
            lines.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="#000"/>')
            if (dx, dy) == (0, 0):
                lines.append(f'<text x="{_num(float(x) + 5)}" y="{_num(float(y) - 5)}">{escape(str(v))}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
