"""Deterministic SVG rendering of planar subdivisions, webs and fan sections."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from recreg.complex import Complex, Fan, Subdivision, convex_hull_2d, section_points, walls
from recreg.rational import Vector

SIZE = 1000
MARGIN = 40
PALETTE = ("#e6f0fa", "#fbe9d7", "#e3f4e1", "#f6e1f0", "#fff6cc", "#e0f2f1", "#eeeeee",
           "#fde0dc", "#e8eaf6", "#f1f8e9")


def _fmt(x: Fraction) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    def __init__(self, pts: Sequence[Vector]):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys)) or Fraction(1)
        self.scale = Fraction(SIZE - 2 * MARGIN) / span

    def __call__(self, p: Vector) -> str:
        x = MARGIN + (p[0] - self.x0) * self.scale
        y = MARGIN + (self.y1 - p[1]) * self.scale
        return f"{_fmt(x)},{_fmt(y)}"


def planar_points(c: Complex, height=Fraction(-1, 8)) -> tuple[Vector, ...]:
    if isinstance(c, Fan):
        if c.dimension != 3:
            raise ValueError("only fans in dimension 3 render through a section")
        return section_points(c, height)
    if c.dimension != 2:
        raise ValueError("SVG output needs a planar subdivision")
    return c.config.points


def render(c: Complex, *, relaxed: Iterable[str] = (), violated: Iterable[str] = (),
           groups: Sequence[Sequence[int]] | None = None, labels: bool = True,
           height=Fraction(-1, 8)) -> str:
    """SVG text: one polygon per cell, interior walls as lines.

    ``relaxed`` walls are dashed, ``violated`` walls drawn red, and cells
    of the same ``groups`` entry share a fill colour.
    """
    pts = planar_points(c, height)
    frame = _Frame(pts)
    relaxed, violated = set(relaxed), set(violated)
    colour = {}
    for k, g in enumerate(groups or [[i] for i in range(len(c.cells))]):
        for i in g:
            colour[i] = PALETTE[k % len(PALETTE)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
           f'width="{SIZE}" height="{SIZE}">',
           '<g id="cells" stroke="#333333" stroke-width="1.5">']
    for i, cell in enumerate(c.cells):
        poly = convex_hull_2d([pts[v] for v in cell])
        out.append(f'<polygon id="cell-{i}" points="{" ".join(frame(p) for p in poly)}" '
                   f'fill="{colour.get(i, PALETTE[0])}"/>')
    out.append("</g>")
    out.append('<g id="walls" stroke-width="2.5">')
    for w in walls(c):
        ridge = sorted(w.ridge, key=lambda v: pts[v])
        a, b = pts[ridge[0]], pts[ridge[-1]]
        style = ' stroke="#cc0000"' if w.label in violated else ' stroke="#333333"'
        if w.label in relaxed:
            style += ' stroke-dasharray="12,8" class="relaxed"'
        x1, y1 = frame(a).split(",")
        x2, y2 = frame(b).split(",")
        out.append(f'<line id="wall-{w.label}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{style}/>')
    out.append("</g>")
    if labels:
        out.append('<g id="labels" font-family="sans-serif" font-size="18" text-anchor="middle">')
        for i, cell in enumerate(c.cells):
            cx = sum(pts[v][0] for v in cell) / len(cell)
            cy = sum(pts[v][1] for v in cell) / len(cell)
            x, y = frame((cx, cy)).split(",")
            name = c.cell_labels[i] if c.cell_labels else str(i)
            out.append(f'<text x="{x}" y="{y}">{name}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(c: Complex, path, **kwargs) -> Path:
    p = Path(path)
    p.write_text(render(c, **kwargs))
    return p
