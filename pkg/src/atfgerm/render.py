"""Deterministic SVG drawings of plane base diagrams.

Coordinates are exact rationals until the very end, where they are printed
with a fixed 20-digit decimal expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atf import ATFDiagram
from .errors import Unbounded
from .polytope import chambers_2d

DIGITS = 20


@dataclass(frozen=True)
class RenderOptions:
    width: int = 400
    height: int = 400
    chambers: bool = False
    nodes: bool = True
    labels: bool = False
    margin: int = 20

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("image dimensions must be positive")


def decimal(x: Fraction, digits: int = DIGITS) -> str:
    """Round half away from zero to ``digits`` places, exactly."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    whole, frac = divmod(q, 10**digits)
    if q == 0:
        sign = ""
    return f"{sign}{whole}.{frac:0{digits}d}"


def render_svg(diagram: ATFDiagram, opts: RenderOptions = RenderOptions()) -> str:
    if not diagram.polytope.bounded:
        raise Unbounded("cannot draw an unbounded region")
    verts = diagram.vertices()
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0)
    inner_w = Fraction(opts.width - 2 * opts.margin)
    inner_h = Fraction(opts.height - 2 * opts.margin)
    scale = min(inner_w, inner_h) / span

    def px(p) -> tuple[str, str]:
        return (
            decimal(opts.margin + (p[0] - x0) * scale),
            decimal(opts.height - opts.margin - (p[1] - y0) * scale),
        )

    def pts(ps) -> str:
        return " ".join(",".join(px(p)) for p in ps)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.width}" height="{opts.height}" '
        f'viewBox="0 0 {opts.width} {opts.height}">',
    ]
    if opts.chambers:
        palette = ("#fde2e4", "#e2ece9", "#dfe7fd", "#fff1c1", "#e8dff5", "#d7f9f1")
        for i, tri in chambers_2d(diagram.polytope):
            out.append(
                f'<polygon class="chamber" points="{pts(tri)}" fill="{palette[i % len(palette)]}" '
                f'stroke="#999999" stroke-width="0.5"/>'
            )
    out.append(f'<polygon class="outline" points="{pts(verts)}" fill="none" stroke="#000000" stroke-width="2"/>')
    if opts.nodes:
        arm = Fraction(5)
        for k, node in enumerate(diagram.nodes):
            end = diagram.cut_vertex(k)
            (ax, ay), (bx, by) = px(node.position), px(end)
            out.append(
                f'<line class="cut" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#444444" '
                f'stroke-width="1" stroke-dasharray="4 3"/>'
            )
            cx = opts.margin + (node.position[0] - x0) * scale
            cy = opts.height - opts.margin - (node.position[1] - y0) * scale
            d = (
                f"M {decimal(cx - arm)} {decimal(cy - arm)} L {decimal(cx + arm)} {decimal(cy + arm)} "
                f"M {decimal(cx - arm)} {decimal(cy + arm)} L {decimal(cx + arm)} {decimal(cy - arm)}"
            )
            out.append(f'<path class="node" d="{d}" stroke="#cc0000" stroke-width="2"/>')
    if opts.labels:
        for v in verts:
            x, y = px(v)
            out.append(f'<text class="label" x="{x}" y="{y}" font-size="10">({v[0]}, {v[1]})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
