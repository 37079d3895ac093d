"""Standalone SVG figures: rectangles, optional piercing lines, shallow vertices."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .arrangement import ArrangementProfile
from .geometry import Family
from .piercing import PiercingStructure

# depth 0, 1, 2, ... (cycled beyond the end)
DEPTH_COLORS = ("#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")
RECT_COLORS = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#bcbd22")


def _num(v: float) -> str:
    # fixed formatting keeps output byte-stable
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(f: Family, profile: ArrangementProfile, k: int = 0,
               horizontal: PiercingStructure | None = None,
               vertical: PiercingStructure | None = None,
               width_px: int = 800) -> str:
    if f.n:
        x0 = min(r.x_min for r in f)
        x1 = max(r.x_max for r in f)
        y0 = min(r.y_min for r in f)
        y1 = max(r.y_max for r in f)
    else:
        x0 = y0 = 0
        x1 = y1 = 1
    mx = (x1 - x0) * 0.05
    my = (y1 - y0) * 0.05
    vx, vy = x0 - mx, y0 - my
    vw, vh = (x1 - x0) + 2 * mx, (y1 - y0) + 2 * my
    height_px = max(1, round(width_px * vh / vw))
    unit = max(vw, vh) / width_px

    def Y(y):
        # flip so larger y is drawn higher
        return y0 + y1 - y

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" height="{height_px}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}" style="background:#ffffff">',
        '<g class="rects">',
    ]
    for r in f:
        color = RECT_COLORS[r.id % len(RECT_COLORS)]
        out.append(f'<rect id="r{r.id}" x="{r.x_min}" y="{Y(r.y_max)}" width="{r.x_max - r.x_min}" '
                   f'height="{r.y_max - r.y_min}" fill="{color}" fill-opacity="0.12" stroke="{color}" '
                   f'stroke-width="{_num(1.5 * unit)}"/>')
    out.append('</g>')
    dash = f'{_num(6 * unit)},{_num(4 * unit)}'
    font = _num(12 * unit)
    if horizontal is not None:
        out.append('<g class="lines-horizontal">')
        for i, y in enumerate(horizontal.lines, 1):
            out.append(f'<line x1="{_num(vx)}" y1="{Y(y)}" x2="{_num(vx + vw)}" y2="{Y(y)}" stroke="#444444" '
                       f'stroke-width="{_num(unit)}" stroke-dasharray="{dash}"/>')
            out.append(f'<text x="{_num(vx + 2 * unit)}" y="{_num(Y(y) - 2 * unit)}" font-size="{font}">'
                       f'{escape(f"l{i}")}</text>')
        out.append('</g>')
    if vertical is not None:
        out.append('<g class="lines-vertical">')
        for j, x in enumerate(vertical.lines, 1):
            out.append(f'<line x1="{x}" y1="{_num(vy)}" x2="{x}" y2="{_num(vy + vh)}" stroke="#444444" '
                       f'stroke-width="{_num(unit)}" stroke-dasharray="{dash}"/>')
            out.append(f'<text x="{_num(x + 2 * unit)}" y="{_num(vy + 14 * unit)}" font-size="{font}">'
                       f'{escape(f"h{j}")}</text>')
        out.append('</g>')
    out.append('<g class="vertices">')
    radius = _num(3 * unit)
    for v in profile.vertices:
        if v.depth <= k:
            color = DEPTH_COLORS[v.depth % len(DEPTH_COLORS)]
            out.append(f'<circle cx="{v.x}" cy="{Y(v.y)}" r="{radius}" fill="{color}" data-depth="{v.depth}"/>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
