"""Deterministic SVG drawings of configurations, stresses and flexes.

The window is the bounding box of the finite points padded by 20% on each
side.  Lines are clipped to it exactly (rationals) and only converted to
floats when written.  Points at infinity become arrows on the frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple
from xml.sax.saxutils import escape

from .errors import PreconditionError
from .geometry import Configuration, HomogeneousTriple, format_rational
from .rigidity import FlexVector, NO_PINS, PinningSystem, StressVector

PAD = Fraction(1, 5)
LABEL_PARAM = Fraction(3, 20)

Pt = Tuple[Fraction, Fraction]


def _esc(text: str) -> str:
    return escape(text, {'"': "&quot;"})


@dataclass
class SvgOptions:
    pins: PinningSystem = NO_PINS
    stress: Optional[StressVector] = None
    stress_anchor: Optional[Tuple[str, str]] = None
    anchor_value: Fraction = Fraction(1)
    flex: Optional[FlexVector] = None
    scale: float = 1.0
    width: int = 480
    point_labels: bool = True


def rescale_stress(stress: StressVector, anchor: Optional[Tuple[str, str]], value=1) -> StressVector:
    """Scale so ``stress[anchor] == value``; no anchor leaves it unchanged."""
    if anchor is None:
        return stress
    w = stress[anchor]
    if w == 0:
        raise PreconditionError(f"anchor incidence {anchor} carries zero stress")
    return stress.scaled(Fraction(value) / w)


def _window(config: Configuration) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    finite = [t.affine() for t in config.point_coords.values() if t.z != 0]
    if not finite:
        finite = [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in finite]
    ys = [p[1] for p in finite]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Fraction(1))
    # square-ish window so lines keep their slopes
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    w = max(x1 - x0, span / 2)
    h = max(y1 - y0, span / 2)
    w, h = w * (1 + 2 * PAD), h * (1 + 2 * PAD)
    return cx - w / 2, cx + w / 2, cy - h / 2, cy + h / 2


def clip_line(l: HomogeneousTriple, box) -> Optional[Tuple[Pt, Pt]]:
    """Exact segment of ``a x + b y + c = 0`` inside the box, or None."""
    a, b, c = l.coords
    x0, x1, y0, y1 = box
    hits: List[Pt] = []
    if b != 0:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 <= y <= y1:
                hits.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 <= x <= x1:
                hits.append((x, y))
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def _frame_arrow(direction: Tuple[Fraction, Fraction], box) -> Tuple[Pt, Pt]:
    """Arrow from the centre towards the frame along an ideal direction."""
    x0, x1, y0, y1 = box
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    dx, dy = direction
    ts = []
    if dx:
        ts.append(((x1 if dx > 0 else x0) - cx) / dx)
    if dy:
        ts.append(((y1 if dy > 0 else y0) - cy) / dy)
    t = min(ts)
    tip = (cx + t * dx, cy + t * dy)
    tail = (cx + t * dx * Fraction(4, 5), cy + t * dy * Fraction(4, 5))
    return tail, tip


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(config: Configuration, options: Optional[SvgOptions] = None) -> str:
    opts = options or SvgOptions()
    box = _window(config)
    x0, x1, y0, y1 = box
    k = opts.width / float(x1 - x0)
    height = float(y1 - y0) * k

    def sx(p: Pt) -> str:
        return _fmt(float(p[0] - x0) * k)

    def sy(p: Pt) -> str:
        return _fmt(float(y1 - p[1]) * k)

    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.width}" '
        f'height="{_fmt(height)}" viewBox="0 0 {opts.width} {_fmt(height)}">',
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
        "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c03030\"/></marker></defs>",
        f'<rect x="0" y="0" width="{opts.width}" height="{_fmt(height)}" fill="white" stroke="#999"/>',
    ]

    out.append('<g id="lines" stroke="#333" stroke-width="1.2">')
    for lid in config.lines:
        seg = clip_line(config.line_coords[lid], box)
        if seg is None:
            continue
        (p, q) = seg
        out.append(f'<line id="line-{_esc(lid)}" x1="{sx(p)}" y1="{sy(p)}" x2="{sx(q)}" y2="{sy(q)}"/>')
    out.append("</g>")

    origin = (Fraction(0), Fraction(0))
    if x0 <= 0 <= x1 and y0 <= 0 <= y1:
        out.append(f'<circle id="origin" cx="{sx(origin)}" cy="{sy(origin)}" r="2.5" fill="black"/>')

    finite: Dict[str, Pt] = {p: t.affine() for p, t in config.point_coords.items() if t.z != 0}

    if opts.stress is not None:
        stress = rescale_stress(opts.stress, opts.stress_anchor, opts.anchor_value)
        out.append('<g id="stresses" font-family="sans-serif" font-size="10" fill="#1a4fa0">')
        for p, l in config.incidences:
            if p not in finite:
                continue
            on_line = [finite[q] for q in config.structure.points_on(l) if q in finite]
            mx = sum(q[0] for q in on_line) / len(on_line)
            my = sum(q[1] for q in on_line) / len(on_line)
            px, py = finite[p]
            pos = (px + LABEL_PARAM * (mx - px), py + LABEL_PARAM * (my - py))
            out.append(f'<text class="stress" data-incidence="{_esc(p)}|{_esc(l)}" x="{sx(pos)}" '
                       f'y="{sy(pos)}" text-anchor="middle">{format_rational(stress[(p, l)])}</text>')
        out.append("</g>")

    if opts.flex is not None:
        out.append('<g id="flex" stroke="#c03030" stroke-width="1.5" marker-end="url(#arrow)">')
        s = Fraction(opts.scale).limit_denominator(10 ** 6)
        for p, (dx, dy) in opts.flex.point_velocity.items():
            if p not in finite or (dx == 0 and dy == 0):
                continue
            a = finite[p]
            b = (a[0] + s * dx, a[1] + s * dy)
            out.append(f'<line class="flex" data-point="{_esc(p)}" x1="{sx(a)}" y1="{sy(a)}" '
                       f'x2="{sx(b)}" y2="{sy(b)}"/>')
        out.append("</g>")

    out.append('<g id="ideal-points" stroke="#666" stroke-width="1" marker-end="url(#arrow)">')
    for pid, t in config.point_coords.items():
        if t.z == 0:
            tail, tip = _frame_arrow((t.x, t.y), box)
            out.append(f'<line class="ideal" data-point="{_esc(pid)}" x1="{sx(tail)}" y1="{sy(tail)}" '
                       f'x2="{sx(tip)}" y2="{sy(tip)}"/>')
    out.append("</g>")

    out.append('<g id="points" stroke="black" stroke-width="1.2" font-family="sans-serif" font-size="11">')
    for pid, xy in finite.items():
        # pinned points are drawn hollow, free points filled
        fill = "white" if pid in opts.pins.points else "black"
        out.append(f'<circle class="point" data-point="{_esc(pid)}" cx="{sx(xy)}" cy="{sy(xy)}" r="4" fill="{fill}"/>')
        if opts.point_labels:
            lx = _fmt(float(xy[0] - x0) * k + 6)
            ly = _fmt(float(y1 - xy[1]) * k - 6)
            out.append(f'<text x="{lx}" y="{ly}" stroke="none" fill="#555">{_esc(pid)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
