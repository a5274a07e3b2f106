"""Static SVG pictures of a unit ball with optional overlays.

The output is built by hand (no plotting library) so that the same input
always yields the same bytes.  Coordinates are printed with six decimals.
"""
from __future__ import annotations

from typing import Iterable

from .geometry import UnitBall2D, Vec2, boundary_point
from .hexagon import inscribe
from .minmax import MinMaxCertificate, f_min_exact, f_value
from .rational import Q

__all__ = ["OVERLAYS", "render_svg"]

OVERLAYS = ("hexagon", "minimizers", "heat")
HEAT_TICKS_PER_EDGE = 8


def _num(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _pt(p: Vec2, scale: float) -> str:
    # SVG's y axis points down
    return f"{_num(float(p.x) * scale)},{_num(-float(p.y) * scale)}"


def _polyline(points: Iterable[Vec2], scale: float) -> str:
    return " ".join(_pt(p, scale) for p in points)


def _heat_color(frac: float) -> str:
    # blue (low f) to red (high f)
    r = round(255 * frac)
    b = round(255 * (1 - frac))
    return f"#{r:02x}40{b:02x}"


def render_svg(
    ball: UnitBall2D,
    overlays: Iterable[str] = (),
    v1: Vec2 | None = None,
    certificate: MinMaxCertificate | None = None,
) -> str:
    """SVG document for ``ball`` in the fixed view box [-1.2, 1.2]^2.

    Balls reaching outside [-1, 1]^2 are shrunk uniformly to fit.  The
    hexagon overlay is inscribed at ``v1`` (default: the first vertex).
    """
    overlays = tuple(overlays)
    unknown = set(overlays) - set(OVERLAYS)
    if unknown:
        raise ValueError(f"unknown overlay(s): {', '.join(sorted(unknown))}")
    reach = max(max(abs(float(v.x)), abs(float(v.y))) for v in ball.vertices)
    scale = 1.0 / reach if reach > 1 else 1.0
    stroke = _num(0.012)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.2 -1.2 2.4 2.4" width="480" height="480">',
        '<rect x="-1.2" y="-1.2" width="2.4" height="2.4" fill="white"/>',
        f'<line x1="-1.2" y1="0" x2="1.2" y2="0" stroke="#dddddd" stroke-width="{_num(0.006)}"/>',
        f'<line x1="0" y1="-1.2" x2="0" y2="1.2" stroke="#dddddd" stroke-width="{_num(0.006)}"/>',
        f'<polygon class="ball" points="{_polyline(ball.vertices, scale)}" '
        f'fill="#f4f4f4" stroke="black" stroke-width="{stroke}"/>',
    ]

    cert = certificate
    if cert is None and ("minimizers" in overlays or "heat" in overlays):
        cert = f_min_exact(ball)

    if "heat" in overlays:
        ticks = []
        for k in range(ball.n):
            for j in range(HEAT_TICKS_PER_EDGE):
                t = (Q(k) + Q(j, HEAT_TICKS_PER_EDGE)) / ball.n
                p = boundary_point(ball, t)
                ticks.append((p, f_value(ball, p)))
        lo = cert.min_value
        hi = max(val for _, val in ticks)
        span = float(hi - lo) or 1.0
        lines.append('<g class="heat">')
        for p, val in ticks:
            frac = float(val - lo) / span
            lines.append(
                f'<circle cx="{_num(float(p.x) * scale)}" cy="{_num(-float(p.y) * scale)}" '
                f'r="{_num(0.025)}" fill="{_heat_color(frac)}"/>'
            )
        lines.append("</g>")

    if "minimizers" in overlays:
        lines.append(f'<g class="minimizers" stroke="#d62728" stroke-width="{_num(0.04)}" fill="#d62728">')
        for m in cert.minimizers:
            if m.is_point:
                lines.append(
                    f'<circle cx="{_num(float(m.start.x) * scale)}" '
                    f'cy="{_num(-float(m.start.y) * scale)}" r="{_num(0.035)}"/>'
                )
            else:
                lines.append(f'<polyline points="{_polyline((m.start, m.end), scale)}" fill="none"/>')
        lines.append("</g>")

    if "hexagon" in overlays:
        hexagon = inscribe(ball, v1 if v1 is not None else ball.vertices[0])
        a, b, c = hexagon.vertices
        ring = (a, b, c, -a, -b, -c)
        lines.append('<g class="hexagon">')
        lines.append(
            f'<polygon points="{_polyline(ring, scale)}" fill="none" '
            f'stroke="#1f77b4" stroke-width="{_num(0.008)}" stroke-dasharray="0.03,0.02"/>'
        )
        for p in ring:
            lines.append(
                f'<circle cx="{_num(float(p.x) * scale)}" cy="{_num(-float(p.y) * scale)}" '
                f'r="{_num(0.03)}" fill="#1f77b4"/>'
            )
        lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
