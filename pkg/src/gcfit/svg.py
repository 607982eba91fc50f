"""Self-contained SVG scatter plot of GCF versus GF.

No plotting dependency: the decision artifact must render anywhere.
Output is deterministic for identical inputs (fixed viewport, fixed
number formatting).
"""

from __future__ import annotations

import math

WIDTH = 800
HEIGHT = 600
MARGIN_LEFT = 70
MARGIN_RIGHT = 50
MARGIN_TOP = 40
MARGIN_BOTTOM = 60


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _x_range(gfs) -> tuple[float, float]:
    finite = [g for g in gfs if math.isfinite(g)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def scatter_svg(points) -> str:
    """Render (gf, gcf, label) triples.

    Finite points are circles; points with infinite GF are pinned to the
    right (+inf) or left (-inf) margin as diamonds.
    """
    points = list(points)
    x0, x1 = _x_range([p[0] for p in points])
    y0, y1 = -1.1, 1.1
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        if x == math.inf:
            return MARGIN_LEFT + plot_w
        if x == -math.inf:
            return float(MARGIN_LEFT)
        return MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w

    def sy(y: float) -> float:
        return MARGIN_TOP + (y1 - y) / (y1 - y0) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        # axes
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{MARGIN_TOP + plot_h}" stroke="black"/>',
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP + plot_h}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{MARGIN_TOP + plot_h}" stroke="black"/>',
        f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 15}" '
        f'text-anchor="middle" font-size="14">GF</text>',
        f'<text x="20" y="{MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 20 {MARGIN_TOP + plot_h / 2:.1f})">GCF</text>',
    ]
    # y ticks at -1, 0, 1
    for yt in (-1.0, 0.0, 1.0):
        y = sy(yt)
        parts.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{y:.1f}" x2="{MARGIN_LEFT}" '
            f'y2="{y:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 10}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-size="12">{_fmt(yt)}</text>'
        )
    # x ticks at range ends
    for xt in (x0, (x0 + x1) / 2, x1):
        x = sx(xt)
        parts.append(
            f'<line x1="{x:.1f}" y1="{MARGIN_TOP + plot_h}" x2="{x:.1f}" '
            f'y2="{MARGIN_TOP + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{MARGIN_TOP + plot_h + 20}" text-anchor="middle" '
            f'font-size="12">{_fmt(xt)}</text>'
        )
    for gf_value, gcf_value, label in points:
        x = sx(gf_value)
        y = sy(gcf_value)
        if math.isinf(gf_value):
            s = 5.0
            parts.append(
                f'<polygon points="{x:.1f},{y - s:.1f} {x + s:.1f},{y:.1f} '
                f'{x:.1f},{y + s:.1f} {x - s:.1f},{y:.1f}" fill="firebrick"/>'
            )
        else:
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="steelblue"/>')
        parts.append(
            f'<text x="{x + 7:.1f}" y="{y - 7:.1f}" font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
