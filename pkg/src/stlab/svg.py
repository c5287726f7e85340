"""A tiny standalone SVG writer for log-log line plots."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=30, bottom=50)
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _decades(lo: float, hi: float) -> list[int]:
    return list(range(math.floor(math.log10(lo)), math.ceil(math.log10(hi)) + 1))


def loglog_svg(series: dict[str, list[tuple[float, float]]], title: str = "", xlabel: str = "x", ylabel: str = "") -> str:
    """Render named (x, y) series with positive coordinates on log axes."""
    pts = [(x, y) for s in series.values() for x, y in s if x > 0 and y > 0]
    if not pts:
        raise ValueError("nothing to plot: need positive x and y values")
    xd = _decades(min(p[0] for p in pts), max(p[0] for p in pts))
    yd = _decades(min(p[1] for p in pts), max(p[1] for p in pts))
    x0, x1 = xd[0], max(xd[-1], xd[0] + 1)
    y0, y1 = yd[0], max(yd[-1], yd[0] + 1)
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(x):
        return MARGIN["left"] + pw * (math.log10(x) - x0) / (x1 - x0)

    def sy(y):
        return MARGIN["top"] + ph * (1 - (math.log10(y) - y0) / (y1 - y0))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    for d in range(x0, x1 + 1):
        X = sx(10.0**d)
        out.append(f'<line x1="{X:.2f}" y1="{MARGIN["top"]}" x2="{X:.2f}" y2="{MARGIN["top"] + ph}" stroke="#ddd"/>')
        out.append(f'<text x="{X:.2f}" y="{HEIGHT - MARGIN["bottom"] + 18}" text-anchor="middle">1e{d}</text>')
    for d in range(y0, y1 + 1):
        Y = sy(10.0**d)
        out.append(f'<line x1="{MARGIN["left"]}" y1="{Y:.2f}" x2="{MARGIN["left"] + pw}" y2="{Y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{MARGIN["left"] - 6}" y="{Y + 4:.2f}" text-anchor="end">1e{d}</text>')
    out.append(
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>'
    )
    for k, (name, s) in enumerate(series.items()):
        color = COLORS[k % len(COLORS)]
        good = [(x, y) for x, y in s if x > 0 and y > 0]
        if good:
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in good)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"/>')
            for x, y in good:
                out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" fill="{color}"/>')
        ly = MARGIN["top"] + 16 + 16 * k
        out.append(f'<text x="{MARGIN["left"] + 10}" y="{ly}" fill="{color}">{escape(name)}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="18" text-anchor="middle">{escape(title)}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2}" y="{HEIGHT - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(
            f'<text x="14" y="{MARGIN["top"] + ph / 2}" text-anchor="middle" '
            f'transform="rotate(-90 14 {MARGIN["top"] + ph / 2})">{escape(ylabel)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
