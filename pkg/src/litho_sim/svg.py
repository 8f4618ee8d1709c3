"""Minimal self-contained SVG polyline chart.

A convenience view only; the CSV output is authoritative.
"""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#333333")


def polyline_svg(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str = "",
    width: int = 640,
    height: int = 400,
    margin: int = 48,
) -> str:
    """Render ``(label, x, y)`` series as polylines on shared axes."""
    xs = np.concatenate([np.asarray(x, float) for _, x, _ in series])
    ys = np.concatenate([np.asarray(y, float) for _, _, y in series])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = width - 2 * margin, height - 2 * margin

    def sx(v):
        return margin + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return height - margin - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{pw}" height="{ph}" fill="none" stroke="#888"/>',
        f'<text x="{width / 2:.1f}" y="{margin / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<text x="{margin}" y="{height - margin / 3:.1f}" font-family="sans-serif" '
        f'font-size="11">{x0:.4g}</text>',
        f'<text x="{width - margin}" y="{height - margin / 3:.1f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{x1:.4g}</text>',
        f'<text x="{margin - 4}" y="{height - margin:.1f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y0:.4g}</text>',
        f'<text x="{margin - 4}" y="{margin + 10}" text-anchor="end" '
        f'font-family="sans-serif" font-size="11">{y1:.4g}</text>',
    ]
    for i, (label, x, y) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(
            f'<text x="{width - margin - 4}" y="{margin + 16 + 14 * i}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
