"""
Minimal SVG emitter for PEP curves.

Draws log10(value) against SNR in dB, one polyline per curve and one dotted
reference line per predicted exponent. Output depends only on the input
rows, so identical CSVs give byte-identical SVGs.
"""

import math
import logging
from html import escape
from typing import Dict, List, Tuple

import pandas as pd

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

WIDTH = 640
HEIGHT = 480
MARGIN_LEFT = 70
MARGIN_RIGHT = 220
MARGIN_TOP = 20
MARGIN_BOTTOM = 50
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]
GROUP_KEYS = ['source', 'n', 'm', 'alpha']


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _groups(df: pd.DataFrame) -> List[Tuple[Tuple, pd.DataFrame]]:
    groups = []
    for key, group in df.groupby(GROUP_KEYS, sort=False):
        rows = group[group['value'] > 0].sort_values('gamma_db', kind='mergesort')
        if not rows.empty:
            groups.append((key, rows))
    return groups


class _Frame:
    """Maps (dB, log10 value) to SVG pixel coordinates."""

    def __init__(self, x_min, x_max, y_min, y_max):
        self.x_min, self.x_max = x_min, x_max if x_max > x_min else x_min + 1.0
        self.y_min, self.y_max = y_min, y_max if y_max > y_min else y_min + 1.0
        self.plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        self.plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(self, x: float) -> float:
        return MARGIN_LEFT + (x - self.x_min) / (self.x_max - self.x_min) * self.plot_w

    def py(self, y: float) -> float:
        return MARGIN_TOP + (self.y_max - y) / (self.y_max - self.y_min) * self.plot_h


def render_svg(df: pd.DataFrame, title: str = "") -> str:
    """
    Render curve rows (the CSV schema) as an SVG document.

    Args:
        df: Rows with gamma_db, value, source, n, m, alpha, predicted_exponent
        title: Optional caption drawn above the plot

    Returns:
        The SVG text
    """
    groups = _groups(df)
    if not groups:
        raise ConfigError("No positive values to plot")

    all_rows = pd.concat([rows for _, rows in groups])
    logs = [math.log10(v) for v in all_rows['value']]
    frame = _Frame(float(all_rows['gamma_db'].min()), float(all_rows['gamma_db'].max()),
                   math.floor(min(logs)), math.ceil(max(logs)))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<clipPath id="plot"><rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" '
        f'width="{frame.plot_w}" height="{frame.plot_h}"/></clipPath>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{frame.plot_w}" height="{frame.plot_h}" '
        'fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN_LEFT}" y="14" font-size="12">{escape(title)}</text>')

    for decade in range(int(frame.y_min), int(frame.y_max) + 1):
        y = _fmt(frame.py(decade))
        out.append(f'<line x1="{MARGIN_LEFT}" y1="{y}" x2="{_fmt(frame.px(frame.x_max))}" y2="{y}" '
                   'stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_LEFT - 6}" y="{y}" font-size="10" text-anchor="end">1e{decade}</text>')
    step = 10.0 if frame.x_max - frame.x_min > 20 else 5.0
    tick = math.ceil(frame.x_min / step) * step
    while tick <= frame.x_max + 1e-9:
        x = _fmt(frame.px(tick))
        out.append(f'<text x="{x}" y="{HEIGHT - MARGIN_BOTTOM + 16}" font-size="10" '
                   f'text-anchor="middle">{tick:g}</text>')
        tick += step
    out.append(f'<text x="{_fmt(MARGIN_LEFT + frame.plot_w / 2)}" y="{HEIGHT - 10}" font-size="12" '
               'text-anchor="middle">SNR (dB)</text>')

    anchors: Dict[int, Tuple[float, float]] = {}
    legend_y = MARGIN_TOP + 10
    for number, (key, rows) in enumerate(groups):
        source, n, m, alpha = key
        color = PALETTE[number % len(PALETTE)]
        points = " ".join(f"{_fmt(frame.px(db))},{_fmt(frame.py(math.log10(v)))}"
                          for db, v in zip(rows['gamma_db'], rows['value']))
        out.append(f'<polyline clip-path="url(#plot)" fill="none" stroke="{color}" '
                   f'stroke-width="1.5" points="{points}"/>')
        label = f"{source} {int(n)}x{int(m)} alpha={alpha}"
        lx = WIDTH - MARGIN_RIGHT + 10
        out.append(f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 20}" y2="{legend_y}" stroke="{color}"/>')
        out.append(f'<text x="{lx + 25}" y="{legend_y + 4}" font-size="10">{escape(label)}</text>')
        legend_y += 14
        exponent = int(rows['predicted_exponent'].iloc[-1])
        if exponent not in anchors:
            anchors[exponent] = (float(rows['gamma_db'].iloc[-1]), math.log10(float(rows['value'].iloc[-1])))

    for exponent, (db0, log0) in anchors.items():
        # slope of -exponent decades per 10 dB
        def line_y(db):
            return log0 - exponent * (db - db0) / 10.0
        out.append(
            f'<line clip-path="url(#plot)" x1="{_fmt(frame.px(frame.x_min))}" '
            f'y1="{_fmt(frame.py(line_y(frame.x_min)))}" x2="{_fmt(frame.px(frame.x_max))}" '
            f'y2="{_fmt(frame.py(line_y(frame.x_max)))}" stroke="gray" stroke-dasharray="2,3"/>'
        )
        lx = WIDTH - MARGIN_RIGHT + 10
        out.append(f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 20}" y2="{legend_y}" stroke="gray" '
                   'stroke-dasharray="2,3"/>')
        out.append(f'<text x="{lx + 25}" y="{legend_y + 4}" font-size="10">asymptote {exponent}</text>')
        legend_y += 14

    out.append('</svg>')
    logger.debug(f"Rendered {len(groups)} curves and {len(anchors)} asymptotes")
    return "\n".join(out) + "\n"
