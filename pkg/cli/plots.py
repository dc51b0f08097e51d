"""
Plot data for Lorenz curves: long-format CSV rows and a minimal static SVG.
"""

import math

import numpy as np

from cli.render import format_number

WIDTH = 480
HEIGHT = 480
MARGIN = 48
PALETTE = ('#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b', '#e377c2', '#17becf')


def lorenz_rows(curves):
    rows = []
    for label, curve in curves.items():
        for x, y in curve.points:
            rows.append({'slice': label, 'population': x, 'share': y})
    return rows


class LogAxis:
    """
    Log-scaled share axis from `floor` to 1 with a linear segment covering
    [0, floor] at the bottom, so zero shares stay on the plot.
    """

    def __init__(self, floor=1e-6, linear_fraction=0.1):
        self.floor = floor
        self.linear_fraction = linear_fraction
        self.decades = -math.log10(floor)

    def __call__(self, share):
        if share <= self.floor:
            return self.linear_fraction * share / self.floor
        return self.linear_fraction + (1 - self.linear_fraction) * (
            1 + math.log10(share) / self.decades)

    def ticks(self):
        return [0.0] + [10.0 ** -k for k in range(int(round(self.decades)), -1, -1)]


def _linear(share):
    return share


def _xy(x, y, scale):
    px = MARGIN + x * (WIDTH - 2 * MARGIN)
    py = HEIGHT - MARGIN - scale(y) * (HEIGHT - 2 * MARGIN)
    return f"{px:.2f},{py:.2f}"


def _polyline(points, scale, colour, dash=None):
    coords = ' '.join(_xy(x, y, scale) for x, y in points)
    dashed = f' stroke-dasharray="{dash}"' if dash else ''
    return f'<polyline fill="none" stroke="{colour}" stroke-width="1.5"{dashed} points="{coords}"/>'


def lorenz_svg(curves, log_y=False, log_floor=1e-6):
    """SVG document with one polyline per curve, the equality diagonal and labelled axes."""
    scale = LogAxis(log_floor) if log_y else _linear
    left, right = MARGIN, WIDTH - MARGIN
    top, bottom = MARGIN, HEIGHT - MARGIN

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="10">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
    ]

    # the diagonal is curved under a log axis, so sample it
    diagonal_x = np.linspace(0.0, 1.0, 201) if log_y else np.asarray([0.0, 1.0])
    parts.append(_polyline(zip(diagonal_x, diagonal_x), scale, 'grey', dash='4 3'))

    for tick in np.linspace(0.0, 1.0, 6):
        x = left + tick * (right - left)
        parts.append(f'<text x="{x:.2f}" y="{bottom + 14}" text-anchor="middle">{format_number(tick)}</text>')
    y_ticks = scale.ticks() if log_y else list(np.linspace(0.0, 1.0, 6))
    for tick in y_ticks:
        y = bottom - scale(tick) * (bottom - top)
        parts.append(f'<text x="{left - 4}" y="{y + 3:.2f}" text-anchor="end">{format_number(tick)}</text>')
    parts.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle">cumulative share of members</text>')
    parts.append(f'<text x="14" y="{HEIGHT / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 14 {HEIGHT / 2})">cumulative share of outcome</text>')

    for i, (label, curve) in enumerate(curves.items()):
        colour = PALETTE[i % len(PALETTE)]
        parts.append(_polyline(curve.points, scale, colour))
        parts.append(f'<text x="{left + 8}" y="{top + 12 * (i + 1)}" fill="{colour}">{label}</text>')

    parts.append('</svg>')
    return '\n'.join(parts) + '\n'
