"""Deterministic SVG line charts for year series.

Hand-rolled rather than delegated to a plotting library so identical
inputs yield byte-identical documents (golden-file friendly).
"""

from __future__ import annotations

from typing import Sequence

from .errors import AtdeError
from .extractor import YearSeries

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
)

WIDTH, HEIGHT = 900, 520
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 160, 30, 50


def _fmt(x: float) -> str:
    """Stable coordinate formatting: fixed 2 decimals, no negative zero."""
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _fmt_value(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.6g}"


def _nice_ticks(low: float, high: float, count: int = 5) -> list[float]:
    if high <= low:
        return [low]
    span = high - low
    raw_step = span / count
    magnitude = 10 ** int(f"{raw_step:e}".split("e")[1])
    for mult in (1, 2, 5, 10):
        if raw_step <= mult * magnitude:
            step = mult * magnitude
            break
    else:
        step = 10 * magnitude
    first = int(low / step) * step
    ticks = []
    t = first
    while t <= high + step * 1e-9:
        if t >= low - step * 1e-9:
            ticks.append(t)
        t += step
    return ticks or [low]


def emit_plot(series_list: Sequence[YearSeries], title: str = "") -> str:
    """One polyline per series, year on x, value on y, labeled legend.

    All series must agree on their normalized flag; a normalized chart is
    clamped to the [0, 1] value range.
    """
    if not series_list:
        raise AtdeError("nothing to plot: empty series list")
    states = {s.normalized for s in series_list}
    if len(states) > 1:
        raise AtdeError("cannot mix normalized and unnormalized series in one plot")
    normalized = states.pop()

    years = [y for s in series_list for y in s.years()]
    values = [v for s in series_list for v in s.values()]
    x_min, x_max = min(years), max(years)
    y_min = 0.0
    y_max = 1.0 if normalized else float(max(values))
    if y_max <= y_min:
        y_max = y_min + 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    x_span = max(x_max - x_min, 1)

    def sx(year: float) -> float:
        return MARGIN_LEFT + (year - x_min) / x_span * plot_w

    def sy(value: float) -> float:
        return MARGIN_TOP + plot_h - (value - y_min) / (y_max - y_min) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH // 2}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{_escape(title)}</text>'
        )

    axis_y = MARGIN_TOP + plot_h
    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{axis_y}" x2="{MARGIN_LEFT + plot_w}" '
        f'y2="{axis_y}" stroke="black"/>'
    )
    out.append(
        f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" '
        f'y2="{axis_y}" stroke="black"/>'
    )

    for tick in _nice_ticks(x_min, x_max):
        x = sx(tick)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{axis_y}" x2="{_fmt(x)}" y2="{axis_y + 5}" stroke="black"/>'
        )
        out.append(
            f'<text x="{_fmt(x)}" y="{axis_y + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt_value(tick)}</text>'
        )
    for tick in _nice_ticks(y_min, y_max):
        y = sy(tick)
        out.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{_fmt(y)}" x2="{MARGIN_LEFT}" y2="{_fmt(y)}" stroke="black"/>'
        )
        out.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt_value(tick)}</text>'
        )

    legend_x = MARGIN_LEFT + plot_w + 16
    for i, series in enumerate(series_list):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(
            f"{_fmt(sx(year))},{_fmt(sy(value))}" for year, value in series.entries
        )
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        ly = MARGIN_TOP + 14 + i * 18
        out.append(
            f'<line x1="{legend_x}" y1="{ly - 4}" x2="{legend_x + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{legend_x + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="12">{_escape(series.label)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
