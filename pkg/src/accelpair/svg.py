"""Minimal deterministic SVG line-plot writer.

Hand-rolled on purpose: the plots ship as reproducible artifacts, so the
bytes must depend only on the data.  No plotting library keeps that promise
across versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["Curve", "PlotStyle", "render_line_plot"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_DASH = {
    "solid": None,
    "dashed": "7 4",
    "dotdash": "9 3 2 3",
}


@dataclass(frozen=True)
class Curve:
    label: str
    x: Sequence[float]
    y: Sequence[float]
    dash: str = "solid"  # "solid" | "dashed" | "dotdash"
    color: str | None = None


@dataclass(frozen=True)
class PlotStyle:
    width: int = 720
    height: int = 480
    margin_left: int = 64
    margin_right: int = 16
    margin_top: int = 40
    margin_bottom: int = 52
    font: str = "Helvetica, Arial, sans-serif"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_values(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def render_line_plot(
    curves: Sequence[Curve],
    x_label: str,
    y_label: str,
    title: str,
    style: PlotStyle | None = None,
) -> str:
    """Self-contained SVG document for a set of labeled curves."""
    st = style or PlotStyle()
    xs = [v for c in curves for v in c.x]
    ys = [v for c in curves for v in c.y]
    x_lo, x_hi = (min(xs), max(xs)) if xs else (0.0, 1.0)
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    y_lo = 0.0
    y_hi = max(1.0, max(ys) if ys else 1.0) * 1.06

    px_w = st.width - st.margin_left - st.margin_right
    px_h = st.height - st.margin_top - st.margin_bottom

    def to_px(x: float, y: float) -> tuple[float, float]:
        fx = st.margin_left + (x - x_lo) / (x_hi - x_lo) * px_w
        fy = st.margin_top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * px_h
        return fx, fy

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{st.width}" height="{st.height}" '
        f'viewBox="0 0 {st.width} {st.height}">'
    )
    parts.append(f'<rect width="{st.width}" height="{st.height}" fill="white"/>')
    parts.append(f'<g font-family="{st.font}" font-size="13" fill="#222">')
    parts.append(
        f'<text x="{st.width / 2:.1f}" y="22" text-anchor="middle" font-size="15">{title}</text>'
    )

    # axes frame and ticks
    x0, y0 = to_px(x_lo, y_lo)
    x1, y1 = to_px(x_hi, y_hi)
    parts.append(
        f'<rect x="{x1 - px_w:.2f}" y="{y1:.2f}" width="{px_w:.2f}" height="{px_h:.2f}" '
        f'fill="none" stroke="#444" stroke-width="1"/>'
    )
    for tx in _tick_values(x_lo, x_hi):
        px, py = to_px(tx, y_lo)
        parts.append(f'<line x1="{px:.2f}" y1="{py:.2f}" x2="{px:.2f}" y2="{py + 5:.2f}" stroke="#444"/>')
        parts.append(
            f'<text x="{px:.2f}" y="{py + 20:.2f}" text-anchor="middle">{tx:.3g}</text>'
        )
    for ty in _tick_values(y_lo, y_hi):
        px, py = to_px(x_lo, ty)
        parts.append(f'<line x1="{px - 5:.2f}" y1="{py:.2f}" x2="{px:.2f}" y2="{py:.2f}" stroke="#444"/>')
        parts.append(
            f'<text x="{px - 9:.2f}" y="{py + 4:.2f}" text-anchor="end">{ty:.3g}</text>'
        )
        if ty not in (y_lo,):
            parts.append(
                f'<line x1="{x0:.2f}" y1="{py:.2f}" x2="{x0 + px_w:.2f}" y2="{py:.2f}" '
                f'stroke="#ddd" stroke-width="0.7"/>'
            )
    parts.append(
        f'<text x="{st.margin_left + px_w / 2:.1f}" y="{st.height - 12}" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{st.margin_top + px_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {st.margin_top + px_h / 2:.1f})">{y_label}</text>'
    )

    # curves
    for i, c in enumerate(curves):
        color = c.color or _PALETTE[i % len(_PALETTE)]
        dash = _DASH.get(c.dash)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(x, y) for x, y in zip(c.x, c.y)))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.8"{dash_attr}/>'
        )

    # legend (top right, inside the frame)
    lx = st.margin_left + px_w - 170
    ly = st.margin_top + 12
    box_h = 20 * len(curves) + 10
    parts.append(
        f'<rect x="{lx - 8}" y="{ly - 6}" width="170" height="{box_h}" fill="white" '
        f'fill-opacity="0.85" stroke="#bbb"/>'
    )
    for i, c in enumerate(curves):
        color = c.color or _PALETTE[i % len(_PALETTE)]
        dash = _DASH.get(c.dash)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        yy = ly + 10 + 20 * i
        parts.append(
            f'<line x1="{lx}" y1="{yy}" x2="{lx + 30}" y2="{yy}" stroke="{color}" '
            f'stroke-width="1.8"{dash_attr}/>'
        )
        parts.append(f'<text x="{lx + 38}" y="{yy + 4}">{c.label}</text>')

    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
