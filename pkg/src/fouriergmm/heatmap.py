"""Standalone SVG heatmap for phase-grid results.  No plotting library:
the file is assembled directly, with a fixed 8-stop color ramp
(viridis-like, dark purple at 0 to yellow at 1, linear interpolation
between stops) so identical results render identically everywhere.
"""

from __future__ import annotations

import numpy as np

from .harness import PhaseCell

RAMP_STOPS = (
    (68, 1, 84),
    (70, 50, 126),
    (54, 92, 141),
    (39, 127, 142),
    (31, 161, 135),
    (74, 193, 109),
    (160, 218, 57),
    (253, 231, 37),
)


def ramp_color(v: float) -> str:
    """Map v in [0, 1] (clamped) to #rrggbb along the fixed ramp."""
    v = min(max(float(v), 0.0), 1.0)
    pos = v * (len(RAMP_STOPS) - 1)
    i = min(int(pos), len(RAMP_STOPS) - 2)
    t = pos - i
    lo, hi = RAMP_STOPS[i], RAMP_STOPS[i + 1]
    rgb = tuple(round(a + t * (b - a)) for a, b in zip(lo, hi))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _ticks(values: np.ndarray, max_ticks: int = 7) -> list[float]:
    if values.size <= max_ticks:
        return [float(v) for v in values]
    stride = int(np.ceil(values.size / max_ticks))
    idx = list(range(0, values.size, stride))
    if idx[-1] != values.size - 1:
        idx.append(values.size - 1)
    return [float(values[i]) for i in idx]


def render_phase_svg(cells: list[PhaseCell], path: str,
                     title: str = "order selection success rate") -> None:
    """Write the phase diagram: separation on the vertical axis
    (increasing upward), log10 n on the horizontal, one rect per cell
    colored by success rate, plus axes and a labeled color bar."""
    if not cells:
        raise ValueError("no cells to render")
    d_axis = np.array(sorted({c.delta for c in cells}))
    n_axis = np.array(sorted({c.log10_n for c in cells}))
    rate = {(c.delta, c.log10_n): c.success_rate for c in cells}

    left, top, plot_w, plot_h = 70.0, 50.0, 520.0, 420.0
    bar_x, bar_w = left + plot_w + 30.0, 18.0
    width, height = bar_x + bar_w + 60.0, top + plot_h + 60.0
    cw, ch = plot_w / n_axis.size, plot_h / d_axis.size

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">'
    )
    out.append(f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>')
    out.append(
        f'<text x="{left + plot_w / 2:.1f}" y="28" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>'
    )
    for (row, delta) in enumerate(d_axis):
        y = top + plot_h - (row + 1) * ch
        for (col, log10_n) in enumerate(n_axis):
            x = left + col * cw
            color = ramp_color(rate.get((float(delta), float(log10_n)), 0.0))
            out.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.5:.2f}" '
                f'height="{ch + 0.5:.2f}" fill="{color}"/>'
            )
    out.append(
        f'<rect x="{left:.1f}" y="{top:.1f}" width="{plot_w:.1f}" '
        f'height="{plot_h:.1f}" fill="none" stroke="black" stroke-width="1"/>'
    )
    for tv in _ticks(n_axis):
        col = float(np.searchsorted(n_axis, tv))
        x = left + (col + 0.5) * cw
        out.append(
            f'<line x1="{x:.1f}" y1="{top + plot_h:.1f}" x2="{x:.1f}" '
            f'y2="{top + plot_h + 5:.1f}" stroke="black"/>'
        )
        out.append(
            f'<text x="{x:.1f}" y="{top + plot_h + 20:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{tv:.2f}</text>'
        )
    for tv in _ticks(d_axis):
        row = float(np.searchsorted(d_axis, tv))
        y = top + plot_h - (row + 0.5) * ch
        out.append(
            f'<line x1="{left - 5:.1f}" y1="{y:.1f}" x2="{left:.1f}" '
            f'y2="{y:.1f}" stroke="black"/>'
        )
        out.append(
            f'<text x="{left - 9:.1f}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tv:.2f}</text>'
        )
    out.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{top + plot_h + 42:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">'
        f'log10 n</text>'
    )
    out.append(
        f'<text x="18" y="{top + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {top + plot_h / 2:.1f})">separation</text>'
    )
    # color bar: gradient through the exact ramp stops
    out.append("<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">")
    for i, (r, g, b) in enumerate(RAMP_STOPS):
        off = 100.0 * i / (len(RAMP_STOPS) - 1)
        out.append(
            f'<stop offset="{off:.1f}%" stop-color="#{r:02x}{g:02x}{b:02x}"/>'
        )
    out.append("</linearGradient></defs>")
    out.append(
        f'<rect x="{bar_x:.1f}" y="{top:.1f}" width="{bar_w:.1f}" '
        f'height="{plot_h:.1f}" fill="url(#ramp)" stroke="black"/>'
    )
    for frac, label in ((0.0, "0.0"), (0.5, "0.5"), (1.0, "1.0")):
        y = top + plot_h * (1.0 - frac)
        out.append(
            f'<text x="{bar_x + bar_w + 6:.1f}" y="{y + 4:.1f}" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")
