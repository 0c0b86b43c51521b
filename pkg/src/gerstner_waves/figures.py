"""Reference figure sets: particle paths across currents, as standalone SVG.

Figure set 1 covers the non-rotating regime at k = 1, m = sqrt(g), with the
current swept over {-g, -sqrt(g), -g**(1/4), 0, g**(1/4), sqrt(g), g}.
Figure set 2 covers the rotating regime at k = 1 over fifteen values of the
orbital parameter m, including both zero-current roots, both
surface-threshold roots, the stagnation value m = 0, and several
intermediate and out-of-band values.  Each panel draws the paths of the
particle a = 0 at depths {0, -0.8, -1.5, -2, -2.5} over two orbital
periods.

The SVG places the polylines in raw data coordinates inside a single
scaled group, so the files are both viewable and machine-checkable without
precision loss.
"""

import math
import os

import numpy as np

from . import analysis, kinematics
from .formats import format_float, write_text_atomic
from .params import (
    EARTH_ROTATION_RATE,
    STANDARD_GRAVITY,
    PhysicalConstants,
    WaveParameters,
    regime_constants,
    resolve_classical,
    resolve_geophysical_from_m,
)

#: Depths of the plotted particles in every panel, m.
PANEL_DEPTHS = (0.0, -0.8, -1.5, -2.0, -2.5)

#: Stroke colors per depth, shallow to deep.
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def figure1_parameter_sets(
    g: float = STANDARD_GRAVITY, k: float = 1.0
) -> list[WaveParameters]:
    """Seven classical panels: m = sqrt(g/k), current swept through the bands."""
    constants = PhysicalConstants(omega=0.0, g=g)
    currents = [
        -g,
        -math.sqrt(g),
        -g ** 0.25,
        0.0,
        g ** 0.25,
        math.sqrt(g),
        g,
    ]
    return [resolve_classical(constants, k, +1, U) for U in currents]


def figure2_parameter_sets(
    omega: float = EARTH_ROTATION_RATE,
    g: float = STANDARD_GRAVITY,
    k: float = 1.0,
) -> list[WaveParameters]:
    """Fifteen rotating panels parametrized by the orbital parameter m."""
    constants = PhysicalConstants(omega=omega, g=g)
    rc = regime_constants(constants, k)
    w = omega
    sg = math.sqrt(g)
    # panels 2, 4, 10, 12 coincide with the regime constants m3, m1, m4, m2;
    # using their stable evaluations keeps U = 0 exact where it should be
    ms = [
        -9.0 * w - sg,
        rc.m3,
        -1.5 * w - math.sqrt(w * w + g * k),
        rc.m1,
        -0.5 * w - math.sqrt(w * w + g * k),
        -sg,
        -w - sg,
        0.0,
        -3.0 * w + math.sqrt(4.0 * w * w + g * k),
        rc.m4,
        -1.5 * w + math.sqrt((1.5 * w) ** 2 + g * k),
        rc.m2,
        -0.5 * w + math.sqrt((0.5 * w) ** 2 + g * k),
        sg,
        w + math.sqrt(w * w + g * k),
    ]
    return [resolve_geophysical_from_m(constants, k, m) for m in ms]


def panel_curves(
    params: WaveParameters,
    depths=PANEL_DEPTHS,
    a: float = 0.0,
    periods: float = 2.0,
    n_samples: int = 1001,
):
    """Sampled path (x, z) arrays for each depth, over the given period count.

    When m = 0 the orbital period does not exist (particles run along
    straight lines); the duration then falls back to the same number of
    classical reference periods 2*pi/(k*sqrt(g/k)).
    """
    if params.m != 0.0:
        duration = periods * analysis.orbit_period(params)
    else:
        duration = periods * 2.0 * math.pi / (params.k * math.sqrt(params.g / params.k))
    ts = np.linspace(0.0, duration, n_samples)
    curves = []
    for b in depths:
        x, z = kinematics.position(params, ts, a, b)
        curves.append((np.asarray(x, dtype=float), np.asarray(z, dtype=float)))
    return curves


def render_paths_svg(
    curves,
    title: str,
    width: int = 640,
    height: int = 480,
    margin: float = 48.0,
) -> str:
    """Standalone SVG with one polyline per curve inside a data-space group."""
    x_min = min(float(x.min()) for x, _ in curves)
    x_max = max(float(x.max()) for x, _ in curves)
    z_min = min(float(z.min()) for _, z in curves)
    z_max = max(float(z.max()) for _, z in curves)
    span_x = x_max - x_min
    span_z = z_max - z_min
    if span_x <= 0.0:
        span_x = 1.0
    if span_z <= 0.0:
        span_z = 1.0
    # equal aspect: one scale for both axes
    scale = min((width - 2.0 * margin) / span_x, (height - 2.0 * margin) / span_z)
    frame_w = scale * span_x
    frame_h = scale * span_z
    tx = margin - scale * x_min
    ty = margin + scale * z_max  # the group flips z upward

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'  <title>{title}</title>',
        '  <rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (width, height),
        f'  <rect x="{format_float(margin)}" y="{format_float(margin)}" '
        f'width="{format_float(frame_w)}" height="{format_float(frame_h)}" '
        'fill="none" stroke="#444444" stroke-width="1"/>',
        f'  <g transform="translate({format_float(tx)} {format_float(ty)}) '
        f'scale({format_float(scale)} {format_float(-scale)})">',
    ]
    stroke_width = 1.5 / scale
    for idx, (x, z) in enumerate(curves):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(
            f"{format_float(xi)},{format_float(zi)}" for xi, zi in zip(x, z)
        )
        lines.append(
            f'    <polyline fill="none" stroke="{color}" '
            f'stroke-width="{format_float(stroke_width)}" '
            f'vector-effect="non-scaling-stroke" points="{points}"/>'
        )
    lines.append("  </g>")
    lines.append(
        f'  <text x="{format_float(margin)}" y="{format_float(margin - 12.0)}" '
        f'font-family="sans-serif" font-size="14">{title}</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_figure_set(which: int, out_dir: str, n_samples: int = 1001) -> list[str]:
    """Write every panel of one figure set; returns the file paths."""
    if which == 1:
        sets = figure1_parameter_sets()
    elif which == 2:
        sets = figure2_parameter_sets()
    else:
        raise ValueError(f"figure set must be 1 or 2, got {which}")
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for i, params in enumerate(sets, start=1):
        curves = panel_curves(params, n_samples=n_samples)
        title = (
            f"set {which} panel {i}: k={format_float(params.k)} "
            f"m={format_float(params.m)} U={format_float(params.U)}"
        )
        svg = render_paths_svg(curves, title)
        path = os.path.join(out_dir, f"figure{which}_panel{i:02d}.svg")
        write_text_atomic(path, svg)
        paths.append(path)
    return paths
