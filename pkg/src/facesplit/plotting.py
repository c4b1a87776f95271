"""SVG rendering of epipolar cubics in the affine chart u3 = 1.

Curves are rasterized with matplotlib's zero-level contour (marching
squares) on a configurable grid; marked points are labeled.  Rendering
is best-effort float work with no topological guarantees near singular
points.
"""

from __future__ import annotations

import warnings

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt   # noqa: E402  (backend must be set first)

from .cubics import CubicCurve, hexahedral_cubic
from .forms import CUBIC_MONOMIALS
from .projective import pfloat
from .zmatrix import PointPairConfig, build_z, rank_and_nullspace

__all__ = ["plot_curves", "plot_config", "plot_curve_coeffs"]

DEFAULT_GRID = 800
DEFAULT_MARGIN = 0.2


def _chart_points(points):
    """Finite-chart (u1/u3, u2/u3) images; drops infinite or non-real points."""
    out = []
    for label, p in points:
        pf2 = pfloat(p)
        # normalize the projective phase before asking for realness
        lead = pf2[int(np.argmax(np.abs(pf2)))]
        pf2 = pf2 / lead
        if np.max(np.abs(pf2.imag)) > 1e-7 * np.linalg.norm(pf2):
            warnings.warn(f"point {label} is not real, not drawn")
            continue
        pf2 = pf2.real
        if abs(pf2[2]) <= 1e-9 * np.linalg.norm(pf2):
            warnings.warn(f"point {label} lies at infinity in the chart, not drawn")
            continue
        out.append((label, pf2[0] / pf2[2], pf2[1] / pf2[2]))
    return out


def _window(chart_pts, margin):
    if not chart_pts:
        return (-5.0, 5.0, -5.0, 5.0)
    xs = [u for _, u, _ in chart_pts]
    ys = [v for _, _, v in chart_pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    dx = max(x1 - x0, 1.0) * margin
    dy = max(y1 - y0, 1.0) * margin
    return (x0 - dx, x1 + dx, y0 - dy, y1 + dy)


def _eval_grid(curve: CubicCurve, window, grid):
    x0, x1, y0, y1 = window
    u = np.linspace(x0, x1, grid)
    v = np.linspace(y0, y1, grid)
    uu, vv = np.meshgrid(u, v)
    cf = pfloat(curve.coeffs, complex_=False)
    zz = np.zeros_like(uu)
    for c, (i, j, k) in zip(cf, CUBIC_MONOMIALS):
        if c == 0:
            continue
        zz += c * uu**i * vv**j
    return uu, vv, zz


def plot_curves(curves, points, out, grid: int = DEFAULT_GRID,
                margin: float = DEFAULT_MARGIN, title: str | None = None) -> bool:
    """Render labeled cubics and points to an SVG; True when a locus was drawn.

    `curves` is a list of (label, CubicCurve); `points` a list of
    (label, 3-vector).  An empty real locus in the window produces an
    empty plot with a warning.
    """
    chart_pts = _chart_points(points)
    window = _window(chart_pts, margin)
    fig, ax = plt.subplots(figsize=(6, 6))
    drew = False
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for idx, (label, curve) in enumerate(curves):
        uu, vv, zz = _eval_grid(curve, window, grid)
        cs = ax.contour(uu, vv, zz, levels=[0.0],
                        colors=[colors[idx % len(colors)]], linewidths=1.0)
        has_path = any(len(path.vertices) for path in cs.get_paths())
        if has_path:
            drew = True
            ax.plot([], [], color=colors[idx % len(colors)], label=label)
    for label, u, v in chart_pts:
        ax.plot([u], [v], "ko", markersize=4)
        ax.annotate(label, (u, v), textcoords="offset points", xytext=(4, 4),
                    fontsize=8)
    if not drew:
        warnings.warn("no real locus of any curve inside the plot window")
    if title:
        ax.set_title(title)
    if curves:
        ax.legend(loc="upper right", fontsize=7)
    ax.set_xlim(window[0], window[1])
    ax.set_ylim(window[2], window[3])
    known = (".svg", ".png", ".pdf")
    fmt = None if str(out).lower().endswith(known) else "svg"
    fig.savefig(out, format=fmt)
    plt.close(fig)
    return drew


def plot_curve_coeffs(coeffs, out, grid: int = DEFAULT_GRID) -> bool:
    """Render one explicit cubic given by its 10 coefficients."""
    return plot_curves([("curve", CubicCurve(pfloat(np.asarray(coeffs), complex_=False)))],
                       [], out, grid=grid)


def plot_config(cfg: PointPairConfig, out_stem: str, grid: int = DEFAULT_GRID):
    """Per-side SVGs of the epipolar cubics of a 6- or 7-pair configuration.

    Six pairs draw the hatted-free curve; seven pairs overlay the seven
    hatted curves and, when the configuration has full rank, mark the
    three common intersection points.
    """
    outputs = []
    if cfg.k == 6:
        for side in ("x", "y"):
            curve = hexahedral_cubic(cfg, side)
            pts = [(f"{side}{i+1}", p[0] if side == "x" else p[1])
                   for i, p in enumerate(cfg.pairs)]
            out = f"{out_stem}_{side}.svg"
            plot_curves([(f"C_{side}", curve)], pts, out, grid=grid)
            outputs.append(out)
        return outputs
    if cfg.k == 7:
        marks = {"x": [], "y": []}
        if cfg.exact:
            rank, _ = rank_and_nullspace(build_z(cfg))
            if rank == 7:
                from .sevenpoint import epipoles_by_intersection

                try:
                    ex_pts, ey_pts = epipoles_by_intersection(cfg)
                    marks["x"] = [(f"e{i+1}", p) for i, p in enumerate(ex_pts)]
                    marks["y"] = [(f"e'{i+1}", p) for i, p in enumerate(ey_pts)]
                except ValueError:
                    pass
        for side in ("x", "y"):
            curves = []
            for i in range(7):
                try:
                    curves.append((f"drop {i+1}", hexahedral_cubic(cfg.drop(i), side)))
                except ValueError:
                    continue
            pts = [(f"{side}{i+1}", p[0] if side == "x" else p[1])
                   for i, p in enumerate(cfg.pairs)] + marks[side]
            out = f"{out_stem}_{side}.svg"
            plot_curves(curves, pts, out, grid=grid)
            outputs.append(out)
        return outputs
    raise ValueError("plotting supports configurations with 6 or 7 pairs")
