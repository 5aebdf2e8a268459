# pcenters/cli/svg.py
"""Static SVG pictures of a planar body, its Uf region and center sets."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib import patches  # noqa: E402

from pcenters.errors import UnsupportedDimension  # noqa: E402
from pcenters.geometry.body import Body  # noqa: E402

log = logging.getLogger("pc")

# fixed salt and no date: same inputs give the same bytes
SVG_RC = {"svg.hashsalt": "pcenters", "svg.fonttype": "none", "path.simplify": False}

CENTER_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd")


def _outline(ax, body: Body) -> None:
    shape = body.shape
    style = dict(facecolor="#e8e8e8", edgecolor="#333333", linewidth=1.0, zorder=1)
    if shape.kind == "ball":
        ax.add_patch(patches.Circle(shape.center, shape.radius, gid="body", **style))
    elif shape.kind == "annulus":
        ax.add_patch(patches.Annulus(shape.center, shape.r_out, shape.r_out - shape.r_in, gid="body", **style))
    elif shape.kind == "dumbbell":
        ax.add_patch(patches.Polygon(shape.profile, closed=True, gid="body", **style))
    elif shape.kind == "polygon":
        ax.add_patch(patches.Polygon(shape.array, closed=True, gid="body", **style))
    else:
        g = body.grid()
        occ = g.occupancy.astype(float).T
        lo = g.origin
        hi = g.origin + np.asarray(g.dims) * g.cell
        ax.contourf(occ, levels=[0.5, 1.5], colors=["#e8e8e8"], extent=(lo[0], hi[0], lo[1], hi[1]), zorder=1)


def emit_svg(body: Body, uf, center_sets: Sequence, path: str | Path) -> Path:
    """Body outline, the Uf polygon (when given) and one marker per center."""
    if body.dimension != 2:
        raise UnsupportedDimension(f"pictures are planar only, got m={body.dimension}", field="dimension")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(6, 6))
        try:
            _outline(ax, body)
            if uf is not None:
                poly = uf.polygon()
                if len(poly):
                    ax.add_patch(patches.Polygon(poly, closed=True, fill=False, edgecolor="#ff7f0e",
                                                 linestyle="--", linewidth=1.0, zorder=2, gid="uf"))
            n = 0
            for k, cs in enumerate(center_sets):
                color = CENTER_COLORS[k % len(CENTER_COLORS)]
                for p in np.asarray(cs.points, dtype=float).reshape(-1, 2):
                    (mark,) = ax.plot([p[0]], [p[1]], marker="o", markersize=4, color=color, linestyle="none",
                                      zorder=3)
                    mark.set_gid(f"center-{n}")
                    n += 1
            lo, hi = body.bbox()
            pad = 0.05 * float(np.max(hi - lo))
            ax.set_xlim(lo[0] - pad, hi[0] + pad)
            ax.set_ylim(lo[1] - pad, hi[1] + pad)
            ax.set_aspect("equal")
            ax.set_title(body.label)
            fig.savefig(path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    log.info("[cli] wrote %s (%d center marker(s))", path, n)
    return path
