# pcenters/unfolded/region.py
"""Minimal unfolded region by directional folding.

For a direction v, l(v) is the lowest a such that reflecting the cap
{z in body : z.v >= b} in the plane z.v = b lands inside the body for every
b >= a. The region is the intersection of the half-spaces z.v <= l(v).

Containment is tested on a cell lattice: reflected cell centres of the cap
must fall in cells of the body dilated by one cell.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

import numpy as np
from scipy.ndimage import binary_dilation

from pcenters.config import settings
from pcenters.errors import InvalidRange, NonUnitDirection, UnsupportedDimension
from pcenters.geometry.body import Body, _lattice_centers, lattice_for_box
from pcenters.geometry.spheres import uniform_directions
from pcenters.parallel import map_ordered
from pcenters.utils.csvx import write_rows

log = logging.getLogger("pc")

MIN_DIRECTIONS = {2: 16, 3: 128}
BISECT_STEPS = 3


@dataclass(frozen=True, eq=False)
class FoldGrid:
    origin: np.ndarray
    cell: float
    dims: tuple
    core: np.ndarray      # centres of occupied cells, (N, m)
    target: np.ndarray    # occupancy dilated by one cell

    def lands_inside(self, pts: np.ndarray) -> bool:
        idx = np.floor((pts - self.origin) / self.cell).astype(int)
        if np.any(idx < 0) or np.any(idx >= np.asarray(self.dims)):
            return False
        return bool(np.all(self.target[tuple(idx.T)]))


@lru_cache(maxsize=16)
def fold_grid(body: Body, resolution: int) -> FoldGrid:
    lo, hi = body.bbox()
    origin, cell, dims = lattice_for_box(lo, hi, resolution, pad=2)
    centers = _lattice_centers(origin, cell, dims)
    occ = body.shape.signed_distance(centers) > -0.5 * cell
    structure = np.ones((3,) * body.dimension, dtype=bool)
    target = binary_dilation(occ.reshape(dims), structure=structure)
    return FoldGrid(origin=origin, cell=cell, dims=dims, core=centers[occ], target=target)


def _default_resolution(body: Body) -> int:
    return settings.DEFAULT_UF_GRID_RESOLUTION if body.dimension == 2 else settings.DEFAULT_UF_GRID_RESOLUTION_3D


def _unit(body: Body, v) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != body.dimension:
        raise NonUnitDirection(f"direction has {v.shape[0]} components, body lives in R^{body.dimension}", field="v")
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) > 1e-9:
        raise NonUnitDirection(f"|v| = {n:.12g}, expected 1", field="v")
    return v


def folding_threshold(body: Body, v, resolution: int | None = None) -> float:
    """l(v) at lattice tolerance.

    b is scanned downward from the top of the body in half-cell steps; the
    first failing b is refined by bisection against the last feasible one.
    Feasibility is not monotone in b below l(v) (an annulus folds onto
    itself again at b = 0), so the scan never skips past a failure. The
    one-cell dilation of the target lets b sink about a cell too far; the
    result is shifted up by one cell so the region stays an outer
    approximation.
    """
    v = _unit(body, v)
    g = fold_grid(body, int(resolution or _default_resolution(body)))
    proj = g.core @ v
    p_min, p_max = float(proj.min()), float(proj.max())

    def feasible(b: float) -> bool:
        cap = proj > b
        if not cap.any():
            return True
        pts = g.core[cap] - 2.0 * (proj[cap] - b)[:, None] * v[None, :]
        return g.lands_inside(pts)

    step = 0.5 * g.cell
    good = p_max
    b = p_max - step
    while b > p_min - g.cell:
        if not feasible(b):
            lo, hi = b, good
            for _ in range(BISECT_STEPS):
                mid = 0.5 * (lo + hi)
                if feasible(mid):
                    hi = mid
                else:
                    lo = mid
            return hi + g.cell
        good = b
        b -= step
    return good + g.cell


@dataclass(frozen=True, eq=False)
class UnfoldedRegion:
    directions: np.ndarray
    thresholds: np.ndarray
    direction_count: int
    cell: float = 0.0
    body_label: str = ""

    def __post_init__(self):
        norms = np.linalg.norm(self.directions, axis=1)
        if not np.allclose(norms, 1.0, atol=1e-9):
            raise NonUnitDirection("region directions must be unit vectors", field="directions")

    @property
    def dimension(self) -> int:
        return int(self.directions.shape[1])

    def contains(self, x, slack: float = 0.0):
        """True where x.v_i <= l(v_i) + slack for all i; accepts one point or an (N, m) array."""
        if slack < 0:
            raise InvalidRange(f"slack must be >= 0, got {slack!r}", field="slack")
        pts = np.asarray(x, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        ok = np.all(pts @ self.directions.T <= self.thresholds[None, :] + slack, axis=1)
        return bool(ok[0]) if single else ok

    def polygon(self, pad: float = 10.0) -> np.ndarray:
        """Vertices of the 2D region (counter-clockwise), by clipping a large square."""
        if self.dimension != 2:
            raise UnsupportedDimension("region outlines exist in the plane only", field="dimension")
        big = pad + float(np.max(np.abs(self.thresholds)))
        poly = [np.array(p) for p in ((-big, -big), (big, -big), (big, big), (-big, big))]
        for v, l in zip(self.directions, self.thresholds):
            poly = _clip(poly, v, float(l))
            if not poly:
                break
        return np.array(poly) if poly else np.zeros((0, 2))

    def width(self) -> float:
        """Largest extent over the sampled directions: l(v) + l(-v) maximised."""
        w = 0.0
        for i, v in enumerate(self.directions):
            j = int(np.argmin(np.linalg.norm(self.directions + v, axis=1)))
            if np.linalg.norm(self.directions[j] + v) < 1e-9:
                w = max(w, float(self.thresholds[i] + self.thresholds[j]))
        return w

    def rows(self):
        for v, l in zip(self.directions, self.thresholds):
            yield [*v.tolist(), float(l)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "direction_count": self.direction_count,
            "cell": self.cell,
            "outer_approximation": True,
            "body": self.body_label,
        }


def _clip(poly, v: np.ndarray, l: float):
    """Sutherland-Hodgman step: keep z.v <= l."""
    out = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        da, db = float(a @ v) - l, float(b @ v) - l
        if da <= 0:
            out.append(a)
        if (da < 0 < db) or (db < 0 < da):
            t = da / (da - db)
            out.append(a + t * (b - a))
    return out


def unfolded_region(body: Body, direction_count: int, resolution: int | None = None) -> UnfoldedRegion:
    m = body.dimension
    need = MIN_DIRECTIONS.get(m, 128)
    if direction_count < need:
        raise InvalidRange(f"need at least {need} directions in R^{m}, got {direction_count}",
                           field="direction_count")
    res = int(resolution or _default_resolution(body))
    dirs = uniform_directions(m, direction_count)
    fold_grid(body, res)  # build once before the threads start
    thresholds = np.asarray(map_ordered(lambda v: folding_threshold(body, v, res), list(dirs)))
    region = UnfoldedRegion(
        directions=dirs, thresholds=thresholds, direction_count=direction_count,
        cell=fold_grid(body, res).cell, body_label=body.label,
    )
    if not region.contains(body.centroid(), slack=2.0 * region.cell):
        log.warning("[uf] centroid of %s falls outside the computed region", body.label)
    log.info("[uf] %s: %d directions, cell=%.4g", body.label, direction_count, region.cell)
    return region


def uf_contains(region: UnfoldedRegion, x, slack: float = 0.0) -> bool:
    return region.contains(x, slack)


def write_region_csv(region: UnfoldedRegion, path: str | Path) -> Path:
    header = [f"v{i + 1}" for i in range(region.dimension)] + ["l"]
    return write_rows(path, header, region.rows())
