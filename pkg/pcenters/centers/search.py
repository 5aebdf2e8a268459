# pcenters/centers/search.py
"""Maximiser sets of potentials by coarse-to-fine lattice search.

Levels with spacings 16s, 4s, s on one lattice anchored at the centre of
the body's bounding box (so symmetric bodies get symmetric samples). The
coarsest level shrinks until it holds at least MIN_COARSE admissible points,
so thin bodies still get searched. Each level keeps the points within the
level tolerance of the running maximum and refines around them on the next
lattice; the last level returns the plateau {v >= max - plateau_tolerance}.

The default plateau is relative to |max|. Quadrature error is mostly an
offset shared by nearby points, so it says nothing about their ranking.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from pcenters.errors import EmptyAdmissibleRegion, InvalidRange
from pcenters.geometry.body import Body
from pcenters.parallel import map_ordered
from pcenters.potentials.evaluation import evaluate
from pcenters.potentials.kernels import RENORMALIZED, KernelSpec

log = logging.getLogger("pc")

LEVEL_FACTOR = 4
LEVELS = 3
MIN_COARSE = 16
# default plateau, relative to |max|, with an absolute floor for values near 0
RELATIVE_PLATEAU = 1e-6
ABSOLUTE_FLOOR = 1e-12


def default_plateau(vmax: float) -> float:
    return max(RELATIVE_PLATEAU * abs(vmax), ABSOLUTE_FLOOR)


@dataclass(frozen=True, eq=False)
class CenterSet:
    points: np.ndarray
    values: np.ndarray
    max_value: float
    plateau_tolerance: float
    potential: KernelSpec
    search_region: str
    resolution: float
    parameter: Optional[float] = None
    evaluations: int = 0
    extra: Dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.values) and np.any(self.values < self.max_value - self.plateau_tolerance - 1e-300):
            raise ValueError("center set holds points below the plateau")

    def __len__(self) -> int:
        return len(self.points)

    def rows(self):
        for p, v in zip(self.points, self.values):
            yield [*p.tolist(), float(v)]


# ---------------------------------------------------------------------------
# admissible region
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _hull_equations(body: Body, resolution: int) -> np.ndarray:
    g = body.grid(resolution)
    half = 0.5 * g.cell
    corners = np.array(list(itertools.product((-half, half), repeat=body.dimension)))
    pts = (g.centers[:, None, :] + corners[None, :, :]).reshape(-1, body.dimension)
    try:
        hull = ConvexHull(pts)
    except QhullError:
        raise EmptyAdmissibleRegion("convex hull of the body is degenerate", field="body")
    return hull.equations


@dataclass(frozen=True, eq=False)
class Region:
    """Where the search looks: interior or convex hull, optionally cut further."""
    body: Body
    interior: bool
    quad_resolution: int
    inner_radius: float = 0.0
    uf: object = None
    uf_slack: float = 0.0

    def describe(self) -> str:
        parts = ["interior" if self.interior else "convex hull"]
        if self.inner_radius > 0:
            parts.append(f"inner-parallel {self.inner_radius:.6g}")
        if self.uf is not None:
            parts.append("Uf")
        return " & ".join(parts)

    def admissible(self, pts: np.ndarray) -> np.ndarray:
        if len(pts) == 0:
            return np.zeros(0, dtype=bool)
        if self.interior:
            ok = self.body.signed_distance(pts) > self.body.boundary_tolerance(self.quad_resolution)
        else:
            eq = _hull_equations(self.body, self.quad_resolution)
            ok = np.all(pts @ eq[:, :-1].T + eq[:, -1] <= 1e-12, axis=1)
        if self.inner_radius > 0:
            ok &= self.body.signed_distance(pts) >= self.inner_radius
        if self.uf is not None:
            ok &= self.uf.contains(pts, self.uf_slack)
        return ok


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

class _Evaluator:
    """Caches potential values by integer lattice key."""

    def __init__(self, body, kernel, parameter, anchor, spacing, quad_resolution, threads):
        self.body, self.kernel, self.parameter = body, kernel, parameter
        self.anchor, self.spacing = anchor, spacing
        self.quad_resolution, self.threads = quad_resolution, threads
        self.cache: Dict[Tuple[int, ...], float] = {}

    def keys(self, pts: np.ndarray) -> List[Tuple[int, ...]]:
        return [tuple(k) for k in np.rint((pts - self.anchor) / self.spacing).astype(np.int64)]

    def point(self, key) -> np.ndarray:
        return self.anchor + np.asarray(key, dtype=float) * self.spacing

    def values(self, keys: List[Tuple[int, ...]]) -> np.ndarray:
        todo = [k for k in dict.fromkeys(keys) if k not in self.cache]
        if todo:
            vals = map_ordered(
                lambda k: evaluate(self.body, self.kernel, self.point(k), self.parameter,
                                   self.quad_resolution, estimate_error=False).value,
                todo, threads=self.threads,
            )
            self.cache.update(zip(todo, vals))
        return np.array([self.cache[k] for k in keys])


def _level_lattice(lo, hi, anchor, spacing: float, step_keys: int) -> List[Tuple[int, ...]]:
    """Keys (in units of ``spacing``) of the lattice with ``step_keys`` spacing covering [lo, hi]."""
    width = spacing * step_keys
    axes = []
    for a, b, c in zip(lo, hi, anchor):
        lo_k = int(np.floor((a - c) / width)) * step_keys
        hi_k = int(np.ceil((b - c) / width)) * step_keys
        axes.append(range(lo_k, hi_k + 1, step_keys))
    return [tuple(k) for k in itertools.product(*axes)]


def _neighbour_drop(keys, vals, best: int, step: int) -> float:
    """Largest fall in value from the incumbent to its lattice neighbours."""
    tree = cKDTree(np.asarray(keys, dtype=float))
    idx = tree.query_ball_point(np.asarray(keys[best], dtype=float), r=step * np.sqrt(len(keys[best])) * 1.001)
    drops = [vals[best] - vals[i] for i in idx if i != best]
    return float(max(drops)) if drops else 0.0


def _region_for(body, kernel, quad_resolution, inner_radius, uf, uf_slack) -> Region:
    return Region(
        body=body,
        interior=kernel.variant == RENORMALIZED,
        quad_resolution=quad_resolution,
        inner_radius=float(inner_radius or 0.0),
        uf=uf,
        uf_slack=uf_slack,
    )


def find_centers(
    body: Body,
    kernel: KernelSpec,
    resolution: float,
    plateau_tolerance: float | None = None,
    parameter: float | None = None,
    quad_resolution: int | None = None,
    inner_radius: float | None = None,
    uf=None,
    uf_slack: float = 0.0,
    threads: int | None = None,
) -> CenterSet:
    """All plateau points of the potential on a lattice of spacing ``resolution``."""
    if not resolution > 0:
        raise InvalidRange(f"resolution must be > 0, got {resolution!r}", field="resolution")
    qres = int(quad_resolution or body.grid_resolution)
    region = _region_for(body, kernel, qres, inner_radius, uf, uf_slack)
    lo, hi = body.bbox()
    anchor = 0.5 * (lo + hi)
    ev = _Evaluator(body, kernel, parameter, anchor, float(resolution), qres, threads)

    if plateau_tolerance is not None and plateau_tolerance < 0:
        raise InvalidRange(f"plateau tolerance must be >= 0, got {plateau_tolerance!r}", field="plateau_tolerance")

    step = LEVEL_FACTOR ** (LEVELS - 1)
    while True:
        cands = _level_lattice(lo, hi, anchor, ev.spacing, step)
        keys = [k for k, ok in zip(cands, region.admissible(np.array([ev.point(k) for k in cands]))) if ok]
        if len(keys) >= MIN_COARSE or step == 1:
            break
        step //= LEVEL_FACTOR
    if not keys:
        raise EmptyAdmissibleRegion(f"no lattice point of spacing {resolution:.4g} in the {region.describe()}",
                                    field="resolution")
    vals = ev.values(keys)
    best = int(np.argmax(vals))
    relative = plateau_tolerance is None
    if relative:
        plateau_tolerance = default_plateau(float(vals[best]))

    while step > 1:
        tol = plateau_tolerance + _neighbour_drop(keys, vals, best, step)
        vmax = float(vals[best])
        kept = [k for k, v in zip(keys, vals) if v >= vmax - tol]
        nxt = step // LEVEL_FACTOR
        offs = range(-step, step + 1, nxt)
        fresh = {tuple(a + o for a, o in zip(k, d)) for k in kept for d in itertools.product(offs, repeat=body.dimension)}
        fresh = sorted(fresh)
        pts = np.array([ev.point(k) for k in fresh])
        keys = [k for k, ok in zip(fresh, region.admissible(pts)) if ok]
        vals = ev.values(keys)
        best = int(np.argmax(vals))
        step = nxt
        log.debug("[centers] level spacing=%.4g kept=%d next=%d", step * resolution, len(kept), len(keys))

    vmax = float(vals[best])
    if relative:
        plateau_tolerance = default_plateau(vmax)
    mask = vals >= vmax - plateau_tolerance
    pts = np.array([ev.point(k) for k, ok in zip(keys, mask) if ok])
    out = CenterSet(
        points=pts, values=vals[mask], max_value=vmax, plateau_tolerance=float(plateau_tolerance),
        potential=kernel, search_region=region.describe(), resolution=float(resolution),
        parameter=parameter, evaluations=len(ev.cache),
    )
    log.info("[centers] %s on %s: %d point(s), max=%.10g, tol=%.3g, %d evaluations",
             kernel.variant, body.label, len(out), vmax, plateau_tolerance, out.evaluations)
    return out


def exhaustive_centers(
    body: Body,
    kernel: KernelSpec,
    resolution: float,
    plateau_tolerance: float,
    parameter: float | None = None,
    quad_resolution: int | None = None,
    threads: int | None = None,
) -> CenterSet:
    """Single-level argmax plateau over every admissible lattice point; the oracle for find_centers."""
    if not resolution > 0:
        raise InvalidRange(f"resolution must be > 0, got {resolution!r}", field="resolution")
    qres = int(quad_resolution or body.grid_resolution)
    region = _region_for(body, kernel, qres, None, None, 0.0)
    lo, hi = body.bbox()
    anchor = 0.5 * (lo + hi)
    ev = _Evaluator(body, kernel, parameter, anchor, float(resolution), qres, threads)
    cands = _level_lattice(lo, hi, anchor, ev.spacing, 1)
    keys = [k for k, ok in zip(cands, region.admissible(np.array([ev.point(k) for k in cands]))) if ok]
    if not keys:
        raise EmptyAdmissibleRegion(f"no admissible lattice point in the {region.describe()}", field="resolution")
    vals = ev.values(keys)
    vmax = float(vals.max())
    mask = vals >= vmax - plateau_tolerance
    return CenterSet(
        points=np.array([ev.point(k) for k, ok in zip(keys, mask) if ok]), values=vals[mask],
        max_value=vmax, plateau_tolerance=float(plateau_tolerance), potential=kernel,
        search_region=region.describe(), resolution=float(resolution), parameter=parameter,
        evaluations=len(ev.cache),
    )


def incenter(body: Body, resolution: int | None = None) -> np.ndarray:
    """Grid point of largest signed distance (ties: the one nearest the bounding-box centre)."""
    g = body.grid(resolution)
    sd = body.signed_distance(g.centers)
    top = np.flatnonzero(sd >= sd.max() - 1e-12)
    lo, hi = body.bbox()
    mid = 0.5 * (lo + hi)
    pick = top[int(np.argmin(np.linalg.norm(g.centers[top] - mid, axis=1)))]
    return g.centers[pick]
