# pcenters/geometry/shapes.py
"""Analytic and voxel shapes.

Every shape answers ``signed_distance(points)`` for an ``(N, m)`` array,
positive inside, negative outside and zero on the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np
from scipy.ndimage import distance_transform_edt
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import pdist

from pcenters.errors import InvalidShape, UnsupportedDimension
from pcenters.geometry.cone import HALF_SPACE, ConeSpec

Box = Tuple[np.ndarray, np.ndarray]


def _as_points(points, m: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.shape[-1] != m:
        raise ValueError(f"expected points in R^{m}, got shape {pts.shape}")
    return pts


# ---------------------------------------------------------------------------
# polygon helpers (2D)
# ---------------------------------------------------------------------------

def polygon_signed_distance(vertices: np.ndarray, points: np.ndarray, chunk: int = 65536) -> np.ndarray:
    """Exact signed distance to a simple polygon (even-odd inside test)."""
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    ab = b - a
    ab2 = np.einsum("ij,ij->i", ab, ab)
    safe = np.where(ab2 > 0.0, ab2, 1.0)
    out = np.empty(len(points))
    for s in range(0, len(points), chunk):
        p = points[s:s + chunk]
        ap = p[:, None, :] - a[None, :, :]
        t = np.clip(np.einsum("nek,ek->ne", ap, ab) / safe, 0.0, 1.0)
        t = np.where(ab2 > 0.0, t, 0.0)
        proj = a[None, :, :] + t[..., None] * ab[None, :, :]
        dist = np.sqrt(np.min(np.sum((p[:, None, :] - proj) ** 2, axis=2), axis=1))

        px, py = p[:, 0:1], p[:, 1:2]
        ay, by = a[None, :, 1], b[None, :, 1]
        ax, bx = a[None, :, 0], b[None, :, 0]
        straddle = (ay > py) != (by > py)
        dy = np.where(by != ay, by - ay, 1.0)
        x_cross = ax + (py - ay) * (bx - ax) / dy
        inside = (np.count_nonzero(straddle & (px < x_cross), axis=1) % 2) == 1
        out[s:s + chunk] = np.where(inside, dist, -dist)
    return out


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


# ---------------------------------------------------------------------------
# analytic shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    center: Tuple[float, ...]
    radius: float
    kind = "ball"

    def __post_init__(self):
        if len(self.center) < 2:
            raise InvalidShape("dimension must be >= 2", field="Ball.center")
        if not self.radius > 0:
            raise InvalidShape(f"radius must be positive, got {self.radius!r}", field="Ball.radius")

    @property
    def dimension(self) -> int:
        return len(self.center)

    def signed_distance(self, points) -> np.ndarray:
        p = _as_points(points, self.dimension)
        return self.radius - np.linalg.norm(p - np.asarray(self.center), axis=1)

    def bbox(self) -> Box:
        c = np.asarray(self.center, dtype=float)
        return c - self.radius, c + self.radius

    def diameter(self) -> float:
        return 2.0 * self.radius

    def inradius(self) -> float | None:
        return self.radius

    def default_cone(self) -> ConeSpec:
        return HALF_SPACE

    @property
    def convex(self) -> bool:
        return True

    def params(self) -> Dict[str, Any]:
        return {"center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Annulus:
    center: Tuple[float, ...]
    r_in: float
    r_out: float
    kind = "annulus"

    def __post_init__(self):
        if len(self.center) < 2:
            raise InvalidShape("dimension must be >= 2", field="Annulus.center")
        if not (0.0 < self.r_in < self.r_out):
            raise InvalidShape(
                f"need 0 < r_in < r_out, got r_in={self.r_in!r}, r_out={self.r_out!r}",
                field="Annulus.r_in",
            )

    @property
    def dimension(self) -> int:
        return len(self.center)

    def signed_distance(self, points) -> np.ndarray:
        p = _as_points(points, self.dimension)
        r = np.linalg.norm(p - np.asarray(self.center), axis=1)
        return np.minimum(r - self.r_in, self.r_out - r)

    def bbox(self) -> Box:
        c = np.asarray(self.center, dtype=float)
        return c - self.r_out, c + self.r_out

    def diameter(self) -> float:
        return 2.0 * self.r_out

    def inradius(self) -> float | None:
        return 0.5 * (self.r_out - self.r_in)

    def default_cone(self) -> ConeSpec:
        # inner boundary: a right-angle cone into the hole, height half the hole radius
        return ConeSpec(kappa=math.pi / 2, delta=0.5 * self.r_in)

    @property
    def convex(self) -> bool:
        return False

    def params(self) -> Dict[str, Any]:
        return {"center": list(self.center), "r_in": self.r_in, "r_out": self.r_out}


@dataclass(frozen=True)
class Dumbbell:
    """Two unit blocks [-3,-1] x B and [1,3] x B joined by the bar [-1,1] x eps*B.

    B is the unit ball of R^(m-1); for m = 2 the shape is a 12-gon, for
    m = 3 a solid of revolution about the first axis.
    """
    epsilon: float
    m: int = 2
    kind = "dumbbell"

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0):
            raise InvalidShape(f"need 0 < epsilon <= 1, got {self.epsilon!r}", field="Dumbbell.epsilon")
        if self.m < 2:
            raise InvalidShape("dimension must be >= 2", field="Dumbbell.m")

    @property
    def dimension(self) -> int:
        return self.m

    @property
    def profile(self) -> np.ndarray:
        e = self.epsilon
        return np.array([
            (-3.0, -1.0), (-1.0, -1.0), (-1.0, -e), (1.0, -e), (1.0, -1.0), (3.0, -1.0),
            (3.0, 1.0), (1.0, 1.0), (1.0, e), (-1.0, e), (-1.0, 1.0), (-3.0, 1.0),
        ])

    def signed_distance(self, points) -> np.ndarray:
        p = _as_points(points, self.m)
        # meridian reduction: (x, |rest|)
        q = np.stack([p[:, 0], np.linalg.norm(p[:, 1:], axis=1)], axis=1)
        return polygon_signed_distance(self.profile, q)

    def bbox(self) -> Box:
        lo = -np.ones(self.m)
        hi = np.ones(self.m)
        lo[0], hi[0] = -3.0, 3.0
        return lo, hi

    def diameter(self) -> float:
        return 2.0 * math.sqrt(10.0)

    def inradius(self) -> float | None:
        return 1.0

    def default_cone(self) -> ConeSpec:
        return ConeSpec(kappa=math.pi / 2, delta=0.5 * self.epsilon)

    @property
    def convex(self) -> bool:
        return self.epsilon >= 1.0

    def params(self) -> Dict[str, Any]:
        return {"epsilon": self.epsilon}


@dataclass(frozen=True)
class Polygon:
    """Simple polygon in the plane, stored counter-clockwise."""
    vertices: Tuple[Tuple[float, float], ...]
    cone_override: ConeSpec | None = None
    kind = "polygon"

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidShape("vertices must be (x, y) pairs", field="Polygon.vertices")
        if len(v) < 3:
            raise InvalidShape("need at least 3 vertices", field="Polygon.vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidShape("vertices must be finite", field="Polygon.vertices")
        area = _signed_area(v)
        if abs(area) < 1e-14:
            raise InvalidShape("polygon has zero area", field="Polygon.vertices")
        n = len(v)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                    raise InvalidShape("edges intersect; polygon is not simple", field="Polygon.vertices")
        if area < 0:
            object.__setattr__(self, "vertices", tuple(map(tuple, v[::-1].tolist())))

    @property
    def dimension(self) -> int:
        return 2

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def signed_distance(self, points) -> np.ndarray:
        return polygon_signed_distance(self.array, _as_points(points, 2))

    def bbox(self) -> Box:
        v = self.array
        return v.min(axis=0), v.max(axis=0)

    def diameter(self) -> float:
        return float(pdist(self.array).max())

    @property
    def convex(self) -> bool:
        v = self.array
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        return bool(np.all(cross >= -1e-12))

    def inradius(self) -> float | None:
        if not self.convex:
            return None
        # Chebyshev centre: max r s.t. n_i . x + r <= c_i for every edge
        v = self.array
        e = np.roll(v, -1, axis=0) - v
        normals = np.stack([e[:, 1], -e[:, 0]], axis=1)
        lengths = np.linalg.norm(normals, axis=1)
        keep = lengths > 0
        normals = normals[keep] / lengths[keep, None]
        rhs = np.einsum("ij,ij->i", normals, v[keep])
        a_ub = np.hstack([normals, np.ones((len(normals), 1))])
        res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=rhs, bounds=[(None, None)] * 3, method="highs")
        return float(res.x[2]) if res.success else None

    def default_cone(self) -> ConeSpec:
        if self.cone_override is not None:
            return self.cone_override
        if self.convex:
            return HALF_SPACE
        raise InvalidShape("non-convex polygon needs an explicit cone", field="cone")

    def params(self) -> Dict[str, Any]:
        return {"vertices": [list(p) for p in self.vertices]}


# ---------------------------------------------------------------------------
# voxel shape
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VoxelShape:
    """Occupancy bitmask on a regular grid (m in {2, 3}).

    Boundary cells count as inside. The signed distance is cell-centre
    based, so its error is at most one cell diagonal.
    """
    origin: Tuple[float, ...]
    cell: float
    occupancy: np.ndarray
    _sdf: np.ndarray = field(init=False, repr=False)
    kind = "voxel"

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        if occ.ndim not in (2, 3):
            raise UnsupportedDimension(f"voxel grids must be 2D or 3D, got {occ.ndim}D", field="VoxelGrid.occupancy")
        if len(self.origin) != occ.ndim:
            raise InvalidShape("origin length must match grid dimension", field="VoxelGrid.origin")
        if not self.cell > 0:
            raise InvalidShape(f"cell size must be positive, got {self.cell!r}", field="VoxelGrid.cell")
        if not occ.any():
            raise InvalidShape("occupancy is empty", field="VoxelGrid.occupancy")
        object.__setattr__(self, "occupancy", occ)
        object.__setattr__(self, "_sdf", _voxel_sdf(occ, self.cell))

    @property
    def dimension(self) -> int:
        return self.occupancy.ndim

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(self.occupancy.shape)

    @property
    def sdf_grid(self) -> np.ndarray:
        return self._sdf

    def cell_centers(self, mask: np.ndarray | None = None) -> np.ndarray:
        idx = np.argwhere(self.occupancy if mask is None else mask)
        return np.asarray(self.origin) + (idx + 0.5) * self.cell

    def signed_distance(self, points) -> np.ndarray:
        p = _as_points(points, self.dimension)
        origin = np.asarray(self.origin)
        hi = origin + np.asarray(self.dims) * self.cell
        idx = np.floor((p - origin) / self.cell).astype(int)
        idx = np.clip(idx, 0, np.asarray(self.dims) - 1)
        sd = self._sdf[tuple(idx.T)]
        clamped = np.clip(p, origin, hi)
        outside = np.linalg.norm(p - clamped, axis=1)
        return np.where(outside > 0, np.minimum(sd, 0.0) - outside, sd)

    def bbox(self) -> Box:
        pts = self.cell_centers()
        return pts.min(axis=0) - 0.5 * self.cell, pts.max(axis=0) + 0.5 * self.cell

    def diameter(self) -> float:
        pts = self.cell_centers()
        diag = self.cell * math.sqrt(self.dimension)
        try:
            hull = ConvexHull(pts)
            pts = pts[hull.vertices]
        except (QhullError, ValueError):
            pass
        if len(pts) < 2:
            return diag
        return float(pdist(pts).max()) + diag

    def inradius(self) -> float | None:
        return None

    def default_cone(self) -> ConeSpec:
        raise InvalidShape("voxel bodies need an explicit cone", field="cone")

    @property
    def convex(self) -> bool:
        return False

    def params(self) -> Dict[str, Any]:
        return {"origin": list(self.origin), "cell": self.cell, "dims": list(self.dims)}


def _voxel_sdf(occ: np.ndarray, cell: float) -> np.ndarray:
    padded = np.pad(occ, 1, constant_values=False)
    inside = distance_transform_edt(padded) * cell - 0.5 * cell
    outside = distance_transform_edt(~padded) * cell - 0.5 * cell
    sd = np.where(padded, inside, -outside)
    crop = tuple(slice(1, -1) for _ in range(occ.ndim))
    return sd[crop]
