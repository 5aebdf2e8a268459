# pcenters/geometry/body.py
"""Bodies in R^m and the geometric queries the potentials and bounds need."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Mapping, Tuple

import numpy as np

from pcenters.config import settings
from pcenters.errors import InvalidShape, NegativeRadius, UnsupportedDimension
from pcenters.geometry.cone import ConeSpec
from pcenters.geometry.shapes import Annulus, Ball, Dumbbell, Polygon, VoxelShape

log = logging.getLogger("pc")

Shape = Ball | Annulus | Dumbbell | Polygon | VoxelShape

# Boundary cells of analytic shapes are split into SUBSAMPLE^m parts to get
# their covered fraction.
SUBSAMPLE = 4

OBTUSE_TRIANGLE = ((0.0, 0.0), (4.0, 0.0), (1.0, 1.0))
SQUARE = ((-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0))


@dataclass(frozen=True, eq=False)
class BodyGrid:
    """Cells of a regular lattice that meet the body.

    ``weights`` are covered volumes; ``full`` marks cells lying entirely in
    the body. ``occupancy`` is the lattice mask of cells with non-zero weight.
    """
    origin: np.ndarray
    cell: float
    dims: Tuple[int, ...]
    centers: np.ndarray
    weights: np.ndarray
    full: np.ndarray
    occupancy: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.dims)

    @property
    def cell_diagonal(self) -> float:
        return self.cell * math.sqrt(self.dimension)

    @property
    def cell_volume(self) -> float:
        return self.cell ** self.dimension


@dataclass(frozen=True)
class Body:
    shape: Shape
    cone: ConeSpec
    grid_resolution: int
    name: str = ""

    def __post_init__(self):
        if self.grid_resolution < 4:
            raise InvalidShape(f"grid resolution must be >= 4, got {self.grid_resolution}", field="grid_resolution")

    @property
    def dimension(self) -> int:
        return self.shape.dimension

    @property
    def label(self) -> str:
        return self.name or self.shape.kind

    def signed_distance(self, x):
        """dist(x, complement) inside, -dist(x, body) outside; scalar in, scalar out."""
        arr = np.asarray(x, dtype=float)
        out = self.shape.signed_distance(arr)
        return float(out[0]) if arr.ndim == 1 else out

    def contains(self, points) -> np.ndarray:
        return np.asarray(self.shape.signed_distance(points)) >= 0.0

    def inradius(self) -> float:
        r = self.shape.inradius()
        if r is not None:
            return float(r)
        g = self.grid()
        return float(np.max(self.shape.signed_distance(g.centers)))

    def diameter(self) -> float:
        return float(self.shape.diameter())

    def bbox(self) -> Tuple[np.ndarray, np.ndarray]:
        lo, hi = self.shape.bbox()
        return np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)

    def inner_parallel_contains(self, rho: float, x) -> bool:
        if rho < 0:
            raise NegativeRadius(f"rho must be >= 0, got {rho!r}", field="rho")
        return self.signed_distance(np.asarray(x, dtype=float)) >= rho

    @property
    def convex(self) -> bool:
        return bool(self.shape.convex)

    def grid(self, resolution: int | None = None) -> BodyGrid:
        return _grid_for(self, int(resolution or self.grid_resolution))

    def centroid(self) -> np.ndarray:
        g = self.grid()
        return np.average(g.centers, axis=0, weights=g.weights)

    def volume(self) -> float:
        return float(np.sum(self.grid().weights))

    def boundary_tolerance(self, resolution: int | None = None) -> float:
        """1.5 cell diagonals: points closer to the boundary count as on it."""
        return 1.5 * self.grid(resolution).cell_diagonal

    def describe(self) -> Dict[str, Any]:
        return {
            "shape": self.shape.kind,
            "dimension": self.dimension,
            "params": self.shape.params(),
            "cone": self.cone.as_dict(),
            "grid_resolution": self.grid_resolution,
        }


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def lattice_for_box(lo: np.ndarray, hi: np.ndarray, resolution: int, pad: int = 1):
    """Lattice with ``resolution`` cells along the longest edge, centred on the box."""
    extent = hi - lo
    cell = float(extent.max()) / resolution
    dims = np.ceil(extent / cell - 1e-9).astype(int) + 2 * pad
    center = 0.5 * (lo + hi)
    origin = center - 0.5 * dims * cell
    return origin, cell, tuple(int(d) for d in dims)


def _lattice_centers(origin, cell, dims) -> np.ndarray:
    axes = [origin[k] + (np.arange(dims[k]) + 0.5) * cell for k in range(len(dims))]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


@lru_cache(maxsize=32)
def _grid_for(body: Body, resolution: int) -> BodyGrid:
    m = body.dimension
    if m > 3:
        raise UnsupportedDimension(f"grids exist for m <= 3 only, got m={m}", field="dimension")
    shape = body.shape
    if isinstance(shape, VoxelShape):
        return _voxel_grid(shape, resolution)

    lo, hi = body.bbox()
    origin, cell, dims = lattice_for_box(lo, hi, resolution)
    centers = _lattice_centers(origin, cell, dims)
    sd = shape.signed_distance(centers)
    half_diag = 0.5 * cell * math.sqrt(m)
    full = sd >= half_diag
    partial = np.abs(sd) < half_diag
    frac = full.astype(float)
    if partial.any():
        offs = (np.arange(SUBSAMPLE) + 0.5) / SUBSAMPLE - 0.5
        sub = np.stack(np.meshgrid(*([offs] * m), indexing="ij"), axis=-1).reshape(-1, m) * cell
        pc = centers[partial]
        pts = (pc[:, None, :] + sub[None, :, :]).reshape(-1, m)
        inside = (shape.signed_distance(pts) >= 0.0).reshape(len(pc), -1)
        frac[partial] = inside.mean(axis=1)
    vol = cell ** m
    occupancy = (frac > 0).reshape(dims)
    keep = frac > 0
    log.debug("[body] %s grid %s cells=%d cell=%.4g", body.label, dims, int(keep.sum()), cell)
    return BodyGrid(
        origin=origin, cell=cell, dims=dims,
        centers=centers[keep], weights=frac[keep] * vol, full=full[keep],
        occupancy=occupancy,
    )


def _voxel_grid(shape: VoxelShape, resolution: int) -> BodyGrid:
    native = max(shape.dims)
    factor = max(1, native // max(1, resolution))
    occ = shape.occupancy.astype(float)
    if factor > 1:
        pad = [(0, (-d) % factor) for d in occ.shape]
        occ = np.pad(occ, pad)
        new = tuple(d // factor for d in occ.shape)
        shaped = occ.reshape([x for d in new for x in (d, factor)])
        occ = shaped.mean(axis=tuple(range(1, 2 * len(new), 2)))
    cell = shape.cell * factor
    origin = np.asarray(shape.origin, dtype=float)
    dims = tuple(int(d) for d in occ.shape)
    centers = _lattice_centers(origin, cell, dims)
    frac = occ.ravel()
    keep = frac > 0
    return BodyGrid(
        origin=origin, cell=cell, dims=dims,
        centers=centers[keep], weights=frac[keep] * cell ** len(dims), full=frac[keep] >= 1.0,
        occupancy=occ > 0,
    )


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _center(params: Mapping[str, Any], m: int) -> Tuple[float, ...]:
    c = params.get("center", 0.0)
    if isinstance(c, (int, float)):
        return tuple([float(c)] * m)
    c = tuple(float(v) for v in c)
    if len(c) != m:
        raise InvalidShape(f"center has {len(c)} coordinates, dimension is {m}", field="params.center")
    return c


def _make_shape(kind: str, params: Mapping[str, Any], m: int) -> Shape:
    kind = kind.lower()
    if kind == "ball":
        return Ball(center=_center(params, m), radius=float(params.get("radius", 1.0)))
    if kind == "annulus":
        return Annulus(center=_center(params, m), r_in=float(params["r_in"]), r_out=float(params["r_out"]))
    if kind == "dumbbell":
        return Dumbbell(epsilon=float(params["epsilon"]), m=m)
    if kind in ("polygon", "convex_polygon", "obtuse_triangle", "square"):
        if m != 2:
            raise UnsupportedDimension("polygons live in the plane", field="dimension")
        if kind == "obtuse_triangle":
            return Polygon(vertices=OBTUSE_TRIANGLE, cone_override=ConeSpec(kappa=math.pi / 2, delta=0.3))
        if kind == "square":
            return Polygon(vertices=SQUARE)
        verts = tuple(tuple(float(c) for c in v) for v in params["vertices"])
        return Polygon(vertices=verts)
    if kind == "voxel":
        from pcenters.geometry.voxel_io import read_voxel_grid

        return read_voxel_grid(params["path"])
    raise InvalidShape(f"unknown shape {kind!r}", field="shape")


def build_body(spec: Mapping[str, Any] | None = None, **kwargs) -> Body:
    """Build and validate a Body from a shape description.

    ``spec`` keys: ``shape``, ``params``, ``dimension`` (default 2),
    ``cone`` {``kappa``, ``delta``, optional ``validate``},
    ``grid_resolution``, ``name``.
    """
    from pcenters.utils.jsonx import as_float

    spec = dict(spec or {}, **kwargs)
    if "shape" not in spec:
        raise InvalidShape("missing shape", field="shape")
    m = int(spec.get("dimension", 2))
    if m < 2:
        raise InvalidShape(f"dimension must be >= 2, got {m}", field="dimension")
    shape_obj = spec["shape"]
    if isinstance(shape_obj, (Ball, Annulus, Dumbbell, Polygon, VoxelShape)):
        shape = shape_obj
    else:
        try:
            shape = _make_shape(str(shape_obj), spec.get("params") or {}, m)
        except KeyError as e:
            raise InvalidShape(f"missing parameter {e.args[0]!r}", field=f"params.{e.args[0]}") from e

    cone_spec = spec.get("cone")
    if cone_spec:
        cone = ConeSpec(kappa=as_float(cone_spec["kappa"]), delta=as_float(cone_spec.get("delta", math.inf)))
    else:
        cone = shape.default_cone()

    default_res = settings.DEFAULT_GRID_RESOLUTION if shape.dimension == 2 else settings.DEFAULT_GRID_RESOLUTION_3D
    body = Body(
        shape=shape,
        cone=cone,
        grid_resolution=int(spec.get("grid_resolution") or default_res),
        name=str(spec.get("name", "")),
    )
    if body.diameter() <= 0 or body.inradius() <= 0:
        raise InvalidShape("body must have positive diameter and inradius", field="shape")
    if cone_spec and cone_spec.get("validate"):
        from pcenters.geometry.cone_check import validate_cone_spec

        validate_cone_spec(body)
    log.debug("[body] built %s m=%d diam=%.6g", body.label, m, body.diameter())
    return body


def voxelize(body: Body, cell_size: float) -> Body:
    """Voxel copy of ``body``: a cell is occupied iff its centre lies in the body."""
    if body.dimension > 3:
        raise UnsupportedDimension("voxel grids exist for m <= 3 only", field="dimension")
    lo, hi = body.bbox()
    dims = tuple(int(d) for d in np.ceil((hi - lo) / cell_size - 1e-9).astype(int) + 2)
    origin = 0.5 * (lo + hi) - 0.5 * np.asarray(dims) * cell_size
    centers = _lattice_centers(origin, cell_size, dims)
    occ = (body.shape.signed_distance(centers) >= 0.0).reshape(dims)
    shape = VoxelShape(origin=tuple(origin.tolist()), cell=float(cell_size), occupancy=occ)
    return Body(shape=shape, cone=body.cone, grid_resolution=max(dims), name=f"{body.label}-voxel")
