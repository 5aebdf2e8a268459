# pcenters/centers/experiments.py
"""Experiments on computed centers: containment, convergence, concavity, gaps."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from pcenters.centers.search import CenterSet, find_centers, incenter
from pcenters.conebound.bound import r_tilde
from pcenters.conebound.closed_form import exterior_bound
from pcenters.errors import (
    EmptySet,
    InvalidRange,
    NoSamplePoints,
    NonDecreasingParameters,
    PreconditionFailed,
)
from pcenters.geometry.body import Body
from pcenters.parallel import map_ordered
from pcenters.potentials.evaluation import evaluate, evaluate_many
from pcenters.potentials.kernels import POISSON, RENORMALIZED, KernelSpec
from pcenters.potentials.summability import kernel_rm1_decreasing, poisson_concavity_height

log = logging.getLogger("pc")

# rejection sampling gives up after this many batches
MAX_BATCHES = 200
BATCH = 4096


def hausdorff_distance(A, B) -> float:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.size == 0 or B.size == 0:
        raise EmptySet("Hausdorff distance needs two nonempty sets", field="A" if A.size == 0 else "B")
    A = A.reshape(len(A), -1) if A.ndim > 1 else A.reshape(1, -1)
    B = B.reshape(len(B), -1) if B.ndim > 1 else B.reshape(1, -1)
    d = cdist(A, B)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def body_r_tilde(body: Body, alpha: float = -1.0, tolerance: float | None = None) -> float:
    """Zero of E for this body's cone, diameter and inradius."""
    return r_tilde(alpha, body.cone.kappa, body.cone.delta, body.diameter(), body.inradius(), body.dimension,
                   tolerance)


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------

def containment_report(
    body: Body,
    centers: CenterSet,
    uf,
    b: float,
    r_tilde: float,
    depth_slack: float | None = None,
) -> Dict[str, Any]:
    """Per-center membership in Uf and in the inner-parallel body.

    Renormalized centers are held to depth r_tilde, parametric ones to
    b * r_tilde. ``depth_slack`` defaults to the center lattice spacing.
    """
    if not 0.0 < b < 1.0:
        raise InvalidRange(f"b must lie in (0, 1), got {b!r}", field="b")
    if not r_tilde > 0:
        raise InvalidRange(f"r_tilde must be > 0, got {r_tilde!r}", field="r_tilde")
    renorm = centers.potential.variant == RENORMALIZED
    radius = r_tilde if renorm else b * r_tilde
    slack = centers.resolution if depth_slack is None else float(depth_slack)
    pts = np.asarray(centers.points, dtype=float).reshape(-1, body.dimension)
    rows = []
    if len(pts):
        in_uf = uf.contains(pts, slack=uf.cell)
        depth = np.atleast_1d(body.signed_distance(pts))
        for p, u, d in zip(pts, in_uf, depth):
            rows.append({
                "point": p.tolist(),
                "in_uf": bool(u),
                "distance_to_boundary": float(d),
                "in_inner_parallel": bool(d >= radius - slack),
            })
    ok = all(r["in_uf"] and r["in_inner_parallel"] for r in rows)
    log.info("[centers] containment on %s: %d center(s), radius=%.6g -> %s",
             body.label, len(rows), radius, "pass" if ok else "fail")
    return {
        "inner_radius": radius,
        "r_tilde": r_tilde,
        "b": b,
        "uf_slack": uf.cell,
        "depth_slack": slack,
        "rows": rows,
        "pass": ok,
    }


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConvergenceRecord:
    parameter: float
    center_set: CenterSet
    hausdorff_to_reference: float

    def __post_init__(self):
        if not self.parameter > 0:
            raise InvalidRange(f"parameter must be > 0, got {self.parameter!r}", field="parameter")
        if self.hausdorff_to_reference < 0:
            raise InvalidRange("Hausdorff distance is negative", field="hausdorff_to_reference")


def _decreasing(parameters: Sequence[float]) -> List[float]:
    ps = [float(p) for p in parameters]
    if not ps or any(not p > 0 for p in ps) or any(b >= a for a, b in zip(ps, ps[1:])):
        raise NonDecreasingParameters(f"parameters must be positive and strictly decreasing, got {ps}",
                                      field="parameters")
    return ps


def reference_centers(body: Body, alpha: float, resolution: float, **kwargs) -> CenterSet:
    """Renormalized centers, the limit set of the parametric families."""
    return find_centers(body, KernelSpec.renormalized(alpha, body.dimension), resolution, **kwargs)


def convergence_experiment(
    body: Body,
    family: KernelSpec,
    parameters: Sequence[float],
    reference: CenterSet | None,
    resolution: float,
    plateau_tolerance: float | None = None,
    quad_resolution: int | None = None,
    threads: int | None = None,
) -> List[ConvergenceRecord]:
    """Hausdorff distance from the family's centers at each parameter to the reference set."""
    ps = _decreasing(parameters)
    if not family.has_parameter:
        raise InvalidRange(f"{family.variant} kernel has no parameter to shrink", field="kernel.variant")
    if reference is None:
        if family.limit_alpha is None:
            raise InvalidRange(f"{family.variant} kernel has no limiting alpha; pass a reference", field="reference")
        reference = reference_centers(body, family.limit_alpha, resolution, quad_resolution=quad_resolution,
                                      threads=threads)
    out = []
    for p in ps:
        cs = find_centers(body, family.with_parameter(p), resolution, plateau_tolerance,
                          quad_resolution=quad_resolution, threads=threads)
        hd = hausdorff_distance(cs.points, reference.points)
        log.info("[centers] %s=%.6g: %d center(s), Hausdorff to reference %.6g",
                 family.parameter_name, p, len(cs), hd)
        out.append(ConvergenceRecord(p, cs, hd))
    return out


def heat_incenter_trend(
    body: Body,
    times: Sequence[float],
    resolution: float,
    quad_resolution: int | None = None,
    threads: int | None = None,
) -> Dict[str, Any]:
    """Distance from heat hot spots to the incenter as t shrinks; a trend, not a theorem."""
    ts = _decreasing(times)
    target = incenter(body, quad_resolution)
    records = convergence_experiment(
        body, KernelSpec.heat(None, body.dimension), ts, _point_set(body, target, resolution),
        resolution, quad_resolution=quad_resolution, threads=threads,
    )
    dists = [r.hausdorff_to_reference for r in records]
    return {
        "incenter": target.tolist(),
        "times": ts,
        "distances": dists,
        "closer_at_smallest": dists[-1] <= dists[0] + resolution,
        "records": records,
    }


def _point_set(body: Body, point: np.ndarray, resolution: float) -> CenterSet:
    return CenterSet(
        points=np.atleast_2d(point), values=np.zeros(1), max_value=0.0, plateau_tolerance=0.0,
        potential=KernelSpec.heat(None, body.dimension), search_region="incenter", resolution=resolution,
    )


# ---------------------------------------------------------------------------
# concavity
# ---------------------------------------------------------------------------

def region_gaps(body: Body, points) -> tuple[float, float]:
    """(d, D): least and greatest distance from the boundary to a point of the sampled set."""
    pts = np.asarray(points, dtype=float).reshape(-1, body.dimension)
    if len(pts) == 0:
        raise EmptySet("no points to measure", field="points")
    g = body.grid()
    boundary = g.centers[~g.full]
    d = max(0.0, float(np.min(body.signed_distance(pts))))
    D = float(cdist(boundary, pts).max())
    return d, D


def _sample(body: Body, accept, n: int, rng: np.random.Generator, pad: float = 0.0) -> np.ndarray:
    lo, hi = body.bbox()
    lo, hi = lo - pad, hi + pad
    got: List[np.ndarray] = []
    count = 0
    for _ in range(MAX_BATCHES):
        cand = rng.uniform(lo, hi, size=(BATCH, body.dimension))
        keep = cand[accept(cand)]
        got.append(keep)
        count += len(keep)
        if count >= n:
            return np.concatenate(got)[:n]
    return np.concatenate(got) if got else np.zeros((0, body.dimension))


def _clusters(points: np.ndarray, spacing: float) -> int:
    if len(points) <= 1:
        return len(points)
    tree = cKDTree(points)
    adj = tree.sparse_distance_matrix(tree, spacing * math.sqrt(points.shape[1]) * 1.001)
    n, _ = connected_components(adj, directed=False)
    return int(n)


def concavity_probe(
    body: Body,
    kernel: KernelSpec,
    trials: int,
    seed: int,
    inner_radius: float | None = None,
    uf=None,
    parameter: float | None = None,
    resolution: int | None = None,
    center_resolution: float | None = None,
    strict: bool = False,
    threads: int | None = None,
) -> Dict[str, Any]:
    """Midpoint concavity of K on the sub-region {depth >= inner_radius} (cut by Uf when given)."""
    if not body.convex:
        raise PreconditionFailed(f"{body.label} is not convex", field="body")
    if trials < 1:
        raise InvalidRange(f"trials must be >= 1, got {trials}", field="trials")
    m = body.dimension
    rho = 0.25 * body.inradius() if inner_radius is None else float(inner_radius)
    if rho <= body.boundary_tolerance(resolution):
        raise InvalidRange(f"inner radius {rho:.4g} is inside the boundary tolerance", field="inner_radius")

    def accept(p):
        ok = np.atleast_1d(body.signed_distance(p)) >= rho
        if uf is not None:
            ok &= uf.contains(p)
        return ok

    rng = np.random.default_rng(seed)
    pts = _sample(body, accept, 2 * trials, rng)
    if len(pts) < 2 * trials:
        raise NoSamplePoints(f"only {len(pts)} of {2 * trials} points found in the probe region", field="inner_radius")
    x, y = pts[0::2], pts[1::2]
    mid = 0.5 * (x + y)

    d, D = region_gaps(body, pts)
    k = kernel.radial(parameter if kernel.has_parameter else None)
    monotone = kernel_rm1_decreasing(k, m, d, D) if d > 0 and D > d else False
    height_ok = None
    if kernel.variant == POISSON:
        h = kernel.h if parameter is None else float(parameter)
        height_ok = h <= poisson_concavity_height(m, d)
    if not monotone:
        msg = f"k(r) r^(m-1) is not decreasing on [{d:.4g}, {D:.4g}]"
        if strict:
            raise PreconditionFailed(msg, field="kernel")
        log.warning("[centers] %s", msg)

    every = np.concatenate([x, y, mid])
    vals = map_ordered(lambda p: evaluate(body, kernel, p, parameter, resolution, estimate_error=True),
                       list(every), threads=threads)
    v = np.array([r.value for r in vals])
    e = np.array([r.estimated_error for r in vals])
    n = len(x)
    vx, vy, vm = v[:n], v[n:2 * n], v[2 * n:]
    ex, ey, em = e[:n], e[n:2 * n], e[2 * n:]
    tol = em + 0.5 * (ex + ey) + 1e-12 * np.abs(vm)
    gap = vm - 0.5 * (vx + vy)
    violations = int(np.sum(gap < -tol))

    spacing = center_resolution or body.diameter() / 32.0
    cs = find_centers(body, kernel, spacing, parameter=parameter, quad_resolution=resolution, threads=threads)
    clusters = _clusters(cs.points, spacing)
    report = {
        "kernel": kernel.as_dict(),
        "parameter": parameter,
        "trials": n,
        "seed": seed,
        "inner_radius": rho,
        "d": d,
        "D": D,
        "rm1_decreasing": monotone,
        "poisson_height_ok": height_ok,
        "violations": violations,
        "worst_gap": float(np.min(gap + tol)),
        "center_count": len(cs),
        "center_clusters": clusters,
        "unique_center": clusters == 1,
    }
    log.info("[centers] concavity on %s: %d/%d violations, %d cluster(s)", body.label, violations, n, clusters)
    return report


# ---------------------------------------------------------------------------
# small-parameter gap
# ---------------------------------------------------------------------------

def small_parameter_gap_check(
    X: Body,
    Y: Body,
    R0: float,
    b: float,
    family: KernelSpec,
    parameter: float,
    r_tilde_value: float | None = None,
    samples: int = 32,
    seed: int = 0,
    resolution: int | None = None,
    threads: int | None = None,
) -> Dict[str, Any]:
    """K_Y(y) < K_X(x) for deep x in X and y within b * r_tilde of Y's complement, at one small parameter."""
    if not 0.0 < b < 1.0:
        raise InvalidRange(f"b must lie in (0, 1), got {b!r}", field="b")
    if not R0 > 0:
        raise InvalidRange(f"R0 must be > 0, got {R0!r}", field="R0")
    if X.dimension != Y.dimension:
        raise InvalidRange("X and Y live in different dimensions", field="Y")
    if not family.has_parameter:
        raise InvalidRange(f"{family.variant} kernel has no parameter", field="kernel.variant")
    if r_tilde_value is None:
        if family.limit_alpha is None:
            raise InvalidRange(f"{family.variant} kernel has no alpha; pass r_tilde", field="r_tilde")
        r_tilde_value = body_r_tilde(Y, family.limit_alpha)
    band = b * r_tilde_value
    rng = np.random.default_rng(seed)

    xs = _sample(X, lambda p: np.atleast_1d(X.signed_distance(p)) >= R0, samples, rng)
    pad = band + 0.5 * Y.inradius()
    ys = _sample(Y, lambda p: np.atleast_1d(Y.signed_distance(p)) <= band, samples, rng, pad=pad)
    if len(xs) == 0:
        raise NoSamplePoints(f"no point of {X.label} at depth >= {R0:g}", field="R0")
    if len(ys) == 0:
        raise NoSamplePoints(f"no point within {band:.4g} of the complement of {Y.label}", field="b")

    kx = evaluate_many(X, family, xs, parameter, resolution, threads=threads)
    ky = evaluate_many(Y, family, ys, parameter, resolution, threads=threads)
    outside = np.atleast_1d(Y.signed_distance(ys)) < 0
    margin = float(kx.min() - ky.max())
    report = {
        "kernel": family.as_dict(),
        "parameter": parameter,
        "R0": R0,
        "b": b,
        "r_tilde": r_tilde_value,
        "band": band,
        "x_samples": len(xs),
        "y_samples": len(ys),
        "y_exterior_samples": int(outside.sum()),
        "min_K_X": float(kx.min()),
        "max_K_Y": float(ky.max()),
        "max_K_Y_exterior": float(ky[outside].max()) if outside.any() else None,
        "exterior_bound": exterior_bound(Y.cone.kappa, Y.dimension),
        "margin": margin,
        "pass": margin > 0,
    }
    log.info("[centers] gap check %s vs %s at %s=%g: margin %.6g", X.label, Y.label,
             family.parameter_name, parameter, margin)
    return report


__all__ = [
    "ConvergenceRecord", "body_r_tilde", "concavity_probe", "containment_report", "convergence_experiment",
    "hausdorff_distance", "heat_incenter_trend", "reference_centers", "region_gaps", "small_parameter_gap_check",
]
