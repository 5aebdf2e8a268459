# pcenters/numerics/quadrature.py
"""Integration of radial kernels over bodies.

The workhorse is a midpoint rule on the body grid. Cells cut by the
exclusion sphere |x - xi| = eps, and cells close to x when the kernel is
steep there, are split into 2^depth sub-cells per axis. A polar rule around
x covers small balls B_r(x) exactly where the grid cannot. A seeded
Monte-Carlo estimate serves as an independent cross-check.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from pcenters.config import settings
from pcenters.errors import EmptyRegion, InvalidRange, SingularKernel
from pcenters.geometry.body import Body, BodyGrid
from pcenters.geometry.spheres import sphere_area, uniform_directions
from pcenters.numerics.radial import RadialKernel

log = logging.getLogger("pc")

# more refinement candidates than this and only the straddling cells and the
# immediate neighbourhood of x are split
NEAR_CAP = 4096
GAUSS_NODES = 8
_GL = np.polynomial.legendre.leggauss(GAUSS_NODES)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    estimated_error: float
    evaluations: int

    def __post_init__(self):
        if self.estimated_error < 0:
            raise ValueError("estimated_error must be >= 0")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be > 0")


def _subcell_offsets(m: int, depth: int) -> np.ndarray:
    s = 2 ** depth
    offs = (np.arange(s) + 0.5) / s - 0.5
    return np.stack(np.meshgrid(*([offs] * m), indexing="ij"), axis=-1).reshape(-1, m)


def _depth_for(m: int) -> int:
    return settings.NEAR_SUBDIVISION_DEPTH if m == 2 else min(2, settings.NEAR_SUBDIVISION_DEPTH)


def grid_integral(body: Body, grid: BodyGrid, kernel: RadialKernel, x: np.ndarray, eps: float) -> tuple[float, int]:
    """Midpoint rule for  int_{body minus B_eps(x)} k(|x - xi|) dxi  on ``grid``."""
    m = grid.dimension
    c, w = grid.centers, grid.weights
    d = np.linalg.norm(c - x, axis=1)
    hd = 0.5 * grid.cell_diagonal

    steep = min([v for v in (eps, kernel.scale) if v > 0], default=0.0)
    near_r = 3.0 * steep if 0.0 < steep < 8.0 * grid.cell else 0.0
    refine = d < near_r + hd
    if eps > 0:
        refine |= np.abs(d - eps) < hd
    if kernel.singular and eps <= 0:
        refine |= d < hd
    if np.count_nonzero(refine) > NEAR_CAP:
        refine = (np.abs(d - eps) < hd) if eps > 0 else np.zeros_like(refine)
        refine |= d < 3.0 * grid.cell + hd

    support = kernel.support
    coarse = (~refine) & (d >= eps) & (d <= support + hd)
    value = float(np.sum(w[coarse] * kernel(d[coarse])))
    count = int(np.count_nonzero(coarse))

    idx = np.flatnonzero(refine)
    if len(idx):
        offs = _subcell_offsets(m, _depth_for(m)) * grid.cell
        sub_vol = grid.cell_volume / len(offs)
        chunk = max(1, 262144 // len(offs))
        parts = []
        for s in range(0, len(idx), chunk):
            sel = idx[s:s + chunk]
            pts = c[sel][:, None, :] + offs[None, :, :]
            r = np.linalg.norm(pts - x, axis=2)
            keep = (r >= eps) & (r <= support) & (r > 0)
            partial = ~grid.full[sel]
            if partial.any():
                flat = pts[partial].reshape(-1, m)
                inside = (body.shape.signed_distance(flat) >= 0.0).reshape(-1, len(offs))
                keep[partial] &= inside
            rr = r[keep]
            parts.append(np.sum(kernel(rr)) * sub_vol)
            count += int(rr.size)
        value += float(np.sum(parts))
    return value, max(count, 1)


def polar_ball_integral(
    body: Body,
    kernel: RadialKernel,
    x: np.ndarray,
    r_lo: float,
    r_hi: float,
    n_dirs: int | None = None,
) -> tuple[float, int]:
    """int over (B_r_hi(x) minus B_r_lo(x)) within the body, in polar coordinates about x.

    The angular measure of the body on each sphere is sampled with fixed
    directions; when the whole ball lies inside the body it is exact.
    """
    if r_hi <= r_lo:
        return 0.0, 1
    m = body.dimension
    sigma = sphere_area(m - 1)
    inside_ball = body.signed_distance(x) >= r_hi
    if inside_ball and kernel.moment is not None:
        return sigma * kernel.moment(r_lo, r_hi), 1
    if not inside_ball:
        n = n_dirs or (256 if m == 2 else 512)
        dirs = uniform_directions(m, n)
        if m == 2:
            half = math.pi / n
            rot = np.array([[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]])
            dirs = dirs @ rot.T

    floor = max(r_lo, r_hi * 1e-9)
    edges = [r_hi]
    while edges[-1] / 2.0 > floor:
        edges.append(edges[-1] / 2.0)
    edges.append(floor)
    edges = np.asarray(edges[::-1])

    a, b = edges[:-1], edges[1:]
    nodes = 0.5 * (b - a)[:, None] * _GL[0][None, :] + 0.5 * (b + a)[:, None]
    weights = 0.5 * (b - a)[:, None] * _GL[1][None, :]
    r = nodes.ravel()
    if inside_ball:
        frac = np.ones_like(r)
    else:
        pts = x[None, None, :] + r[:, None, None] * dirs[None, :, :]
        frac = body.contains(pts.reshape(-1, m)).reshape(len(r), -1).mean(axis=1)
    value = float(np.sum(weights.ravel() * kernel(r) * r ** (m - 1) * frac)) * sigma
    count = r.size

    if r_lo <= 0.0:
        # innermost ball of radius `floor`: the angular fraction is frozen at its outer value
        f0 = frac[0]
        if kernel.moment is not None:
            value += sigma * f0 * kernel.moment(0.0, floor)
        elif not kernel.singular:
            value += sigma * f0 * float(kernel(np.array([floor]))[0]) * floor ** m / m
    return value, count


def integrate_kernel_over_body(
    body: Body,
    kernel,
    x,
    exclusion_radius: float = 0.0,
    resolution: int | None = None,
    estimate_error: bool = True,
) -> QuadratureResult:
    """int_{body minus B_eps(x)} k(|x - xi|) dxi by the refined midpoint rule.

    ``estimated_error`` is |value - value on the half-resolution grid|.
    """
    kern = RadialKernel.wrap(kernel)
    x = np.asarray(x, dtype=float)
    if exclusion_radius < 0:
        raise InvalidRange(f"exclusion radius must be >= 0, got {exclusion_radius!r}", field="exclusion_radius")
    res = int(resolution or body.grid_resolution)
    grid = body.grid(res)
    if kern.singular and exclusion_radius <= 0.0 and body.signed_distance(x) > -grid.cell_diagonal:
        raise SingularKernel(
            "kernel is unbounded at r=0 and x meets the body; pass a positive exclusion radius",
            field="exclusion_radius",
        )
    value, count = grid_integral(body, grid, kern, x, exclusion_radius)
    err = 0.0
    if estimate_error:
        coarse_res = max(4, res // 2)
        coarse, n2 = grid_integral(body, body.grid(coarse_res), kern, x, exclusion_radius)
        err = abs(value - coarse)
        count += n2
    log.debug("[quadrature] %s at %s eps=%.4g -> %.10g (+-%.2g)", kern.name, x.tolist(), exclusion_radius, value, err)
    return QuadratureResult(value=value, estimated_error=err, evaluations=count)


def monte_carlo_oracle(
    body: Body,
    kernel,
    x,
    exclusion_radius: float,
    seed: int,
    samples: int = 1_000_000,
    chunk: int = 250_000,
) -> QuadratureResult:
    """Rejection-sampling estimate of the same integral; deterministic given ``seed``.

    Points are drawn uniformly in the body's bounding box and rejected
    outside the body or inside B_eps(x).
    """
    kern = RadialKernel.wrap(kernel)
    x = np.asarray(x, dtype=float)
    if samples < 10_000:
        raise InvalidRange(f"need at least 1e4 samples, got {samples}", field="samples")
    if exclusion_radius < 0:
        raise InvalidRange(f"exclusion radius must be >= 0, got {exclusion_radius!r}", field="exclusion_radius")
    if kern.singular and exclusion_radius <= 0.0 and body.signed_distance(x) > 0.0:
        raise SingularKernel("kernel is unbounded at r=0; pass a positive exclusion radius", field="exclusion_radius")

    lo, hi = body.bbox()
    box_vol = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    s1 = s2 = 0.0
    accepted = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        pts = lo + (hi - lo) * rng.random((n, body.dimension))
        r = np.linalg.norm(pts - x, axis=1)
        ok = body.contains(pts) & (r >= exclusion_radius) & (r > 0)
        f = np.zeros(n)
        f[ok] = kern(r[ok])
        s1 += float(np.sum(f))
        s2 += float(np.sum(f * f))
        accepted += int(np.count_nonzero(ok))
        done += n
    rate = accepted / samples
    if rate < 1e-3:
        raise EmptyRegion(f"acceptance rate {rate:.2e} below 1e-3", field="exclusion_radius")
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0)
    value = box_vol * mean
    stderr = box_vol * math.sqrt(var / samples)
    log.debug("[quadrature] monte-carlo %s seed=%d -> %.8g +- %.2g (acc %.3f)", kern.name, seed, value, stderr, rate)
    return QuadratureResult(value=value, estimated_error=stderr, evaluations=samples)
