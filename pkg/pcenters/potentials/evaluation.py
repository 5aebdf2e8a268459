# pcenters/potentials/evaluation.py
"""Point evaluation of the potentials of a body.

All of them reduce to  int_{body minus B_eps(x)} k(|x - xi|) dxi  on the body
grid plus a near-field piece over B_r(x) done in polar coordinates about x.
When x sits deep inside the body that ball is entirely in the body and the
near-field piece is a one-dimensional radial integral.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from pcenters.errors import BoundaryPoint, InvalidRange, InvalidShape
from pcenters.geometry.body import Body
from pcenters.geometry.spheres import sphere_area
from pcenters.numerics.quadrature import integrate_kernel_over_body, polar_ball_integral
from pcenters.numerics.radial import RadialKernel
from pcenters.parallel import map_ordered
from pcenters.potentials.kernels import (
    CUSTOM,
    GENERALIZED_POISSON,
    HEAT,
    POISSON,
    RENORMALIZED,
    RIESZ,
    KernelSpec,
)

log = logging.getLogger("pc")

INTERIOR = "interior"
EXTERIOR = "exterior"

# a kernel with a length scale below this many cells gets a polar near field
NEAR_CELLS = 4


@dataclass(frozen=True)
class PotentialValue:
    value: float
    renormalization_epsilon: float = 0.0
    location_class: str = INTERIOR
    estimated_error: float = 0.0

    def __post_init__(self):
        if self.location_class not in (INTERIOR, EXTERIOR):
            raise ValueError(f"location_class must be interior or exterior, got {self.location_class!r}")

    def __float__(self) -> float:
        return self.value


def _point(body: Body, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != body.dimension:
        raise InvalidShape(f"point has {x.shape[0]} coordinates, body lives in R^{body.dimension}", field="x")
    return x


def _near_radius(body: Body, kern: RadialKernel, sd: float, cell: float) -> float:
    if kern.singular:
        base = cell
    elif 0.0 < kern.scale < NEAR_CELLS * cell:
        base = NEAR_CELLS * cell
    else:
        return 0.0
    return max(base, sd)


def kernel_potential(
    body: Body,
    kernel,
    x,
    resolution: int | None = None,
    estimate_error: bool = True,
) -> PotentialValue:
    """K(x) = int_body k(|x - xi|) dxi for an integrable radial kernel."""
    kern = RadialKernel.wrap(kernel)
    x = _point(body, x)
    res = int(resolution or body.grid_resolution)
    cell = body.grid(res).cell
    sd = body.signed_distance(x)
    r_near = _near_radius(body, kern, sd, cell)
    near = polar_ball_integral(body, kern, x, 0.0, r_near)[0] if r_near > 0 else 0.0
    far = integrate_kernel_over_body(body, kern, x, r_near, resolution=res, estimate_error=estimate_error)
    return PotentialValue(
        value=near + far.value,
        location_class=INTERIOR if sd >= 0 else EXTERIOR,
        estimated_error=far.estimated_error,
    )


def riesz_potential(body: Body, alpha: float, x, resolution: int | None = None,
                    estimate_error: bool = True) -> PotentialValue:
    """V(x) = int_body |x - xi|^(alpha - m) dxi with 0 < alpha < m."""
    spec = KernelSpec.riesz(alpha, body.dimension)
    return kernel_potential(body, spec.radial(), x, resolution, estimate_error)


def renormalized_potential(
    body: Body,
    alpha: float,
    x,
    resolution: int | None = None,
    epsilon: float | None = None,
    estimate_error: bool = True,
) -> PotentialValue:
    """Renormalized r^(alpha-m) potential, alpha <= 0.

    Inside the body, with eps < d = dist(x, complement) (eps = d/2 unless
    given),

        V(x) = int_{body minus B_eps(x)} r^(alpha-m) - sigma eps^alpha / (-alpha)    (alpha < 0)
        V(x) = int_{body minus B_eps(x)} r^(-m)      - sigma log(1/eps)              (alpha = 0)

    and the value does not depend on eps. Outside it is the plain integral.
    """
    spec = KernelSpec.renormalized(alpha, body.dimension)
    m = body.dimension
    x = _point(body, x)
    res = int(resolution or body.grid_resolution)
    sd = body.signed_distance(x)
    tol = body.boundary_tolerance(res)
    if abs(sd) < tol:
        raise BoundaryPoint(f"x is within {tol:.3g} of the boundary (signed distance {sd:.3g})", field="x")
    kern = spec.radial()

    if sd < 0:
        r = integrate_kernel_over_body(body, kern, x, 0.0, resolution=res, estimate_error=estimate_error)
        return PotentialValue(r.value, 0.0, EXTERIOR, r.estimated_error)

    eps = 0.5 * sd if epsilon is None else float(epsilon)
    if not 0.0 < eps < sd:
        raise InvalidRange(f"epsilon must lie in (0, {sd:.6g}), got {eps!r}", field="epsilon")
    sigma = sphere_area(m - 1)
    # B_sd(x) lies in the body: the shell eps < r < sd is exact
    shell = sigma * kern.moment(eps, sd)
    far = integrate_kernel_over_body(body, kern, x, sd, resolution=res, estimate_error=estimate_error)
    if alpha < 0:
        renorm = sigma * eps ** alpha / (-alpha)
    else:
        renorm = sigma * math.log(1.0 / eps)
    value = shell + far.value - renorm
    log.debug("[potentials] V^(%g) at %s eps=%.4g -> %.10g", alpha, x.tolist(), eps, value)
    return PotentialValue(value, eps, INTERIOR, far.estimated_error)


def solid_angle(body: Body, x, h: float, resolution: int | None = None, estimate_error: bool = False) -> float:
    """A(x, h) = h int_body (|x - xi|^2 + h^2)^(-(m+1)/2) dxi."""
    return poisson_integral(body, x, h, resolution, estimate_error) * sphere_area(body.dimension) / 2.0


def poisson_integral(body: Body, x, h: float, resolution: int | None = None, estimate_error: bool = False) -> float:
    """P(x, h) = 2 A(x, h) / sigma(S^m)."""
    k = KernelSpec.poisson(h, body.dimension).radial()
    return kernel_potential(body, k, x, resolution, estimate_error).value


def heat_potential(body: Body, x, t: float, resolution: int | None = None, estimate_error: bool = False) -> float:
    """W(x, t) = (4 pi t)^(-m/2) int_body exp(-|x - xi|^2 / 4t) dxi."""
    k = KernelSpec.heat(t, body.dimension).radial()
    return kernel_potential(body, k, x, resolution, estimate_error).value


def evaluate(
    body: Body,
    spec: KernelSpec,
    x,
    parameter: float | None = None,
    resolution: int | None = None,
    estimate_error: bool = True,
) -> PotentialValue:
    """Dispatch on the kernel variant."""
    if spec.variant == RIESZ:
        return riesz_potential(body, spec.alpha, x, resolution, estimate_error)
    if spec.variant == RENORMALIZED:
        return renormalized_potential(body, spec.alpha, x, resolution, estimate_error=estimate_error)
    if spec.variant in (POISSON, HEAT, GENERALIZED_POISSON):
        return kernel_potential(body, spec.radial(parameter), x, resolution, estimate_error)
    if spec.variant == CUSTOM:
        return kernel_potential(body, spec.radial(), x, resolution, estimate_error)
    raise InvalidShape(f"unknown kernel variant {spec.variant!r}", field="kernel.variant")


def evaluate_many(
    body: Body,
    spec: KernelSpec,
    points: Sequence,
    parameter: float | None = None,
    resolution: int | None = None,
    estimate_error: bool = False,
    threads: int | None = None,
) -> np.ndarray:
    """Values at many points, in input order."""
    pts = np.asarray(points, dtype=float).reshape(-1, body.dimension)
    vals = map_ordered(
        lambda p: evaluate(body, spec, p, parameter, resolution, estimate_error).value,
        list(pts),
        threads=threads,
    )
    return np.asarray(vals, dtype=float)


__all__ = [
    "EXTERIOR", "INTERIOR", "PotentialValue", "evaluate", "evaluate_many", "heat_potential",
    "kernel_potential", "poisson_integral", "renormalized_potential", "riesz_potential", "solid_angle",
]
