# pcenters/potentials/summability.py
"""Numerical checks of the kernel hypotheses used by the small-parameter results.

For a family k(r, p) the four conditions checked are

  (1) k(., p) strictly decreasing and of type C0_beta,
  (2) k = psi(p) k_bar(r, p) with k_bar(r, p) -> r^(alpha-m) as p -> 0,
  (3) total mass over R^m equal to 1 for every p,
  (4) mass outside B_rho(0) tending to 0 as p -> 0.

Each verdict is a bool, or None when the condition does not apply.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, Sequence

import numpy as np
from scipy.integrate import quad

from pcenters.errors import InvalidRange, NonDecreasingParameters
from pcenters.geometry.spheres import sphere_area
from pcenters.numerics.radial import RadialKernel
from pcenters.potentials.kernels import KernelSpec

log = logging.getLogger("pc")

MASS_TOLERANCE = 1e-3
TAIL_TOLERANCE = 0.05
LIMIT_TOLERANCE = 1e-2


def _radial_mass(k: Callable, m: int, r_lo: float, r_hi: float) -> float:
    """sigma int_{r_lo}^{r_hi} k(r) r^(m-1) dr, in the variable u = log r."""
    if r_hi <= r_lo:
        return 0.0
    sigma = sphere_area(m - 1)

    def integrand(u: float) -> float:
        r = math.exp(u)
        return float(k(np.array([r]))[0]) * r ** m

    a, b = math.log(r_lo), math.log(r_hi)
    edges = np.linspace(a, b, max(2, int(b - a) + 1))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = quad(integrand, lo, hi, limit=200)
        total += val
    return sigma * total


def total_mass(k: Callable, m: int, scale: float = 1.0) -> tuple[float, bool]:
    """Mass of the kernel over R^m and whether both ends of the integral converged."""
    lo, hi = scale * 1e-12, scale * 1e12
    total = _radial_mass(k, m, lo, hi)
    if not math.isfinite(total):
        return math.inf, False
    # the outermost decades must be negligible at both ends
    inner = _radial_mass(k, m, lo, 10.0 * lo)
    outer = _radial_mass(k, m, hi / 10.0, hi)
    limit = MASS_TOLERANCE * max(abs(total), 1e-300)
    return total, abs(inner) <= limit and abs(outer) <= limit


def _check_parameters(parameter_sequence: Sequence[float]) -> list[float]:
    ps = [float(p) for p in parameter_sequence]
    if not ps:
        raise NonDecreasingParameters("parameter sequence is empty", field="parameters")
    if any(not p > 0 for p in ps):
        raise NonDecreasingParameters(f"parameters must be positive, got {ps}", field="parameters")
    if any(b >= a for a, b in zip(ps, ps[1:])):
        raise NonDecreasingParameters(f"parameters must strictly decrease, got {ps}", field="parameters")
    return ps


def check_condition_c0(kernel, beta: float, m: int, r0: float = 1.0, levels: int = 40) -> Dict[str, Any]:
    """Sample k on r0 2^-j and test k(r) = O(r^(beta-m)) / O(log r) / O(1) as r -> 0.

    The growth of |k| / bound along the dyadic sequence is fitted on a log2
    scale; a slope above 0.02 per halving counts as unbounded.
    """
    if not beta > 0:
        raise InvalidRange(f"beta must be > 0, got {beta!r}", field="beta")
    k = RadialKernel.wrap(kernel)
    j = np.arange(levels + 1, dtype=float)
    r = r0 * 2.0 ** (-j)
    with np.errstate(all="ignore"):
        vals = np.abs(k(r))
    if beta < m:
        bound = r ** (beta - m)
    elif beta == m:
        bound = 1.0 + np.abs(np.log(r))
    else:
        bound = np.ones_like(r)
    finite = bool(np.all(np.isfinite(vals)))
    slope = math.inf
    if finite:
        q = np.log2(np.maximum(vals / bound, 1e-300))
        half = len(j) // 2
        slope = float(np.polyfit(j[half:], q[half:], 1)[0])
    return {"beta": float(beta), "satisfied": finite and slope <= 0.02, "growth_rate": slope, "finite": finite}


def kernel_rm1_decreasing(kernel, m: int, r_lo: float, r_hi: float, samples: int = 512) -> bool:
    """Whether k(r) r^(m-1) decreases on [r_lo, r_hi] (sampled)."""
    if not 0 < r_lo < r_hi:
        raise InvalidRange(f"need 0 < r_lo < r_hi, got {r_lo!r}, {r_hi!r}", field="r_lo")
    k = RadialKernel.wrap(kernel)
    r = np.linspace(r_lo, r_hi, samples)
    g = k(r) * r ** (m - 1)
    return bool(np.all(np.diff(g) < 0))


def poisson_concavity_height(m: int, d: float) -> float:
    """Height below which r -> (r^2 + h^2)^(-(m+1)/2) r^(m-1) decreases on r >= d (m <= 3)."""
    if d < 0:
        raise InvalidRange(f"d must be >= 0, got {d!r}", field="d")
    return math.sqrt((m - 1) / 2.0) * d


def _strictly_decreasing(k: RadialKernel, r: np.ndarray) -> bool:
    v = k(r)
    live = v > 1e-280
    v = v[live]
    return bool(len(v) > 1 and np.all(np.diff(v) < 0))


def check_summability(
    kernel: KernelSpec,
    probe_radius: float,
    parameter_sequence: Sequence[float],
    tail_tolerance: float = TAIL_TOLERANCE,
) -> Dict[str, Any]:
    """Report on the four kernel conditions along a decreasing parameter sequence."""
    if not probe_radius > 0:
        raise InvalidRange(f"probe radius must be > 0, got {probe_radius!r}", field="probe_radius")
    ps = _check_parameters(parameter_sequence)
    m = kernel.m
    rows = []
    for p in ps:
        k = kernel.radial(p if kernel.has_parameter else None)
        scale = k.scale if k.scale > 0 else probe_radius
        mass, converged = total_mass(k, m, scale)
        inner = _radial_mass(k, m, scale * 1e-12, probe_radius) if converged else math.nan
        tail = mass - inner if converged else math.inf
        r = np.geomspace(scale * 1e-4, max(probe_radius, scale) * 1e2, 400)
        decreasing = _strictly_decreasing(k, r)
        beta = kernel.beta if kernel.beta is not None else (
            kernel.alpha if kernel.variant in ("riesz", "renormalized") and kernel.alpha > 0 else m + 1.0)
        c0 = check_condition_c0(k, beta, m, r0=probe_radius)["satisfied"] if beta > 0 else False
        row = {
            "parameter": p,
            "mass": mass,
            "mass_converged": converged,
            "tail_mass": tail,
            "strictly_decreasing": decreasing,
            "c0": c0,
        }
        if kernel.limit_alpha is not None:
            radii = probe_radius * np.array([0.5, 1.0, 2.0])
            target = radii ** (kernel.limit_alpha - m)
            row["limit_error"] = float(np.max(np.abs(kernel.kbar(radii, p) - target) / target))
        rows.append(row)

    cond1 = all(r["strictly_decreasing"] and r["c0"] for r in rows)
    if kernel.limit_alpha is None:
        cond2 = None
    else:
        errs = [r["limit_error"] for r in rows]
        cond2 = errs[-1] <= LIMIT_TOLERANCE and all(b <= a + 1e-9 for a, b in zip(errs, errs[1:]))
    cond3 = all(r["mass_converged"] and abs(r["mass"] - 1.0) <= MASS_TOLERANCE for r in rows)
    tails = [r["tail_mass"] for r in rows]
    cond4 = (
        all(math.isfinite(t) for t in tails)
        and all(b <= a + 1e-9 for a, b in zip(tails, tails[1:]))
        and tails[-1] <= tail_tolerance
    )
    report = {
        "kernel": kernel.as_dict(),
        "dimension": m,
        "probe_radius": probe_radius,
        "parameters": ps,
        "conditions": {"1": cond1, "2": cond2, "3": cond3, "4": cond4},
        "rows": rows,
        "summable": cond3 and cond4,
    }
    if kernel.limit_alpha is None and kernel.has_parameter:
        report["note"] = "no alpha is assigned to this family; condition (2) not applicable"
    log.info("[summability] %s conditions %s", kernel.variant, report["conditions"])
    return report
