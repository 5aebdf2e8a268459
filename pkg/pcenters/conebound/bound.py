# pcenters/conebound/bound.py
"""The comparison function E(R) and its zero.

    E(R) = min_theta int_{C_theta(R e1) cap B_D(0)} |xi|^(alpha-m)
           - int_{B_D(0) minus B_R0(0)} |xi|^(alpha-m)

E decreases strictly from +inf (R -> 0) and is negative for R >= R0, so it
has one zero r_tilde < R0. The minimum over theta sits at theta = 0 when
delta <= D - R or delta >= sqrt(D^2 - R^2); in between a theta grid is used
and the result is flagged.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.optimize import bisect

from pcenters.conebound.integrals import ConeIntegralParams, annulus_integral, cone_ball_integral
from pcenters.errors import BracketingFailed, HypothesisViolated, InvalidRange, UnsupportedDimension
from pcenters.parallel import map_ordered

log = logging.getLogger("pc")

THETA_GRID = 32
BRACKET_FLOOR = 1e-6


def rotation_hypothesis_holds(delta: float, R: float, D: float) -> bool:
    return delta <= D - R or delta >= math.sqrt(D * D - R * R)


@dataclass(frozen=True)
class EValue:
    R: float
    value: float
    theta_min_numeric: bool = False
    theta_at_min: float = 0.0


def _check(alpha: float, kappa: float, delta: float, D: float, R0: float, m: int):
    if alpha > 0:
        raise InvalidRange(f"alpha must be <= 0, got {alpha!r}", field="alpha")
    if not 0.0 < R0 <= D:
        raise InvalidRange(f"need 0 < R0 <= D, got R0={R0!r}, D={D!r}", field="R0")
    if m < 2:
        raise InvalidRange(f"m must be >= 2, got {m!r}", field="m")


def e_value(R: float, alpha: float, kappa: float, delta: float, D: float, R0: float, m: int = 2) -> EValue:
    _check(alpha, kappa, delta, D, R0, m)
    if not 0.0 < R < D:
        raise InvalidRange(f"need 0 < R < D, got R={R!r}, D={D!r}", field="R")
    base = ConeIntegralParams(alpha, kappa, delta, 0.0, R, D, m)
    annulus = annulus_integral(alpha, m, R0, D)
    if base.theta_max == 0.0 or rotation_hypothesis_holds(delta, R, D):
        return EValue(R, cone_ball_integral(base) - annulus)
    if m > 3:
        raise UnsupportedDimension(
            f"delta={delta:g} lies where the theta minimum must be searched; needs m <= 3", field="m"
        )
    thetas = np.linspace(0.0, base.theta_max, THETA_GRID)
    vals = [cone_ball_integral(ConeIntegralParams(alpha, kappa, delta, float(t), R, D, m)) for t in thetas]
    i = int(np.argmin(vals))
    log.warning("[conebound] theta minimum searched numerically at R=%.6g (delta=%.6g)", R, delta)
    return EValue(R, float(vals[i]) - annulus, True, float(thetas[i]))


def E(R: float, alpha: float, kappa: float, delta: float, D: float, R0: float, m: int = 2) -> float:
    return e_value(R, alpha, kappa, delta, D, R0, m).value


def bracket_r_tilde(alpha, kappa, delta, D, R0, m=2) -> Tuple[float, float]:
    """(lo, hi) with E(lo) > 0 >= E(hi); lo halves from R0/2."""
    _check(alpha, kappa, delta, D, R0, m)
    if R0 >= D:
        raise InvalidRange(f"need R0 < D to bracket the zero, got R0={R0!r}, D={D!r}", field="R0")
    lo = 0.5 * R0
    while E(lo, alpha, kappa, delta, D, R0, m) <= 0:
        lo *= 0.5
        if lo < BRACKET_FLOOR * R0:
            raise BracketingFailed(f"E stays <= 0 down to R={lo:.3g}", field="r_tilde")
    return lo, R0


def r_tilde(alpha: float, kappa: float, delta: float, D: float, R0: float, m: int = 2,
            tolerance: float | None = None) -> float:
    """The zero of E in (0, R0), by bisection."""
    tol = 1e-6 * R0 if tolerance is None else float(tolerance)
    if not tol > 0:
        raise InvalidRange(f"tolerance must be > 0, got {tolerance!r}", field="tolerance")
    lo, hi = bracket_r_tilde(alpha, kappa, delta, D, R0, m)
    if E(hi, alpha, kappa, delta, D, R0, m) > 0:
        raise BracketingFailed(f"E(R0) > 0 for R0={R0:g}", field="r_tilde")
    root = bisect(lambda R: E(R, alpha, kappa, delta, D, R0, m), lo, hi, xtol=tol)
    log.info("[conebound] r_tilde=%.10g (alpha=%g kappa=%.6g delta=%g D=%g R0=%g m=%d)",
             root, alpha, kappa, delta, D, R0, m)
    return float(root)


@dataclass(frozen=True)
class EProfile:
    R_samples: Tuple[float, ...]
    E_values: Tuple[float, ...]
    r_tilde: float
    bracket: Tuple[float, float]
    tolerance: float
    theta_min_numeric: bool = False
    flags: Dict[str, Any] = field(default_factory=dict)

    @property
    def strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.E_values) < 0))

    def rows(self) -> List[Tuple[float, float]]:
        return list(zip(self.R_samples, self.E_values))


def e_profile(alpha: float, kappa: float, delta: float, D: float, R0: float, m: int = 2,
              samples: int = 64, tolerance: float | None = None) -> EProfile:
    """E on a grid of R in (0, min(D, 2 R0)) together with its zero."""
    if samples < 2:
        raise InvalidRange(f"need at least 2 samples, got {samples}", field="samples")
    tol = 1e-6 * R0 if tolerance is None else float(tolerance)
    lo, hi = bracket_r_tilde(alpha, kappa, delta, D, R0, m)
    root = r_tilde(alpha, kappa, delta, D, R0, m, tol)
    top = min(D * (1.0 - 1e-6), 2.0 * R0)
    grid = np.linspace(top / samples, top, samples)
    vals = map_ordered(lambda R: e_value(float(R), alpha, kappa, delta, D, R0, m), list(grid))
    profile = EProfile(
        R_samples=tuple(float(v.R) for v in vals),
        E_values=tuple(float(v.value) for v in vals),
        r_tilde=root,
        bracket=(lo, hi),
        tolerance=tol,
        theta_min_numeric=any(v.theta_min_numeric for v in vals),
    )
    if not profile.strictly_decreasing:
        log.warning("[conebound] sampled E is not strictly decreasing; quadrature too coarse?")
    return profile


def verify_rotation_minimality(alpha: float, kappa: float, delta: float, R: float, D: float, m: int = 2,
                               theta_samples: int = 16, tolerance: float | None = None) -> Dict[str, Any]:
    """Sweep theta over [0, (pi - kappa)/2] and check the cone integral is smallest at 0."""
    if m not in (2, 3):
        raise UnsupportedDimension(f"rotated cone integrals need m in (2, 3), got m={m}", field="m")
    if not 0.0 < R < D:
        raise InvalidRange(f"need 0 < R < D, got R={R!r}, D={D!r}", field="R")
    if not rotation_hypothesis_holds(delta, R, D):
        raise HypothesisViolated(
            f"delta={delta:g} lies strictly between D-R={D - R:g} and sqrt(D^2-R^2)={math.sqrt(D * D - R * R):g}",
            field="delta",
        )
    if theta_samples < 2:
        raise InvalidRange(f"need at least 2 theta samples, got {theta_samples}", field="theta_samples")
    theta_max = max(0.0, (math.pi - kappa) / 2.0)
    thetas = np.linspace(0.0, theta_max, theta_samples)
    vals = map_ordered(
        lambda t: cone_ball_integral(ConeIntegralParams(alpha, kappa, delta, float(t), R, D, m)),
        list(thetas),
    )
    vals = np.asarray(vals)
    tol = 1e-6 * float(np.max(np.abs(vals))) if tolerance is None else float(tolerance)
    ok = bool(np.all(vals[0] <= vals + tol))
    return {
        "theta": thetas.tolist(),
        "values": vals.tolist(),
        "argmin": float(thetas[int(np.argmin(vals))]),
        "tolerance": tol,
        "min_at_zero": ok,
    }
