# pcenters/conebound/closed_form.py
"""Closed forms for the half-space cone (alpha = -1, kappa = pi, delta = inf).

With phi(R) = arccos(R/D) and s_n(a, b) = int_a^b sin^n,

    E(R)  = sigma(S^{m-2}) / R * f(R)
    f(R)  = sin^{m-1} phi / (m-1) + (R/D) s_{m-2}(phi, pi) - (R/R0) s_{m-2}(0, pi)
    f'(R) = s_{m-2}(phi, pi) / D - s_{m-2}(0, pi) / R0
    f''(R) = sin^{m-2} phi / (D sqrt(D^2 - R^2))

f is convex, so its zero lies above the tangent root -f(0)/f'(0), which is
itself at least R0 / (2 (m-1) s_{m-2}(0, pi/2)).
"""

from __future__ import annotations

import math
from typing import Tuple

from scipy.optimize import brentq
from scipy.special import betainc

from pcenters.errors import BracketingFailed, InvalidRange
from pcenters.geometry.spheres import sphere_area


def sin_power_integral(n: int, a: float, b: float) -> float:
    """int_a^b sin^n(t) dt from the reduction formula."""
    if n < 0:
        raise InvalidRange(f"n must be >= 0, got {n}", field="n")

    def prim(x: float) -> float:
        if n == 0:
            return x
        if n == 1:
            return -math.cos(x)
        s, c = math.sin(x), math.cos(x)
        # J_n = -sin^{n-1} cos / n + (n-1)/n J_{n-2}
        acc = x if n % 2 == 0 else -c
        start = 2 if n % 2 == 0 else 3
        for k in range(start, n + 1, 2):
            acc = -(s ** (k - 1)) * c / k + (k - 1) / k * acc
        return acc

    return prim(b) - prim(a)


def _check(R: float, D: float, R0: float, m: int):
    if m < 2:
        raise InvalidRange(f"m must be >= 2, got {m}", field="m")
    if not 0.0 < R0 <= D:
        raise InvalidRange(f"need 0 < R0 <= D, got R0={R0!r}, D={D!r}", field="R0")
    if not 0.0 <= R < D:
        raise InvalidRange(f"need 0 <= R < D, got R={R!r}", field="R")


def half_space_f(R: float, D: float, R0: float, m: int = 2) -> float:
    _check(R, D, R0, m)
    phi = math.acos(R / D)
    return (
        math.sin(phi) ** (m - 1) / (m - 1)
        + R / D * sin_power_integral(m - 2, phi, math.pi)
        - R / R0 * sin_power_integral(m - 2, 0.0, math.pi)
    )


def half_space_f_prime(R: float, D: float, R0: float, m: int = 2) -> float:
    _check(R, D, R0, m)
    phi = math.acos(R / D)
    return sin_power_integral(m - 2, phi, math.pi) / D - sin_power_integral(m - 2, 0.0, math.pi) / R0


def half_space_f_second(R: float, D: float, m: int = 2) -> float:
    if not 0.0 <= R < D:
        raise InvalidRange(f"need 0 <= R < D, got R={R!r}", field="R")
    phi = math.acos(R / D)
    return math.sin(phi) ** (m - 2) / (D * math.sqrt(D * D - R * R))


def half_space_E(R: float, D: float, R0: float, m: int = 2) -> Tuple[float, float, float]:
    """(E(R), f(R), f'(R)) for alpha = -1, kappa = pi, delta = inf."""
    if not R > 0:
        raise InvalidRange(f"need R > 0, got {R!r}", field="R")
    f = half_space_f(R, D, R0, m)
    return sphere_area(m - 2) / R * f, f, half_space_f_prime(R, D, R0, m)


def half_space_root(D: float, R0: float, m: int = 2) -> float:
    """Zero of f in (0, R0), i.e. r_tilde from the closed form."""
    _check(0.0, D, R0, m)
    if R0 >= D:
        raise InvalidRange("need R0 < D", field="R0")
    hi = R0
    if half_space_f(hi, D, R0, m) >= 0:
        raise BracketingFailed(f"f(R0) >= 0 for D={D:g}, R0={R0:g}", field="r_tilde")
    return float(brentq(lambda R: half_space_f(R, D, R0, m), 0.0, hi, xtol=1e-14 * R0))


def tangent_lower_bound(D: float, R0: float, m: int = 2) -> float:
    """-f(0)/f'(0)."""
    return -half_space_f(0.0, D, R0, m) / half_space_f_prime(0.0, D, R0, m)


def lower_bound_r_tilde(R0: float, m: int = 2) -> float:
    """R0 / (2 (m-1) int_0^{pi/2} sin^{m-2}); R0/pi for m = 2."""
    if m < 2:
        raise InvalidRange(f"m must be >= 2, got {m}", field="m")
    if not R0 > 0:
        raise InvalidRange(f"R0 must be > 0, got {R0!r}", field="R0")
    return R0 / (2.0 * (m - 1) * sin_power_integral(m - 2, 0.0, math.pi / 2.0))


def exterior_angle_fraction(kappa: float, m: int = 2) -> float:
    """sigma(C(0; kappa, 1) cap S^{m-1}) / sigma(S^{m-1}): the share of the sphere inside a cone."""
    if not 0.0 < kappa <= math.pi + 1e-12:
        raise InvalidRange(f"kappa must lie in (0, pi], got {kappa!r}", field="kappa")
    a = min(kappa / 2.0, math.pi / 2.0)
    return 0.5 * float(betainc((m - 1) / 2.0, 0.5, math.sin(a) ** 2))


def exterior_bound(kappa: float, m: int = 2) -> float:
    """1 - fraction/2: small-parameter potentials stay below this outside a body with cone-condition complement."""
    return 1.0 - 0.5 * exterior_angle_fraction(kappa, m)
