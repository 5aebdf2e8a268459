# pcenters/conebound/integrals.py
"""int over C_theta(R e1) intersected with B_D(0) of |xi|^(alpha - m) dxi.

Polar coordinates about the apex R e1: a point is R e1 + rho w with w in the
(rotated) cone of half-aperture kappa/2, so |xi|^2 = rho^2 + R^2 + 2 rho R u
with u = w . e1. Since theta + kappa/2 <= pi/2, u >= 0 and the integrand is
bounded by R^(alpha - m). The ray leaves B_D at

    rho_max(u) = -R u + sqrt(D^2 - R^2 (1 - u^2))

and is cut at min(delta, rho_max(u)); the two meet at u* = (D^2 - R^2 - delta^2) / (2 delta R),
where the angular integrand has a kink, so angular panels are split there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from pcenters.errors import InvalidRange, UnsupportedDimension
from pcenters.geometry.spheres import sphere_area

RADIAL_NODES = 16
ANGULAR_NODES = 24
ANGULAR_PANELS = 4
AZIMUTH_NODES = 128

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


@dataclass(frozen=True)
class ConeIntegralParams:
    alpha: float
    kappa: float
    delta: float
    theta: float
    R: float
    D: float
    m: int

    def __post_init__(self):
        if self.alpha > 0:
            raise InvalidRange(f"alpha must be <= 0, got {self.alpha!r}", field="alpha")
        if not 0.0 < self.kappa <= math.pi + 1e-12:
            raise InvalidRange(f"kappa must lie in (0, pi], got {self.kappa!r}", field="kappa")
        if not self.delta > 0:
            raise InvalidRange(f"delta must be > 0, got {self.delta!r}", field="delta")
        if not -1e-12 <= self.theta <= self.theta_max + 1e-12:
            raise InvalidRange(f"theta must lie in [0, {self.theta_max:.6g}], got {self.theta!r}", field="theta")
        if not self.R > 0 or not self.D > 0:
            raise InvalidRange(f"R and D must be > 0, got R={self.R!r}, D={self.D!r}", field="R")
        if self.R >= self.D:
            raise InvalidRange(f"need R < D, got R={self.R!r}, D={self.D!r}", field="R")
        if self.m < 2:
            raise InvalidRange(f"m must be >= 2, got {self.m!r}", field="m")

    @property
    def theta_max(self) -> float:
        return max(0.0, (math.pi - self.kappa) / 2.0)

    @property
    def kink(self) -> float | None:
        """u* where the height cut and the ball cut meet; None if the ball cut never binds or always does."""
        if math.isinf(self.delta):
            return None
        u = (self.D ** 2 - self.R ** 2 - self.delta ** 2) / (2.0 * self.delta * self.R)
        return u if 0.0 < u < 1.0 else None


def radial_integral(u: np.ndarray, p: ConeIntegralParams) -> np.ndarray:
    """int_0^{end(u)} (rho^2 + R^2 + 2 rho R u)^((alpha-m)/2) rho^(m-1) drho for each u >= 0."""
    u = np.clip(np.asarray(u, dtype=float), -1.0, 1.0)
    R, D, m = p.R, p.D, p.m
    end = -R * u + np.sqrt(np.maximum(D * D - R * R * (1.0 - u * u), 0.0))
    end = np.minimum(end, p.delta)
    end = np.maximum(end, 0.0)

    # panels [0, R], [R, 2R], [2R, 4R], ... clipped at end(u)
    top = float(np.max(end)) if end.size else 0.0
    k = max(1, int(math.ceil(math.log2(max(top / R, 1.0)))) + 1)
    marks = np.concatenate([[0.0], R * 2.0 ** np.arange(k)])
    edges = np.minimum(marks[None, :], end[:, None])
    a, b = edges[:, :-1], edges[:, 1:]
    x, w = _gl(RADIAL_NODES)
    half = 0.5 * (b - a)
    rho = half[..., None] * x + (0.5 * (a + b))[..., None]
    wt = half[..., None] * w
    r2 = rho * rho + R * R + 2.0 * rho * R * u[:, None, None]
    f = r2 ** ((p.alpha - m) / 2.0) * rho ** (m - 1)
    return np.sum(wt * f, axis=(1, 2))


def _panel_nodes(lo: float, hi: float, breaks: list[float]) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes on [lo, hi], split at ``breaks``."""
    cuts = sorted({lo, hi, *[c for c in breaks if lo < c < hi]})
    x, w = _gl(ANGULAR_NODES)
    nodes, weights = [], []
    for a, b in zip(cuts[:-1], cuts[1:]):
        sub = np.linspace(a, b, ANGULAR_PANELS + 1)
        for s0, s1 in zip(sub[:-1], sub[1:]):
            h = 0.5 * (s1 - s0)
            nodes.append(h * x + 0.5 * (s0 + s1))
            weights.append(h * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _kink_angles(p: ConeIntegralParams, amplitude: float, shift: float) -> list[float]:
    """Angles phi with amplitude * cos(phi + shift) = u*."""
    u = p.kink
    if u is None or amplitude <= 0 or u > amplitude:
        return []
    c = math.acos(u / amplitude)
    return [c - shift, -c - shift]


def cone_ball_integral(params: ConeIntegralParams) -> float:
    p = params
    half = 0.5 * p.kappa
    if p.theta <= 0.0:
        # axial symmetry about e1: phi_1 in [0, kappa/2], weight sigma(S^{m-2}) sin^{m-2}
        phis, w = _panel_nodes(0.0, half, _kink_angles(p, 1.0, 0.0))
        weight = sphere_area(p.m - 2) * np.sin(phis) ** (p.m - 2) * w
        return float(np.sum(weight * radial_integral(np.cos(phis), p)))

    if p.m == 2:
        phis, w = _panel_nodes(-half, half, _kink_angles(p, 1.0, p.theta))
        return float(np.sum(w * radial_integral(np.cos(phis + p.theta), p)))

    if p.m == 3:
        ct, st = math.cos(p.theta), math.sin(p.theta)
        az = 2.0 * math.pi * (np.arange(AZIMUTH_NODES) + 0.5) / AZIMUTH_NODES
        daz = 2.0 * math.pi / AZIMUTH_NODES
        total = 0.0
        for s2 in np.sin(az):
            # u = ct cos(phi) - st s2 sin(phi) = A cos(phi + beta)
            amp = math.hypot(ct, st * s2)
            beta = math.atan2(st * s2, ct)
            phis, w = _panel_nodes(0.0, half, _kink_angles(p, amp, beta))
            u = ct * np.cos(phis) - st * s2 * np.sin(phis)
            total += float(np.sum(w * np.sin(phis) * radial_integral(u, p)))
        return total * daz

    raise UnsupportedDimension(f"rotated cone integrals need m in (2, 3), got m={p.m}", field="m")


def annulus_integral(alpha: float, m: int, R0: float, D: float) -> float:
    """int over B_D(0) minus B_R0(0) of |xi|^(alpha - m) dxi."""
    sigma = sphere_area(m - 1)
    if alpha == 0:
        return sigma * math.log(D / R0)
    return sigma * (D ** alpha - R0 ** alpha) / alpha
