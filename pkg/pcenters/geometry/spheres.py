# pcenters/geometry/spheres.py
"""Sphere measures and direction sets."""

import math

import numpy as np
from scipy.special import gamma


def sphere_area(n: int) -> float:
    """sigma(S^n), the n-dimensional measure of the unit sphere in R^(n+1)."""
    if n < 0:
        raise ValueError(f"sphere dimension must be >= 0, got {n}")
    return float(2.0 * math.pi ** ((n + 1) / 2.0) / gamma((n + 1) / 2.0))


def ball_volume(m: int, radius: float = 1.0) -> float:
    return sphere_area(m - 1) * radius ** m / m


def circle_directions(count: int) -> np.ndarray:
    """``count`` unit vectors at equal angles, starting at e1."""
    ang = 2.0 * math.pi * np.arange(count) / count
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def fibonacci_directions(count: int) -> np.ndarray:
    """Near-uniform unit vectors on S^2 (Fibonacci lattice)."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def uniform_directions(m: int, count: int) -> np.ndarray:
    if m == 2:
        return circle_directions(count)
    if m == 3:
        return fibonacci_directions(count)
    # any m: deterministic Gaussian normalisation
    rng = np.random.default_rng(12345)
    v = rng.standard_normal((count, m))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
