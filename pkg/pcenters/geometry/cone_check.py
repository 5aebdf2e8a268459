# pcenters/geometry/cone_check.py
"""Empirical check of a body's declared exterior cone.

For sampled boundary points p we look for an axis v such that the cone
{p + rho*u : 0 < rho <= height, angle(u, v) < kappa/2} stays outside the
body up to the grid tolerance.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Dict

import numpy as np

from pcenters.errors import ConeValidationFailed
from pcenters.geometry.spheres import uniform_directions

log = logging.getLogger("pc")


def _cone_rays(axis: np.ndarray, kappa: float, n_rays: int) -> np.ndarray:
    """Unit vectors inside the cone of half-angle ~kappa/2 around ``axis``."""
    m = len(axis)
    half = 0.98 * kappa / 2.0
    if m == 2:
        base = math.atan2(axis[1], axis[0])
        ang = base + np.linspace(-half, half, n_rays)
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    # m == 3: rings around the axis
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    rays = [axis]
    for tilt in np.linspace(half / 3, half, 3):
        for phi in np.linspace(0.0, 2 * math.pi, n_rays, endpoint=False):
            rays.append(math.cos(tilt) * axis + math.sin(tilt) * (math.cos(phi) * e1 + math.sin(phi) * e2))
    return np.asarray(rays)


def validate_cone_spec(body, samples: int = 200, seed: int = 0, n_axes: int | None = None) -> Dict[str, Any]:
    """Raise ConeValidationFailed unless every sampled boundary point carries the cone."""
    g = body.grid()
    m = body.dimension
    tol = g.cell_diagonal
    sd = body.signed_distance(g.centers)
    boundary = g.centers[np.abs(sd) < 0.5 * g.cell_diagonal]
    if len(boundary) == 0:
        raise ConeValidationFailed("no boundary cells found", field="cone")
    rng = np.random.default_rng(seed)
    pick = boundary[rng.choice(len(boundary), size=min(samples, len(boundary)), replace=False)]

    height = body.cone.delta if not body.cone.unbounded else body.diameter()
    radii = np.linspace(2.0 * tol, height, 8) if height > 2.0 * tol else np.array([height])
    axes = uniform_directions(m, n_axes or (72 if m == 2 else 200))
    rays_per_axis = [_cone_rays(a, body.cone.kappa, 9) for a in axes]

    for p in pick:
        ok = False
        for rays in rays_per_axis:
            pts = (p[None, None, :] + radii[None, :, None] * rays[:, None, :]).reshape(-1, m)
            if np.all(body.signed_distance(pts) <= tol):
                ok = True
                break
        if not ok:
            raise ConeValidationFailed(
                f"no cone (kappa={body.cone.kappa:.4g}, delta={body.cone.delta:.4g}) fits at {p.tolist()}",
                field="cone",
            )
    log.info("[body] cone %s validated on %d boundary points of %s", body.cone.as_dict(), len(pick), body.label)
    return {"checked": int(len(pick)), "kappa": body.cone.kappa, "delta": body.cone.delta}
