# pcenters/numerics/radial.py

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class RadialKernel:
    """r -> k(r) plus what the integrators need to know about it.

    singular: k is unbounded at r = 0.
    scale:    length below which k varies fast (h, sqrt(t)); 0 if none.
    support:  k is treated as 0 beyond this radius.
    moment:   optional closed form of  int_a^b k(r) r^(m-1) dr  as f(a, b).
    """
    fn: Callable[[np.ndarray], np.ndarray]
    singular: bool = False
    scale: float = 0.0
    support: float = math.inf
    moment: Optional[Callable[[float, float], float]] = None
    name: str = "custom"

    def __call__(self, r):
        return self.fn(np.asarray(r, dtype=float))

    @classmethod
    def wrap(cls, kernel) -> "RadialKernel":
        if isinstance(kernel, RadialKernel):
            return kernel
        if not callable(kernel):
            raise TypeError(f"kernel must be callable, got {type(kernel).__name__}")
        with np.errstate(divide="ignore", invalid="ignore"):
            try:
                at0 = float(np.asarray(kernel(np.array([0.0])), dtype=float).ravel()[0])
            except (ZeroDivisionError, FloatingPointError, ValueError, OverflowError):
                at0 = math.inf
        return cls(fn=lambda r: np.asarray(kernel(r), dtype=float), singular=not math.isfinite(at0))


def power_kernel(exponent: float, m: int) -> RadialKernel:
    """k(r) = r^exponent; the moment uses the radial antiderivative of r^(exponent+m-1)."""
    p = exponent + m  # moment integrand r^(p-1)

    def moment(a: float, b: float) -> float:
        if p == 0:
            return math.log(b / a) if a > 0 else math.inf
        if p < 0 and a == 0:
            return math.inf
        return (b ** p - a ** p) / p

    return RadialKernel(
        fn=lambda r: np.power(r, exponent),
        singular=exponent < 0,
        moment=moment,
        name=f"r^{exponent:g}",
    )


def constant_kernel(value: float = 1.0, m: int = 2) -> RadialKernel:
    return RadialKernel(
        fn=lambda r: np.full(np.shape(r), value, dtype=float),
        moment=lambda a, b: value * (b ** m - a ** m) / m,
        name=f"const({value:g})",
    )
