# pcenters/potentials/kernels.py
"""Kernel descriptions.

A ``KernelSpec`` names one radial kernel family and its parameter. The
families with a time-like parameter (Poisson height ``h``, heat time ``t``,
generalized Poisson ``t``) are the ones the small-parameter results are
about; ``radial(p)`` gives the kernel r -> k(r, p) for any parameter value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Optional

import numpy as np
from scipy.special import beta as beta_fn

from pcenters.errors import AlphaOutOfRange, ConfigError, NonpositiveHeight, NonpositiveTime
from pcenters.geometry.spheres import sphere_area
from pcenters.numerics.radial import RadialKernel, power_kernel

RIESZ = "riesz"
RENORMALIZED = "renormalized"
POISSON = "poisson"
HEAT = "heat"
GENERALIZED_POISSON = "generalized_poisson"
CUSTOM = "custom"

VARIANTS = (RIESZ, RENORMALIZED, POISSON, HEAT, GENERALIZED_POISSON, CUSTOM)

# heat kernel cut off at this many standard deviations sqrt(2t); the mass
# beyond is exp(-32) times a power of 32, below 1e-12 for m <= 3
HEAT_TRUNCATION_SIGMAS = 8.0

# config spellings
VARIANT_ALIASES = {
    "riesz": RIESZ,
    "renormalized": RENORMALIZED,
    "renormalised": RENORMALIZED,
    "poisson": POISSON,
    "solid_angle": POISSON,
    "heat": HEAT,
    "gauss": HEAT,
    "generalized_poisson": GENERALIZED_POISSON,
    "custom-alpha": GENERALIZED_POISSON,
    "custom_alpha": GENERALIZED_POISSON,
    "custom": CUSTOM,
}


@dataclass(frozen=True)
class KernelSpec:
    variant: str
    m: int
    alpha: Optional[float] = None
    h: Optional[float] = None
    t: Optional[float] = None
    fn: Optional[Callable] = field(default=None, compare=False, repr=False)
    beta: Optional[float] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown kernel variant {self.variant!r}", field="kernel.variant")
        if self.m < 2:
            raise ConfigError(f"dimension must be >= 2, got {self.m}", field="dimension")
        v, a = self.variant, self.alpha
        if v == RIESZ and (a is None or not 0.0 < a < self.m):
            raise AlphaOutOfRange(f"Riesz potential needs 0 < alpha < {self.m}, got {a!r}", field="alpha")
        if v == RENORMALIZED and (a is None or a > 0.0):
            raise AlphaOutOfRange(f"renormalized potential needs alpha <= 0, got {a!r}", field="alpha")
        if v == GENERALIZED_POISSON and (a is None or a >= 0.0):
            raise AlphaOutOfRange(f"generalized Poisson kernel needs alpha < 0, got {a!r}", field="alpha")
        if v == POISSON and self.h is not None and not self.h > 0:
            raise NonpositiveHeight(f"h must be > 0, got {self.h!r}", field="h")
        if v in (HEAT, GENERALIZED_POISSON) and self.t is not None and not self.t > 0:
            raise NonpositiveTime(f"t must be > 0, got {self.t!r}", field="t")
        if v == CUSTOM:
            if not callable(self.fn):
                raise ConfigError("custom kernel needs a callable", field="kernel.fn")
            if self.beta is None or not self.beta > 0:
                raise ConfigError(f"custom kernel needs beta > 0, got {self.beta!r}", field="kernel.beta")

    # --- constructors ---

    @classmethod
    def riesz(cls, alpha: float, m: int) -> "KernelSpec":
        return cls(RIESZ, m, alpha=float(alpha))

    @classmethod
    def renormalized(cls, alpha: float, m: int) -> "KernelSpec":
        return cls(RENORMALIZED, m, alpha=float(alpha))

    @classmethod
    def poisson(cls, h: float | None, m: int) -> "KernelSpec":
        return cls(POISSON, m, h=None if h is None else float(h))

    @classmethod
    def heat(cls, t: float | None, m: int) -> "KernelSpec":
        return cls(HEAT, m, t=None if t is None else float(t))

    @classmethod
    def generalized_poisson(cls, alpha: float, t: float | None, m: int) -> "KernelSpec":
        return cls(GENERALIZED_POISSON, m, alpha=float(alpha), t=None if t is None else float(t))

    @classmethod
    def custom(cls, fn: Callable, beta: float, m: int) -> "KernelSpec":
        return cls(CUSTOM, m, fn=fn, beta=float(beta))

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], m: int) -> "KernelSpec":
        """Parse the ``kernel`` block of an experiment config."""
        from pcenters.utils.jsonx import as_float

        if not isinstance(data, Mapping):
            raise ConfigError("kernel must be an object", field="kernel")
        raw = str(data.get("variant", "")).strip().lower()
        variant = VARIANT_ALIASES.get(raw)
        if variant is None:
            raise ConfigError(f"unknown kernel variant {raw!r}", field="kernel.variant")
        if variant == CUSTOM:
            raise ConfigError("custom kernels cannot come from a config file", field="kernel.variant")

        def num(key: str, required: bool) -> float | None:
            if key not in data:
                if required:
                    raise ConfigError(f"missing {key!r}", field=f"kernel.{key}")
                return None
            try:
                return as_float(data[key])
            except (TypeError, ValueError) as e:
                raise ConfigError(f"not a number: {data[key]!r}", field=f"kernel.{key}") from e

        if variant in (RIESZ, RENORMALIZED):
            return cls(variant, m, alpha=num("alpha", True))
        if variant == POISSON:
            return cls(variant, m, h=num("h", False))
        if variant == HEAT:
            return cls(variant, m, t=num("t", False))
        return cls(variant, m, alpha=num("alpha", True), t=num("t", False))

    # --- properties ---

    @property
    def has_parameter(self) -> bool:
        return self.variant in (POISSON, HEAT, GENERALIZED_POISSON)

    @property
    def parameter(self) -> Optional[float]:
        return self.h if self.variant == POISSON else self.t

    @property
    def parameter_name(self) -> str:
        return "h" if self.variant == POISSON else "t"

    @property
    def limit_alpha(self) -> Optional[float]:
        """alpha with k_bar(r, p) -> r^(alpha-m) as p -> 0; None when there is none."""
        if self.variant in (RIESZ, RENORMALIZED, GENERALIZED_POISSON):
            return self.alpha
        if self.variant == POISSON:
            return -1.0
        return None

    def with_parameter(self, p: float) -> "KernelSpec":
        if self.variant == POISSON:
            return replace(self, h=float(p))
        return replace(self, t=float(p))

    def as_dict(self) -> dict:
        out: dict = {"variant": self.variant}
        for key in ("alpha", "h", "t", "beta"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out

    # --- kernels ---

    def _param(self, p: float | None) -> float:
        p = self.parameter if p is None else float(p)
        if p is None:
            raise ConfigError(f"{self.variant} kernel needs a value for {self.parameter_name}",
                              field=f"kernel.{self.parameter_name}")
        if not p > 0:
            err = NonpositiveHeight if self.variant == POISSON else NonpositiveTime
            raise err(f"{self.parameter_name} must be > 0, got {p!r}", field=self.parameter_name)
        return p

    def psi(self, p: float | None = None) -> float:
        """Normalising factor of the parametrised families (total mass 1)."""
        m = self.m
        if self.variant == POISSON:
            return 2.0 * self._param(p) / sphere_area(m)
        if self.variant == HEAT:
            return (4.0 * math.pi * self._param(p)) ** (-m / 2.0)
        if self.variant == GENERALIZED_POISSON:
            t = self._param(p)
            a = self.alpha
            return 2.0 / (sphere_area(m - 1) * t ** a * float(beta_fn(m / 2.0, -a / 2.0)))
        return 1.0

    def kbar(self, r, p: float | None = None) -> np.ndarray:
        """k / psi; tends to r^(alpha-m) for the families that have an alpha."""
        r = np.asarray(r, dtype=float)
        m = self.m
        if self.variant == POISSON:
            h = self._param(p)
            return (r * r + h * h) ** (-(m + 1) / 2.0)
        if self.variant == HEAT:
            t = self._param(p)
            return np.exp(-r * r / (4.0 * t))
        if self.variant == GENERALIZED_POISSON:
            t = self._param(p)
            return (r * r + t * t) ** ((self.alpha - m) / 2.0)
        return self.radial(p)(r)

    def radial(self, p: float | None = None) -> RadialKernel:
        m, v = self.m, self.variant
        if v in (RIESZ, RENORMALIZED):
            k = power_kernel(self.alpha - m, m)
            return replace(k, name=f"{v}(alpha={self.alpha:g})")
        if v == CUSTOM:
            return replace(RadialKernel.wrap(self.fn), name="custom")
        pv = self._param(p)
        c = self.psi(pv)
        if v == POISSON:
            return RadialKernel(
                fn=lambda r: c * (r * r + pv * pv) ** (-(m + 1) / 2.0),
                scale=pv, name=f"poisson(h={pv:g})",
            )
        if v == HEAT:
            return RadialKernel(
                fn=lambda r: c * np.exp(-r * r / (4.0 * pv)),
                scale=math.sqrt(pv), support=HEAT_TRUNCATION_SIGMAS * math.sqrt(2.0 * pv), name=f"heat(t={pv:g})",
            )
        a = self.alpha
        return RadialKernel(
            fn=lambda r: c * (r * r + pv * pv) ** ((a - m) / 2.0),
            scale=pv, name=f"generalized_poisson(alpha={a:g},t={pv:g})",
        )
