# pcenters/geometry/cone.py

import math
from dataclasses import dataclass

from pcenters.errors import InvalidShape


@dataclass(frozen=True)
class ConeSpec:
    """Exterior cone guarantee: aperture ``kappa`` and height ``delta``.

    ``delta == math.inf`` encodes an unbounded cone (a half-space when
    ``kappa == pi``).
    """
    kappa: float
    delta: float = math.inf

    def __post_init__(self):
        if not (0.0 < self.kappa <= math.pi + 1e-12):
            raise InvalidShape(f"aperture must lie in (0, pi], got {self.kappa!r}", field="ConeSpec.kappa")
        if not self.delta > 0.0:
            raise InvalidShape(f"height must be positive, got {self.delta!r}", field="ConeSpec.delta")

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.delta)

    def as_dict(self) -> dict:
        return {"kappa": self.kappa, "delta": self.delta}


HALF_SPACE = ConeSpec(kappa=math.pi, delta=math.inf)
