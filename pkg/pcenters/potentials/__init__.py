from pcenters.potentials.evaluation import (
    EXTERIOR,
    INTERIOR,
    PotentialValue,
    evaluate,
    evaluate_many,
    heat_potential,
    kernel_potential,
    poisson_integral,
    renormalized_potential,
    riesz_potential,
    solid_angle,
)
from pcenters.potentials.kernels import KernelSpec
from pcenters.potentials.summability import (
    check_condition_c0,
    check_summability,
    kernel_rm1_decreasing,
    poisson_concavity_height,
    total_mass,
)

__all__ = [
    "EXTERIOR", "INTERIOR", "KernelSpec", "PotentialValue", "check_condition_c0", "check_summability",
    "evaluate", "evaluate_many", "heat_potential", "kernel_potential", "kernel_rm1_decreasing",
    "poisson_concavity_height", "poisson_integral", "renormalized_potential", "riesz_potential",
    "solid_angle", "total_mass",
]
