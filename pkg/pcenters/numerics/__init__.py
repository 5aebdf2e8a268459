from pcenters.numerics.quadrature import (
    QuadratureResult,
    integrate_kernel_over_body,
    monte_carlo_oracle,
    polar_ball_integral,
)
from pcenters.numerics.radial import RadialKernel, constant_kernel, power_kernel

__all__ = [
    "QuadratureResult", "RadialKernel", "constant_kernel", "integrate_kernel_over_body",
    "monte_carlo_oracle", "polar_ball_integral", "power_kernel",
]
