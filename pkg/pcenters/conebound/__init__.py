from pcenters.conebound.bound import (
    E,
    EProfile,
    EValue,
    bracket_r_tilde,
    e_profile,
    e_value,
    r_tilde,
    rotation_hypothesis_holds,
    verify_rotation_minimality,
)
from pcenters.conebound.closed_form import (
    exterior_angle_fraction,
    exterior_bound,
    half_space_E,
    half_space_f,
    half_space_f_prime,
    half_space_f_second,
    half_space_root,
    lower_bound_r_tilde,
    sin_power_integral,
    tangent_lower_bound,
)
from pcenters.conebound.integrals import ConeIntegralParams, annulus_integral, cone_ball_integral

__all__ = [
    "ConeIntegralParams", "E", "EProfile", "EValue", "annulus_integral", "half_space_E",
    "half_space_f", "half_space_f_prime", "half_space_f_second", "half_space_root", "bracket_r_tilde",
    "cone_ball_integral", "e_profile", "e_value", "exterior_angle_fraction", "exterior_bound",
    "lower_bound_r_tilde", "r_tilde", "rotation_hypothesis_holds", "sin_power_integral",
    "tangent_lower_bound", "verify_rotation_minimality",
]
