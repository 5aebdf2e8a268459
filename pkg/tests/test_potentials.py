"""Potentials: ball closed forms, renormalization, Poisson, heat, dispatch."""

import math

import numpy as np
import numpy.testing as npt
import pytest
from scipy.special import ellipe

from pcenters.errors import (
    AlphaOutOfRange,
    BoundaryPoint,
    ConfigError,
    InvalidRange,
    InvalidShape,
    NonpositiveHeight,
    NonpositiveTime,
)
from pcenters.geometry import build_body
from pcenters.numerics import monte_carlo_oracle
from pcenters.potentials import (
    EXTERIOR,
    INTERIOR,
    KernelSpec,
    PotentialValue,
    evaluate,
    evaluate_many,
    heat_potential,
    poisson_integral,
    renormalized_potential,
    riesz_potential,
    solid_angle,
)


@pytest.fixture(scope="module")
def disc_r2():
    return build_body(shape="ball", params={"radius": 2.0}, grid_resolution=128)


@pytest.fixture(scope="module")
def ball3_r2():
    return build_body(shape="ball", dimension=3, params={"radius": 2.0}, grid_resolution=32)


def _closed_form(m: int, rho: float, alpha: float) -> float:
    sigma = 2 * math.pi if m == 2 else 4 * math.pi
    if alpha == 0:
        return sigma * math.log(rho)
    return sigma * rho ** alpha / alpha


class TestBallClosedForms:
    @pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0])
    def test_disc_center(self, disc_r2, alpha):
        if alpha > 0:
            v = riesz_potential(disc_r2, alpha, [0.0, 0.0])
        else:
            v = renormalized_potential(disc_r2, alpha, [0.0, 0.0])
        npt.assert_allclose(v.value, _closed_form(2, 2.0, alpha), rtol=1e-6)

    @pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0, 2.0])
    def test_ball_center_in_3d(self, ball3_r2, alpha):
        if alpha > 0:
            v = riesz_potential(ball3_r2, alpha, [0.0, 0.0, 0.0])
        else:
            v = renormalized_potential(ball3_r2, alpha, [0.0, 0.0, 0.0])
        npt.assert_allclose(v.value, _closed_form(3, 2.0, alpha), rtol=1e-6)

    @pytest.mark.slow
    def test_default_resolution(self):
        body = build_body(shape="ball", params={"radius": 1.0})
        npt.assert_allclose(renormalized_potential(body, -1.0, [0.0, 0.0]).value, -2 * math.pi, rtol=1e-3)
        npt.assert_allclose(riesz_potential(body, 1.0, [0.0, 0.0]).value, 2 * math.pi, rtol=1e-3)


class TestRiesz:
    def test_off_center_against_monte_carlo(self, disc):
        x = np.array([0.5, 0.0])
        v = riesz_potential(disc, 1.0, x)
        # polar part over B_0.5(x) is 2 pi * 0.5, the rest is sampled
        far = monte_carlo_oracle(disc, KernelSpec.riesz(1.0, 2).radial(), x, 0.5, seed=11, samples=1_000_000)
        assert abs(v.value - (math.pi + far.value)) < 4 * far.estimated_error + 3 * v.estimated_error + 1e-4

    def test_peaks_inside(self, disc):
        vals = [riesz_potential(disc, 1.0, [s, 0.0]).value for s in (0.0, 0.4, 0.8)]
        assert vals[0] > vals[1] > vals[2]

    def test_alpha_range(self, disc):
        with pytest.raises(AlphaOutOfRange):
            riesz_potential(disc, 2.0, [0.0, 0.0])


def _disc_minus_one(s: float) -> float:
    # unit disc, alpha = -1: V = -int dtheta / rho(theta) = -4 E(s) / (1 - s^2)
    return -4.0 * ellipe(s * s) / (1.0 - s * s)


class TestRenormalized:
    @pytest.mark.parametrize("s", [0.3, 0.6, 0.85])
    @pytest.mark.parametrize("eps", [0.05, 0.1])
    def test_off_center_closed_form(self, disc, s, eps):
        v = renormalized_potential(disc, -1.0, [0.0, s], epsilon=eps, estimate_error=False)
        npt.assert_allclose(v.value, _disc_minus_one(s), rtol=3e-3)
        assert v.renormalization_epsilon == eps

    def test_any_direction(self, disc):
        x = [0.3, 0.2]
        v = renormalized_potential(disc, -1.0, x, estimate_error=False)
        npt.assert_allclose(v.value, _disc_minus_one(math.hypot(0.3, 0.2)), rtol=3e-3)

    def test_blows_down_at_the_boundary(self, disc):
        vals = [renormalized_potential(disc, -1.0, [r, 0.0], estimate_error=False).value for r in (0.5, 0.8, 0.9, 0.96)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < -50.0
        npt.assert_allclose(vals[-1], _disc_minus_one(0.96), rtol=1e-2)

    def test_continuous_on_the_dumbbell(self, dumbbell):
        x = np.array([-2.2, 0.1])
        base = renormalized_potential(dumbbell, -1.0, x, estimate_error=False).value
        jumps = [abs(renormalized_potential(dumbbell, -1.0, x + [t, 0.0], estimate_error=False).value - base)
                 for t in (0.05, 0.005)]
        assert jumps[1] < jumps[0]
        assert jumps[1] < 0.01

    def test_default_epsilon_is_half_the_depth(self, disc):
        v = renormalized_potential(disc, -0.5, [0.0, 0.0], estimate_error=False)
        assert v.renormalization_epsilon == pytest.approx(0.5)
        assert v.location_class == INTERIOR

    def test_boundary_point(self, disc):
        with pytest.raises(BoundaryPoint):
            renormalized_potential(disc, -1.0, [1.0, 0.0])

    def test_exterior_is_plain_integral(self, disc):
        v = renormalized_potential(disc, -1.0, [2.0, 0.0])
        assert v.location_class == EXTERIOR
        assert v.renormalization_epsilon == 0.0
        assert v.value > 0

    def test_epsilon_range(self, disc):
        with pytest.raises(InvalidRange):
            renormalized_potential(disc, -1.0, [0.0, 0.0], epsilon=2.0)

    def test_positive_alpha_rejected(self, disc):
        with pytest.raises(AlphaOutOfRange):
            renormalized_potential(disc, 0.5, [0.0, 0.0])


class TestPoissonAndHeat:
    @pytest.mark.parametrize("h,rtol", [(0.5, 1e-3), (0.05, 1e-5)])
    def test_disc_center(self, disc, h, rtol):
        exact = 1.0 - h / math.sqrt(1.0 + h * h)
        npt.assert_allclose(poisson_integral(disc, [0.0, 0.0], h), exact, rtol=rtol)

    def test_solid_angle_scaling(self, disc):
        h = 0.5
        npt.assert_allclose(solid_angle(disc, [0.0, 0.0], h), 2 * math.pi * poisson_integral(disc, [0.0, 0.0], h))

    def test_solid_angle_limits(self, disc):
        h = 1e-3
        npt.assert_allclose(solid_angle(disc, [0.0, 0.0], h), 2 * math.pi * (1.0 - h / math.sqrt(1.0 + h * h)),
                            rtol=1e-3)
        npt.assert_allclose(solid_angle(disc, [1.0, 0.0], h), math.pi, rtol=1e-2)
        assert 0.0 <= solid_angle(disc, [2.0, 0.0], h) < 1e-2

    def test_total_angle_is_bounded(self, disc):
        rng = np.random.default_rng(5)
        for x in rng.uniform(-1.5, 1.5, size=(12, 2)):
            assert solid_angle(disc, x, 0.05) <= 2 * math.pi + 1e-9

    def test_poisson_below_one(self, disc):
        assert 0.0 < poisson_integral(disc, [0.9, 0.0], 0.1) < 1.0

    def test_heat_disc_center(self, disc):
        t = 0.05
        npt.assert_allclose(heat_potential(disc, [0.0, 0.0], t), 1.0 - math.exp(-1.0 / (4 * t)), rtol=1e-3)

    def test_nonpositive_parameters(self, disc):
        with pytest.raises(NonpositiveHeight):
            poisson_integral(disc, [0.0, 0.0], 0.0)
        with pytest.raises(NonpositiveTime):
            heat_potential(disc, [0.0, 0.0], -1.0)


class TestDispatch:
    def test_evaluate_matches_direct_call(self, disc):
        spec = KernelSpec.poisson(0.5, 2)
        v = evaluate(disc, spec, [0.1, 0.0], estimate_error=False)
        assert isinstance(v, PotentialValue)
        npt.assert_allclose(v.value, poisson_integral(disc, [0.1, 0.0], 0.5))

    def test_parameter_override(self, disc):
        spec = KernelSpec.heat(None, 2)
        v = evaluate(disc, spec, [0.0, 0.0], parameter=0.05, estimate_error=False)
        npt.assert_allclose(v.value, heat_potential(disc, [0.0, 0.0], 0.05))

    def test_evaluate_many_keeps_order(self, disc):
        spec = KernelSpec.renormalized(-1.0, 2)
        pts = [[0.0, 0.0], [0.5, 0.0], [0.0, -0.3]]
        many = evaluate_many(disc, spec, pts, threads=2)
        one = [renormalized_potential(disc, -1.0, p, estimate_error=False).value for p in pts]
        npt.assert_allclose(many, one)

    def test_wrong_point_dimension(self, disc):
        with pytest.raises(InvalidShape):
            evaluate(disc, KernelSpec.riesz(1.0, 2), [0.0, 0.0, 0.0])

    def test_float_conversion(self):
        assert float(PotentialValue(2.5)) == 2.5
        with pytest.raises(ValueError):
            PotentialValue(1.0, location_class="boundary")


class TestKernelSpec:
    def test_generalized_poisson_at_minus_one_is_poisson(self):
        r = np.array([0.01, 0.1, 1.0, 5.0])
        gp = KernelSpec.generalized_poisson(-1.0, 0.2, 2).radial()
        p = KernelSpec.poisson(0.2, 2).radial()
        npt.assert_allclose(gp(r), p(r), rtol=1e-12)

    def test_kbar_limit(self):
        spec = KernelSpec.poisson(None, 2)
        npt.assert_allclose(spec.kbar([1.0], 1e-6), [1.0], rtol=1e-9)
        assert spec.limit_alpha == -1.0
        assert KernelSpec.heat(None, 2).limit_alpha is None

    def test_from_mapping(self):
        spec = KernelSpec.from_mapping({"variant": "solid_angle", "h": "0.1"}, 2)
        assert spec == KernelSpec.poisson(0.1, 2)
        spec = KernelSpec.from_mapping({"variant": "Renormalised", "alpha": -1}, 3)
        assert spec.variant == "renormalized" and spec.m == 3

    def test_from_mapping_errors_name_the_field(self):
        with pytest.raises(ConfigError, match="kernel.alpha"):
            KernelSpec.from_mapping({"variant": "riesz"}, 2)
        with pytest.raises(ConfigError, match="kernel.variant"):
            KernelSpec.from_mapping({"variant": "yukawa"}, 2)
        with pytest.raises(ConfigError, match="kernel.h"):
            KernelSpec.from_mapping({"variant": "poisson", "h": "tall"}, 2)

    def test_missing_parameter(self):
        with pytest.raises(ConfigError):
            KernelSpec.poisson(None, 2).radial()

    def test_custom_kernel(self, disc):
        spec = KernelSpec.custom(lambda r: np.exp(-r), beta=3.0, m=2)
        v = evaluate(disc, spec, [0.0, 0.0], estimate_error=False)
        # 2 pi int_0^1 r e^-r dr
        npt.assert_allclose(v.value, 2 * math.pi * (1 - 2 / math.e), rtol=1e-3)
        with pytest.raises(ConfigError):
            KernelSpec.custom(lambda r: r, beta=0.0, m=2)
