import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from app.core.families import (
    CustomSampledLaw, ExponentialLaw, LogPowerLaw, OscillatingLaw, SquaredStandardLaw, StandardLaw,
    boundary_coordinate, radius_from_boundary
)
from app.domain.errors import WeightValidationError


@given(st.floats(min_value=0.0, max_value=1.0 - 1e-9))
def test_boundary_coordinate_round_trip(r):
    assert radius_from_boundary(boundary_coordinate(r)) == pytest.approx(r, abs=1e-12)


def test_boundary_coordinate_starts_at_one():
    assert boundary_coordinate(0.0) == pytest.approx(1.0)
    assert boundary_coordinate(1.0 - np.exp(-3.0)) == pytest.approx(4.0)


@pytest.mark.parametrize("law", [
    StandardLaw(1.0),
    LogPowerLaw(1.0, -1.0),
    LogPowerLaw(-1.0, -2.0),
    ExponentialLaw(0.5, 1.0),
    OscillatingLaw(-2.0),
    SquaredStandardLaw(2.0),
])
def test_boundary_density_matches_density(law):
    """h(t) = omega(r) (1 - r) in the boundary coordinate."""
    r = np.array([0.0, 0.3, 0.7, 0.95])
    t = boundary_coordinate(r)
    assert np.allclose(law.boundary_density(t), law.density(r) * (1.0 - r), rtol=1e-10)


@pytest.mark.parametrize("law", [StandardLaw(0.5), LogPowerLaw(2.0, 1.0), SquaredStandardLaw(0.0)])
def test_tail_mass_matches_quadrature(law):
    t = 6.0
    expected, _ = integrate.quad(lambda s: float(law.boundary_density(s)), t, np.inf, limit=200)
    assert law.tail_mass(t) == pytest.approx(expected, rel=1e-6)


def test_standard_closed_forms():
    law = StandardLaw(1.0)
    assert law.closed_hat(np.array([0.0]))[0] == pytest.approx(0.5)
    assert law.closed_hat(np.array([0.5]))[0] == pytest.approx(0.125)
    # omega_n = B(n+1, 2) = 1/((n+1)(n+2))
    moments = law.closed_moments(np.arange(4))
    assert np.allclose(moments, [1 / 2, 1 / 6, 1 / 12, 1 / 20])


def test_squared_standard_closed_forms():
    law = SquaredStandardLaw(1.0)
    r = 0.4
    expected, _ = integrate.quad(lambda s: 1.0 - s * s, r, 1.0)
    assert law.closed_hat(np.array([r]))[0] == pytest.approx(expected, rel=1e-10)
    moment, _ = integrate.quad(lambda s: s ** 3 * (1.0 - s * s), 0.0, 1.0)
    assert law.closed_moments(np.array([3]))[0] == pytest.approx(moment, rel=1e-10)


def test_logpow_closed_hat_only_on_critical_line():
    assert LogPowerLaw(1.0, -1.0).closed_hat(np.array([0.5])) is None
    # v_{-1,-2}: omega_hat(r) = 1 / log(e/(1-r))
    value = LogPowerLaw(-1.0, -2.0).closed_hat(np.array([0.0]))[0]
    assert value == pytest.approx(1.0)


@pytest.mark.parametrize("factory", [
    lambda: StandardLaw(-1.0),
    lambda: LogPowerLaw(-1.0, -1.0),
    lambda: LogPowerLaw(-2.0, 0.0),
    lambda: ExponentialLaw(0.0, 1.0),
    lambda: ExponentialLaw(1.0, -1.0),
    lambda: OscillatingLaw(-1.0),
    lambda: SquaredStandardLaw(-1.5),
])
def test_invalid_parameters_rejected(factory):
    with pytest.raises(WeightValidationError):
        factory()


class TestCustomSampledLaw:
    def test_interpolates_log_linearly(self):
        law = CustomSampledLaw([0.0, 0.5, 0.75], [1.0, 4.0, 16.0])
        assert law.density(np.array([0.25]))[0] == pytest.approx(2.0)
        assert law.density(np.array([0.5]))[0] == pytest.approx(4.0)

    def test_power_tail_past_last_node(self):
        # (1-r)^{-1/2} sampled exactly at the last two nodes
        radii = np.array([0.0, 0.5, 0.75])
        law = CustomSampledLaw(radii, (1.0 - radii) ** -0.5)
        assert law.kappa == pytest.approx(-0.5)
        assert law.density(np.array([0.9375]))[0] == pytest.approx(4.0)

    def test_rejects_nonpositive_values(self):
        with pytest.raises(WeightValidationError):
            CustomSampledLaw([0.0, 0.5], [1.0, 0.0])

    def test_rejects_unordered_radii(self):
        with pytest.raises(WeightValidationError):
            CustomSampledLaw([0.5, 0.2], [1.0, 2.0])

    def test_rejects_nonintegrable_tail(self):
        radii = np.array([0.0, 0.5, 0.75])
        with pytest.raises(WeightValidationError):
            CustomSampledLaw(radii, (1.0 - radii) ** -2.0)


class TestOscillatingTail:
    def test_tail_mass_differences_match_quadrature(self):
        law = OscillatingLaw(-2.0)
        kinks = law.breakpoints()
        inside = kinks[(kinks > 5.0) & (kinks < 30.0)]
        expected, _ = integrate.quad(lambda s: float(law.boundary_density(s)), 5.0, 30.0, points=inside, limit=200)
        assert law.tail_mass(5.0) - law.tail_mass(30.0) == pytest.approx(expected, rel=1e-10)

    def test_tail_mass_approaches_the_period_mean(self):
        law = OscillatingLaw(-2.0)
        t = 1.0 + 63.0 * np.pi
        assert law.tail_mass(t) == pytest.approx(2.0 / np.pi / t, rel=1e-3)

    def test_kinks_sit_on_the_zeros_of_the_sine(self):
        kinks = OscillatingLaw(-3.0).breakpoints()
        assert kinks[0] == pytest.approx(1.0 + np.pi)
        assert np.allclose(np.sin(kinks - 1.0), 0.0, atol=1e-12)
