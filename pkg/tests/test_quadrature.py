import numpy as np
import pytest

from app.core import geometry, quadrature
from app.core.adaptive import AdaptiveDiskIntegrator
from app.core.families import radius_from_boundary
from app.core.quadrature import BOUNDARY_LIMIT, DiskQuadrature
from app.core.services.quadrature_service import QuadratureService
from app.domain.errors import NonFiniteError, SpecError


@pytest.fixture(scope="module")
def quad():
    return DiskQuadrature(levels=6, order=8, angular_base=32, angular_cap=256)


def test_weights_sum_to_one(quad):
    _, weights = quad.nodes
    assert np.sum(weights) == pytest.approx(1.0, abs=1e-13)
    assert quad.size == weights.size


def test_radial_polynomial_is_exact(quad):
    value, error = quad.integrate(lambda z: np.abs(z) ** 2)
    assert value == pytest.approx(0.5, abs=1e-13)
    assert error == pytest.approx(0.0, abs=1e-12)


def test_analytic_monomials_vanish(quad):
    value, _ = quad.integrate(lambda z: z ** 3)
    assert abs(value) < 1e-12


def test_one_level_has_no_error_estimate():
    _, error = DiskQuadrature(levels=1).integrate(lambda z: np.ones(z.shape))
    assert error == float("inf")


def test_levels_must_be_positive():
    with pytest.raises(ValueError):
        DiskQuadrature(levels=0)


def test_angular_count_doubles_up_to_cap():
    assert [quadrature.angular_count(j, 4, 32) for j in range(6)] == [4, 8, 16, 32, 32, 32]


def test_chunks_cover_all_nodes(quad):
    chunks = list(quad.iter_chunks(chunk=100))
    assert sum(z.size for z, _ in chunks) == quad.size
    assert all(z.size <= 100 for z, _ in chunks)


def test_non_finite_integrand_raises(quad):
    with pytest.raises(NonFiniteError):
        quad.integrate(lambda z: np.full(z.shape, np.inf))


@pytest.mark.parametrize("a", [0.5, 0.9j, -0.3 + 0.3j])
def test_region_rules_are_exact_for_constants(a):
    one = lambda z: np.ones(z.shape)
    rho = abs(a)
    assert quadrature.integrate_nodes(one, quadrature.box_rule(a, angular_order=1)) == pytest.approx(
        geometry.carleson_box_area(a), rel=1e-12)
    assert quadrature.integrate_nodes(one, quadrature.tent_rule(a)) == pytest.approx(
        (1.0 - rho) ** 2 / (2.0 * np.pi), rel=1e-12)
    assert quadrature.integrate_nodes(one, quadrature.stolz_rule(a)) == pytest.approx(
        geometry.stolz_area(a), rel=1e-12)
    assert quadrature.integrate_nodes(one, quadrature.pseudo_disk_rule(a, 0.5)) == pytest.approx(
        geometry.pseudo_disk_area(a, 0.5), rel=1e-12)


def test_box_rule_nodes_lie_in_box():
    z, _ = quadrature.box_rule(0.6 + 0.2j)
    assert np.all(geometry.in_carleson_box(0.6 + 0.2j, z))


class TestAdaptiveDiskIntegrator:
    def test_smooth_integrand(self):
        value, error = AdaptiveDiskIntegrator().integrate(lambda z: np.abs(z) ** 4)
        assert value == pytest.approx(1.0 / 3.0, rel=1e-10)
        assert error < 1e-8

    def test_indicator_of_pseudo_disk(self):
        integrator = AdaptiveDiskIntegrator(rtol=1e-4)
        value, _ = integrator.integrate(lambda z: geometry.in_pseudo_disk(0.4, 0.5, z).astype(float))
        assert value == pytest.approx(geometry.pseudo_disk_area(0.4, 0.5), rel=1e-3)
        assert integrator.last_cells > 0

    def test_non_finite_integrand_raises(self):
        with pytest.raises(NonFiniteError):
            AdaptiveDiskIntegrator().integrate(lambda z: np.full(z.shape, np.nan))


class TestWeightedRule:
    """Disk integrals against radial weights, with the final cell in the boundary coordinate."""

    @staticmethod
    def _ones(z):
        return np.ones(z.shape)

    def test_standard_weight_closed_forms(self, quad, std1):
        value, _ = quad.integrate(self._ones, std1.source)
        assert value == pytest.approx(1.0 / 3.0, rel=1e-12)
        value, _ = quad.integrate(lambda z: np.abs(z) ** 2, std1.source)
        assert value == pytest.approx(0.1, rel=1e-12)

    @pytest.mark.parametrize("spec", ["logpow:alpha=-1,beta=-2", "osc:beta=-2"])
    def test_rapidly_increasing_mass_is_twice_the_first_moment(self, loader, spec):
        profile = loader.profile(spec)
        quad = DiskQuadrature(levels=12, order=8, angular_base=1, angular_cap=1)
        value, error = quad.integrate(self._ones, profile.source)
        assert value == pytest.approx(2.0 * profile.moment(1), rel=1e-8)
        assert error < 1e-8 * value

    def test_weighted_cells_keep_the_plain_interior(self, quad, std1):
        plain, weighted = quad.cells(), quad.cells(std1.source)
        assert len(plain) == len(weighted)
        assert np.array_equal(plain[2][0], weighted[2][0])
        assert np.allclose(weighted[2][1], plain[2][1] * std1.source(plain[2][0]))
        assert quad.cells(std1.source) is weighted

    def test_boundary_panels(self):
        t, wt, end = quadrature.boundary_panels(4, 8, kinks=[10.0])
        start = 1.0 + 4.0 * np.log(2.0)
        assert np.all(np.diff(t) > 0)
        assert t[0] > start and t[-1] < end
        assert np.sum(wt) == pytest.approx(end - start, rel=1e-12)

    def test_boundary_nodes_stay_inside_the_disk(self):
        t, _, end = quadrature.boundary_panels(40, 8)
        assert end == pytest.approx(BOUNDARY_LIMIT)
        assert np.all(radius_from_boundary(t) < 1.0)

    def test_service_rejects_weights_on_adaptive_rule(self, grid, std1):
        with pytest.raises(SpecError):
            QuadratureService(grid).integrate_disk(self._ones, AdaptiveDiskIntegrator(), weight=std1.source)
