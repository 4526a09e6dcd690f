import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from app.core import geometry
from app.domain.errors import SpecError
from app.domain.models import BlaschkeProduct, CarlesonBox, PolynomialMap, PseudoDisk, StolzRegion, Tent


def disk_points(max_modulus=0.95):
    return st.builds(
        lambda rho, theta: rho * np.exp(1j * theta),
        st.floats(min_value=0.0, max_value=max_modulus),
        st.floats(min_value=-np.pi, max_value=np.pi),
    )


@given(disk_points(), disk_points())
def test_mobius_is_an_involution(a, z):
    assert geometry.mobius(a, geometry.mobius(a, z)) == pytest.approx(z, abs=1e-9)


@given(disk_points(), disk_points())
def test_mobius_maps_disk_into_disk(a, z):
    assert abs(geometry.mobius(a, z)) < 1.0


@given(disk_points(0.9), disk_points(0.99))
def test_tent_is_dual_to_stolz(a, z):
    assume(abs(a) > 1e-3 and abs(z) > 1e-3)
    assert bool(geometry.in_tent(a, z)) == bool(geometry.in_stolz(z, a))


@settings(max_examples=50)
@given(disk_points(0.9), st.floats(min_value=0.05, max_value=0.95))
def test_pseudo_disk_euclidean_form(a, r):
    """Points on the Euclidean circle of Delta(a, r) sit at pseudo-hyperbolic distance r."""
    center, radius = geometry.pseudo_disk_euclidean(a, r)
    circle = center + radius * np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 16))
    assert np.allclose(np.abs(geometry.mobius(a, circle)), r, atol=1e-9)


def test_carleson_box_membership():
    a = 0.5
    assert geometry.in_carleson_box(a, 0.75)
    assert not geometry.in_carleson_box(a, 0.25)
    assert not geometry.in_carleson_box(a, 0.75 * np.exp(1j * 0.3))
    assert geometry.in_carleson_box(a, 0.75 * np.exp(1j * 0.2))


def test_box_at_origin_is_whole_disk():
    z = np.array([0.0, 0.5j, -0.99])
    assert np.all(geometry.in_carleson_box(0, z))
    assert geometry.carleson_box_area(0) == 1.0


def test_areas():
    assert geometry.carleson_box_area(0.5) == pytest.approx(0.5 * 0.75 / (2.0 * np.pi))
    assert geometry.pseudo_disk_area(0, 0.5) == pytest.approx(0.25)
    assert geometry.stolz_area(0.6) == pytest.approx(0.36 / (6.0 * np.pi))


def test_region_membership_checks_radius():
    with pytest.raises(SpecError):
        geometry.in_pseudo_disk(0.1, 1.0, 0.2)


@pytest.mark.parametrize("predicate", [geometry.in_stolz, geometry.in_tent])
def test_stolz_and_tent_need_nonzero_vertex(predicate):
    with pytest.raises(SpecError):
        predicate(0, 0.5)


def test_region_contains_dispatch():
    z = np.array([0.7, 0.2, -0.7])
    assert np.array_equal(geometry.region_contains(CarlesonBox(0.5), z), geometry.in_carleson_box(0.5, z))
    assert np.array_equal(geometry.region_contains(PseudoDisk(0.3, 0.5), z), geometry.in_pseudo_disk(0.3, 0.5, z))
    assert np.array_equal(geometry.region_contains(StolzRegion(0.8), z), geometry.in_stolz(0.8, z))
    assert np.array_equal(geometry.region_contains(Tent(0.5), z), geometry.in_tent(0.5, z))
    with pytest.raises(SpecError):
        geometry.region_contains("box", z)


def test_blaschke_bound():
    phi = BlaschkeProduct(2, [0.5, 0.25])
    assert geometry.blaschke_bound(phi.data) == pytest.approx(2 + 4 * 1.25 / 0.75)


def test_derivative_quotient_of_identity():
    assert geometry.derivative_quotient(PolynomialMap([0, 1]), 0.5, samples=64) == pytest.approx(1.0)


def test_boundary_modulus_profile():
    phi = PolynomialMap([0, 0.5])
    radii = [0.2, 0.6]
    assert np.allclose(geometry.boundary_modulus_profile(phi, radii, samples=32), [0.1, 0.3])
    with pytest.raises(SpecError):
        geometry.boundary_modulus_profile(phi, [0.0, 0.5])
