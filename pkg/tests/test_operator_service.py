from unittest.mock import patch

import numpy as np
import pytest

from app.core.services.operator_service import OperatorService, covering_count
from app.core.services.quadrature_service import QuadratureService
from app.core.services.space_service import SpaceService
from app.core.utils.thread_manager import ThreadManager
from app.domain.errors import HypothesisFailed, SpecError
from app.domain.models import BracketConfig, PolynomialMap, Scenario
from app.infrastructure.spec_parser import SpecParser


def _service(grid, weight_service, workers=1):
    return OperatorService(grid, BracketConfig(), weight_service, SpaceService(grid), QuadratureService(grid),
                           ThreadManager(workers))


@pytest.fixture(scope="module")
def operators(grid, weight_service):
    return _service(grid, weight_service)


@pytest.fixture(scope="module")
def small(grid, weight_service):
    return _service(grid.override(quad_levels=4, a_levels=4, outer_levels=3), weight_service)


@pytest.fixture(scope="module")
def identity(loader):
    return loader.operator(Scenario("std:alpha=1"))


@pytest.fixture(scope="module")
def half(loader):
    return loader.operator(Scenario("std:alpha=1", phi="poly:0,0.5"))


@pytest.fixture(scope="module")
def half_mixed(loader):
    return loader.operator(Scenario("std:alpha=1", phi="poly:0,0.5", p=4.0, q=2.0))


class TestCarleson:
    def test_weighted_area_is_its_own_carleson_measure(self, operators, identity):
        report = operators.carleson_constant(identity.mu, identity.profile, 2.0, 2.0)
        assert report.value == pytest.approx(1.0, rel=1e-12)
        assert not report.divergent

    def test_pushforward_under_identity(self, operators, identity):
        report = operators.pushforward_carleson(identity, levels=3)
        assert report.value == pytest.approx(1.0, rel=1e-12)
        assert report.grid["a_levels"] == 3

    def test_p_above_q_rejected(self, operators, identity):
        with pytest.raises(SpecError):
            operators.carleson_constant(identity.mu, identity.profile, 3.0, 2.0)


class TestBoundedness:
    def test_identity_normalizes_to_one(self, operators, identity):
        report = operators.boundedness_functional(identity)
        assert report.kind == "bounded"
        assert report.normalized_value == pytest.approx(1.0, rel=1e-9)
        assert report.diagnostics["gamma"] == 9.0

    def test_p_above_q_rejected(self, operators, loader):
        spec = loader.operator(Scenario("std:alpha=1", p=4.0, q=2.0))
        with pytest.raises(SpecError):
            operators.boundedness_functional(spec)

    def test_worker_count_does_not_change_values(self, grid, weight_service, half):
        serial = _service(grid, weight_service).boundedness_functional(half)
        threaded = _service(grid, weight_service, workers=3).boundedness_functional(half)
        assert threaded.value == serial.value
        assert threaded.levels == serial.levels


class TestEssentialNorm:
    def test_contraction_is_compact(self, operators, half):
        report = operators.essential_norm_functional(half)
        assert report.normalized_value < 1e-3
        assert report.grid["j0"] == 6
        assert report.diagnostics["level_index"] == [6, 7, 8]
        assert not report.divergent

    def test_identity_is_not_compact(self, operators, identity):
        report = operators.essential_norm_functional(identity)
        assert report.normalized_value == pytest.approx(1.0, rel=1e-9)

    @pytest.mark.parametrize("j0", [0, 9])
    def test_tail_start_out_of_range(self, operators, identity, j0):
        with pytest.raises(SpecError):
            operators.essential_norm_functional(identity, j0=j0)

    def test_p_below_one_rejected(self, operators, loader):
        spec = loader.operator(Scenario("std:alpha=1", p=0.5, q=2.0))
        with pytest.raises(SpecError):
            operators.essential_norm_functional(spec)


class TestRestricted:
    def test_diagnostics(self, operators, identity):
        report = operators.restricted_constant(identity, 0.75)
        assert report.kind == "restricted"
        assert report.grid["r"] == 0.75
        for key in ("N_r_star", "N_r", "covering_count", "bound_ratio"):
            assert key in report.diagnostics
        assert report.value > 0
        assert report.diagnostics["covering_count"] >= 1

    def test_contraction_leaves_nothing_outside(self, operators, half):
        report = operators.restricted_constant(half, 0.75)
        assert report.value == 0.0
        assert report.diagnostics["bound_ratio"] == 0.0

    @pytest.mark.parametrize("r", [0.5, 1.0])
    def test_radius_range(self, operators, identity, r):
        with pytest.raises(SpecError):
            operators.restricted_constant(identity, r)


def test_covering_count():
    assert covering_count(0.5, 0.75) == 3
    assert covering_count(np.array([0.0, 0.9]), 0.75).tolist() == [5, 1]


class TestMixedNorms:
    def test_psi_records_both_modes(self, small, half_mixed):
        report = small.psi_mixed_norm(half_mixed)
        assert report.diagnostics["mode"] == "printed"
        assert report.diagnostics["alternate_mode"] == "switch"
        assert report.diagnostics["exponent"] == 2.0
        assert np.isfinite(report.value) and report.value > 0
        switched = small.psi_mixed_norm(half_mixed, mode="switch")
        assert switched.value == pytest.approx(report.diagnostics["alternate_value"])

    def test_psi_at_a_point(self, small, half_mixed):
        assert small.psi_functional(half_mixed, 0.5) > 0

    def test_psi_needs_q_below_p(self, small, identity):
        with pytest.raises(SpecError):
            small.psi_mixed_norm(identity)

    def test_unknown_psi_mode(self, small, half_mixed):
        with pytest.raises(SpecError):
            small.psi_mixed_norm(half_mixed, mode="other")

    def test_remark2_norms(self, small, half_mixed):
        report = small.remark2_functionals(half_mixed)
        assert {"M_norm", "Q_norm", "psi_norm"} <= set(report.diagnostics)
        assert "Phi_norm" not in report.diagnostics
        assert report.value == report.diagnostics["M_norm"]
        assert report.diagnostics["spread"] >= 1.0

    def test_remark2_experimental_adds_phi(self, small, half_mixed):
        with patch.object(small, "phi_r_function", return_value=lambda z: np.ones(np.shape(z))) as phi_r:
            report = small.remark2_functionals(half_mixed, experimental=True, r=0.4)
        phi_r.assert_called_once_with(half_mixed, 0.4)
        assert report.diagnostics["Phi_norm"] > 0
        assert report.diagnostics["experimental"]

    def test_phi_r_function(self, small, half_mixed):
        values = small.phi_r_function(half_mixed, 0.5)(np.array([0.3]))
        assert values.shape == (1,)
        assert np.isfinite(values[0]) and values[0] >= 0
        with pytest.raises(SpecError):
            small.phi_r_function(half_mixed, 1.0)


class TestSchatten:
    def test_contraction_is_finite(self, small, std1):
        report = small.schatten_functional(PolynomialMap([1]), PolynomialMap([0, 0.5]), std1, 2.0, 0.5)
        assert np.isfinite(report.value) and report.value > 0
        assert report.levels[-1] == report.value
        assert report.diagnostics["log2_integral"] > 0

    def test_argument_order(self, small, std1, loader):
        one, z = PolynomialMap([1]), PolynomialMap([0, 1])
        with pytest.raises(SpecError):
            small.schatten_functional(one, z, std1, 0.0, 0.5)
        with pytest.raises(SpecError):
            small.schatten_functional(one, z, std1, 2.0, 1.0)
        with pytest.raises(HypothesisFailed):
            small.schatten_functional(one, z, loader.profile("logpow:alpha=-1,beta=-2"), 2.0, 0.5)


class TestMultiplierBound:
    def test_identity_blaschke_product(self, operators, std1):
        phi = SpecParser.parse_map("blaschke:m=1")
        report = operators.multiplier_bound_profile(PolynomialMap([1]), phi, std1, 2.0)
        assert report.value == pytest.approx(1.0, rel=1e-12)
        assert report.diagnostics["u_sup"] == pytest.approx(1.0)
        assert report.grid["p"] == 2.0

    def test_needs_blaschke_product(self, operators, std1):
        with pytest.raises(SpecError):
            operators.multiplier_bound_profile(PolynomialMap([1]), PolynomialMap([0, 1]), std1, 2.0)

    def test_needs_p_above_one(self, operators, std1):
        with pytest.raises(SpecError):
            operators.multiplier_bound_profile(PolynomialMap([1]), SpecParser.parse_map("blaschke:m=1"), std1, 1.0)
