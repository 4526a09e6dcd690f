from unittest import TestCase
from unittest.mock import MagicMock

import numpy as np
import pytest

from app.core.services.criteria_service import CriteriaService
from app.domain.errors import ExponentGapViolated, HypothesisFailed, SpecError
from app.infrastructure.spec_parser import SpecParser


@pytest.fixture(scope="module")
def criteria(grid, weight_service):
    return CriteriaService(grid, weight_service=weight_service)


class TestLogarithmicInequalities:
    def test_C1_is_bounded_below(self, criteria):
        value, (r, t) = criteria.corollary7_C1()
        assert value > 0.1
        assert 0 <= r <= t < 1

    def test_C1_at_origin_is_one(self, criteria):
        # r = t = 0 gives 1 * 1 / 1
        value, _ = criteria.corollary7_C1(levels=1)
        assert value <= 1.0 + 1e-12

    @pytest.mark.parametrize("alpha", [0.0, 1.5])
    def test_margin_alpha_range(self, criteria, alpha):
        with pytest.raises(SpecError):
            criteria.corollary7_margin(alpha)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    def test_condition_b_holds(self, criteria, alpha):
        assert criteria.corollary7_condition_b(alpha) is True

    def test_margin_at_origin(self, criteria):
        margin, _ = criteria.corollary7_margin(1.0)
        # L1 + L2 - L3 = 1 at r = t = 0
        assert margin <= 1.0


class TestConditionI:
    def test_standard_weight_is_finite(self, criteria, std1):
        report = criteria.thm6_condition_i(std1, levels=8)
        assert report.kind == "thm6_condition_i"
        assert np.isfinite(report.value)
        r, t = report.witness
        assert 0 <= r <= t < 1
        assert report.normalized_value == pytest.approx(report.value / report.diagnostics["omega_hat_0"])
        assert report.diagnostics["A"] == pytest.approx(0.5)
        assert "not_regular" not in report.flags

    def test_value_at_least_origin_term(self, criteria, std1):
        # r = t = 0 contributes omega_hat(0)
        report = criteria.thm6_condition_i(std1, levels=6)
        assert report.normalized_value >= 1.0 - 1e-12


class TestLowerBoundExperiment:
    def test_records(self, criteria, std1):
        phi = SpecParser.parse_map("blaschke:m=2")
        report = criteria.thm6_lower_bound_experiment(std1, phi, p=2.0, levels=6)
        records = report.diagnostics["records"]
        assert len(records) == 7
        assert records[0]["w"] == 0.0
        for record in records[1:]:
            assert record["normalized_sup"] == pytest.approx(1.0, rel=1e-9)
            assert record["phi_modulus"] == pytest.approx(record["w"] ** 2)
        assert report.diagnostics["gap"] == pytest.approx(2 * 0.6 + 2 - (1 / 0.375 - 1))
        assert len(report.diagnostics["boundary_modulus"]) == 6

    def test_p_must_be_positive(self, criteria, std1):
        with pytest.raises(SpecError):
            criteria.thm6_lower_bound_experiment(std1, SpecParser.parse_map("blaschke:m=2"), p=0.0)


class TestExponentChecks(TestCase):
    def setUp(self):
        self.criteria = CriteriaService()
        self.phi = SpecParser.parse_map("blaschke:m=1")

    def test_missing_exponents(self):
        profile = MagicMock(thm6_a=None, thm6_b=None)
        with self.assertRaises(HypothesisFailed):
            self.criteria.thm6_lower_bound_experiment(profile, self.phi, p=2.0)

    def test_gap_violated(self):
        profile = MagicMock(thm6_a=0.0, thm6_b=3.0)
        with self.assertRaises(ExponentGapViolated):
            self.criteria.thm6_lower_bound_experiment(profile, self.phi, p=2.0)
