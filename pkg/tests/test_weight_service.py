import unittest
from unittest.mock import MagicMock

import numpy as np
import pytest

from app.core.services.weight_service import WeightService
from app.domain.errors import ClassificationInconclusive, HypothesisFailed, SpecError, WeightValidationError
from app.domain.models import RadialGrid, WeightClass


def test_standard_weight_is_regular(std1, weight_service):
    assert std1.classification is WeightClass.REGULAR
    assert std1.regular and not std1.rapidly_increasing
    assert std1.doubling
    A, B, condition_ii = weight_service.tail_constants(std1)
    assert A == pytest.approx(0.5, rel=1e-8)
    assert B == pytest.approx(0.5, rel=1e-8)
    assert condition_ii


def test_tail_constants_margin(std1, weight_service):
    constants = weight_service.tail_constants(std1)
    assert constants.margin == pytest.approx(2 * 0.5 + 0.25 - 0.5, rel=1e-8)
    assert constants.stable


def test_critical_logpow_is_rapidly_increasing(loader):
    profile = loader.profile("logpow:alpha=-1,beta=-2")
    assert profile.classification is WeightClass.RAPIDLY_INCREASING
    assert profile.rapidly_increasing


def test_tail_exponents_of_standard_weight(std1):
    """A = B = 1/2 leaves eps = 1/8 after one halving."""
    assert std1.tail_epsilon == pytest.approx(0.125)
    assert std1.thm6_a == pytest.approx(0.6)
    assert std1.thm6_b == pytest.approx(1.0 / 0.375 - 1.0)


def test_star_exponents_bracket_standard_weight(std1):
    # omega_*(r) behaves like (1-r)^3 for (1-r)^1
    assert std1.a_exp is not None and std1.a_exp > 1.0
    assert std1.b_exp is not None and std1.b_exp >= std1.a_exp


def test_moments_and_functionals(std1, weight_service):
    assert weight_service.moment(std1, 0) == pytest.approx(0.5)
    assert weight_service.moment(std1, 3) == pytest.approx(1.0 / 20.0)
    assert weight_service.omega_hat(std1, [0.5])[0] == pytest.approx(0.125)
    ratio = weight_service.star_ratio(std1, np.array([0.5, 0.9, 0.99]))
    assert np.all((ratio > 0.1) & (ratio < 10.0))


@pytest.mark.parametrize("n", [-1, 1.5])
def test_moment_index_validated(std1, weight_service, n):
    with pytest.raises(SpecError):
        weight_service.moment(std1, n)


def test_omega_star_rejects_origin(std1, weight_service):
    with pytest.raises(SpecError):
        weight_service.omega_star(std1, [0.0])


def test_log2_hypothesis(loader, weight_service, std1):
    assert np.isfinite(weight_service.log2_hypothesis(std1))
    with pytest.raises(HypothesisFailed):
        weight_service.log2_hypothesis(loader.profile("logpow:alpha=-1,beta=-2"))


def test_describe_and_table(std1, weight_service):
    summary = weight_service.describe(std1)
    assert summary["classification"] == "regular"
    assert summary["params"] == {"alpha": 1.0}
    table = weight_service.table(std1)
    assert len(table) == std1.grid.radii.size
    assert set(table[0]) == {"r", "omega", "omega_hat", "omega_star", "regularity_ratio", "star_ratio"}
    assert table[0]["regularity_ratio"] == pytest.approx(0.5, rel=1e-8)


class TestWeightValidation(unittest.TestCase):
    """Weight creation and classification edge cases."""

    def setUp(self):
        self.service = WeightService()

    def test_unknown_family(self):
        with self.assertRaises(WeightValidationError):
            self.service.create_weight("gauss:alpha=1")

    def test_invalid_parameters(self):
        with self.assertRaises(WeightValidationError):
            self.service.create_weight("std:alpha=-2")

    def test_shallow_grid_rejected(self):
        weight = self.service.create_weight("std:alpha=0")
        with self.assertRaises(SpecError):
            self.service.classify(weight, RadialGrid(levels=8))

    def test_require_conclusive(self):
        profile = MagicMock()
        profile.classification = WeightClass.INCONCLUSIVE
        profile.source.spec = "file:odd.csv"
        profile.reg_ratio_bounds = (0.1, 30.0)
        profile.deep = {"ratio": [0.1, 30.0]}
        with self.assertRaises(ClassificationInconclusive):
            self.service.require_conclusive(profile)

        profile.classification = WeightClass.REGULAR
        self.assertIs(self.service.require_conclusive(profile), profile)

    def test_classify_ratio_rules(self):
        deep = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
        self.assertIs(self.service._classify_ratio(np.ones(4), deep), WeightClass.RAPIDLY_INCREASING)
        self.assertIs(self.service._classify_ratio(np.ones(4), np.ones(5)), WeightClass.REGULAR)
        spread = np.array([0.01, 1.0, 0.02, 1.0, 0.05])
        self.assertIs(self.service._classify_ratio(np.ones(4), spread), WeightClass.INCONCLUSIVE)
