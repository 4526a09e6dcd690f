import unittest
from unittest.mock import MagicMock

import numpy as np
import pytest

from app.core.verification import (
    SUITE_NAMES, SUITES, CheckStep, VerificationContext, VerificationStep, VerificationStepManager, build_suite,
    run_suites
)
from app.core.verification.scenarios import HALF
from app.core.verification.suites.kernel_steps import norm_constant
from app.domain.errors import HypothesisFailed, SpecError
from app.domain.models import AssertionRecord


def _mock_step(description, records=()):
    step = MagicMock(spec=VerificationStep)
    step.description = description
    step.completed = False
    step.execute.return_value = list(records)
    return step


class TestVerificationStepManager(unittest.TestCase):
    """Test sequencing and error collection of verification steps."""

    def setUp(self):
        self.step_manager = VerificationStepManager("unit")

    def test_step_manager_execution(self):
        """Test step manager executes steps in order."""
        step1 = _mock_step("Step 1", [AssertionRecord("a", True, 1.0)])
        step2 = _mock_step("Step 2", [AssertionRecord("b", True, 2.0)])
        self.step_manager.add_step(step1)
        self.step_manager.add_step(step2)

        summary = self.step_manager.execute_steps()

        step1.execute.assert_called_once()
        step2.execute.assert_called_once()
        self.assertTrue(summary.passed)
        self.assertEqual([r.name for r in summary.records], ["a", "b"])
        self.assertEqual(self.step_manager.completed_steps, [step1, step2])
        self.assertEqual(set(self.step_manager.timings), {"Step 1", "Step 2"})

    def test_failed_assertion_fails_suite(self):
        self.step_manager.add_step(_mock_step("Step 1", [AssertionRecord("a", False, 5.0, upper=1.0)]))
        summary = self.step_manager.execute_steps()
        self.assertFalse(summary.passed)
        self.assertEqual(summary.errors, [])

    def test_error_is_recorded_and_later_steps_run(self):
        """A raising step becomes an error entry; the next step still executes."""
        step1 = _mock_step("Step 1")
        step1.execute.side_effect = HypothesisFailed("log^2 integral diverges")
        step2 = _mock_step("Step 2", [AssertionRecord("b", True, 2.0)])
        self.step_manager.add_step(step1)
        self.step_manager.add_step(step2)

        summary = self.step_manager.execute_steps()

        step2.execute.assert_called_once()
        self.assertFalse(summary.passed)
        self.assertEqual(len(summary.errors), 1)
        self.assertIn("HypothesisFailed", summary.errors[0])
        self.assertFalse(step1.completed)
        self.assertEqual(self.step_manager.completed_steps, [step2])

    def test_unexpected_exception_is_recorded(self):
        step = _mock_step("Step 1")
        step.execute.side_effect = RuntimeError("boom")
        self.step_manager.add_step(step)
        summary = self.step_manager.execute_steps()
        self.assertEqual(summary.errors, ["Step 1: RuntimeError: boom"])


class TestChecks:
    def test_check_within(self):
        step = VerificationStep("checks", context=None)
        assert step.check_within("inside", 1.0, 0.5, 2.0).passed
        assert not step.check_within("above", 3.0, upper=2.0).passed
        assert not step.check_within("nan", float("nan")).passed
        assert step.check_within("unbounded", 1e9).passed
        assert [r.name for r in step.records] == ["inside", "above", "nan", "unbounded"]

    def test_check_step_resets_records(self):
        def check(step):
            step.check_true("ok", True)

        step = CheckStep("one", None, check)
        assert len(step.execute()) == 1
        assert len(step.execute()) == 1

    def test_base_step_is_abstract(self):
        with pytest.raises(NotImplementedError):
            VerificationStep("base", None).execute()


class TestSuites:
    def test_registry(self):
        assert SUITE_NAMES[-1] == "all"
        assert {"weights", "geometry", "kernels", "thm1", "thm6", "cor7"} <= set(SUITES)

    def test_unknown_suite(self, locator):
        with pytest.raises(SpecError):
            build_suite("thm9", VerificationContext(locator))

    def test_logarithmic_suite_passes(self, locator):
        timings = {}
        summaries = run_suites("cor7", VerificationContext(locator), timings)
        assert len(summaries) == 1
        assert summaries[0].suite == "cor7"
        assert summaries[0].passed
        assert len(summaries[0].records) == 4
        assert list(timings) == ["cor7"]

    @pytest.mark.parametrize("name", [s for s in SUITES if s != "cor7"])
    def test_suite_passes_on_desk_grid(self, locator, name):
        summary = run_suites(name, VerificationContext(locator))[0]
        failed = [record.name for record in summary.records if not record.passed]
        assert summary.errors == []
        assert failed == []
        assert summary.passed

    def test_norm_constant_of_regular_weight(self):
        assert norm_constant(9.0) == pytest.approx(35.0 * np.pi, rel=1e-12)
        assert norm_constant(3.0) == pytest.approx(4.0 * np.pi, rel=1e-12)

    def test_radial_conditions_suite_runs(self, locator):
        summary = run_suites("thm6", VerificationContext(locator))[0]
        assert summary.errors == []
        names = [r.name for r in summary.records]
        assert any("2A + AB - B > 0" in name for name in names)
        assert any("lower" in name or "left/right" in name for name in names)

    def test_context_caches_operators(self, locator):
        context = VerificationContext(locator)
        assert context.operator(HALF) is context.operator(HALF)
        assert context.profile("std:alpha=1") is context.profile("std:alpha=1")
