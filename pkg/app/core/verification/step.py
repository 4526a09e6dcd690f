"""
Verification steps: one checked property group per step.
"""
from typing import Any, Callable, List, Optional

import numpy as np

from app.domain.models import AssertionRecord


class VerificationStep:
    """Base class for verification steps that collect assertion records."""

    def __init__(self, description: str, context):
        self.description = description
        self.context = context
        self.completed = False
        self.records: List[AssertionRecord] = []

    def execute(self) -> List[AssertionRecord]:
        """Run the step and return its records."""
        raise NotImplementedError("Subclasses must implement execute()")

    def check_within(self, name: str, value: float, lower: Optional[float] = None,
                     upper: Optional[float] = None, detail: str = "") -> AssertionRecord:
        """Record lower <= value <= upper; a missing edge is unbounded."""
        value = float(value)
        passed = bool(np.isfinite(value))
        if lower is not None:
            passed = passed and value >= lower
        if upper is not None:
            passed = passed and value <= upper
        record = AssertionRecord(name, passed, value, lower, upper, detail)
        self.records.append(record)
        return record

    def check_true(self, name: str, condition: bool, value: Any = None, detail: str = "") -> AssertionRecord:
        record = AssertionRecord(name, bool(condition), value, detail=detail)
        self.records.append(record)
        return record


class CheckStep(VerificationStep):
    """Step running a check function `check(step)` that records through the step."""

    def __init__(self, description: str, context, check: Callable[["VerificationStep"], None]):
        super().__init__(description, context)
        self.check = check

    def execute(self) -> List[AssertionRecord]:
        self.records = []
        self.check(self)
        return list(self.records)
