"""
Error hierarchy shared by every layer of the toolkit.

Two families exist: specification errors (bad input, exit code 1) and
mathematical flags (the computation ran but its evidence is negative or
unreliable, exit code 2).
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""
    exit_code = 1


class SpecError(ToolkitError, ValueError):
    """Malformed spec string, scenario or argument."""
    exit_code = 1


class WeightValidationError(SpecError):
    """Weight density violates positivity or integrability."""


class MapValidationError(SpecError):
    """Analytic map fails the self-map check or is malformed."""


class ScenarioError(SpecError):
    """Scenario file is missing fields or inconsistent with the command."""


class MathFlag(ToolkitError):
    """A mathematical condition was detected; the report is still valid."""
    exit_code = 2


class NonFiniteError(MathFlag):
    """An integrand produced NaN or infinity at a quadrature node."""


class DivergentError(MathFlag):
    """Refinement levels grow without stabilizing."""

    def __init__(self, message, levels=None):
        super().__init__(message)
        self.levels = list(levels or [])


class HypothesisFailed(MathFlag):
    """A theorem hypothesis does not hold numerically."""


class TailNotControlled(MathFlag):
    """Series remainder cannot be bounded within the requested tolerance."""


class ExponentGapViolated(MathFlag):
    """The exponents of a weight do not satisfy 2a + 2 - b > 0."""


class ClassificationInconclusive(MathFlag):
    """Tail behavior of the regularity ratio fits no classification rule."""


class TruncationWarning(UserWarning):
    """Matrix truncation drops a non-negligible part of the operator."""
