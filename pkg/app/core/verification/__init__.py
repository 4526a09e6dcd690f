"""
Verification pipeline: property checks grouped into suites of steps.
"""
from typing import Dict, List, Optional

from app.domain.models import SuiteSummary

from .context import VerificationContext
from .step import CheckStep, VerificationStep
from .step_manager import VerificationStepManager
from .suites import SUITE_NAMES, SUITES, build_suite


def run_suites(name: str, context: VerificationContext,
               timings: Optional[Dict[str, Dict[str, float]]] = None) -> List[SuiteSummary]:
    """Summaries of one suite, or of every suite in registry order for "all".

    Per-step wall times are collected into `timings` when it is given.
    """
    summaries = []
    for suite in (list(SUITES) if name == "all" else [name]):
        manager = build_suite(suite, context)
        summaries.append(manager.execute_steps())
        if timings is not None:
            timings[suite] = dict(manager.timings)
    return summaries


__all__ = [
    'VerificationContext',
    'VerificationStep',
    'CheckStep',
    'VerificationStepManager',
    'SUITES',
    'SUITE_NAMES',
    'build_suite',
    'run_suites'
]
