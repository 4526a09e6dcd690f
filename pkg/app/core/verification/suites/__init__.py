"""
Verification suites, each a list of steps added to a step manager.
"""
from typing import Callable, Dict

from app.core.verification.step_manager import VerificationStepManager
from app.domain.errors import SpecError

from . import geometry_steps, kernel_steps, multiplier_steps, operator_steps, weight_steps

SUITES: Dict[str, Callable] = {
    "weights": weight_steps.build,
    "geometry": geometry_steps.build,
    "kernels": kernel_steps.build,
    "thm1": operator_steps.build_thm1,
    "thm2": operator_steps.build_thm2,
    "thm3": operator_steps.build_thm3,
    "thm4": operator_steps.build_thm4,
    "thm5": multiplier_steps.build_thm5,
    "thm6": multiplier_steps.build_thm6,
    "cor7": multiplier_steps.build_cor7,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def build_suite(name: str, context) -> VerificationStepManager:
    if name not in SUITES:
        raise SpecError(f"Unknown suite '{name}'; known: {', '.join(SUITE_NAMES)}")
    manager = VerificationStepManager(name)
    SUITES[name](manager, context)
    return manager
