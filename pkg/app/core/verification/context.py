"""
Shared state of one verification run.
"""
import json
from typing import Dict

from app.core.services.service_locator import ServiceLocator
from app.domain.models import OperatorSpec, Scenario, WeightProfile
from app.infrastructure.scenario_loader import ScenarioLoader


class VerificationContext:
    """Services, brackets and cached profiles shared by the steps of a run."""

    def __init__(self, locator: ServiceLocator, experimental: bool = False):
        self.locator = locator
        self.grid = locator.grid
        self.brackets = locator.brackets
        self.experimental = experimental
        self.weights = locator.get_weight_service()
        self.quadrature = locator.get_quadrature_service()
        self.spaces = locator.get_space_service()
        self.operators = locator.get_operator_service()
        self.oracles = locator.get_oracle_service()
        self.criteria = locator.get_criteria_service()
        self.loader = ScenarioLoader(self.weights, self.grid)
        self._operators: Dict[str, OperatorSpec] = {}

    def profile(self, weight_spec: str) -> WeightProfile:
        return self.loader.profile(weight_spec)

    def operator(self, scenario: Scenario) -> OperatorSpec:
        key = json.dumps(scenario.to_dict(), sort_keys=True)
        if key not in self._operators:
            self._operators[key] = self.loader.operator(scenario)
        return self._operators[key]
