"""
Loader for scenario files and the weight profiles they refer to.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from app.core.services.weight_service import WeightService
from app.domain.errors import ScenarioError, SpecError
from app.domain.models import GridConfig, OperatorSpec, RadialGrid, Scenario, WeightProfile
from app.infrastructure.spec_parser import SpecParser

SCENARIO_FIELDS = ("weight", "u", "phi", "mu", "p", "q", "gamma", "grids", "name")


class ScenarioLoader:
    """Read scenario JSON and turn it into operator specs with classified weights."""

    def __init__(self, weight_service: WeightService, grid: Optional[GridConfig] = None):
        self.weights = weight_service
        self.grid = grid or GridConfig()
        self.logger = logging.getLogger(__name__)
        self._profiles: Dict[str, WeightProfile] = {}

    def load(self, path: str) -> Scenario:
        file = Path(path)
        if not file.is_file():
            raise ScenarioError(f"Scenario file not found: {path}")
        try:
            data = json.loads(file.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ScenarioError(f"Scenario {path} is not valid JSON: {e}")
        return self.from_dict(data, default_name=file.stem)

    def from_dict(self, data: Dict[str, Any], default_name: str = "scenario") -> Scenario:
        if not isinstance(data, dict):
            raise ScenarioError("Scenario must be a JSON object")
        unknown = sorted(set(data) - set(SCENARIO_FIELDS))
        if unknown:
            raise ScenarioError(f"Unknown scenario fields: {unknown}")
        if "weight" not in data:
            raise ScenarioError("Scenario is missing the 'weight' field")
        grids = data.get("grids") or {}
        if not isinstance(grids, dict):
            raise ScenarioError("Scenario 'grids' must be an object")
        try:
            return Scenario(
                weight=str(data["weight"]),
                u=str(data.get("u", "poly:1")),
                phi=str(data.get("phi", "poly:0,1")),
                mu=str(data.get("mu", "warea")),
                p=float(data.get("p", 2.0)),
                q=float(data.get("q", 2.0)),
                gamma=None if data.get("gamma") is None else float(data["gamma"]),
                grids=dict(grids),
                name=str(data.get("name", default_name)),
            )
        except (TypeError, ValueError) as e:
            raise ScenarioError(f"Bad scenario value: {e}")

    def profile(self, weight_spec: str) -> WeightProfile:
        """Classified profile of a weight spec, cached per spec string."""
        if weight_spec not in self._profiles:
            weight = self.weights.create_weight(weight_spec)
            grid = RadialGrid(self.grid.radial_levels, self.grid.radial_subdivisions)
            self._profiles[weight_spec] = self.weights.classify(
                weight, grid, kernel_N=self.grid.kernel_N, tail_window=self.grid.tail_window)
        return self._profiles[weight_spec]

    def operator(self, scenario: Scenario) -> OperatorSpec:
        """u C_phi : A^p_omega -> L^q_mu of a scenario; phi is checked as a self-map."""
        profile = self.profile(scenario.weight)
        u = SpecParser.parse_map(scenario.u)
        phi = SpecParser.parse_map(scenario.phi, self_map=True)

        def profile_for(spec: Optional[str]) -> WeightProfile:
            return profile if spec is None else self.profile(spec)

        mu = SpecParser.parse_measure(scenario.mu, profile_for)
        try:
            spec = OperatorSpec(u, phi, mu, profile, scenario.p, scenario.q, scenario.gamma)
        except SpecError as e:
            raise ScenarioError(f"Scenario {scenario.name}: {e}")
        self.logger.debug(f"Scenario {scenario.name}: {u.spec} C[{phi.spec}] on {scenario.weight} -> {mu.label}")
        return spec

    @staticmethod
    def grid_block(scenario: Scenario) -> Dict[str, Any]:
        """The scenario's grid overrides, checked against the GridConfig fields."""
        known = set(GridConfig.__dataclass_fields__)
        unknown = sorted(set(scenario.grids) - known)
        if unknown:
            raise ScenarioError(f"Unknown grid fields in scenario {scenario.name}: {unknown}")
        return dict(scenario.grids)

