import json

import pytest

from app.domain.errors import MapValidationError, ScenarioError
from app.domain.models import Scenario


def _write(tmp_path, data, name="case.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def test_load_defaults(loader, tmp_path):
    scenario = loader.load(_write(tmp_path, {"weight": "std:alpha=1", "p": 4, "q": 2}))
    assert scenario.name == "case"
    assert scenario.phi == "poly:0,1"
    assert scenario.mu == "warea"
    assert (scenario.p, scenario.q) == (4.0, 2.0)
    assert scenario.gamma is None


@pytest.mark.parametrize("content", [
    "{not json",
    json.dumps([1, 2]),
    json.dumps({"phi": "poly:0,1"}),
    json.dumps({"weight": "std:alpha=1", "colour": "red"}),
    json.dumps({"weight": "std:alpha=1", "grids": [1]}),
    json.dumps({"weight": "std:alpha=1", "p": "two"}),
])
def test_bad_scenarios(loader, tmp_path, content):
    with pytest.raises(ScenarioError):
        loader.load(_write(tmp_path, content))


def test_missing_file(loader, tmp_path):
    with pytest.raises(ScenarioError):
        loader.load(str(tmp_path / "none.json"))


def test_profiles_are_cached(loader):
    assert loader.profile("std:alpha=1") is loader.profile("std:alpha=1")


def test_operator(loader):
    spec = loader.operator(Scenario("std:alpha=1", u="poly:1,1", phi="poly:0,0.5", mu="area", p=2.0, q=3.0))
    assert spec.profile is loader.profile("std:alpha=1")
    assert spec.mu.label == "area"
    assert spec.shape == 9.0


def test_operator_checks_self_map(loader):
    with pytest.raises(MapValidationError):
        loader.operator(Scenario("std:alpha=1", phi="poly:0.5,0.6"))


def test_operator_rejects_bad_exponents(loader):
    with pytest.raises(ScenarioError):
        loader.operator(Scenario("std:alpha=1", p=-1.0))


def test_grid_block(loader):
    assert loader.grid_block(Scenario("std:alpha=1", grids={"a_levels": 6})) == {"a_levels": 6}
    with pytest.raises(ScenarioError):
        loader.grid_block(Scenario("std:alpha=1", grids={"depth": 6}))
