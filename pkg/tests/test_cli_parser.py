import pytest

from app.cli.parser import build_run_config, parse_args, parse_brackets
from app.domain.errors import SpecError
from app.domain.models import BracketConfig


def test_default_presets():
    assert build_run_config(parse_args(["verify", "cor7"])).preset == "desk"
    assert build_run_config(parse_args(["weight", "std:alpha=1"])).preset == "full"


def test_flags_override_scenario_grid_block():
    args = parse_args(["functional", "essnorm", "--scenario", "s.json", "--preset", "desk", "--levels", "7",
                       "--j0", "3"])
    config = build_run_config(args, {"a_levels": 5, "oracle_N": 12})
    assert config.grid.a_levels == 7
    assert config.grid.j0 == 3
    assert config.grid.oracle_N == 12
    assert config.scenario == "s.json"


def test_scenario_grid_block_overrides_preset():
    args = parse_args(["functional", "bounded", "--scenario", "s.json", "--preset", "desk"])
    assert build_run_config(args, {"a_levels": 5}).grid.a_levels == 5


def test_radius_gamma_and_switches():
    args = parse_args(["functional", "remark2", "--scenario", "s.json", "--r", "0.4", "--gamma", "11",
                       "--experimental", "--workers", "3", "--out", "here"])
    config = build_run_config(args)
    assert (config.radius, config.gamma) == (0.4, 11.0)
    assert config.experimental
    assert config.workers == 3
    assert config.out_dir == "here"


def test_workers_must_be_positive():
    with pytest.raises(SpecError):
        build_run_config(parse_args(["verify", "cor7", "--workers", "0"]))


@pytest.mark.parametrize("argv", [
    [],
    ["verify", "thm9"],
    ["functional", "essnorm"],
    ["functional", "norm", "--scenario", "s.json"],
    ["weight", "std:alpha=1", "--preset", "huge"],
])
def test_usage_errors_are_spec_errors(argv):
    with pytest.raises(SpecError):
        parse_args(argv)


class TestBrackets:
    def test_bare_pair_sets_wide_bracket(self):
        assert parse_brackets(["0.2,5"]).wide == (0.2, 5.0)

    def test_named_bracket_and_constant(self):
        brackets = parse_brackets(["star_equivalence=0.5,2", "multiplier_cap=50"])
        assert brackets.star_equivalence == (0.5, 2.0)
        assert brackets.multiplier_cap == 50.0
        assert brackets.box_star == BracketConfig().box_star

    @pytest.mark.parametrize("value", ["size=1,2", "star_equivalence=2,1", "star_equivalence=1", "multiplier_cap=1,2", "star_equivalence=a,b"])
    def test_invalid(self, value):
        with pytest.raises(SpecError):
            parse_brackets([value])
