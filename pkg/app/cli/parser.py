"""
Command-line grammar and its translation into a RunConfig.
"""
import argparse
from dataclasses import fields
from typing import Any, Dict, List, Optional, Sequence

from app.core.verification.suites import SUITE_NAMES
from app.domain.errors import SpecError
from app.domain.models import BracketConfig, GridConfig, RunConfig

FUNCTIONAL_KINDS = ("bounded", "essnorm", "psi", "schatten", "carleson", "multbound", "thm6",
                    "restricted", "remark2")
PRESETS = ("full", "acceptance", "desk")
DEFAULT_PRESETS = {"weight": "full", "functional": "full", "verify": "desk"}

# CLI flag -> GridConfig field
GRID_FLAGS = {
    "levels": "a_levels",
    "oracle_N": "oracle_N",
    "j0": "j0",
}


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors map to exit code 1."""

    def error(self, message):
        raise SpecError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=PRESETS, help="Grid preset (default: desk for verify, full otherwise)")
    common.add_argument("--levels", type=int, metavar="J", help="Dyadic a-grid depth")
    common.add_argument("--gamma", type=float, help="Test-function exponent gamma")
    common.add_argument("--oracle-N", dest="oracle_N", type=int, metavar="N", help="Matrix oracle truncation")
    common.add_argument("--j0", type=int, help="First level of the essential-norm tail")
    common.add_argument("--r", dest="radius", type=float, help="Pseudo-hyperbolic or restriction radius")
    common.add_argument("--bracket", action="append", default=[], metavar="[NAME=]LO,HI",
                        help="Override the wide bracket (LO,HI) or a named bracket or constant; repeatable")
    common.add_argument("--out", dest="out_dir", default="reports", help="Output directory")
    common.add_argument("--workers", type=int, default=1, help="Worker threads for grid scans")
    common.add_argument("--log-level", dest="log_level", help="Debug, Info, Warning or Error")
    common.add_argument("--experimental", action="store_true", help="Enable the experimental Phi_r functional")

    parser = ToolkitArgumentParser(
        prog="bergman-toolkit",
        description="Weighted Bergman spaces induced by double weights: functionals and verification suites.")
    commands = parser.add_subparsers(dest="command", parser_class=ToolkitArgumentParser)
    commands.required = True

    weight = commands.add_parser("weight", parents=[common], help="Classify a weight and tabulate its functionals")
    weight.add_argument("target", metavar="spec", help='Weight spec, e.g. "std:alpha=1"')

    functional = commands.add_parser("functional", parents=[common], help="Compute one operator functional")
    functional.add_argument("target", metavar="kind", choices=FUNCTIONAL_KINDS)
    functional.add_argument("--scenario", required=True, help="Scenario JSON file")

    verify = commands.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("target", metavar="suite", choices=SUITE_NAMES)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def grid_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Grid fields set explicitly on the command line."""
    return {field: getattr(args, flag) for flag, field in GRID_FLAGS.items() if getattr(args, flag, None) is not None}


def build_run_config(args: argparse.Namespace, scenario_grids: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Preset grid, then scenario grid block, then command-line flags."""
    preset = args.preset or DEFAULT_PRESETS[args.command]
    grid = GridConfig.preset(preset).override(**(scenario_grids or {}))
    grid = grid.override(**grid_overrides(args))
    if args.workers < 1:
        raise SpecError(f"--workers must be at least 1, got {args.workers}")
    return RunConfig(
        command=args.command,
        target=args.target,
        scenario=getattr(args, "scenario", None),
        preset=preset,
        grid=grid,
        brackets=parse_brackets(args.bracket),
        gamma=args.gamma,
        radius=args.radius,
        out_dir=args.out_dir,
        workers=args.workers,
        experimental=args.experimental,
        log_level=args.log_level,
    )


def parse_brackets(values: List[str], base: Optional[BracketConfig] = None) -> BracketConfig:
    """Apply "lo,hi" (wide bracket), "name=lo,hi" or "name=value" overrides."""
    base = base or BracketConfig()
    known = {f.name: f for f in fields(BracketConfig)}
    changes: Dict[str, Any] = {}
    for value in values:
        name, _, body = value.rpartition("=")
        name = name.strip() or "wide"
        if name not in known:
            raise SpecError(f"Unknown bracket '{name}'; known: {', '.join(sorted(known))}")
        numbers = _floats(body, value)
        if isinstance(getattr(base, name), tuple):
            if len(numbers) != 2 or not 0 <= numbers[0] < numbers[1]:
                raise SpecError(f"Bracket {name} needs 0 <= lo < hi, got '{body}'")
            changes[name] = (numbers[0], numbers[1])
        else:
            if len(numbers) != 1:
                raise SpecError(f"Constant {name} takes one value, got '{body}'")
            changes[name] = numbers[0]
    return base.override(**changes)


def _floats(body: str, value: str) -> List[float]:
    try:
        return [float(part) for part in body.split(",")]
    except ValueError:
        raise SpecError(f"Bad bracket value '{value}'")
