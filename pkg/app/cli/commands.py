"""
Command handlers: weight classification, functional computation and verification.

Handlers raise toolkit errors; `run` is the single place that turns them
into exit codes. Reports are written before a mathematical flag is raised.
"""
import logging
import re
import time
from dataclasses import replace
from typing import Callable, Dict, Optional, Sequence

from app.cli.parser import build_run_config, parse_args
from app.core.services.service_locator import ServiceLocator
from app.core.utils.error_manager import ErrorManager
from app.core.utils.logging_config import LoggingConfig
from app.core.verification import VerificationContext, run_suites
from app.domain.errors import DivergentError, ScenarioError
from app.domain.models import FunctionalReport, OperatorSpec, RunConfig
from app.infrastructure.report_writer import ReportWriter
from app.infrastructure.scenario_loader import ScenarioLoader

logger = logging.getLogger(__name__)

RESTRICTION_RADIUS = 0.75
PHI_R_RADIUS = 0.5
# failed assertions are negative mathematical evidence
VERIFY_FAILED = 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, dispatch and map the outcome to an exit code (0, 1 or 2)."""
    errors = ErrorManager.instance()
    try:
        args = parse_args(argv)
        LoggingConfig.configure(args.log_level)
        if args.command == "functional":
            return cmd_functional(args)
        config = build_run_config(args)
        if config.command == "weight":
            return cmd_weight(config)
        return cmd_verify(config)
    except Exception as e:
        return errors.handle(e)


def _locator(config: RunConfig) -> ServiceLocator:
    return ServiceLocator().configure(config.grid, config.brackets, config.workers)


def _stem(*parts: str) -> str:
    return "_".join(re.sub(r"[^A-Za-z0-9.+-]+", "-", part).strip("-") for part in parts if part)


def cmd_weight(config: RunConfig) -> int:
    locator = _locator(config)
    weights = locator.get_weight_service()
    loader = ScenarioLoader(weights, config.grid)
    started = time.perf_counter()
    profile = loader.profile(config.target)
    summary = weights.describe(profile)
    table = weights.table(profile)
    writer = ReportWriter(config.out_dir, config)
    path = writer.write_weight(_stem("weight", config.target), summary, table, time.perf_counter() - started)
    logger.info(f"Weight report written to {path}")
    weights.require_conclusive(profile)
    return 0


def cmd_functional(args) -> int:
    # the scenario grid block sits between the preset and the command-line flags
    scenario = ScenarioLoader(ServiceLocator().get_weight_service()).load(args.scenario)
    config = build_run_config(args, ScenarioLoader.grid_block(scenario))
    if config.gamma is not None:
        scenario = replace(scenario, gamma=config.gamma)

    locator = _locator(config)
    loader = ScenarioLoader(locator.get_weight_service(), config.grid)
    spec = loader.operator(scenario)
    started = time.perf_counter()
    report = _functional(config, locator)[config.target](spec)
    report.wall_time = time.perf_counter() - started

    writer = ReportWriter(config.out_dir, config)
    path = writer.write_functional(_stem(config.target, scenario.name), report)
    logger.info(f"{config.target} = {report.value:.6g}; report written to {path}")
    if report.divergent:
        raise DivergentError(f"{config.target} levels grow without stabilizing: {report.levels}", report.levels)
    return 0


def _functional(config: RunConfig, locator: ServiceLocator) -> Dict[str, Callable[[OperatorSpec], FunctionalReport]]:
    operators = locator.get_operator_service()
    criteria = locator.get_criteria_service()
    radius = config.radius

    def thm6(spec: OperatorSpec) -> FunctionalReport:
        report = criteria.thm6_lower_bound_experiment(spec.profile, spec.phi, spec.p)
        report.diagnostics["condition_i"] = criteria.thm6_condition_i(spec.profile).to_dict()
        return report

    return {
        "bounded": operators.boundedness_functional,
        "essnorm": operators.essential_norm_functional,
        "carleson": operators.pushforward_carleson,
        "restricted": lambda spec: operators.restricted_constant(spec, radius or RESTRICTION_RADIUS),
        "psi": operators.psi_mixed_norm,
        "remark2": lambda spec: operators.remark2_functionals(spec, config.experimental, radius or PHI_R_RADIUS),
        "schatten": lambda spec: operators.schatten_functional(
            spec.u, spec.phi, _weighted_area(spec), spec.p, radius or config.grid.schatten_r),
        "multbound": lambda spec: operators.multiplier_bound_profile(spec.u, spec.phi, spec.profile, spec.p),
        "thm6": thm6,
    }


def _weighted_area(spec: OperatorSpec):
    """The profile of the scenario weight; sigma is built from |u|^2 omega dA only."""
    mu = spec.mu
    if mu.atoms or mu.profile is None or mu.profile.source.spec != spec.profile.source.spec:
        raise ScenarioError(f"schatten builds sigma from |u|^2 omega dA; scenario mu '{mu.label}' "
                            f"must be the weighted area of {spec.profile.source.spec} (mu = warea)")
    return spec.profile


def cmd_verify(config: RunConfig) -> int:
    locator = _locator(config)
    context = VerificationContext(locator, experimental=config.experimental)
    timings: Dict[str, Dict[str, float]] = {}
    summaries = run_suites(config.target, context, timings)
    writer = ReportWriter(config.out_dir, config)
    path = writer.write_summary(_stem("verify", config.target), summaries, timings)

    failed = 0
    for summary in summaries:
        for record in summary.records:
            if not record.passed:
                failed += 1
                logger.warning(f"FAILED {summary.suite}: {record.name} = {record.value} "
                               f"not in [{record.lower}, {record.upper}] {record.detail}")
        for error in summary.errors:
            failed += 1
            logger.warning(f"ERROR {summary.suite}: {error}")
    logger.info(f"Verification summary written to {path}")
    if failed:
        logger.error(f"{failed} verification check(s) failed")
        return VERIFY_FAILED
    return 0
