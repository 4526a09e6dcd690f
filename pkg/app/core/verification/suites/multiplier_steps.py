"""
Multiplier suites: the box-mass ratio under finite Blaschke products, the
radial conditions on omega_hat and the inequalities for logarithmic weights.
"""
import numpy as np

from app.core.verification.scenarios import (
    BLASCHKE, CONDITION_B_ALPHAS, CONDITION_WEIGHTS, MULTIPLIER_WEIGHTS, REGULAR
)
from app.core.verification.step import CheckStep, VerificationStep
from app.infrastructure.spec_parser import SpecParser

# |z| <= 1 - 2^-10
MULTIPLIER_LEVELS = 10
MULTIPLIER_EXPONENT = 2.0
IDENTITY_TOLERANCE = 1e-12
LOWER_BOUND_MAP = "blaschke:m=2"
SUP_TOLERANCE = 1e-9


def multiplier_ratio(step: VerificationStep):
    ctx = step.context
    u = SpecParser.parse_map("poly:1")
    for weight in MULTIPLIER_WEIGHTS:
        profile = ctx.profile(weight)
        for spec in BLASCHKE:
            phi = SpecParser.parse_map(spec)
            report = ctx.operators.multiplier_bound_profile(u, phi, profile, MULTIPLIER_EXPONENT, MULTIPLIER_LEVELS)
            step.check_within(f"{weight}, {spec}: sup omega(S(phi(z)))/omega(S(z))", report.value,
                              upper=ctx.brackets.multiplier_cap,
                              detail=f"implied bound {report.diagnostics['implied_bound']}")
        identity = SpecParser.parse_map("blaschke:m=1")
        report = ctx.operators.multiplier_bound_profile(u, identity, profile, MULTIPLIER_EXPONENT, MULTIPLIER_LEVELS)
        step.check_within(f"{weight}, identity: |ratio - 1|", abs(report.value - 1.0), upper=IDENTITY_TOLERANCE)


def condition_i(step: VerificationStep):
    ctx = step.context
    for weight in CONDITION_WEIGHTS:
        profile = ctx.profile(weight)
        report = ctx.criteria.thm6_condition_i(profile)
        step.check_within(f"{weight}: sup omega_hat(phi_t(r)) omega_hat(r) / (omega_hat(t) omega_hat(0))",
                          report.normalized_value, upper=ctx.brackets.condition_i,
                          detail=f"witness (r, t) = {report.witness}")
        constants = ctx.weights.tail_constants(profile)
        step.check_true(f"{weight}: 2A + AB - B > 0", constants.condition_ii, constants.margin)


def lower_bound_experiment(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    phi = SpecParser.parse_map(LOWER_BOUND_MAP)
    report = ctx.criteria.thm6_lower_bound_experiment(profile, phi, MULTIPLIER_EXPONENT)
    step.check_within(f"{LOWER_BOUND_MAP}: max left/right along |w| = 1 - 2^-j", report.value,
                      upper=ctx.brackets.thm6_ratio)
    sups = [record["normalized_sup"] for record in report.diagnostics["records"]]
    step.check_within("||u_w||^p (1-|w|)^(2a+4) - 1", float(np.max(np.abs(np.array(sups) - 1.0))),
                      upper=SUP_TOLERANCE)


def logarithmic_inequalities(step: VerificationStep):
    ctx = step.context
    C1, witness = ctx.criteria.corollary7_C1()
    step.check_within("C_1 over the dyadic (r, t) grid", C1, lower=ctx.brackets.c1_minimum,
                      detail=f"witness (r, t) = {witness}")
    for alpha in CONDITION_B_ALPHAS:
        margin, witness = ctx.criteria.corollary7_margin(alpha)
        step.check_true(f"alpha={alpha:g}: log inequality at every grid point",
                        ctx.criteria.corollary7_condition_b(alpha), margin)


def build_thm5(manager, context):
    manager.add_step(CheckStep("Box-mass ratio under finite Blaschke products", context, multiplier_ratio))


def build_thm6(manager, context):
    manager.add_step(CheckStep("Radial conditions (i) and (ii)", context, condition_i))
    manager.add_step(CheckStep("Lower-bound experiment with u_w", context, lower_bound_experiment))


def build_cor7(manager, context):
    manager.add_step(CheckStep("Logarithmic inequalities", context, logarithmic_inequalities))
