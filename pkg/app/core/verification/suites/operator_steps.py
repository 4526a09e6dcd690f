"""
Operator suites: boundedness against the matrix oracle, the compactness
dichotomy, the mixed-norm functionals for q < p and the Schatten criterion.
"""
import numpy as np

from app.core.verification.scenarios import (
    COMPACT, IDENTITY, MIXED, POLYNOMIAL, RESTRICTION_RADII, SCHATTEN, SCHATTEN_RADII, TOEPLITZ
)
from app.core.verification.step import CheckStep, VerificationStep

HOMOGENEITY_FACTOR = 2.0
HOMOGENEITY_TOLERANCE = 1e-8
TOEPLITZ_TOLERANCE = 1e-6
GROWTH_FACTOR = 4.0


def boundedness_vs_oracle(step: VerificationStep):
    ctx = step.context
    lo, hi = ctx.brackets.thm1_oracle
    for scenario in POLYNOMIAL:
        spec = ctx.operator(scenario)
        report = ctx.operators.boundedness_functional(spec)
        oracle = ctx.oracles.matrix_oracle(spec.u, spec.phi, spec.profile)
        ratio = np.sqrt(report.normalized_value) / oracle.op_norm
        step.check_within(f"{scenario.name}: sqrt(bounded) / sigma_1", ratio, lo, hi,
                          detail=f"bounded={report.normalized_value:.6g}, sigma_1={oracle.op_norm:.6g}")


def homogeneity(step: VerificationStep):
    ctx = step.context
    for scenario in (IDENTITY, POLYNOMIAL[2]):
        spec = ctx.operator(scenario)
        base = ctx.operators.boundedness_functional(spec).value
        scaled = ctx.operators.boundedness_functional(spec.scaled(HOMOGENEITY_FACTOR)).value
        expected = HOMOGENEITY_FACTOR ** spec.q * base
        step.check_within(f"{scenario.name}: relative error of 2u scaling", abs(scaled - expected) / expected,
                          upper=HOMOGENEITY_TOLERANCE)


def essential_norm_dichotomy(step: VerificationStep):
    ctx = step.context
    for scenario in COMPACT:
        report = ctx.operators.essential_norm_functional(ctx.operator(scenario))
        step.check_within(f"{scenario.name}: tail of the test-function sup", report.normalized_value,
                          upper=ctx.brackets.compact_tail)
        step.check_true(f"{scenario.name}: per-level decay monotone", report.diagnostics["monotone_decay"],
                        report.levels)
    report = ctx.operators.essential_norm_functional(ctx.operator(IDENTITY))
    step.check_within("identity: tail of the test-function sup", report.normalized_value,
                      lower=ctx.brackets.identity_tail)


def restricted_measures(step: VerificationStep):
    ctx = step.context
    for scenario in POLYNOMIAL[:3]:
        spec = ctx.operator(scenario)
        for r in RESTRICTION_RADII:
            report = ctx.operators.restricted_constant(spec, r)
            bound = ctx.brackets.restricted_constant * report.diagnostics["N_r_star"]
            step.check_within(f"{scenario.name}, r={r}: sup nu_r(S(a))/omega(S(a))", report.value, upper=bound,
                              detail=f"covering count {report.diagnostics['covering_count']}")


def mixed_norms(step: VerificationStep):
    ctx = step.context
    lo, hi = ctx.brackets.wide
    for scenario in MIXED:
        report = ctx.operators.remark2_functionals(ctx.operator(scenario), experimental=ctx.experimental)
        norms = {k: report.diagnostics[k] for k in ("M_norm", "Q_norm", "psi_norm")}
        step.check_true(f"{scenario.name}: all three norms positive and finite",
                        all(np.isfinite(v) and v > 0 for v in norms.values()), norms)
        step.check_within(f"{scenario.name}: max/min of ||Psi||, ||M(nu)||, ||Q||", report.diagnostics["spread"],
                          upper=hi / lo if lo > 0 else hi)


def toeplitz_identity(step: VerificationStep):
    ctx = step.context
    for scenario in TOEPLITZ:
        spec = ctx.operator(scenario)
        oracle = ctx.oracles.matrix_oracle(spec.u, spec.phi, spec.profile)
        T = ctx.oracles.toeplitz_matrix(spec.u, spec.phi, spec.profile, oracle.N)
        gram = oracle.matrix.conj().T @ oracle.matrix
        step.check_within(f"{scenario.name}: max |T_sigma - M*M|", float(np.max(np.abs(T - gram))),
                          upper=TOEPLITZ_TOLERANCE)


def schatten_vs_oracle(step: VerificationStep):
    ctx = step.context
    lo, hi = ctx.brackets.hilbert_schmidt
    wide_lo, wide_hi = ctx.brackets.wide
    for scenario in SCHATTEN:
        spec = ctx.operator(scenario)
        oracle = ctx.oracles.matrix_oracle(spec.u, spec.phi, spec.profile)
        values = {r: ctx.operators.schatten_functional(spec.u, spec.phi, spec.profile, 2.0, r).value
                  for r in SCHATTEN_RADII}
        value = values[ctx.grid.schatten_r] if ctx.grid.schatten_r in values else values[SCHATTEN_RADII[-1]]
        step.check_within(f"{scenario.name}: Schatten functional / sum sigma_i^2",
                          value / oracle.hilbert_schmidt_sq, lo, hi)
        small, large = values[SCHATTEN_RADII[0]], values[SCHATTEN_RADII[-1]]
        step.check_within(f"{scenario.name}: r={SCHATTEN_RADII[0]} vs r={SCHATTEN_RADII[-1]}",
                          small / large, wide_lo, wide_hi)


def identity_not_schatten(step: VerificationStep):
    ctx = step.context
    spec = ctx.operator(IDENTITY)
    report = ctx.operators.schatten_functional(spec.u, spec.phi, spec.profile, 2.0, ctx.grid.schatten_r)
    growth = report.levels[-1] / report.levels[-3]
    step.check_within("identity: Schatten levels grow toward the circle", growth, lower=GROWTH_FACTOR,
                      detail=f"flags={sorted(report.flags)}")


def build_thm1(manager, context):
    manager.add_step(CheckStep("Boundedness functional against the matrix oracle", context, boundedness_vs_oracle))
    manager.add_step(CheckStep("Homogeneity in |u|^q", context, homogeneity))


def build_thm2(manager, context):
    manager.add_step(CheckStep("Essential norm dichotomy", context, essential_norm_dichotomy))
    manager.add_step(CheckStep("Restricted pushforward measures", context, restricted_measures))


def build_thm3(manager, context):
    manager.add_step(CheckStep("Mixed norms of Psi, M(nu) and Q", context, mixed_norms))


def build_thm4(manager, context):
    manager.add_step(CheckStep("Toeplitz matrix equals M*M", context, toeplitz_identity))
    manager.add_step(CheckStep("Schatten functional against the oracle", context, schatten_vs_oracle))
    manager.add_step(CheckStep("Identity is not Hilbert-Schmidt", context, identity_not_schatten))
