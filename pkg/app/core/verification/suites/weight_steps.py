"""
Weight suite: the omega_* equivalence and monotonicity, the doubling check,
moment consistency and the box-mass comparison omega(S(a)) ~ omega_*(a).
"""
import numpy as np

from app.core.quadrature import DiskQuadrature
from app.core.verification.scenarios import BOX_SUITE, WEIGHT_SUITE
from app.core.verification.step import CheckStep, VerificationStep

DEEP_LEVELS = 12
MOMENT_TOLERANCE = 1e-8
# extra dyadic levels of the radial rule for the moment check
MOMENT_EXTRA_LEVELS = 8
DECAY_FACTOR = 1e-3
MONOTONE_SLACK = 1e-12
BOX_RADII = 12
BOX_ANGLES = 8


def star_equivalence(step: VerificationStep):
    ctx = step.context
    lo, hi = ctx.brackets.star_equivalence
    for spec in WEIGHT_SUITE:
        profile = ctx.profile(spec)
        radii = profile.grid.radii
        radii = radii[radii >= 0.5]
        ratio = ctx.weights.star_ratio(profile, radii)
        step.check_within(f"{spec}: min omega_*/((1-r) omega_hat)", float(np.min(ratio)), lo, hi)
        step.check_within(f"{spec}: max omega_*/((1-r) omega_hat)", float(np.max(ratio)), lo, hi)


def omega_star_decay(step: VerificationStep):
    ctx = step.context
    radii = 1.0 - 2.0 ** -np.arange(1, DEEP_LEVELS + 1, dtype=float)
    for spec in WEIGHT_SUITE:
        profile = ctx.profile(spec)
        star = ctx.weights.omega_star(profile, radii)
        decreasing = bool(np.all(np.diff(star) < 0))
        step.check_true(f"{spec}: omega_* strictly decreasing on 1 - 2^-j", decreasing)
        step.check_within(f"{spec}: omega_*(1 - 2^-12) / omega_*(1/2)", float(star[-1] / star[0]),
                          upper=DECAY_FACTOR)


def star_exponents(step: VerificationStep):
    ctx = step.context
    for spec in WEIGHT_SUITE:
        profile = ctx.profile(spec)
        step.check_true(f"{spec}: upper exponent b found", profile.b_exp is not None, profile.b_exp)
        if profile.b_exp is None:
            continue
        radii = profile.grid.radii
        radii = radii[radii >= profile.delta]
        log_star = np.log(ctx.weights.omega_star(profile, radii))
        log_gap = np.log1p(-radii)
        rising = np.diff(log_star - profile.b_exp * log_gap)
        step.check_true(f"{spec}: omega_*/(1-r)^b nondecreasing", bool(np.all(rising >= -MONOTONE_SLACK)),
                        float(np.min(rising)))
        if profile.a_exp is None:
            continue
        step.check_true(f"{spec}: a < b", profile.a_exp < profile.b_exp, [profile.a_exp, profile.b_exp])
        falling = np.diff(log_star - profile.a_exp * log_gap)
        step.check_true(f"{spec}: omega_*/(1-r)^a nonincreasing", bool(np.all(falling <= MONOTONE_SLACK)),
                        float(np.max(falling)))


def doubling(step: VerificationStep):
    for spec in WEIGHT_SUITE:
        profile = step.context.profile(spec)
        step.check_true(f"{spec}: sup omega_hat(r)/omega_hat((1+r)/2) finite", profile.doubling,
                        profile.dd_constant)


def moment_consistency(step: VerificationStep):
    ctx = step.context
    quad = DiskQuadrature(ctx.grid.radial_levels + MOMENT_EXTRA_LEVELS, ctx.grid.quad_order, 1, 1)
    for spec in WEIGHT_SUITE:
        profile = ctx.profile(spec)
        area, _ = ctx.quadrature.integrate_disk(lambda z: np.ones(z.shape), quad, weight=profile.source)
        moment = 2.0 * ctx.weights.moment(profile, 1)
        step.check_within(f"{spec}: |2 omega_1 - omega(D)| / omega(D)", abs(moment - float(area)) / float(area),
                          upper=MOMENT_TOLERANCE)


def box_equivalence(step: VerificationStep):
    ctx = step.context
    lo, hi = ctx.brackets.box_star
    modulus = np.linspace(0.5, 0.999, BOX_RADII)
    angles = 2.0 * np.pi * np.arange(BOX_ANGLES) / BOX_ANGLES
    centers = (modulus[:, None] * np.exp(1j * angles)[None, :]).ravel()
    for spec in BOX_SUITE:
        profile = ctx.profile(spec)
        ratio = profile.box_mass(centers) / ctx.weights.omega_star(profile, np.abs(centers))
        step.check_within(f"{spec}: min omega(S(a))/omega_*(a)", float(np.min(ratio)), lo, hi)
        step.check_within(f"{spec}: max omega(S(a))/omega_*(a)", float(np.max(ratio)), lo, hi)


def build(manager, context):
    manager.add_step(CheckStep("Equivalence omega_* ~ (1-r) omega_hat", context, star_equivalence))
    manager.add_step(CheckStep("omega_* decay to the boundary", context, omega_star_decay))
    manager.add_step(CheckStep("Monotone exponents of omega_*", context, star_exponents))
    manager.add_step(CheckStep("Doubling of omega_hat", context, doubling))
    manager.add_step(CheckStep("Moment consistency 2 omega_1 = omega(D)", context, moment_consistency))
    manager.add_step(CheckStep("Box masses omega(S(a)) ~ omega_*(a)", context, box_equivalence))
