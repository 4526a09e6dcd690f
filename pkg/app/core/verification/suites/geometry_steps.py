"""
Geometry suite: Carleson box nesting, Blaschke boundary behavior, and the
quadrature invariants (additivity, refinement, pushforward substitution).
"""
import numpy as np

from app.core import geometry
from app.core.quadrature import DiskQuadrature
from app.core.verification.scenarios import BLASCHKE, REGULAR
from app.core.verification.step import CheckStep, VerificationStep
from app.domain.models import CarlesonBox, Measure, PushforwardSpec
from app.infrastructure.spec_parser import SpecParser

SEED = 20240229
NESTING_TRIPLES = 2000
BOUNDARY_TOLERANCE = 1e-12
BOUNDARY_SAMPLES = 1024
QUOTIENT_RADIUS = 0.999
ADDITIVITY_BOXES = 64
ADDITIVITY_TOLERANCE = 1e-8
SUBSTITUTION_TOLERANCE = 1e-6
REFINEMENT_START = 4


def box_nesting(step: VerificationStep):
    rng = np.random.default_rng(SEED)
    gap = 10.0 ** rng.uniform(-3.0, np.log10(0.5), NESTING_TRIPLES)
    angle = rng.uniform(-np.pi, np.pi, NESTING_TRIPLES)
    a = (1.0 - gap) * np.exp(1j * angle)
    outer = (1.0 - np.minimum(1.0, gap * rng.uniform(2.0, 8.0, NESTING_TRIPLES))) * np.exp(1j * angle)
    # z uniformly inside S(a)
    z = (1.0 - gap * rng.uniform(0.0, 1.0, NESTING_TRIPLES)) * np.exp(
        1j * (angle + gap * rng.uniform(-0.5, 0.5, NESTING_TRIPLES)))
    failures = 0
    for ai, bi, zi in zip(a, outer, z):
        if geometry.in_carleson_box(ai, zi) and not geometry.in_carleson_box(bi, zi):
            failures += 1
    step.check_true("z in S(a) implies z in S(a') for wider boxes a'", failures == 0, failures)


def blaschke_boundary(step: VerificationStep):
    circle = np.exp(2j * np.pi * np.arange(BOUNDARY_SAMPLES) / BOUNDARY_SAMPLES)
    for spec in BLASCHKE:
        phi = SpecParser.parse_map(spec)
        deviation = float(np.max(np.abs(np.abs(phi(circle)) - 1.0)))
        step.check_within(f"{spec}: max ||phi| - 1| on the circle", deviation, upper=BOUNDARY_TOLERANCE)
        quotient = geometry.derivative_quotient(phi, QUOTIENT_RADIUS, step.context.grid.boundary_samples)
        step.check_within(f"{spec}: (1-|phi|^2)/(1-|z|^2) at |z|={QUOTIENT_RADIUS}", quotient,
                          upper=geometry.blaschke_bound(phi.data))
        radii = 1.0 - 2.0 ** -np.arange(8, 13, dtype=float)
        minima = geometry.boundary_modulus_profile(phi, radii, step.context.grid.boundary_samples)
        step.check_true(f"{spec}: min |phi| > 1 - 10(1-r) near the circle",
                        bool(np.all(minima > 1.0 - 10.0 * (1.0 - radii))), [float(m) for m in minima])
    affine = SpecParser.parse_map("poly:0.5,0.5", self_map=True)
    dip = float(geometry.boundary_modulus_profile(affine, [0.99], step.context.grid.boundary_samples)[0])
    step.check_within("(1+z)/2: min |phi| at r=0.99", dip, upper=0.01)


def box_additivity(step: VerificationStep):
    ctx = step.context
    rho = 1.0 - 2.0 * np.pi / ADDITIVITY_BOXES
    mu = Measure(label="density:abs2", density=lambda z: np.abs(z) ** 2, radial=True)
    centers = rho * np.exp(2j * np.pi * np.arange(ADDITIVITY_BOXES) / ADDITIVITY_BOXES)
    total = float(sum(ctx.quadrature.measure_of_region(mu, CarlesonBox(complex(c))) for c in centers))
    annulus = (1.0 - rho ** 4) / 2.0
    step.check_within(f"{ADDITIVITY_BOXES} boxes tiling |z| >= {rho:.4f}: relative error",
                      abs(total - annulus) / annulus, upper=ADDITIVITY_TOLERANCE)


def refinement_convergence(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    weight = profile.source
    tf = ctx.spaces.make_test_function(profile, 0.9, 2.0)
    integrands = {
        "|1+z|^2 omega": lambda z: np.abs(1.0 + z) ** 2 * weight(z),
        "|F_0.9(z^2)|^2 omega": lambda z: np.abs(ctx.spaces.eval_F(tf, z * z)) ** 2 * weight(z),
    }
    top = max(ctx.grid.quad_levels, REFINEMENT_START + 2)
    for name, f in integrands.items():
        errors, values = [], []
        for J in range(REFINEMENT_START, top + 1):
            value, error = ctx.quadrature.integrate_disk(f, DiskQuadrature(J, ctx.grid.quad_order,
                                                                             ctx.grid.angular_base,
                                                                             ctx.grid.angular_cap))
            values.append(abs(value))
            errors.append(error)
        floor = 1e-13 * max(values)
        step.check_true(f"{name}: |value_J - value_J-1| nonincreasing for J={REFINEMENT_START}..{top}",
                        bool(np.all(np.diff(errors) <= floor)), errors)


def pushforward_substitution(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    base = Measure(label=f"warea:{REGULAR}", density=profile.source, profile=profile, radial=True)
    u = SpecParser.parse_map("poly:0.5,0.5")
    phi = SpecParser.parse_map("poly:0,0,1", self_map=True)
    push = PushforwardSpec(u, phi, base, 2.0)
    quad = ctx.quadrature.disk_quadrature()
    cloud = ctx.quadrature.pushforward_cloud(push)
    weight = profile.source
    tests = {
        "1": lambda w: np.ones(np.shape(w)),
        "|w|^2": lambda w: np.abs(w) ** 2,
        "Re w": lambda w: np.real(w),
        "cos(3 Im w)": lambda w: np.cos(3.0 * np.imag(w)),
        "1/(2-w) real part": lambda w: np.real(1.0 / (2.0 - w)),
    }
    for name, g in tests.items():
        pulled, _ = ctx.quadrature.integrate_disk(lambda z: g(phi(z)) * push.weight_factor(z), quad, weight=weight)
        pushed = cloud.integrate(g)
        # integrals of |g| floor the scale where g d nu cancels
        scale = max(abs(float(np.real(pulled))), cloud.integrate(lambda w: np.abs(g(w))))
        step.check_within(f"integral of {name} d nu: relative substitution error",
                          abs(pushed - float(np.real(pulled))) / scale, upper=SUBSTITUTION_TOLERANCE)


def build(manager, context):
    manager.add_step(CheckStep("Carleson box nesting", context, box_nesting))
    manager.add_step(CheckStep("Finite Blaschke products near the circle", context, blaschke_boundary))
    manager.add_step(CheckStep("Additivity of box measures", context, box_additivity))
    manager.add_step(CheckStep("Refinement convergence of the disk rule", context, refinement_convergence))
    manager.add_step(CheckStep("Pushforward substitution identity", context, pushforward_substitution))
