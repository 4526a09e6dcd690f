"""
Kernel suite: test-function sizes, the reproducing kernel against its
closed form, monomial orthogonality and the Taylor-coefficient operators.
"""
import numpy as np
from scipy.special import gammaln

from app.core.services.space_service import binomial_kernel
from app.core.verification.scenarios import KERNEL_ALPHAS, REGULAR
from app.core.verification.step import CheckStep, VerificationStep
from app.domain.models import TaylorPolynomial, default_gamma

SEED = 1729
TEST_FUNCTION_EXPONENTS = (1.0, 2.0, 4.0)
KERNEL_RHO = 0.8
KERNEL_TOLERANCE = 1e-6
KERNEL_POINT = 0.9 * np.exp(0.3j)
REPRODUCING_POINT = 0.5 * np.exp(-1.1j)
REPRODUCING_DEGREE = 10
ORTHOGONALITY_DEGREE = 20
ORTHOGONALITY_TOLERANCE = 1e-10
KN_POLYNOMIALS = 20
KN_DEGREE = 30
KN_QUADRATURE_POLYNOMIALS = 4
KN_QUADRATURE_ORDERS = (1, 3, 10, 30)
ROUNDOFF_ULPS = 64


def _sqstd(step: VerificationStep, alpha: float):
    return step.context.profile(f"sqstd:alpha={alpha:g}")


def norm_constant(gamma: float) -> float:
    """Size 4 pi Gamma(gamma-1)/Gamma((gamma+1)/2)^2 of ||F_a||^p near the circle for the regular weight."""
    return float(4.0 * np.pi * np.exp(gammaln(gamma - 1.0) - 2.0 * gammaln((gamma + 1.0) / 2.0)))


def test_function_sizes(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    points, level = ctx.operators.a_points()
    norm_lo, norm_hi = ctx.brackets.test_norm
    point_lo, point_hi = ctx.brackets.test_point
    for p in TEST_FUNCTION_EXPONENTS:
        gamma = default_gamma(p)
        norms = []
        for rho in np.unique(np.abs(points)):
            tf = ctx.spaces.make_test_function(profile, complex(rho), p, gamma)
            norms.append(ctx.spaces.test_function_norm(profile, tf))
        upper = norm_hi * norm_constant(gamma) ** (1.0 / p)
        step.check_within(f"p={p:g}: min ||F_a||", min(norms), norm_lo, upper)
        step.check_within(f"p={p:g}: max ||F_a||", max(norms), norm_lo, upper)

        values = []
        for a in points[level >= 1]:
            rho, width = abs(a), 1.0 - abs(a)
            radii = np.array([rho, 0.5 * (1.0 + rho), 1.0 - width / 8.0])
            offsets = np.array([-0.5, 0.0, 0.5]) * width
            z = (radii[:, None] * np.exp(1j * (np.angle(a) + offsets))[None, :]).ravel()
            tf = ctx.spaces.make_test_function(profile, a, p, gamma)
            values.append(np.abs(ctx.spaces.eval_F(tf, z)) * tf.box_mass ** (1.0 / p))
        values = np.concatenate(values)
        # (1-|a|^2)/|1 - conj(a) z| <= 1 + |a| on S(a)
        upper = point_hi * 2.0 ** ((gamma + 1.0) / p)
        step.check_within(f"p={p:g}: min |F_a(z)| omega(S(a))^(1/p) on S(a)", float(np.min(values)), point_lo, upper)
        step.check_within(f"p={p:g}: max |F_a(z)| omega(S(a))^(1/p) on S(a)", float(np.max(values)), point_lo, upper)


def kernel_closed_form(step: VerificationStep):
    ctx = step.context
    zeta = (KERNEL_RHO / abs(KERNEL_POINT)) * np.exp(2j * np.pi * np.arange(16) / 16) * np.linspace(0.0, 1.0, 16)
    for alpha in KERNEL_ALPHAS:
        profile = _sqstd(step, alpha)
        ks = ctx.spaces.kernel_series(profile, KERNEL_POINT, rho=KERNEL_RHO, tol=1e-12)
        series = ctx.spaces.kernel_eval(ks, zeta)
        exact = binomial_kernel(alpha, zeta * np.conj(KERNEL_POINT))
        error = float(np.max(np.abs(series - exact) / np.abs(exact)))
        step.check_within(f"alpha={alpha:g}: kernel vs (alpha+1)/(1-x)^(alpha+2)", error, upper=KERNEL_TOLERANCE)


def reproducing_property(step: VerificationStep):
    ctx = step.context
    rng = np.random.default_rng(SEED)
    for alpha in KERNEL_ALPHAS:
        profile = _sqstd(step, alpha)
        ks = ctx.spaces.kernel_series(profile, REPRODUCING_POINT, tol=1e-14)
        coefficients = rng.normal(size=REPRODUCING_DEGREE + 1) + 1j * rng.normal(size=REPRODUCING_DEGREE + 1)
        f = TaylorPolynomial(coefficients)
        value = ctx.spaces.inner_product(f, lambda z: ctx.spaces.kernel_eval(ks, z), profile)
        exact = complex(f(REPRODUCING_POINT))
        step.check_within(f"alpha={alpha:g}: |<f, B_z> - f(z)| / |f(z)|", abs(value - exact) / abs(exact),
                          upper=KERNEL_TOLERANCE)


def monomial_orthogonality(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    quad = ctx.quadrature.disk_quadrature()
    worst = 0.0
    for j in range(ORTHOGONALITY_DEGREE + 1):
        for k in range(j):
            value = ctx.spaces.inner_product(lambda z: z ** j, lambda z: z ** k, profile, quad)
            worst = max(worst, abs(value))
    step.check_within(f"max |<z^j, z^k>| for j != k <= {ORTHOGONALITY_DEGREE}", worst, upper=ORTHOGONALITY_TOLERANCE)


def kn_boundedness(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    rng = np.random.default_rng(SEED + 1)
    polynomials = []
    for _ in range(KN_POLYNOMIALS):
        degree = int(rng.integers(1, KN_DEGREE + 1))
        polynomials.append(TaylorPolynomial(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)))

    worst = 0.0
    for f in polynomials:
        norm = ctx.spaces.polynomial_norm_sq(f, profile)
        for n in range(1, KN_DEGREE + 1):
            worst = max(worst, np.sqrt(ctx.spaces.polynomial_norm_sq(ctx.spaces.apply_Kn(f, n, 2.0), profile) / norm))
    step.check_within("p=2: sup ||K_n f|| / ||f||", worst, upper=ctx.brackets.kn_constant)

    quad = ctx.quadrature.disk_quadrature()
    for p in (1.0, 4.0):
        worst = 0.0
        for f in polynomials[:KN_QUADRATURE_POLYNOMIALS]:
            norm = ctx.spaces.norm_Ap(f, profile, p, quad)
            for n in KN_QUADRATURE_ORDERS:
                worst = max(worst, ctx.spaces.norm_Ap(ctx.spaces.apply_Kn(f, n, p), profile, p, quad) / norm)
        step.check_within(f"p={p:g}: sup ||K_n f|| / ||f||", worst, upper=ctx.brackets.kn_constant)


def kernel_tail_bound(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    z = 0.7 * np.exp(0.4j)
    zeta = np.exp(2j * np.pi * np.arange(64) / 64) * 0.999
    N = 32
    while N <= ctx.grid.kernel_N // 2:
        coarse = ctx.spaces.kernel_series(profile, z, N=N)
        fine = ctx.spaces.kernel_series(profile, z, N=2 * N)
        reference = ctx.spaces.kernel_eval(fine, zeta)
        change = float(np.max(np.abs(ctx.spaces.kernel_eval(coarse, zeta) - reference)))
        roundoff = ROUNDOFF_ULPS * np.finfo(float).eps * float(np.max(np.abs(reference)))
        step.check_within(f"N={N}: change on doubling vs tail bound", change, upper=coarse.tail_bound + roundoff)
        N *= 4


def remainder_bound(step: VerificationStep):
    ctx = step.context
    profile = ctx.profile(REGULAR)
    for n in (4, 16):
        sizes = ctx.spaces.remainder_kernel_bound(profile, 0.5, n, 0.6, p=1.0)
        step.check_within(f"n={n}: coefficient sum of R_n B_w vs printed bound", sizes["coefficient_sum"],
                          upper=sizes["printed_bound"])
        step.check_within(f"n={n}: sampled sup of R_n B_w vs printed bound", sizes["sampled_sup"],
                          upper=sizes["printed_bound"])


def build(manager, context):
    manager.add_step(CheckStep("Test-function sizes", context, test_function_sizes))
    manager.add_step(CheckStep("Reproducing kernel closed form", context, kernel_closed_form))
    manager.add_step(CheckStep("Reproducing property on polynomials", context, reproducing_property))
    manager.add_step(CheckStep("Monomial orthogonality under disk quadrature", context, monomial_orthogonality))
    manager.add_step(CheckStep("Uniform boundedness of K_n", context, kn_boundedness))
    manager.add_step(CheckStep("Kernel tail bound", context, kernel_tail_bound))
    manager.add_step(CheckStep("Remainder of the kernel", context, remainder_bound))
