"""
Space service: A^p_omega norms, test functions, reproducing kernels and the
Taylor-coefficient operators K_n, R_n.
"""
import logging
from typing import Callable, Dict, Optional

import numpy as np

from app.core.quadrature import DiskQuadrature
from app.domain.errors import SpecError, TailNotControlled
from app.domain.models import GridConfig, KernelSeries, TaylorPolynomial, TestFunction, WeightProfile, default_gamma

HYPERGEOMETRIC_TERMS = 200
BOUNDARY_SAMPLES = 4096


class SpaceService:
    """Service for elements and operators of the weighted Bergman spaces."""

    def __init__(self, grid: Optional[GridConfig] = None):
        self.grid = grid or GridConfig()
        self.logger = logging.getLogger(__name__)
        self._norm_cache: Dict[tuple, float] = {}

    # test functions

    def make_test_function(self, profile: WeightProfile, a: complex, p: float,
                           gamma: Optional[float] = None) -> TestFunction:
        gamma = default_gamma(p) if gamma is None else gamma
        return TestFunction(complex(a), float(p), float(gamma), float(profile.box_mass(a)[0]))

    def eval_F(self, tf: TestFunction, z) -> np.ndarray:
        """F_{a,p,gamma}(z) on the principal branch."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= 1):
            raise SpecError("Test functions are evaluated inside the unit disk")
        a = tf.a
        base = (1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z)
        return np.power(base, tf.exponent) * tf.box_mass ** (-1.0 / tf.p)

    def test_function_norm(self, profile: WeightProfile, tf: TestFunction) -> float:
        """Exact ||F_{a,p,gamma}||_{A^p_omega} through the angular mean of |1 - conj(a) z|^{-(gamma+1)}.

        The mean is 2F1(lam, lam; 1; x) = (1-x)^{-gamma} G(x) with lam = (gamma+1)/2 and
        G(x) = sum ((1-lam)_k / k!)^2 x^k, leaving one radial integral.
        """
        return float((self.power_mean(profile, abs(tf.a), tf.gamma) / tf.box_mass) ** (1.0 / tf.p))

    def power_mean(self, profile: WeightProfile, rho: float, gamma: float) -> float:
        """Integral of ((1-rho^2)/|1 - rho z|)^{gamma+1} omega dA, cached per (profile, rho, gamma)."""
        key = (id(profile), round(float(rho), 15), float(gamma))
        if key not in self._norm_cache:
            self._norm_cache[key] = self._power_mean(profile, float(rho), float(gamma))
        return self._norm_cache[key]

    def _power_mean(self, profile: WeightProfile, rho: float, gamma: float) -> float:
        if rho == 0:
            return float(2.0 * profile.moment(1))
        series = _euler_coefficients((gamma + 1.0) / 2.0, HYPERGEOMETRIC_TERMS)
        one_minus_rho2 = (1.0 - rho) * (1.0 + rho)

        def integrand(s, x):
            gap = (1.0 - rho + rho * x) * (1.0 + rho * s)
            return 2.0 * s * one_minus_rho2 * (one_minus_rho2 / gap) ** gamma * np.polynomial.polynomial.polyval(
                (rho * s) ** 2, series)

        return float(profile.engine.tail_integral(integrand, np.zeros(1))[0])

    # norms and inner products

    def norm_Ap(self, f: Callable, profile: WeightProfile, p: float,
                quad: Optional[DiskQuadrature] = None) -> float:
        """(integral of |f|^p omega dA)^{1/p}."""
        if p <= 0:
            raise SpecError(f"Exponent p must be positive, got {p}")
        quad = quad or DiskQuadrature.from_grid(self.grid)
        value, _ = quad.integrate(lambda z: np.abs(f(z)) ** p, profile.source)
        return float(np.real(value)) ** (1.0 / p)

    def inner_product(self, f: Callable, g: Callable, profile: WeightProfile,
                      quad: Optional[DiskQuadrature] = None) -> complex:
        """<f, g> = integral of f conj(g) omega dA."""
        quad = quad or DiskQuadrature.from_grid(self.grid)
        value, _ = quad.integrate(lambda z: f(z) * np.conj(g(z)), profile.source)
        return complex(value)

    def polynomial_norm_sq(self, f: TaylorPolynomial, profile: WeightProfile) -> float:
        """||f||^2 in A^2_omega from the moments: sum |f_k|^2 2 omega_{2k+1}."""
        k = np.arange(len(f.coefficients))
        moments = profile.moments_upto(2 * int(k[-1]) + 1)
        return float(np.sum(np.abs(f.coefficients) ** 2 * 2.0 * moments[2 * k + 1]))

    # reproducing kernels

    def kernel_coefficients(self, profile: WeightProfile, N: int) -> np.ndarray:
        """1/(2 omega_{2k+1}) for k = 0..N."""
        moments = profile.moments_upto(2 * N + 1)
        return 1.0 / (2.0 * moments[1::2][: N + 1])

    def kernel_series(self, profile: WeightProfile, z: complex, N: Optional[int] = None,
                      rho: Optional[float] = None, tol: Optional[float] = None) -> KernelSeries:
        """Truncated B_z with a rigorous bound on the dropped terms for |zeta conj(z)| <= rho.

        The moments are log-convex, so 1/(2 omega_{2k+1}) grows at most
        geometrically with the ratio q of its last two terms; the tail is then
        bounded by c_N rho^{N+1} q/(1 - rho q). With `tol`, N doubles until
        the bound falls below tol, up to kernel_N_max.
        """
        z = complex(z)
        rho = abs(z) if rho is None else float(rho)
        if not 0.0 <= rho < 1.0:
            raise TailNotControlled(f"Kernel series needs |zeta conj(z)| <= rho < 1, got rho={rho}")
        N = N or self.grid.kernel_N
        while True:
            coefficients = self.kernel_coefficients(profile, N)
            bound = _tail_bound(coefficients, rho, N)
            if tol is None or bound <= tol:
                break
            if 2 * N > self.grid.kernel_N_max:
                raise TailNotControlled(
                    f"Kernel tail bound {bound:.3g} above {tol:.3g} at N={N} (rho={rho:.6g})")
            N *= 2
        if not np.isfinite(bound):
            raise TailNotControlled(f"Kernel tail is not summable at rho={rho:.6g} with N={N}")
        return KernelSeries(z=z, N=N, coefficients=coefficients, rho=rho, tail_bound=bound)

    def kernel_eval(self, ks: KernelSeries, zeta) -> np.ndarray:
        zeta = np.asarray(zeta, dtype=complex)
        x = zeta * np.conj(ks.z)
        if np.any(np.abs(x) > ks.rho + 1e-12):
            raise TailNotControlled(f"|zeta conj(z)| exceeds the series radius {ks.rho:.6g}")
        return np.polynomial.polynomial.polyval(x, ks.coefficients)

    def kernel_A1_norm(self, profile: WeightProfile, z: complex, tol: float = 1e-12) -> float:
        """||B_z||_{A^1_omega}: FFT over angles per radius, then the radial integral."""
        rho = abs(complex(z))
        c0 = float(self.kernel_coefficients(profile, 0)[0])
        if rho == 0:
            return float(c0 * 2.0 * profile.moment(1))
        ks = self.kernel_series(profile, rho, rho=rho, tol=tol * c0)
        samples = _fft_size(ks.N + 1)
        log_c = np.log(ks.coefficients)
        k = np.arange(ks.N + 1)

        def circle_mean(s: np.ndarray) -> np.ndarray:
            out = np.empty(s.shape)
            for start in range(0, s.size, 128):
                block = s[start:start + 128]
                terms = np.exp(log_c[None, :] + k[None, :] * np.log(rho * block)[:, None])
                values = np.fft.ifft(terms, n=samples, axis=1) * samples
                out[start:start + 128] = np.mean(np.abs(values), axis=1)
            return out

        def integrand(s, x):
            flat = np.ravel(s)
            return 2.0 * np.reshape(flat * circle_mean(flat), np.shape(s))

        return float(profile.engine.tail_integral(integrand, np.zeros(1))[0])

    # Taylor-coefficient operators

    def apply_Kn(self, f: TaylorPolynomial, n: int, p: float) -> TaylorPolynomial:
        """Hard truncation at degree n for p > 1, Cesaro means for p = 1."""
        if n < 0:
            raise SpecError(f"K_n needs n >= 0, got {n}")
        coefficients = np.zeros(n + 1, dtype=complex)
        count = min(len(f.coefficients), n + 1)
        coefficients[:count] = f.coefficients[:count]
        if p == 1:
            coefficients *= 1.0 - np.arange(n + 1) / (n + 1.0)
        elif p < 1:
            raise SpecError(f"K_n is defined for p >= 1, got p={p}")
        return TaylorPolynomial(coefficients)

    def apply_Rn(self, f: TaylorPolynomial, n: int, p: float) -> TaylorPolynomial:
        return f - self.apply_Kn(f, n, p)

    def remainder_kernel_bound(self, profile: WeightProfile, w: complex, n: int, r: float,
                               p: float = 1.0, tol: float = 1e-14) -> Dict[str, float]:
        """Sizes of R_n B_w on the closed disk for |w| <= r.

        Returns the coefficient sum sum |(R_n B_w)_k|, which bounds the sup, the right-hand
        side (1/n) sum k r^{k-1} c_k + sum_{k>n} r^k c_k, and the sampled sup
        over the unit circle.
        """
        if not (abs(w) <= r < 1 and n >= 1):
            raise SpecError(f"Remainder bound needs |w| <= r < 1 and n >= 1, got |w|={abs(w)}, r={r}, n={n}")
        K = _series_length(r, tol, n, self.grid.kernel_N_max)
        c = self.kernel_coefficients(profile, K)
        k = np.arange(K + 1)
        if p == 1:
            damping = np.where(k <= n, k / (n + 1.0), 1.0)
        else:
            damping = np.where(k <= n, 0.0, 1.0)
        remainder = damping * c * np.conj(complex(w)) ** k
        coefficient_sum = float(np.sum(np.abs(remainder)) + _tail_bound(c, abs(complex(w)), K))
        printed = float(np.sum(k[1:] * r ** (k[1:] - 1) * c[1:]) / n + np.sum((r ** k * c)[n + 1:]))
        samples = max(BOUNDARY_SAMPLES, _fft_size(K + 1))
        values = np.fft.ifft(remainder, n=samples) * samples
        sampled = float(np.max(np.abs(values)))
        return {"coefficient_sum": coefficient_sum, "printed_bound": printed, "sampled_sup": sampled,
                "terms": int(K + 1)}


def _euler_coefficients(lam: float, terms: int) -> np.ndarray:
    """((1-lam)_k / k!)^2 for k < terms; finite when 1-lam is a nonpositive integer."""
    a = 1.0 - lam
    coefficients = np.empty(terms)
    coefficients[0] = 1.0
    for k in range(1, terms):
        coefficients[k] = coefficients[k - 1] * ((a + k - 1.0) / k) ** 2
    return coefficients


def _tail_bound(coefficients: np.ndarray, rho: float, N: int) -> float:
    if rho == 0:
        return 0.0
    if N == 0:
        return float("inf")
    q = coefficients[N] / coefficients[N - 1]
    if rho * q >= 1:
        return float("inf")
    return float(coefficients[N] * rho ** (N + 1) * q / (1.0 - rho * q))


def _series_length(r: float, tol: float, n: int, cap: int) -> int:
    if r == 0:
        return n + 1
    length = int(np.ceil(np.log(tol) / np.log(r))) + 64
    # polynomial growth of the coefficients
    length = int(length * 1.5)
    return int(min(max(length, n + 1), cap))


def _fft_size(count: int) -> int:
    return int(2 ** np.ceil(np.log2(max(count, 2))))


def binomial_kernel(alpha: float, x) -> np.ndarray:
    """(alpha+1)/(1-x)^{alpha+2}, the kernel of (1-|z|^2)^alpha."""
    return (alpha + 1.0) / np.power(1.0 - np.asarray(x, dtype=complex), alpha + 2.0)

