"""
Domain models for elements of the Bergman spaces A^p_omega.
"""
from dataclasses import dataclass

import numpy as np

from app.domain.errors import SpecError


def default_gamma(p: float) -> float:
    """Shape parameter giving the test-function exponent (gamma+1)/p >= 4."""
    return max(4.0 * p - 1.0, 9.0)


@dataclass(frozen=True)
class TestFunction:
    """F_{a,p,gamma}(z) = ((1-|a|^2)/(1-conj(a) z))^{(gamma+1)/p} omega(S(a))^{-1/p}."""
    __test__ = False

    a: complex
    p: float
    gamma: float
    box_mass: float

    def __post_init__(self):
        if self.p <= 0:
            raise SpecError(f"Exponent p must be positive, got {self.p}")
        if self.box_mass <= 0:
            raise SpecError("Test function needs a positive box mass")
        if self.gamma < self.gamma_min:
            raise SpecError(f"gamma={self.gamma} is below the minimum {self.gamma_min} for p={self.p}")

    @property
    def gamma_min(self) -> float:
        return 4.0 * self.p - 1.0

    @property
    def exponent(self) -> float:
        return (self.gamma + 1.0) / self.p


@dataclass(frozen=True, eq=False)
class KernelSeries:
    """Truncated series B_z(zeta) = sum_{k<=N} (zeta conj(z))^k / (2 omega_{2k+1})."""
    z: complex
    N: int
    coefficients: np.ndarray
    rho: float
    tail_bound: float


class TaylorPolynomial:
    """Polynomial sum f_k z^k stored by its Taylor coefficients."""

    def __init__(self, coefficients):
        coefficients = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        if coefficients.ndim != 1:
            raise SpecError("Taylor coefficients must be one-dimensional")
        self.coefficients = coefficients

    @property
    def degree(self) -> int:
        nonzero = np.nonzero(self.coefficients)[0]
        return int(nonzero[-1]) if nonzero.size else 0

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coefficients)

    def __sub__(self, other: "TaylorPolynomial") -> "TaylorPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return TaylorPolynomial(_pad(self.coefficients, size) - _pad(other.coefficients, size))

    def __eq__(self, other):
        if not isinstance(other, TaylorPolynomial):
            return NotImplemented
        size = max(len(self.coefficients), len(other.coefficients))
        return bool(np.allclose(_pad(self.coefficients, size), _pad(other.coefficients, size), rtol=0, atol=1e-14))

    def __repr__(self):
        return f"TaylorPolynomial(degree={self.degree})"


def _pad(coefficients: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=complex)
    out[: len(coefficients)] = coefficients
    return out
