"""
Domain models for analytic symbols and multipliers on the unit disk.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from app.domain.errors import MapValidationError

SELF_MAP_SAMPLES = 4096
SELF_MAP_SLACK = 1e-12


def _boundary_circle(samples: int = SELF_MAP_SAMPLES) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(samples) / samples)


@dataclass(frozen=True)
class BlaschkeData:
    """Counts and zero moduli of a finite Blaschke product."""
    m: int
    n: int
    c: float
    d: float

    def __post_init__(self):
        if not 0.0 <= self.d <= self.c < 1.0:
            raise MapValidationError(f"Blaschke data needs 0 <= d <= c < 1, got d={self.d}, c={self.c}")


class AnalyticMap(ABC):
    """Base class for analytic functions evaluated on arrays of disk points."""

    spec: str = ""

    @abstractmethod
    def __call__(self, z) -> np.ndarray:
        pass

    @property
    def degree(self) -> Optional[int]:
        """Polynomial degree, or None when the map is not a polynomial."""
        return None

    @property
    def is_polynomial(self) -> bool:
        return self.degree is not None

    def boundary_sup(self, samples: int = SELF_MAP_SAMPLES) -> float:
        return float(np.max(np.abs(self(_boundary_circle(samples)))))

    def __repr__(self):
        return f"{type(self).__name__}({self.spec})"


class BlaschkeProduct(AnalyticMap):
    """z^m times prod (|a_k|/a_k)(a_k - z)/(1 - conj(a_k) z), times a unimodular constant."""

    def __init__(self, m: int, zeros: Sequence[complex] = (), unimodular: complex = 1.0, spec: str = ""):
        zeros = [complex(a) for a in zeros]
        if m < 0:
            raise MapValidationError(f"Monomial power must be nonnegative, got {m}")
        if any(abs(a) >= 1 for a in zeros):
            raise MapValidationError("Blaschke zeros must lie in the open unit disk")
        if any(a == 0 for a in zeros):
            raise MapValidationError("Zeros at the origin belong in the monomial power m")
        if abs(abs(complex(unimodular)) - 1.0) > 1e-12:
            raise MapValidationError("Blaschke constant factor must be unimodular")
        if m == 0 and not zeros:
            raise MapValidationError("A Blaschke product needs m > 0 or at least one zero")
        self.m = int(m)
        self.zeros = zeros
        self.unimodular = complex(unimodular)
        self.spec = spec or f"blaschke:m={m}"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        value = self.unimodular * z ** self.m
        for a in self.zeros:
            value = value * (abs(a) / a) * (a - z) / (1 - np.conj(a) * z)
        return value

    @property
    def data(self) -> BlaschkeData:
        moduli = [abs(a) for a in self.zeros]
        return BlaschkeData(
            m=self.m,
            n=len(self.zeros),
            c=max(moduli) if moduli else 0.0,
            d=min(moduli) if moduli else 0.0,
        )

    @property
    def degree(self) -> Optional[int]:
        return self.m if not self.zeros else None


class PolynomialMap(AnalyticMap):
    """Polynomial with coefficients c_0, c_1, ... in increasing degree."""

    def __init__(self, coefficients: Sequence[complex], self_map: bool = False, spec: str = ""):
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.ndim != 1 or coefficients.size == 0:
            raise MapValidationError("Polynomial needs at least one coefficient")
        nonzero = np.nonzero(coefficients)[0]
        top = int(nonzero[-1]) if nonzero.size else 0
        self.coefficients = coefficients[: top + 1]
        self.spec = spec or "poly:" + ",".join(_format_complex(c) for c in self.coefficients)
        if self_map:
            sup = self.boundary_sup()
            if sup > 1.0 + SELF_MAP_SLACK:
                raise MapValidationError(f"{self.spec} does not map D into D (boundary sup {sup:.6g})")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polynomial.polynomial.polyval(z, self.coefficients)

    @property
    def degree(self) -> Optional[int]:
        return len(self.coefficients) - 1


class AffineMap(PolynomialMap):
    """c0 + c1 z."""

    def __init__(self, c0: complex, c1: complex, self_map: bool = False, spec: str = ""):
        super().__init__([c0, c1], self_map=self_map, spec=spec or f"affine:{_format_complex(c0)},{_format_complex(c1)}")


class ReciprocalPower(AnalyticMap):
    """u_w(z) = (1/(1 - conj(w) z))^alpha on the principal branch."""

    def __init__(self, w: complex, alpha: float, spec: str = ""):
        if abs(w) >= 1:
            raise MapValidationError("Reciprocal power needs |w| < 1")
        if alpha <= 0:
            raise MapValidationError("Reciprocal power needs alpha > 0")
        self.w = complex(w)
        self.alpha = float(alpha)
        self.spec = spec or f"recip:w={_format_complex(w)};alpha={alpha:g}"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.power(1.0 / (1.0 - np.conj(self.w) * z), self.alpha)

    def sup_norm(self) -> float:
        """||u_w||_inf = (1 - |w|)^{-alpha}, attained at w/|w|."""
        return (1.0 - abs(self.w)) ** (-self.alpha)


class Composition(AnalyticMap):
    """maps[0] o maps[1] o ... o maps[-1]."""

    def __init__(self, maps: List[AnalyticMap], spec: str = ""):
        if not maps:
            raise MapValidationError("Composition needs at least one map")
        self.maps = list(maps)
        self.spec = spec or "compose:" + "|".join(m.spec for m in self.maps)

    def __call__(self, z):
        value = np.asarray(z, dtype=complex)
        for f in reversed(self.maps):
            value = f(value)
        return value

    @property
    def degree(self) -> Optional[int]:
        total = 1
        for f in self.maps:
            if f.degree is None:
                return None
            total *= f.degree
        return total


def _format_complex(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}i"
