"""
Domain models for positive measures on the disk and their pushforwards.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Tuple

import numpy as np

from app.domain.errors import SpecError
from app.domain.models.analytic_map import AnalyticMap

Density = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Measure:
    """Area density with respect to dA plus finitely many atoms.

    `profile` is set when the density is omega(|z|) for a profiled weight, so
    box and tent masses can use the exact radial integrals. `radial` marks
    densities depending on |z| only.
    """
    label: str
    density: Optional[Density] = None
    atoms: Tuple[Tuple[complex, float], ...] = ()
    profile: Any = None
    radial: bool = False

    def __post_init__(self):
        for point, mass in self.atoms:
            if mass < 0:
                raise SpecError(f"Atom mass must be nonnegative, got {mass} at {point}")
            if abs(point) >= 1:
                raise SpecError(f"Atom {point} lies outside the open unit disk")

    @property
    def atom_points(self) -> np.ndarray:
        return np.array([p for p, _ in self.atoms], dtype=complex)

    @property
    def atom_masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=float)

    @property
    def is_zero(self) -> bool:
        return self.density is None and not any(m > 0 for _, m in self.atoms)

    def evaluate_density(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.density is None:
            return np.zeros(z.shape)
        return np.asarray(self.density(z), dtype=float) * np.ones(z.shape)


@dataclass(frozen=True)
class PushforwardSpec:
    """nu(E) = integral over phi^{-1}(E) of |u|^q d(base)."""
    u: AnalyticMap
    phi: AnalyticMap
    base: Measure
    exponent: float = 2.0
    label: str = field(default="nu")

    def weight_factor(self, z) -> np.ndarray:
        return np.abs(self.u(z)) ** self.exponent
