"""
Interface for radial weight families.
"""
from abc import ABC, abstractmethod
from typing import Dict, Optional

import numpy as np


class WeightLaw(ABC):
    """Interface for a radial weight family evaluated on [0, 1).

    Every family is also described in the boundary coordinate
    t = log(e/(1-r)), where the integrand of omega_hat becomes
    h(t) = omega(1 - e^{1-t}) e^{1-t}.
    """

    tag: str = ""

    @property
    @abstractmethod
    def params(self) -> Dict[str, float]:
        """Family parameters in canonical order."""
        pass

    @abstractmethod
    def density(self, r: np.ndarray) -> np.ndarray:
        """Evaluate omega(r) for r in [0, 1)."""
        pass

    @abstractmethod
    def boundary_density(self, t: np.ndarray) -> np.ndarray:
        """Evaluate h(t) for t >= 1."""
        pass

    @abstractmethod
    def tail_mass(self, t: float) -> float:
        """Integral of h over [t, infinity)."""
        pass

    def log_boundary_density(self, t: np.ndarray) -> np.ndarray:
        """log h(t); families override it where h underflows deep in the tail."""
        with np.errstate(divide="ignore"):
            return np.log(self.boundary_density(t))

    def tail_ratio(self, t: float) -> float:
        """tail_mass(t) / h(t)."""
        h = float(self.boundary_density(t))
        return self.tail_mass(t) / h if h > 0 else 0.0

    def breakpoints(self) -> np.ndarray:
        """Kinks of h in the boundary coordinate."""
        return np.empty(0)

    def closed_hat(self, r: np.ndarray) -> Optional[np.ndarray]:
        """Closed form of omega_hat, when the family has one."""
        return None

    def closed_moments(self, n: np.ndarray) -> Optional[np.ndarray]:
        """Closed form of the moments omega_n, when the family has one."""
        return None
