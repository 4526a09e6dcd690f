"""
Interface for integration rules over the unit disk.
"""
from abc import ABC, abstractmethod
from typing import Callable, Tuple

import numpy as np

Integrand = Callable[[np.ndarray], np.ndarray]


class DiskIntegrator(ABC):
    """Interface for rules integrating against normalized area measure."""

    @abstractmethod
    def integrate(self, f: Integrand) -> Tuple[float, float]:
        """Return (value, error_estimate) of the integral of f dA."""
        pass
