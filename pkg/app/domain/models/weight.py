"""
Domain models for radial weights and their numerical profiles.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.domain.services.weight_law import WeightLaw


class WeightClass(Enum):
    """Classification outcome of the regularity ratio."""
    REGULAR = "regular"
    RAPIDLY_INCREASING = "rapidly_increasing"
    INCONCLUSIVE = "inconclusive"


class Weight:
    """Domain model representing a positive radial weight on the disk."""

    def __init__(self, spec: str, law: WeightLaw):
        self.spec = spec
        self.law = law

    @property
    def family(self) -> str:
        return self.law.tag

    @property
    def params(self) -> Dict[str, float]:
        return self.law.params

    def density(self, r) -> np.ndarray:
        return self.law.density(np.asarray(r, dtype=float))

    def __call__(self, z) -> np.ndarray:
        """Radial extension omega(|z|)."""
        return self.density(np.abs(np.asarray(z)))

    def __repr__(self):
        return f"Weight({self.spec})"


@dataclass(frozen=True)
class RadialGrid:
    """Dyadic analysis grid r = 1 - 2^{-j} refined with equispaced subpoints."""
    levels: int = 12
    subdivisions: int = 8

    @property
    def radii(self) -> np.ndarray:
        return self._build()[0]

    @property
    def level_index(self) -> np.ndarray:
        return self._build()[1]

    def _build(self) -> Tuple[np.ndarray, np.ndarray]:
        radii: List[float] = []
        index: List[int] = []
        for j in range(1, self.levels):
            left = 1.0 - 2.0 ** (-j)
            step = 2.0 ** (-j - 1) / self.subdivisions
            for k in range(self.subdivisions):
                radii.append(left + k * step)
                index.append(j)
        radii.append(1.0 - 2.0 ** (-self.levels))
        index.append(self.levels)
        return np.array(radii), np.array(index)

    @property
    def depth(self) -> float:
        return 1.0 - 2.0 ** (-self.levels)

    def describe(self) -> Dict[str, Any]:
        return {"levels": self.levels, "subdivisions": self.subdivisions}


@dataclass(frozen=True)
class TailConstants:
    """Tail-window estimates of liminf/limsup of the regularity ratio."""
    A: float
    B: float
    condition_ii: bool
    margin: float
    stable: bool

    def __iter__(self):
        return iter((self.A, self.B, self.condition_ii))


@dataclass(eq=False)
class WeightProfile:
    """Cached functionals and classification constants of a weight.

    Immutable after `WeightService.classify` returns it; the evaluators
    delegate to the radial integration engine stored in `engine`.
    """
    source: Weight
    grid: RadialGrid
    engine: Any
    moments: np.ndarray
    reg_ratio_bounds: Tuple[float, float]
    dd_constant: float
    A: float
    B: float
    tail_stable: bool
    classification: WeightClass
    delta: float = 0.5
    a_exp: Optional[float] = None
    b_exp: Optional[float] = None
    tail_epsilon: Optional[float] = None
    thm6_a: Optional[float] = None
    thm6_b: Optional[float] = None
    ratio_table: Dict[str, List[float]] = field(default_factory=dict)
    deep: Dict[str, List[float]] = field(default_factory=dict)

    @property
    def weight(self) -> Weight:
        return self.source

    @property
    def regular(self) -> bool:
        return self.classification is WeightClass.REGULAR

    @property
    def rapidly_increasing(self) -> bool:
        return self.classification is WeightClass.RAPIDLY_INCREASING

    @property
    def doubling(self) -> bool:
        return bool(np.isfinite(self.dd_constant))

    def hat(self, r) -> np.ndarray:
        return self.engine.hat(r)

    def star(self, r) -> np.ndarray:
        return self.engine.star(r)

    def moment(self, n: int) -> float:
        if 0 <= n < len(self.moments):
            return float(self.moments[n])
        return float(self.engine.moments(n)[n])

    def moments_upto(self, n: int) -> np.ndarray:
        """Moments omega_0..omega_n, reusing the cached prefix."""
        if n < len(self.moments):
            return self.moments[: n + 1]
        return self.engine.moments(n)

    def box_mass(self, a) -> np.ndarray:
        return self.engine.box_mass(a)

    def tent_mass(self, a) -> np.ndarray:
        return self.engine.tent_mass(a)

    def __repr__(self):
        return f"WeightProfile({self.source.spec}, {self.classification.value})"
