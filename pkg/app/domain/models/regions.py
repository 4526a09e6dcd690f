"""
Domain models for the disk regions used by the Carleson-type functionals.
"""
from dataclasses import dataclass

from app.domain.errors import SpecError


@dataclass(frozen=True)
class CarlesonBox:
    """S(a); the center a = 0 stands for the whole disk."""
    center: complex

    def __post_init__(self):
        if abs(self.center) >= 1:
            raise SpecError(f"Carleson box center must satisfy |a| < 1, got {self.center}")

    @property
    def is_whole_disk(self) -> bool:
        return self.center == 0

    @property
    def half_width(self) -> float:
        return (1.0 - abs(self.center)) / 2.0


WHOLE_DISK = CarlesonBox(0j)


@dataclass(frozen=True)
class PseudoDisk:
    """Delta(a, r) = {z : |(a - z)/(1 - conj(a) z)| < r}."""
    center: complex
    radius: float

    def __post_init__(self):
        if abs(self.center) >= 1:
            raise SpecError(f"Pseudo-disk center must satisfy |a| < 1, got {self.center}")
        if not 0.0 < self.radius < 1.0:
            raise SpecError(f"Pseudo-disk radius must lie in (0, 1), got {self.radius}")


@dataclass(frozen=True)
class StolzRegion:
    """Gamma(a) = {z : |arg z - arg a| < (1 - |z|/|a|)/2}."""
    vertex: complex

    def __post_init__(self):
        if self.vertex == 0 or abs(self.vertex) >= 1:
            raise SpecError(f"Stolz region needs 0 < |a| < 1, got {self.vertex}")


@dataclass(frozen=True)
class Tent:
    """T(a) = {z : a in Gamma(z)}."""
    vertex: complex

    def __post_init__(self):
        if self.vertex == 0 or abs(self.vertex) >= 1:
            raise SpecError(f"Tent needs 0 < |a| < 1, got {self.vertex}")
