"""
Disk geometry: Moebius maps, region membership and region areas.

Membership predicates are vectorized over z; areas are normalized so the
whole disk has area 1.
"""
import logging
from typing import Sequence, Tuple

import numpy as np

from app.domain.errors import SpecError
from app.domain.models.analytic_map import AnalyticMap, BlaschkeData
from app.domain.models.regions import CarlesonBox, PseudoDisk, StolzRegion, Tent

logger = logging.getLogger(__name__)

BOUNDARY_SAMPLES = 4096


def mobius(a: complex, z) -> np.ndarray:
    """(a - z)/(1 - conj(a) z); an involution of the disk swapping 0 and a."""
    z = np.asarray(z, dtype=complex)
    return (a - z) / (1.0 - np.conj(a) * z)


def angle_between(z, a: complex) -> np.ndarray:
    """|arg z - arg a| in [0, pi], taken as 0 when z = 0."""
    return np.abs(np.angle(np.asarray(z, dtype=complex) * np.conj(a)))


def in_carleson_box(a: complex, z) -> np.ndarray:
    """z in S(a): |a| <= |z| < 1 and |arg(z conj(a))| <= (1-|a|)/2; S(0) is the disk."""
    z = np.asarray(z, dtype=complex)
    modulus = np.abs(z)
    if a == 0:
        return modulus < 1.0
    rho = abs(a)
    return (modulus >= rho) & (modulus < 1.0) & (angle_between(z, a) <= (1.0 - rho) / 2.0)


def in_pseudo_disk(a: complex, r: float, z) -> np.ndarray:
    if not 0.0 < r < 1.0:
        raise SpecError(f"Pseudo-hyperbolic radius must lie in (0, 1), got {r}")
    return np.abs(mobius(a, z)) < r


def pseudo_disk_euclidean(a: complex, r: float) -> Tuple[complex, float]:
    """Euclidean center and radius of Delta(a, r)."""
    rho2 = abs(a) ** 2
    denominator = 1.0 - r * r * rho2
    return a * (1.0 - r * r) / denominator, r * (1.0 - rho2) / denominator


def in_stolz(a: complex, z) -> np.ndarray:
    """z in Gamma(a): |arg z - arg a| < (1 - |z|/|a|)/2."""
    if a == 0:
        raise SpecError("Stolz region Gamma(a) needs a != 0")
    z = np.asarray(z, dtype=complex)
    return angle_between(z, a) < 0.5 * (1.0 - np.abs(z) / abs(a))


def in_tent(a: complex, z) -> np.ndarray:
    """z in T(a), i.e. a in Gamma(z); false at z = 0."""
    if a == 0:
        raise SpecError("Tent T(a) needs a != 0")
    z = np.asarray(z, dtype=complex)
    modulus = np.abs(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        width = 0.5 * (1.0 - abs(a) / modulus)
    return (modulus > 0) & (angle_between(z, a) < width)


def region_contains(region, z) -> np.ndarray:
    if isinstance(region, CarlesonBox):
        return in_carleson_box(region.center, z)
    if isinstance(region, PseudoDisk):
        return in_pseudo_disk(region.center, region.radius, z)
    if isinstance(region, StolzRegion):
        return in_stolz(region.vertex, z)
    if isinstance(region, Tent):
        return in_tent(region.vertex, z)
    raise SpecError(f"Unsupported region type {type(region).__name__}")


def carleson_box_area(a: complex) -> float:
    """Normalized area of S(a): (1-|a|)(1-|a|^2)/(2 pi), and 1 for S(0)."""
    if a == 0:
        return 1.0
    rho = abs(a)
    return (1.0 - rho) * (1.0 - rho * rho) / (2.0 * np.pi)


def pseudo_disk_area(a: complex, r: float) -> float:
    return pseudo_disk_euclidean(a, r)[1] ** 2


def stolz_area(a: complex) -> float:
    return abs(a) ** 2 / (6.0 * np.pi)


def blaschke_bound(data: BlaschkeData) -> float:
    """m + 2n(1+d)/(1-d)."""
    return data.m + 2.0 * data.n * (1.0 + data.d) / (1.0 - data.d)


def derivative_quotient(phi: AnalyticMap, radius: float, samples: int = BOUNDARY_SAMPLES) -> float:
    """max over |z| = radius of (1 - |phi(z)|^2)/(1 - |z|^2)."""
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    return float(np.max((1.0 - np.abs(phi(z)) ** 2) / (1.0 - radius * radius)))


def boundary_modulus_profile(phi: AnalyticMap, radii: Sequence[float],
                             samples: int = BOUNDARY_SAMPLES) -> np.ndarray:
    """min over |z| = r of |phi(z)| for each r."""
    radii = np.asarray(radii, dtype=float)
    if np.any((radii <= 0) | (radii >= 1)):
        raise SpecError("Boundary profile radii must lie in (0, 1)")
    circle = np.exp(2j * np.pi * np.arange(samples) / samples)
    profile = np.array([float(np.min(np.abs(phi(r * circle)))) for r in radii])
    logger.debug(f"Boundary modulus profile of {phi.spec}: {profile[-3:]}")
    return profile
