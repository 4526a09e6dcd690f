"""
Point-cloud representation of a pushforward measure.

Every node z_i of a disk rule is moved to w_i = phi(z_i) with mass
W_i rho(z_i) |u(z_i)|^q, and every atom p of the base measure is moved to
phi(p) with mass m |u(p)|^q. A profiled weighted area takes the weighted rule,
whose final cell follows the weight into the boundary. Integrals against nu become weighted sums over
the cloud; box masses use angle-sorted prefix sums per radius, pseudo-disk
masses a k-d tree.
"""
import logging
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from app.core.geometry import in_pseudo_disk, pseudo_disk_euclidean
from app.core.quadrature import DiskQuadrature, _check_finite
from app.domain.models.measure import PushforwardSpec

logger = logging.getLogger(__name__)


class PushforwardCloud:
    """Discrete image of |u|^q d(base) under phi."""

    def __init__(self, points: np.ndarray, masses: np.ndarray, label: str = "nu"):
        keep = masses > 0
        self.points = np.asarray(points, dtype=complex)[keep]
        self.masses = np.asarray(masses, dtype=float)[keep]
        self.label = label
        self._tree = None
        self._sorted: Dict[float, Tuple[np.ndarray, np.ndarray]] = {}

    @classmethod
    def build(cls, spec: PushforwardSpec, quadrature: DiskQuadrature) -> "PushforwardCloud":
        points, masses = [], []
        if spec.base.density is not None:
            weight = spec.base.profile.source if spec.base.profile is not None else None
            for z, w in quadrature.iter_chunks(weight=weight):
                density = 1.0 if weight is not None else spec.base.evaluate_density(z)
                mass = w * density * spec.weight_factor(z)
                _check_finite(mass)
                points.append(spec.phi(z))
                masses.append(mass)
        if spec.base.atoms:
            atoms = spec.base.atom_points
            points.append(spec.phi(atoms))
            masses.append(spec.base.atom_masses * spec.weight_factor(atoms))
        if not points:
            return cls(np.empty(0, dtype=complex), np.empty(0), spec.label)
        cloud = cls(np.concatenate(points), np.concatenate(masses), spec.label)
        logger.debug(f"Pushforward cloud {spec.label}: {cloud.size} points, total mass {cloud.total_mass:.6g}")
        return cloud

    @property
    def size(self) -> int:
        return int(self.points.size)

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def integrate(self, g) -> float:
        """Integral of g against the cloud measure."""
        if self.size == 0:
            return 0.0
        values = np.asarray(g(self.points))
        _check_finite(values)
        return float(np.real(np.sum(values * self.masses)))

    def restricted(self, radius: float) -> "PushforwardCloud":
        """Restriction to the annulus |w| >= radius."""
        keep = np.abs(self.points) >= radius
        return PushforwardCloud(self.points[keep], self.masses[keep], f"{self.label}|r>={radius:g}")

    def _by_angle(self, rho: float) -> Tuple[np.ndarray, np.ndarray]:
        if rho not in self._sorted:
            keep = (np.abs(self.points) >= rho) & (np.abs(self.points) < 1.0)
            angles = np.angle(self.points[keep])
            order = np.argsort(angles, kind="stable")
            prefix = np.concatenate([[0.0], np.cumsum(self.masses[keep][order])])
            self._sorted[rho] = (angles[order], prefix)
        return self._sorted[rho]

    def box_masses(self, centers: Sequence[complex]) -> np.ndarray:
        """nu(S(a)) for each a; S(0) is the whole disk."""
        centers = np.atleast_1d(np.asarray(centers, dtype=complex))
        out = np.zeros(centers.shape, dtype=float)
        for rho in np.unique(np.abs(centers)):
            select = np.abs(centers) == rho
            if rho == 0:
                out[select] = self.total_mass
                continue
            angles, prefix = self._by_angle(float(rho))
            half = (1.0 - rho) / 2.0
            center = np.angle(centers[select])
            out[select] = _arc_mass(angles, prefix, center - half, center + half)
        return out

    def pseudo_disk_masses(self, centers: Sequence[complex], r: float) -> np.ndarray:
        """nu(Delta(a, r)) for each a."""
        centers = np.atleast_1d(np.asarray(centers, dtype=complex))
        if self.size == 0:
            return np.zeros(centers.shape)
        if self._tree is None:
            self._tree = cKDTree(np.column_stack([self.points.real, self.points.imag]))
        euclid_centers, radii = pseudo_disk_euclidean(centers, r)
        hits = self._tree.query_ball_point(np.column_stack([euclid_centers.real, euclid_centers.imag]),
                                           radii * (1.0 + 1e-12))
        out = np.zeros(centers.shape)
        for i, index in enumerate(hits):
            if index:
                index = np.asarray(index, dtype=int)
                inside = in_pseudo_disk(centers[i], r, self.points[index])
                out[i] = float(np.sum(self.masses[index][inside]))
        return out

    def region_mass(self, contains) -> float:
        """nu(E) for a membership predicate on the image points."""
        if self.size == 0:
            return 0.0
        return float(np.sum(self.masses[np.asarray(contains(self.points), dtype=bool)]))


def _arc_mass(angles: np.ndarray, prefix: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Mass with angle in [lo, hi], wrapping around -pi/pi."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    total = np.zeros(lo.shape)
    for shift in (-2.0 * np.pi, 0.0, 2.0 * np.pi):
        a = np.clip(lo + shift, -np.pi, np.pi)
        b = np.clip(hi + shift, -np.pi, np.pi)
        left = np.searchsorted(angles, a, side="left")
        right = np.searchsorted(angles, b, side="right")
        total += np.where(b > a, prefix[right] - prefix[left], 0.0)
    return total
