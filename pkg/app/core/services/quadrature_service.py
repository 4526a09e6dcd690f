"""
Quadrature service: disk integrals, region measures and pushforward masses.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app.core import geometry, quadrature
from app.core.adaptive import AdaptiveDiskIntegrator
from app.core.pushforward import PushforwardCloud
from app.domain.errors import SpecError
from app.domain.models import CarlesonBox, GridConfig, Measure, PseudoDisk, PushforwardSpec, StolzRegion, Tent, Weight
from app.domain.services.disk_integrator import DiskIntegrator, Integrand


class QuadratureService:
    """Service for integrals over the disk and its regions."""

    def __init__(self, grid: Optional[GridConfig] = None):
        self.grid = grid or GridConfig()
        self.logger = logging.getLogger(__name__)

    def disk_quadrature(self, levels: Optional[int] = None) -> quadrature.DiskQuadrature:
        return quadrature.DiskQuadrature.from_grid(self.grid, levels)

    def integrate_disk(self, f: Integrand, quad: Optional[DiskIntegrator] = None,
                       weight: Optional[Weight] = None) -> Tuple[complex, float]:
        """(value, |value_J - value_{J-1}|) of the integral of f dA, or of f omega dA with `weight`."""
        quad = quad or self.disk_quadrature()
        if weight is None:
            value, error = quad.integrate(f)
        elif isinstance(quad, quadrature.DiskQuadrature):
            value, error = quad.integrate(f, weight)
        else:
            raise SpecError(f"Weighted disk integrals need the dyadic rule, got {type(quad).__name__}")
        self.logger.debug(f"Disk integral {value!r} with error estimate {error:.3g}")
        return value, error

    def measure_of_region(self, mu: Measure, region) -> float:
        """mu(region) for a Carleson box, pseudo-disk, Stolz region or tent."""
        total = self._atom_mass(mu, region)
        if mu.density is None:
            return total
        if isinstance(region, CarlesonBox):
            if mu.profile is not None:
                return total + float(mu.profile.box_mass(region.center)[0])
            if region.is_whole_disk:
                return total + float(np.real(self.integrate_disk(mu.evaluate_density)[0]))
            nodes = quadrature.box_rule(region.center, angular_order=1 if mu.radial else quadrature.REGION_ANGULAR_ORDER)
        elif isinstance(region, Tent):
            if mu.profile is not None:
                return total + float(mu.profile.tent_mass(region.vertex)[0])
            nodes = quadrature.tent_rule(region.vertex, angular_order=1 if mu.radial else quadrature.REGION_ANGULAR_ORDER)
        elif isinstance(region, StolzRegion):
            nodes = quadrature.stolz_rule(region.vertex)
        elif isinstance(region, PseudoDisk):
            nodes = quadrature.pseudo_disk_rule(region.center, region.radius)
        else:
            raise SpecError(f"Unsupported region type {type(region).__name__}")
        return total + float(np.real(quadrature.integrate_nodes(mu.evaluate_density, nodes)))

    def box_masses(self, mu: Measure, centers) -> np.ndarray:
        """mu(S(a)) over an array of centers."""
        centers = np.atleast_1d(np.asarray(centers, dtype=complex))
        if mu.profile is not None and mu.density is not None:
            out = np.asarray(mu.profile.box_mass(centers), dtype=float)
            return out + np.array([self._atom_mass(mu, CarlesonBox(a)) for a in centers])
        if mu.radial and mu.density is not None:
            by_radius = {}
            for rho in np.unique(np.abs(centers)):
                by_radius[rho] = self.measure_of_region(Measure("radial", mu.density, radial=True), CarlesonBox(complex(rho)))
            out = np.array([by_radius[abs(a)] for a in centers])
            return out + np.array([self._atom_mass(mu, CarlesonBox(a)) for a in centers])
        return np.array([self.measure_of_region(mu, CarlesonBox(a)) for a in centers])

    def pushforward_region(self, spec: PushforwardSpec, region,
                           integrator: Optional[DiskIntegrator] = None) -> float:
        """nu(E) = integral of 1_E(phi(z)) |u(z)|^q d(base)(z), composed pointwise."""
        contains = lambda w: geometry.region_contains(region, w)
        total = 0.0
        if spec.base.atoms:
            atoms = spec.base.atom_points
            inside = np.asarray(contains(spec.phi(atoms)), dtype=bool)
            total += float(np.sum((spec.base.atom_masses * spec.weight_factor(atoms))[inside]))
        if spec.base.density is None:
            return total

        def integrand(z):
            return contains(spec.phi(z)) * spec.weight_factor(z) * spec.base.evaluate_density(z)

        integrator = integrator or AdaptiveDiskIntegrator()
        value, error = integrator.integrate(integrand)
        self.logger.debug(f"Pushforward mass of {region} under {spec.phi.spec}: {value:.6g} (+/- {error:.2g})")
        return total + value

    def pushforward_cloud(self, spec: PushforwardSpec, levels: Optional[int] = None) -> PushforwardCloud:
        return PushforwardCloud.build(spec, self.disk_quadrature(levels))

    def _atom_mass(self, mu: Measure, region) -> float:
        if not mu.atoms:
            return 0.0
        inside = np.asarray(geometry.region_contains(region, mu.atom_points), dtype=bool)
        return float(np.sum(mu.atom_masses[inside]))
