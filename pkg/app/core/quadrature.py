"""
Product quadrature on the unit disk and on its subregions.

The disk rule splits the radius into dyadic cells [1 - 2^{-j}, 1 - 2^{-j-1}],
j = 0..J-1, plus the final cell [1 - 2^{-J}, 1]. Each cell carries
Gauss-Legendre nodes in r and equispaced (midpoint-offset) angles, whose
count doubles with j up to a cap so the angular spacing follows 1 - r.
Weights are with respect to the normalized area dA = r dr dtheta / pi.

Against a radial weight the final cell is taken in the boundary coordinate
t = log(e/(1-r)), where omega(r) dr = h(t) dt, on unit panels over
BOUNDARY_SPAN; the family's tail mass beyond the span sits on the outermost
ring.
"""
import logging
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from scipy.special import roots_legendre

from app.core.families import radius_from_boundary
from app.core.geometry import pseudo_disk_euclidean
from app.domain.errors import NonFiniteError
from app.domain.models.weight import Weight
from app.domain.services.disk_integrator import DiskIntegrator, Integrand

logger = logging.getLogger(__name__)

# geometric cells toward the circle for box and tent rules
REGION_CELLS = 40
REGION_ORDER = 8
REGION_ANGULAR_ORDER = 12

BOUNDARY_PANEL = 1.0
BOUNDARY_SPAN = 16.0
# 1 - r = 2^-50 keeps the outermost nodes inside the disk in double precision
BOUNDARY_LIMIT = 1.0 + 50.0 * np.log(2.0)

Cells = Tuple[Tuple[np.ndarray, np.ndarray], ...]


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    x, w = roots_legendre(order)
    return 0.5 * (x + 1.0), 0.5 * w


def dyadic_edges(levels: int) -> np.ndarray:
    return np.concatenate([1.0 - 2.0 ** -np.arange(levels + 1, dtype=float), [1.0]])


def _ring(r: np.ndarray, radial_weights: np.ndarray, count: int) -> Tuple[np.ndarray, np.ndarray]:
    theta = 2.0 * np.pi * (np.arange(count) + 0.5) / count
    z = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(2.0 * r * radial_weights / count, count)
    z.setflags(write=False)
    weights.setflags(write=False)
    return z, weights


@lru_cache(maxsize=16)
def _disk_cells(levels: int, order: int, base: int, cap: int) -> Cells:
    x, w = gauss_legendre(order)
    edges = dyadic_edges(levels)
    cells = []
    for j in range(levels + 1):
        left, right = edges[j], edges[j + 1]
        cells.append(_ring(left + (right - left) * x, (right - left) * w, angular_count(j, base, cap)))
    return tuple(cells)


def boundary_panels(levels: int, order: int, kinks=()) -> Tuple[np.ndarray, np.ndarray, float]:
    """Nodes t ascending, their weights, and the end of the span from t = 1 + J log 2."""
    start = 1.0 + levels * np.log(2.0)
    stop = min(start + BOUNDARY_SPAN, max(BOUNDARY_LIMIT, start + BOUNDARY_PANEL))
    count = max(int(np.ceil((stop - start) / BOUNDARY_PANEL - 1e-9)), 1)
    edges = np.linspace(start, stop, count + 1)
    kinks = np.asarray(kinks, dtype=float)
    edges = np.unique(np.concatenate([edges, kinks[(kinks > edges[0]) & (kinks < edges[-1])]]))
    t, wt = _panels(edges, order)
    return t, wt, float(edges[-1])


def _panels(edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(order)
    left, right = edges[:-1], edges[1:]
    return ((left[:, None] + (right - left)[:, None] * x[None, :]).ravel(),
            ((right - left)[:, None] * w[None, :]).ravel())


def angular_count(level: int, base: int, cap: int) -> int:
    return int(min(base * 2 ** level, cap))


class DiskQuadrature(DiskIntegrator):
    """Dyadic product rule of refinement level J on the unit disk."""

    def __init__(self, levels: int = 10, order: int = 8, angular_base: int = 64, angular_cap: int = 8192):
        if levels < 1:
            raise ValueError(f"Quadrature needs at least one dyadic level, got {levels}")
        self.levels = int(levels)
        self.order = int(order)
        self.angular_base = int(angular_base)
        self.angular_cap = int(angular_cap)
        self.logger = logging.getLogger(__name__)
        self._weighted: Dict[str, Cells] = {}

    @classmethod
    def from_grid(cls, grid, levels: int = None) -> "DiskQuadrature":
        return cls(levels or grid.quad_levels, grid.quad_order, grid.angular_base, grid.angular_cap)

    def coarser(self) -> "DiskQuadrature":
        return DiskQuadrature(self.levels - 1, self.order, self.angular_base, self.angular_cap)

    def cells(self, weight: Optional[Weight] = None) -> Cells:
        """(nodes, weights) per radial cell, innermost first, final cell last.

        With `weight` the weights carry omega(|z|) and the final cell is the
        boundary-coordinate rule.
        """
        if weight is None:
            return _disk_cells(self.levels, self.order, self.angular_base, self.angular_cap)
        if weight.spec not in self._weighted:
            self._weighted[weight.spec] = self._weighted_cells(weight)
        return self._weighted[weight.spec]

    def _weighted_cells(self, weight: Weight) -> Cells:
        kinks = np.asarray(weight.law.breakpoints(), dtype=float)
        cuts = radius_from_boundary(kinks)
        edges = dyadic_edges(self.levels)
        cells = []
        for j in range(self.levels):
            inner = cuts[(cuts > edges[j]) & (cuts < edges[j + 1])]
            r, wr = _panels(np.concatenate([[edges[j]], np.sort(inner), [edges[j + 1]]]), self.order)
            cells.append(_ring(r, wr * weight.density(r), angular_count(j, self.angular_base, self.angular_cap)))
        t, wt, t_end = boundary_panels(self.levels, self.order, kinks)
        tail = weight.law.tail_mass(t_end)
        mass = weight.law.boundary_density(t) * wt
        mass[-1] += tail
        count = angular_count(self.levels, self.angular_base, self.angular_cap)
        cells.append(_ring(radius_from_boundary(t), mass, count))
        self.logger.debug(f"Boundary cell for {weight.spec}: {t.size} radii from t={t[0]:.3f}, "
                          f"tail mass {tail:.3g}")
        return tuple(cells)

    @property
    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        cells = self.cells()
        return np.concatenate([c[0] for c in cells]), np.concatenate([c[1] for c in cells])

    @property
    def size(self) -> int:
        return sum(c[0].size for c in self.cells())

    def iter_chunks(self, chunk: int = 1 << 16,
                    weight: Optional[Weight] = None) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        """Nodes and weights in fixed-order slices of at most `chunk` points."""
        for z, w in self.cells(weight):
            for start in range(0, z.size, chunk):
                yield z[start:start + chunk], w[start:start + chunk]

    def integrate(self, f: Integrand, weight: Optional[Weight] = None) -> Tuple[complex, float]:
        """Integral of f dA, or of f omega dA with `weight`, and its difference to the level J-1 rule.

        Both rules share every dyadic cell below level J-1, so only the last
        dyadic cell and the two final cells are evaluated separately.
        """
        cells = self.cells(weight)
        sums = [_cell_sum(f, z, w) for z, w in cells]
        interior = np.sum(sums[:-2]) if len(sums) > 2 else 0.0
        value = interior + sums[-2] + sums[-1]
        if self.levels < 2:
            return _scalar(value), float("inf")
        coarse = interior + _cell_sum(f, *self.coarser().cells(weight)[-1])
        return _scalar(value), float(abs(value - coarse))


def _cell_sum(f: Integrand, z: np.ndarray, w: np.ndarray):
    values = np.asarray(f(z))
    _check_finite(values)
    return np.sum(values * w)


def _check_finite(values: np.ndarray):
    if not np.all(np.isfinite(values)):
        bad = int(np.count_nonzero(~np.isfinite(values)))
        raise NonFiniteError(f"Integrand is not finite at {bad} quadrature nodes")


def _scalar(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def geometric_edges(start: float, cells: int = REGION_CELLS) -> np.ndarray:
    """start, then 1 - (1-start) 2^{-k}, k = 1..cells, then 1."""
    gap = 1.0 - start
    return np.concatenate([[start], 1.0 - gap * 2.0 ** -np.arange(1, cells + 1, dtype=float), [1.0]])


def sector_rule(edges: np.ndarray, center_angle: float, half_width, order: int = REGION_ORDER,
                angular_order: int = REGION_ANGULAR_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Polar rule on {edges[0] <= r <= edges[-1], |theta - center| <= half_width(r)}."""
    x, w = gauss_legendre(order)
    xt, wt = gauss_legendre(angular_order)
    left, right = edges[:-1], edges[1:]
    r = (left[:, None] + (right - left)[:, None] * x[None, :]).ravel()
    wr = ((right - left)[:, None] * w[None, :]).ravel()
    h = np.broadcast_to(np.asarray(half_width(r) if callable(half_width) else half_width, dtype=float), r.shape)
    theta = center_angle - h[:, None] + 2.0 * h[:, None] * xt[None, :]
    weights = (r * wr * 2.0 * h)[:, None] * wt[None, :] / np.pi
    return (r[:, None] * np.exp(1j * theta)).ravel(), weights.ravel()


def box_rule(a: complex, angular_order: int = REGION_ANGULAR_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes on S(a), a != 0; angular_order = 1 is exact for radial integrands."""
    rho = abs(a)
    return sector_rule(geometric_edges(rho), float(np.angle(a)), (1.0 - rho) / 2.0,
                       angular_order=angular_order)


def tent_rule(a: complex, angular_order: int = REGION_ANGULAR_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    rho = abs(a)
    return sector_rule(geometric_edges(rho), float(np.angle(a)), lambda s: 0.5 * (1.0 - rho / s),
                       angular_order=angular_order)


def stolz_rule(a: complex, cells: int = 8, angular_order: int = REGION_ANGULAR_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    rho = abs(a)
    edges = np.linspace(0.0, rho, cells + 1)
    return sector_rule(edges, float(np.angle(a)), lambda s: 0.5 * (1.0 - s / rho), angular_order=angular_order)


def pseudo_disk_rule(a: complex, r: float, cells: int = 4, angular: int = 64) -> Tuple[np.ndarray, np.ndarray]:
    """Polar rule about the Euclidean center of Delta(a, r)."""
    center, radius = pseudo_disk_euclidean(a, r)
    x, w = gauss_legendre(REGION_ORDER)
    edges = np.linspace(0.0, radius, cells + 1)
    left, right = edges[:-1], edges[1:]
    s = (left[:, None] + (right - left)[:, None] * x[None, :]).ravel()
    ws = ((right - left)[:, None] * w[None, :]).ravel()
    theta = 2.0 * np.pi * (np.arange(angular) + 0.5) / angular
    z = (center + s[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(2.0 * s * ws / angular, angular)
    return z, weights


def integrate_nodes(f: Integrand, nodes: Tuple[np.ndarray, np.ndarray]) -> float:
    z, w = nodes
    values = np.asarray(f(z))
    _check_finite(values)
    return _scalar(np.sum(values * w))

