"""
Adaptive polar-cell integrator for discontinuous integrands on the disk.

Region indicators composed with a symbol have jumps along curves that no
fixed product rule follows. Cells [r0, r1] x [t0, t1] are integrated with a
6x6 Gauss-Legendre rule and compared against 4-point rules in each
direction; the cells holding half of the estimated error are split, along
the direction whose error dominates, until the tolerance or a cap is hit.
"""
import logging
from typing import Tuple

import numpy as np

from app.core.quadrature import angular_count, dyadic_edges, gauss_legendre
from app.domain.errors import NonFiniteError
from app.domain.services.disk_integrator import DiskIntegrator, Integrand

MARKING_FRACTION = 0.5


class AdaptiveDiskIntegrator(DiskIntegrator):
    """Error-driven refinement of a dyadic polar mesh."""

    def __init__(self, rtol: float = 1e-8, atol: float = 1e-14, max_iter: int = 40,
                 max_cells: int = 200_000, initial_levels: int = 12, initial_angular: int = 8,
                 angular_cap: int = 256):
        self.rtol = rtol
        self.atol = atol
        self.max_iter = max_iter
        self.max_cells = max_cells
        self.initial_levels = initial_levels
        self.initial_angular = initial_angular
        self.angular_cap = angular_cap
        self.logger = logging.getLogger(__name__)
        self.last_cells = 0
        self.converged = False

    def _initial_mesh(self) -> np.ndarray:
        edges = dyadic_edges(self.initial_levels)
        cells = []
        for j in range(self.initial_levels + 1):
            count = angular_count(j, self.initial_angular, self.angular_cap)
            theta = 2.0 * np.pi * np.arange(count + 1) / count
            for k in range(count):
                cells.append((edges[j], edges[j + 1], theta[k], theta[k + 1]))
        return np.array(cells)

    def integrate(self, f: Integrand) -> Tuple[float, float]:
        cells = self._initial_mesh()
        values, err_r, err_t = self._evaluate(f, cells)
        self.converged = False
        for iteration in range(self.max_iter):
            errors = np.maximum(err_r, err_t)
            total = float(np.sum(values))
            total_error = float(np.sum(errors))
            if total_error <= max(self.rtol * abs(total), self.atol):
                self.converged = True
                break
            if cells.shape[0] >= self.max_cells:
                self.logger.warning(f"Adaptive integration stopped at the cell cap {self.max_cells}, "
                                    f"error estimate {total_error:.3g}")
                break
            order = np.argsort(-errors, kind="stable")
            marked_count = int(np.searchsorted(np.cumsum(errors[order]), MARKING_FRACTION * total_error)) + 1
            marked = np.zeros(cells.shape[0], dtype=bool)
            marked[order[:marked_count]] = True
            children = _split(cells[marked], err_r[marked] >= err_t[marked])
            child_values, child_r, child_t = self._evaluate(f, children)
            keep = ~marked
            cells = np.concatenate([cells[keep], children])
            values = np.concatenate([values[keep], child_values])
            err_r = np.concatenate([err_r[keep], child_r])
            err_t = np.concatenate([err_t[keep], child_t])
            self.logger.debug(f"Adaptive pass {iteration}: {cells.shape[0]} cells, error {total_error:.3g}")
        self.last_cells = cells.shape[0]
        errors = np.maximum(err_r, err_t)
        return float(np.sum(values)), float(np.sum(errors))

    def _evaluate(self, f: Integrand, cells: np.ndarray):
        fine = _tensor_rule(f, cells, 6, 6)
        coarse_r = _tensor_rule(f, cells, 4, 6)
        coarse_t = _tensor_rule(f, cells, 6, 4)
        return fine, np.abs(fine - coarse_r), np.abs(fine - coarse_t)


def _tensor_rule(f: Integrand, cells: np.ndarray, order_r: int, order_t: int) -> np.ndarray:
    xr, wr = gauss_legendre(order_r)
    xt, wt = gauss_legendre(order_t)
    r0, r1, t0, t1 = cells.T
    r = r0[:, None] + (r1 - r0)[:, None] * xr[None, :]
    t = t0[:, None] + (t1 - t0)[:, None] * xt[None, :]
    z = r[:, :, None] * np.exp(1j * t)[:, None, :]
    values = np.asarray(f(z.ravel()), dtype=float).reshape(z.shape)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError("Integrand is not finite at adaptive quadrature nodes")
    weights = ((r1 - r0)[:, None] * wr[None, :] * r)[:, :, None] * ((t1 - t0)[:, None] * wt[None, :])[:, None, :]
    return np.sum(values * weights, axis=(1, 2)) / np.pi


def _split(cells: np.ndarray, radial: np.ndarray) -> np.ndarray:
    r0, r1, t0, t1 = cells.T
    rm = 0.5 * (r0 + r1)
    tm = 0.5 * (t0 + t1)
    first = np.where(radial[:, None], np.stack([r0, rm, t0, t1], axis=1), np.stack([r0, r1, t0, tm], axis=1))
    second = np.where(radial[:, None], np.stack([rm, r1, t0, t1], axis=1), np.stack([r0, r1, tm, t1], axis=1))
    return np.concatenate([first, second])
