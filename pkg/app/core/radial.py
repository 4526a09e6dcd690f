"""
Radial integration engine for weight functionals.

Integrals over [r, 1) are computed in the boundary coordinate
t = log(e/(1-r)) with Gauss-Legendre panels of width pi/4 on the global grid
t_k = 1 + k pi/4 (plus family breakpoints). Panels are integrated once per
call and accumulated from the right, so a batch of radii costs one sweep plus
one partial panel per radius. Beyond t0 + TAIL_SPAN the family's tail mass is
added with the integrand frozen at its boundary value.
"""
import logging
from typing import Callable

import numpy as np
from scipy.special import roots_legendre

from app.core.families import boundary_coordinate, gap_from_boundary
from app.domain.errors import SpecError, WeightValidationError
from app.domain.services.weight_law import WeightLaw

logger = logging.getLogger(__name__)

PANEL_WIDTH = np.pi / 4.0
TAIL_SPAN = 60.0
MOMENT_CHUNK = 512

# f(s, x) with s the radius and x = 1 - s
RadialIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


class RadialIntegrals:
    """Batch evaluator of integrals of f(s) omega(s) over [r, 1)."""

    def __init__(self, law: WeightLaw, order: int = 16):
        self.law = law
        self.order = order
        self._nodes, self._weights = roots_legendre(order)

    def _edges(self, t_end: float) -> np.ndarray:
        count = int(np.ceil((t_end - 1.0) / PANEL_WIDTH))
        grid = 1.0 + PANEL_WIDTH * np.arange(count + 1)
        extra = self.law.breakpoints()
        extra = extra[(extra > 1.0) & (extra < grid[-1])]
        return np.unique(np.concatenate([grid, extra]))

    def _map_panels(self, left: np.ndarray, right: np.ndarray):
        half = 0.5 * (right - left)
        mid = 0.5 * (right + left)
        t = mid[:, None] + half[:, None] * self._nodes[None, :]
        w = half[:, None] * self._weights[None, :]
        return t, w

    def _panel_values(self, f: RadialIntegrand, t: np.ndarray, w: np.ndarray) -> np.ndarray:
        x = gap_from_boundary(t)
        s = 1.0 - x
        values = self.law.boundary_density(t) * f(s, x)
        return np.sum(values * w, axis=-1)

    def tail_integral_t(self, f: RadialIntegrand, t0) -> np.ndarray:
        """Integral of f(s) omega(s) ds over s >= r(t0), for an array of t0 >= 1."""
        t0 = np.atleast_1d(np.asarray(t0, dtype=float))
        out = np.zeros(t0.shape)
        finite = np.isfinite(t0)
        if not np.any(finite):
            return out
        if np.any(t0[finite] < 1.0):
            raise SpecError("Boundary coordinate must satisfy t >= 1 (radius in [0, 1))")
        t_end = float(np.max(t0[finite])) + TAIL_SPAN
        edges = self._edges(t_end)
        t_end = float(edges[-1])

        t, w = self._map_panels(edges[:-1], edges[1:])
        panels = self._panel_values(f, t, w)
        cumulative = np.concatenate([np.cumsum(panels[::-1])[::-1], [0.0]])
        one = np.ones(1)
        tail = float(np.asarray(f(one, 0.0 * one))[0]) * self.law.tail_mass(t_end)

        starts = t0[finite]
        nxt = np.searchsorted(edges, starts, side="right")
        nxt = np.minimum(nxt, len(edges) - 1)
        t_part, w_part = self._map_panels(starts, edges[nxt])
        partial = self._panel_values(f, t_part, w_part)
        out[finite] = cumulative[nxt] + partial + tail
        return out

    def tail_integral(self, f: RadialIntegrand, r) -> np.ndarray:
        """Integral of f(s) omega(s) ds over [r, 1) for an array of radii."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any((r < 0) | (r > 1)):
            raise SpecError("Radii must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            t0 = np.where(r < 1.0, boundary_coordinate(np.minimum(r, 1.0)), np.inf)
        return self.tail_integral_t(f, t0)

    def hat(self, r) -> np.ndarray:
        closed = self.law.closed_hat(np.atleast_1d(np.asarray(r, dtype=float)))
        if closed is not None:
            return np.asarray(closed, dtype=float)
        return self.tail_integral(_one, r)

    def hat_t(self, t) -> np.ndarray:
        return self.tail_integral_t(_one, t)

    def first_moment(self, r) -> np.ndarray:
        """m1(r) = integral of s omega(s) over [r, 1)."""
        return self.tail_integral(_identity, r)

    def star(self, r) -> np.ndarray:
        """omega_*(r) = integral of s omega(s) log(s/r) over [r, 1), r > 0."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if np.any(r <= 0):
            raise SpecError("omega_* has a logarithmic singularity at r = 0")
        log_part = self.tail_integral(_s_log_s, r)
        value = log_part - np.log(r) * self.first_moment(r)
        return np.maximum(value, 0.0)

    def tent_integral(self, rho) -> np.ndarray:
        """Integral of omega(s)(s - rho) over [rho, 1)."""
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        return np.maximum(self.first_moment(rho) - rho * self.hat(rho), 0.0)

    def box_mass(self, a) -> np.ndarray:
        """omega(S(a)) = (1-|a|)/pi m1(|a|), with S(0) = D."""
        rho = np.abs(np.atleast_1d(np.asarray(a)))
        mass = (1.0 - rho) / np.pi * self.first_moment(rho)
        whole = rho == 0
        if np.any(whole):
            mass[whole] = 2.0 * self.first_moment(np.zeros(1))[0]
        return mass

    def tent_mass(self, a) -> np.ndarray:
        """omega(T(a)) = (1/pi) integral of omega(s)(s - |a|) over [|a|, 1)."""
        rho = np.abs(np.atleast_1d(np.asarray(a)))
        return self.tent_integral(rho) / np.pi

    def regularity_ratio_t(self, t0) -> np.ndarray:
        """omega_hat(r) / ((1-r) omega(r)) as H(t)/h(t), integrated relative to h(t0).

        Works in log space so the ratio stays finite where h itself underflows.
        """
        t0 = np.atleast_1d(np.asarray(t0, dtype=float))
        if np.any(t0 < 1.0):
            raise SpecError("Boundary coordinate must satisfy t >= 1 (radius in [0, 1))")
        out = np.empty(t0.shape)
        for i, start in enumerate(t0):
            edges = self._edges(start + TAIL_SPAN)
            edges = np.concatenate([[start], edges[edges > start]])
            t, w = self._map_panels(edges[:-1], edges[1:])
            log_ref = float(self.law.log_boundary_density(start))
            body = float(np.sum(np.exp(self.law.log_boundary_density(t) - log_ref) * w))
            end = float(edges[-1])
            tail = np.exp(float(self.law.log_boundary_density(end)) - log_ref) * self.law.tail_ratio(end)
            out[i] = body + tail
        return out

    def doubling_ratio_t(self, t0) -> np.ndarray:
        """omega_hat(r) / omega_hat((1+r)/2); the midpoint sits at t + log 2."""
        t0 = np.atleast_1d(np.asarray(t0, dtype=float))
        shifted = t0 + np.log(2.0)
        ratio = self.regularity_ratio_t(t0) / self.regularity_ratio_t(shifted)
        return ratio * np.exp(self.law.log_boundary_density(t0) - self.law.log_boundary_density(shifted))

    def moments(self, n_max: int) -> np.ndarray:
        """omega_0 .. omega_{n_max}."""
        n = np.arange(n_max + 1, dtype=float)
        closed = self.law.closed_moments(n)
        if closed is not None:
            return np.asarray(closed, dtype=float)
        out = np.empty(n_max + 1)
        for start in range(0, n_max + 1, MOMENT_CHUNK):
            block = n[start:start + MOMENT_CHUNK]
            out[start:start + block.size] = self._moment_block(block)
        return out

    def _moment_block(self, n: np.ndarray) -> np.ndarray:
        edges = self._edges(1.0 + TAIL_SPAN)
        t, w = self._map_panels(edges[:-1], edges[1:])
        t, w = t.ravel(), w.ravel()
        x = gap_from_boundary(t)
        h = self.law.boundary_density(t) * w
        log_s = np.log1p(-x)
        powers = np.exp(n[:, None] * log_s[None, :])
        return powers @ h + self.law.tail_mass(float(edges[-1]))

    def partial_power_integral(self, power: float, t_end: float) -> float:
        """Integral of t^power h(t) over [1, t_end], no tail."""
        edges = self._edges(t_end)
        edges = edges[edges <= t_end]
        if edges[-1] < t_end:
            edges = np.append(edges, t_end)
        t, w = self._map_panels(edges[:-1], edges[1:])
        return float(np.sum(t ** power * self.law.boundary_density(t) * w))

    def check_integrable(self, label: str = "") -> float:
        total = float(self.hat(np.zeros(1))[0])
        if not np.isfinite(total) or total <= 0:
            raise WeightValidationError(f"Weight {label} is not integrable: omega_hat(0) = {total}")
        return total


def _one(s, x):
    return np.ones_like(s)


def _identity(s, x):
    return s


def _s_log_s(s, x):
    return s * np.log1p(-x)
