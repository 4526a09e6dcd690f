"""
Criteria service: the radial conditions behind the H^infinity multiplier
results (condition (i) on omega_hat, the lower-bound experiment with the
test functions u_w, and the two logarithmic inequalities for log weights).
"""
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.core import geometry
from app.core.services.weight_service import WeightService
from app.domain.errors import ExponentGapViolated, HypothesisFailed, SpecError
from app.domain.models import (
    AnalyticMap, BracketConfig, FunctionalReport, GridConfig, RadialGrid, ReciprocalPower, WeightProfile
)

LOG_GRID_LEVELS = 14
LOG_GRID_SUBDIVISIONS = 4
CONDITION_B_TOLERANCE = 1e-12


class CriteriaService:
    """Service for the radial criteria on omega_hat and logarithmic weights."""

    def __init__(self, grid: Optional[GridConfig] = None, brackets: Optional[BracketConfig] = None,
                 weight_service: Optional[WeightService] = None):
        self.grid = grid or GridConfig()
        self.brackets = brackets or BracketConfig()
        self.weights = weight_service or WeightService(self.brackets)
        self.logger = logging.getLogger(__name__)

    def thm6_condition_i(self, profile: WeightProfile, levels: Optional[int] = None) -> FunctionalReport:
        """sup over 0 <= r <= t < 1 of omega_hat(phi_t(r)) omega_hat(r) / omega_hat(t).

        phi_t(r) = (t - r)/(1 - t r) is evaluated through
        1 - phi_t(r) = (1-t)(1+r)/(1-tr) so it stays accurate next to 1.
        """
        radii = np.concatenate([[0.0], RadialGrid(levels or self.grid.radial_levels, 1).radii])
        r, t = np.meshgrid(radii, radii, indexing="ij")
        keep = r <= t
        r, t = r[keep], t[keep]
        moved = 1.0 - (1.0 - t) * (1.0 + r) / (1.0 - t * r)
        hat = self.weights.omega_hat
        values = hat(profile, np.clip(moved, 0.0, 1.0)) * hat(profile, r) / hat(profile, t)
        best = int(np.argmax(values))
        origin = float(hat(profile, 0.0)[0])

        level_of = np.searchsorted(radii, t)
        per_level = [float(np.max(values[level_of == j])) for j in np.unique(level_of)]
        constants = self.weights.tail_constants(profile)
        report = FunctionalReport(
            kind="thm6_condition_i",
            value=float(values[best]),
            witness=[float(r[best]), float(t[best])],
            grid={"levels": int(levels or self.grid.radial_levels), "points": int(radii.size)},
            levels=per_level,
            normalized_value=float(values[best]) / origin,
            diagnostics={
                "omega_hat_0": origin,
                "A": constants.A,
                "B": constants.B,
                "condition_ii": constants.condition_ii,
                "condition_ii_margin": constants.margin,
            },
        )
        if not profile.regular:
            report.flags.append("not_regular")
        self.logger.info(f"Condition (i) sup for {profile.source.spec}: {report.value:.6g} "
                         f"({report.normalized_value:.4g} x omega_hat(0))")
        return report

    def thm6_lower_bound_experiment(self, profile: WeightProfile, phi: AnalyticMap, p: float,
                                    levels: int = 10) -> FunctionalReport:
        """Compare (1-|w|^2)^{-(2a+2-b)} with 1/((1-|phi(w)|) omega_hat(phi(w))) along |w| = 1 - 2^{-j}.

        Each record also carries ||u_w||_inf^p (1-|w|)^{2a+4}, which equals 1
        for u_w = (1 - conj(w) z)^{-2(a+2)/p}.
        """
        if not 0 < p < float("inf"):
            raise SpecError(f"Exponent p must be positive, got {p}")
        a, b = profile.thm6_a, profile.thm6_b
        if a is None or b is None:
            raise HypothesisFailed(f"Tail constants of {profile.source.spec} give no exponents a, b")
        gap = 2.0 * a + 2.0 - b
        if gap <= 0:
            raise ExponentGapViolated(f"2a + 2 - b = {gap:.6g} <= 0 for {profile.source.spec}")

        alpha = 2.0 * (a + 2.0) / p
        w = np.concatenate([[0.0], 1.0 - 2.0 ** -np.arange(1, levels + 1, dtype=float)])
        images = np.abs(phi(w.astype(complex)))
        left = (1.0 - w ** 2) ** (-gap)
        right = 1.0 / ((1.0 - images) * self.weights.omega_hat(profile, images))
        ratio = left / right

        records: List[Dict[str, Any]] = []
        for i, radius in enumerate(w):
            sup_norm = ReciprocalPower(complex(radius), alpha).sup_norm() if radius > 0 else 1.0
            records.append({
                "w": float(radius),
                "phi_modulus": float(images[i]),
                "normalized_sup": float(sup_norm ** p * (1.0 - radius) ** (2.0 * a + 4.0)),
                "left": float(left[i]),
                "right": float(right[i]),
                "ratio": float(ratio[i]),
            })
        boundary = geometry.boundary_modulus_profile(phi, w[1:], self.grid.boundary_samples)

        best = int(np.argmax(ratio))
        report = FunctionalReport(
            kind="thm6_lower",
            value=float(ratio[best]),
            witness=float(w[best]),
            grid={"levels": levels},
            levels=[float(v) for v in ratio],
            diagnostics={
                "a": a,
                "b": b,
                "gap": gap,
                "alpha": alpha,
                "records": records,
                "boundary_modulus": [float(v) for v in boundary],
                "min_ratio": float(np.min(ratio)),
            },
        )
        if report.value > self.brackets.thm6_ratio:
            report.flags.append("ratio_exceeded")
        self.logger.info(f"Lower-bound experiment for {phi.spec}: max ratio {report.value:.6g}, gap {gap:.4g}")
        return report

    def corollary7_C1(self, levels: int = LOG_GRID_LEVELS) -> Tuple[float, Tuple[float, float]]:
        """inf over the (r, t) grid of log(e(1-rt)/((1-t)(1+r))) log(e/(1-r)) / log(e/(1-t)), with its witness."""
        r, t = _log_grid(levels)
        first, second, third = _log_terms(r, t)
        values = first * second / third
        best = int(np.argmin(values))
        self.logger.debug(f"C1 = {values[best]:.6g} at r={r[best]:.6g}, t={t[best]:.6g}")
        return float(values[best]), (float(r[best]), float(t[best]))

    def corollary7_margin(self, alpha: float, levels: int = LOG_GRID_LEVELS) -> Tuple[float, Tuple[float, float]]:
        """min over the grid of L1^alpha + L2^alpha - L3^alpha, with its witness."""
        if not 0 < alpha <= 1:
            raise SpecError(f"Condition (b) needs 0 < alpha <= 1, got {alpha}")
        r, t = _log_grid(levels)
        first, second, third = _log_terms(r, t)
        margin = first ** alpha + second ** alpha - third ** alpha
        best = int(np.argmin(margin))
        return float(margin[best]), (float(r[best]), float(t[best]))

    def corollary7_condition_b(self, alpha: float, levels: int = LOG_GRID_LEVELS) -> bool:
        margin, witness = self.corollary7_margin(alpha, levels)
        if margin < -CONDITION_B_TOLERANCE:
            self.logger.warning(f"Condition (b) fails for alpha={alpha} at (r, t)={witness}: margin {margin:.3g}")
        return bool(margin >= -CONDITION_B_TOLERANCE)


def _log_grid(levels: int) -> Tuple[np.ndarray, np.ndarray]:
    """Pairs r <= t over 0 and the dyadic radii up to 1 - 2^{-levels}."""
    radii = np.concatenate([[0.0], RadialGrid(levels, LOG_GRID_SUBDIVISIONS).radii])
    r, t = np.meshgrid(radii, radii, indexing="ij")
    keep = r <= t
    return r[keep], t[keep]


def _log_terms(r: np.ndarray, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """log(e(1-rt)/((1-t)(1+r))), log(e/(1-r)), log(e/(1-t))."""
    first = 1.0 + np.log1p(-r * t) - np.log1p(-t) - np.log1p(r)
    return first, 1.0 - np.log1p(-r), 1.0 - np.log1p(-t)
