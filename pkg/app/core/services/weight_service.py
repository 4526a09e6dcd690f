"""
Weight service: construction, classification and the derived functionals.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.families import boundary_coordinate
from app.core.radial import RadialIntegrals
from app.domain.errors import (
    ClassificationInconclusive, HypothesisFailed, SpecError, WeightValidationError
)
from app.domain.models import BracketConfig, RadialGrid, TailConstants, Weight, WeightClass, WeightProfile
from app.infrastructure.spec_parser import SpecParser

# r = 1 - 2^{-j} for the deep samples of the regularity ratio
DEEP_LEVELS = (12, 24, 48, 96, 192, 384, 768)
DEEP_WINDOW = 64
EXPONENT_CEILING = 60.0
EXPONENT_SLACK = 1e-4
STABILITY_TOLERANCE = 0.05


class WeightService:
    """Service for radial weights and their profiles."""

    def __init__(self, brackets: Optional[BracketConfig] = None):
        self.brackets = brackets or BracketConfig()
        self.logger = logging.getLogger(__name__)

    def create_weight(self, spec: str) -> Weight:
        """Parse a weight spec string and check positivity and integrability."""
        law = SpecParser.parse_weight(spec)
        weight = Weight(spec, law)
        engine = RadialIntegrals(law)
        samples = np.linspace(0.0, 1.0 - 2.0 ** -12, 257)
        values = weight.density(samples)
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise WeightValidationError(f"Weight {spec} is not positive on [0, 1)")
        engine.check_integrable(spec)
        self.logger.debug(f"Created weight {spec} ({law.tag}, {law.params})")
        return weight

    def classify(self, weight: Weight, grid: Optional[RadialGrid] = None,
                 kernel_N: int = 512, tail_window: int = 3) -> WeightProfile:
        """Build the cached profile of a weight and classify it.

        The classification itself never raises; an inconclusive outcome is
        stored on the profile and surfaced by `require_conclusive`.
        """
        grid = grid or RadialGrid()
        if grid.depth < 1.0 - 2.0 ** -12:
            raise SpecError(f"Classification grid must reach 1 - 2^-12, got levels={grid.levels}")
        self.logger.info(f"Classifying weight {weight.spec} on {grid.levels} dyadic levels")
        engine = RadialIntegrals(weight.law)
        radii = grid.radii
        t = boundary_coordinate(radii)

        ratio = engine.regularity_ratio_t(t)
        doubling = engine.doubling_ratio_t(np.concatenate([[1.0], t]))
        deep = self._deep_ratios(engine)

        classification = self._classify_ratio(ratio, deep)
        A, B, stable = self._tail_window(ratio, grid, tail_window)
        a_exp, b_exp = self._star_exponents(engine, radii, delta=0.5)
        epsilon, thm6_a, thm6_b = self._tail_exponents(A, B)
        moments = engine.moments(2 * kernel_N + 1)

        profile = WeightProfile(
            source=weight,
            grid=grid,
            engine=engine,
            moments=moments,
            reg_ratio_bounds=(float(np.min(ratio)), float(np.max(ratio))),
            dd_constant=float(np.max(doubling)),
            A=A,
            B=B,
            tail_stable=stable,
            classification=classification,
            a_exp=a_exp,
            b_exp=b_exp,
            tail_epsilon=epsilon,
            thm6_a=thm6_a,
            thm6_b=thm6_b,
            ratio_table={"r": radii.tolist(), "ratio": ratio.tolist(), "level": grid.level_index.tolist()},
            deep={"level": list(DEEP_LEVELS), "ratio": deep.tolist()},
        )
        self.logger.info(f"Weight {weight.spec}: {classification.value}, A={A:.6g}, B={B:.6g}, "
                         f"a_exp={a_exp}, b_exp={b_exp}")
        return profile

    def require_conclusive(self, profile: WeightProfile) -> WeightProfile:
        if profile.classification is WeightClass.INCONCLUSIVE:
            raise ClassificationInconclusive(
                f"Regularity ratio of {profile.source.spec} neither stays bounded nor diverges: "
                f"grid range {profile.reg_ratio_bounds}, deep ratios {profile.deep.get('ratio')}")
        return profile

    def omega_hat(self, profile: WeightProfile, r) -> np.ndarray:
        r = _radii(r, allow_zero=True)
        with np.errstate(divide="ignore"):
            return profile.hat(r)

    def omega_star(self, profile: WeightProfile, r) -> np.ndarray:
        r = _radii(r, allow_zero=False)
        return profile.star(r)

    def moment(self, profile: WeightProfile, n: int) -> float:
        if int(n) != n or n < 0:
            raise SpecError(f"Moment index must be a nonnegative integer, got {n}")
        return profile.moment(int(n))

    def tail_constants(self, profile: WeightProfile) -> TailConstants:
        """(A, B, condition_ii) with the margin 2A + AB - B."""
        A, B = profile.A, profile.B
        margin = 2.0 * A + A * B - B
        if not profile.tail_stable:
            self.logger.warning(f"Tail window of {profile.source.spec} has not stabilized; A, B are unreliable")
        return TailConstants(A=A, B=B, condition_ii=bool(margin > 0), margin=float(margin),
                             stable=profile.tail_stable)

    def star_ratio(self, profile: WeightProfile, r) -> np.ndarray:
        """omega_*(r) / ((1-r) omega_hat(r))."""
        r = _radii(r, allow_zero=False)
        return profile.star(r) / ((1.0 - r) * profile.hat(r))

    def log2_hypothesis(self, profile: WeightProfile, start: float = 8.0, doublings: int = 11) -> float:
        """Integral of (log e/(1-t))^2 omega(t) over [0, 1), or HypothesisFailed."""
        engine = profile.engine
        ends = start * 2.0 ** np.arange(doublings + 1)
        partial = np.array([engine.partial_power_integral(2.0, float(end)) for end in ends])
        increments = np.diff(partial)
        scale = max(float(partial[-1]), np.finfo(float).tiny)
        live = increments > 1e-15 * scale
        if np.count_nonzero(live[-3:]) == 3:
            ratios = increments[-3:] / increments[-4:-1]
            self.logger.debug(f"log^2 increments {increments[-4:]}, ratios {ratios}")
            if np.all(ratios >= 0.95):
                raise HypothesisFailed(
                    f"Integral of log^2(e/(1-t)) omega(t) diverges for {profile.source.spec}: "
                    f"increment ratios {np.round(ratios, 4).tolist()}")
            # geometric remainder of the last increment
            q = float(ratios[-1])
            return float(partial[-1] + increments[-1] * q / (1.0 - q))
        return float(partial[-1])

    def describe(self, profile: WeightProfile) -> Dict[str, object]:
        """Plain summary used by the weight report."""
        A, B, condition_ii = self.tail_constants(profile)
        return {
            "spec": profile.source.spec,
            "family": profile.source.family,
            "params": profile.source.params,
            "classification": profile.classification.value,
            "regular": profile.regular,
            "rapidly_increasing": profile.rapidly_increasing,
            "doubling": profile.doubling,
            "dd_constant": profile.dd_constant,
            "reg_ratio_bounds": list(profile.reg_ratio_bounds),
            "A": A,
            "B": B,
            "condition_ii": condition_ii,
            "tail_stable": profile.tail_stable,
            "delta": profile.delta,
            "a_exp": profile.a_exp,
            "b_exp": profile.b_exp,
            "tail_epsilon": profile.tail_epsilon,
            "thm6_a": profile.thm6_a,
            "thm6_b": profile.thm6_b,
            "deep_ratios": profile.deep,
        }

    def table(self, profile: WeightProfile) -> List[Dict[str, float]]:
        """Rows of r, omega, omega_hat, omega_*, regularity and omega_* ratios."""
        r = profile.grid.radii
        omega = profile.source.density(r)
        hat = profile.hat(r)
        star = profile.star(r)
        ratio = np.asarray(profile.ratio_table["ratio"])
        return [
            {"r": float(r[i]), "omega": float(omega[i]), "omega_hat": float(hat[i]), "omega_star": float(star[i]),
             "regularity_ratio": float(ratio[i]), "star_ratio": float(star[i] / ((1.0 - r[i]) * hat[i]))}
            for i in range(r.size)
        ]

    def _deep_ratios(self, engine: RadialIntegrals) -> np.ndarray:
        window = np.linspace(0.0, np.pi, DEEP_WINDOW)
        out = []
        for j in DEEP_LEVELS:
            t_j = 1.0 + j * np.log(2.0)
            out.append(float(np.min(engine.regularity_ratio_t(t_j + window))))
        return np.array(out)

    def _classify_ratio(self, ratio: np.ndarray, deep: np.ndarray) -> WeightClass:
        if deep[-1] > self.brackets.divergence_factor * deep[0]:
            return WeightClass.RAPIDLY_INCREASING
        values = np.concatenate([ratio, deep])
        if np.max(values) / np.min(values) < self.brackets.regular_spread:
            return WeightClass.REGULAR
        return WeightClass.INCONCLUSIVE

    def _tail_window(self, ratio: np.ndarray, grid: RadialGrid, window: int) -> Tuple[float, float, bool]:
        level = grid.level_index
        last = level > grid.levels - window
        previous = (level > grid.levels - window - 1) & (level < grid.levels)
        A, B = float(np.min(ratio[last])), float(np.max(ratio[last]))
        A_prev, B_prev = float(np.min(ratio[previous])), float(np.max(ratio[previous]))
        stable = (abs(A - A_prev) <= STABILITY_TOLERANCE * A) and (abs(B - B_prev) <= STABILITY_TOLERANCE * B)
        return A, B, bool(stable)

    def _star_exponents(self, engine: RadialIntegrals, radii: np.ndarray,
                          delta: float) -> Tuple[Optional[float], Optional[float]]:
        r = radii[radii >= delta]
        log_star = np.log(engine.star(r))
        log_gap = np.log1p(-r)

        def decreasing(x):
            return bool(np.all(np.diff(log_star - x * log_gap) < 0))

        def increasing(x):
            return bool(np.all(np.diff(log_star - x * log_gap) > 0))

        a_exp = b_exp = None
        if decreasing(0.0):
            sup_dec = _bisect(decreasing, 0.0, EXPONENT_CEILING)
            if sup_dec - EXPONENT_SLACK > 1.0:
                a_exp = sup_dec - EXPONENT_SLACK
        if increasing(EXPONENT_CEILING):
            inf_inc = _bisect(lambda x: not increasing(x), 0.0, EXPONENT_CEILING)
            b_exp = inf_inc + EXPONENT_SLACK
        return a_exp, b_exp

    def _tail_exponents(self, A: float, B: float) -> Tuple[Optional[float], Optional[float], Optional[float]]:
        if not (A > 0 and np.isfinite(B)):
            return None, None, None
        epsilon = A / 2.0
        for _ in range(60):
            if 2.0 / (B + epsilon) + 1.0 - 1.0 / (A - epsilon) > 0:
                return epsilon, 1.0 / (B + epsilon) - 1.0, 1.0 / (A - epsilon) - 1.0
            epsilon /= 2.0
        return None, None, None


def _bisect(predicate, lo: float, hi: float, iterations: int = 60) -> float:
    """Largest x in [lo, hi] with predicate(x) true, for predicates true on an initial segment."""
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _radii(r, allow_zero: bool) -> np.ndarray:
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r > 1) or np.any(r < 0) or (not allow_zero and np.any(r == 0)):
        bound = "[0, 1]" if allow_zero else "(0, 1]"
        raise SpecError(f"Radius must lie in {bound}, got {r[(r > 1) | (r < 0) | (r == 0)][:3].tolist()}")
    return r
