"""
Built-in radial weight families.

Each family gives its density on [0, 1) and its boundary-coordinate form
h(t) = omega(1 - e^{1-t}) e^{1-t}, where t = log(e/(1-r)). In that coordinate
all built-in weights are smooth between the panel edges used by the radial
integrator, and their tails beyond the integration window are available in
closed or asymptotic form.
"""
import logging
from typing import Dict, Sequence

import numpy as np
from scipy import special

from app.domain.errors import WeightValidationError
from app.domain.services.weight_law import WeightLaw

logger = logging.getLogger(__name__)

KINK_COUNT = 32
TAIL_HALF_PERIODS = 4096
_TAIL_NODES, _TAIL_WEIGHTS = special.roots_legendre(16)


def boundary_coordinate(r) -> np.ndarray:
    """t = log(e/(1-r)) = 1 - log(1-r)."""
    return 1.0 - np.log1p(-np.asarray(r, dtype=float))


def gap_from_boundary(t) -> np.ndarray:
    """1 - r = e^{1-t}."""
    return np.exp(1.0 - np.asarray(t, dtype=float))


def radius_from_boundary(t) -> np.ndarray:
    """r = 1 - e^{1-t}, accurate for t close to 1."""
    return -np.expm1(1.0 - np.asarray(t, dtype=float))


class StandardLaw(WeightLaw):
    """(1-r)^alpha, alpha > -1."""

    tag = "std"

    def __init__(self, alpha: float = 0.0):
        if not alpha > -1:
            raise WeightValidationError(f"std weight needs alpha > -1, got {alpha}")
        self.alpha = float(alpha)

    @property
    def params(self) -> Dict[str, float]:
        return {"alpha": self.alpha}

    def density(self, r):
        return (1.0 - r) ** self.alpha

    def boundary_density(self, t):
        return np.exp((self.alpha + 1.0) * (1.0 - t))

    def tail_mass(self, t):
        return float(np.exp((self.alpha + 1.0) * (1.0 - t)) / (self.alpha + 1.0))

    def log_boundary_density(self, t):
        return (self.alpha + 1.0) * (1.0 - np.asarray(t, dtype=float))

    def tail_ratio(self, t):
        return 1.0 / (self.alpha + 1.0)

    def closed_hat(self, r):
        return (1.0 - np.asarray(r, dtype=float)) ** (self.alpha + 1.0) / (self.alpha + 1.0)

    def closed_moments(self, n):
        n = np.asarray(n, dtype=float)
        return np.exp(special.betaln(n + 1.0, self.alpha + 1.0))


class LogPowerLaw(WeightLaw):
    """v_{alpha,beta}(r) = (1-r)^alpha (log e/(1-r))^beta.

    Integrable when alpha > -1, or alpha = -1 and beta < -1.
    """

    tag = "logpow"

    def __init__(self, alpha: float = 0.0, beta: float = 0.0):
        alpha, beta = float(alpha), float(beta)
        if not (alpha > -1 or (alpha == -1 and beta < -1)):
            raise WeightValidationError(
                f"logpow weight needs alpha > -1, or alpha = -1 and beta < -1; got alpha={alpha}, beta={beta}")
        self.alpha = alpha
        self.beta = beta

    @property
    def params(self) -> Dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta}

    def density(self, r):
        return (1.0 - r) ** self.alpha * boundary_coordinate(r) ** self.beta

    def boundary_density(self, t):
        return np.exp((self.alpha + 1.0) * (1.0 - t)) * t ** self.beta

    def tail_mass(self, t):
        if self.alpha == -1:
            return float(t ** (self.beta + 1.0) / (-self.beta - 1.0))
        k = self.alpha + 1.0
        if self.beta > -1:
            # e^k k^{-(beta+1)} Gamma(beta+1, k t)
            log_scale = k - (self.beta + 1.0) * np.log(k) + special.gammaln(self.beta + 1.0)
            return float(np.exp(log_scale) * special.gammaincc(self.beta + 1.0, k * t))
        return float(self.boundary_density(t) / (k - self.beta / t))

    def log_boundary_density(self, t):
        t = np.asarray(t, dtype=float)
        return (self.alpha + 1.0) * (1.0 - t) + self.beta * np.log(t)

    def tail_ratio(self, t):
        if self.alpha == -1:
            return float(t / (-self.beta - 1.0))
        return float(1.0 / (self.alpha + 1.0 - self.beta / t))

    def closed_hat(self, r):
        if self.alpha != -1:
            return None
        return boundary_coordinate(r) ** (self.beta + 1.0) / (-self.beta - 1.0)


class ExponentialLaw(WeightLaw):
    """exp(-beta (log e/(1-r))^alpha), alpha > 0, beta > 0."""

    tag = "exp"

    def __init__(self, alpha: float = 0.5, beta: float = 1.0):
        if not (alpha > 0 and beta > 0):
            raise WeightValidationError(f"exp weight needs alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}")
        self.alpha = float(alpha)
        self.beta = float(beta)

    @property
    def params(self) -> Dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta}

    def density(self, r):
        return np.exp(-self.beta * boundary_coordinate(r) ** self.alpha)

    def boundary_density(self, t):
        return np.exp(-self.beta * t ** self.alpha + 1.0 - t)

    def tail_mass(self, t):
        return float(self.boundary_density(t) / (1.0 + self.alpha * self.beta * t ** (self.alpha - 1.0)))

    def log_boundary_density(self, t):
        t = np.asarray(t, dtype=float)
        return -self.beta * t ** self.alpha + 1.0 - t

    def tail_ratio(self, t):
        return float(1.0 / (1.0 + self.alpha * self.beta * t ** (self.alpha - 1.0)))


class OscillatingLaw(WeightLaw):
    """|sin(log 1/(1-r))| v_{-1,beta}(r) + 1, beta < -1.

    h has kinks at t = 1 + k pi; they are reported as breakpoints up to
    KINK_COUNT half-periods.
    """

    tag = "osc"

    def __init__(self, beta: float = -2.0):
        if not beta < -1:
            raise WeightValidationError(f"osc weight needs beta < -1, got {beta}")
        self.beta = float(beta)

    @property
    def params(self) -> Dict[str, float]:
        return {"beta": self.beta}

    def density(self, r):
        t = boundary_coordinate(r)
        return np.abs(np.sin(t - 1.0)) * t ** self.beta / (1.0 - r) + 1.0

    def boundary_density(self, t):
        return np.abs(np.sin(t - 1.0)) * t ** self.beta + np.exp(1.0 - t)

    def tail_mass(self, t):
        # whole half-periods up to an aligned far point, then the mean 2/pi of |sin|
        t = float(t)
        first = int(np.ceil((t - 1.0) / np.pi))
        aligned = 1.0 + np.pi * np.arange(first, first + TAIL_HALF_PERIODS + 1)
        edges = np.concatenate([[t], aligned[aligned > t]])
        half = 0.5 * np.diff(edges)
        s = (0.5 * (edges[1:] + edges[:-1]))[:, None] + half[:, None] * _TAIL_NODES[None, :]
        body = float(np.sum(np.abs(np.sin(s - 1.0)) * s ** self.beta * half[:, None] * _TAIL_WEIGHTS[None, :]))
        far = float(edges[-1])
        return body + float(2.0 / np.pi * far ** (self.beta + 1.0) / (-self.beta - 1.0) + np.exp(1.0 - t))

    def breakpoints(self):
        return 1.0 + np.pi * np.arange(1, KINK_COUNT + 1)


class SquaredStandardLaw(WeightLaw):
    """(1-r^2)^alpha, alpha > -1."""

    tag = "sqstd"

    def __init__(self, alpha: float = 0.0):
        if not alpha > -1:
            raise WeightValidationError(f"sqstd weight needs alpha > -1, got {alpha}")
        self.alpha = float(alpha)

    @property
    def params(self) -> Dict[str, float]:
        return {"alpha": self.alpha}

    def density(self, r):
        return ((1.0 - r) * (1.0 + r)) ** self.alpha

    def boundary_density(self, t):
        x = gap_from_boundary(t)
        return x ** (self.alpha + 1.0) * (2.0 - x) ** self.alpha

    def tail_mass(self, t):
        return float(2.0 ** self.alpha * np.exp((self.alpha + 1.0) * (1.0 - t)) / (self.alpha + 1.0))

    def log_boundary_density(self, t):
        x = gap_from_boundary(t)
        return (self.alpha + 1.0) * (1.0 - np.asarray(t, dtype=float)) + self.alpha * np.log(2.0 - x)

    def tail_ratio(self, t):
        return 1.0 / (self.alpha + 1.0)

    def closed_hat(self, r):
        r = np.asarray(r, dtype=float)
        one_minus_sq = (1.0 - r) * (1.0 + r)
        scale = 0.5 * special.beta(0.5, self.alpha + 1.0)
        return scale * special.betainc(self.alpha + 1.0, 0.5, one_minus_sq)

    def closed_moments(self, n):
        n = np.asarray(n, dtype=float)
        return 0.5 * np.exp(special.betaln((n + 1.0) / 2.0, self.alpha + 1.0))


class CustomSampledLaw(WeightLaw):
    """Tabulated weight: log-linear between nodes, power-law tail past the last node."""

    tag = "file"

    def __init__(self, radii: Sequence[float], values: Sequence[float], source: str = ""):
        radii = np.asarray(radii, dtype=float)
        values = np.asarray(values, dtype=float)
        if radii.ndim != 1 or radii.size < 2 or radii.size != values.size:
            raise WeightValidationError("Sampled weight needs at least two (r, omega) rows")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise WeightValidationError("Sampled weight values must be finite and positive")
        if radii[0] < 0 or radii[-1] >= 1 or np.any(np.diff(radii) <= 0):
            raise WeightValidationError("Sampled radii must increase strictly within [0, 1)")
        self.radii = radii
        self.log_values = np.log(values)
        self.source = source
        gaps = 1.0 - radii[-2:]
        self.kappa = float((self.log_values[-1] - self.log_values[-2]) / np.log(gaps[1] / gaps[0]))
        if not self.kappa > -1:
            raise WeightValidationError(f"Sampled weight tail exponent {self.kappa:.4g} is not integrable")
        logger.debug(f"Sampled weight from {source or 'memory'}: {radii.size} nodes, tail exponent {self.kappa:.4g}")

    @property
    def params(self) -> Dict[str, float]:
        return {"nodes": float(self.radii.size), "tail_exponent": self.kappa}

    def _tail(self, gap):
        last_gap = 1.0 - self.radii[-1]
        return np.exp(self.log_values[-1]) * (gap / last_gap) ** self.kappa

    def density(self, r):
        r = np.asarray(r, dtype=float)
        inner = np.exp(np.interp(r, self.radii, self.log_values))
        return np.where(r > self.radii[-1], self._tail(1.0 - r), inner)

    def boundary_density(self, t):
        t = np.asarray(t, dtype=float)
        x = gap_from_boundary(t)
        inner = np.exp(np.interp(radius_from_boundary(t), self.radii, self.log_values)) * x
        return np.where(t > boundary_coordinate(self.radii[-1]), self._tail(x) * x, inner)

    def tail_mass(self, t):
        t = max(float(t), float(boundary_coordinate(self.radii[-1])))
        x = float(gap_from_boundary(t))
        return float(self._tail(x) * x / (self.kappa + 1.0))

    def log_boundary_density(self, t):
        t = np.asarray(t, dtype=float)
        t_last = float(boundary_coordinate(self.radii[-1]))
        tail = self.log_values[-1] + (self.kappa + 1.0) * (t_last - t) + (1.0 - t_last)
        with np.errstate(divide="ignore"):
            inner = np.log(self.boundary_density(np.minimum(t, t_last)))
        return np.where(t > t_last, tail, inner)

    def tail_ratio(self, t):
        return 1.0 / (self.kappa + 1.0)

    def breakpoints(self):
        return boundary_coordinate(self.radii)


FAMILIES = {
    StandardLaw.tag: StandardLaw,
    LogPowerLaw.tag: LogPowerLaw,
    ExponentialLaw.tag: ExponentialLaw,
    OscillatingLaw.tag: OscillatingLaw,
    SquaredStandardLaw.tag: SquaredStandardLaw,
}
