"""
Operator service: Carleson-type functionals of weighted composition
operators u C_phi : A^p_omega -> L^q_mu.

Every sup functional is sampled on the dyadic a-grid of `refinement` and the
pushforward nu of |u|^q d(mu) under phi is represented by a point cloud. When
u is constant, phi is the identity and mu is a profiled weighted area, nu is
a multiple of mu and the exact radial integrals are used instead.
"""
import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.core import geometry, quadrature
from app.core.pushforward import PushforwardCloud
from app.core.refinement import a_grid, cell_levels, diverges, grid_report, level_maxima
from app.core.services.quadrature_service import QuadratureService
from app.core.services.space_service import SpaceService
from app.core.services.weight_service import WeightService
from app.core.utils.thread_manager import ThreadManager
from app.domain.errors import SpecError
from app.domain.models import (
    AnalyticMap, BlaschkeProduct, BracketConfig, FunctionalReport, GridConfig, Measure,
    OperatorSpec, PseudoDisk, PushforwardSpec, WeightProfile
)

OUTER_ORDER = 4
OUTER_ANGULAR_BASE = 16
# a-values times cloud points evaluated per task
CHUNK_ENTRIES = 1 << 21
PSI_MODES = ("printed", "switch")
PHI_R_CELLS = 4
PHI_R_ANGULAR_ORDER = 4


class OperatorService:
    """Service for the sup, limsup and mixed-norm functionals of u C_phi."""

    def __init__(self, grid: Optional[GridConfig] = None, brackets: Optional[BracketConfig] = None,
                 weight_service: Optional[WeightService] = None,
                 space_service: Optional[SpaceService] = None,
                 quadrature_service: Optional[QuadratureService] = None,
                 thread_manager: Optional[ThreadManager] = None):
        self.grid = grid or GridConfig()
        self.brackets = brackets or BracketConfig()
        self.weights = weight_service or WeightService(self.brackets)
        self.spaces = space_service or SpaceService(self.grid)
        self.quadrature = quadrature_service or QuadratureService(self.grid)
        self.threads = thread_manager or ThreadManager.instance()
        self.logger = logging.getLogger(__name__)
        self._clouds: Dict[tuple, Tuple[PushforwardSpec, PushforwardCloud]] = {}

    # grids and clouds

    def a_points(self, levels: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        return a_grid(levels or self.grid.a_levels, self.grid.a_angular_base, self.grid.a_angular_cap)

    def outer_quadrature(self) -> quadrature.DiskQuadrature:
        """Rule for the outer integrals over a (mixed norms, Schatten)."""
        return quadrature.DiskQuadrature(self.grid.outer_levels, OUTER_ORDER, OUTER_ANGULAR_BASE,
                                         self.grid.outer_angular_cap)

    def pushforward_cloud(self, push: PushforwardSpec) -> PushforwardCloud:
        key = (id(push.u), id(push.phi), id(push.base), push.exponent)
        if key not in self._clouds:
            levels = max(self.grid.quad_levels, self.grid.a_levels)
            self._clouds[key] = (push, self.quadrature.pushforward_cloud(push, levels))
        return self._clouds[key][1]

    def describe_grid(self, levels: Optional[int] = None) -> Dict[str, int]:
        return {
            "a_levels": int(levels or self.grid.a_levels),
            "a_angular_base": self.grid.a_angular_base,
            "a_angular_cap": self.grid.a_angular_cap,
            "quad_levels": max(self.grid.quad_levels, self.grid.a_levels),
            "quad_order": self.grid.quad_order,
            "angular_base": self.grid.angular_base,
            "angular_cap": self.grid.angular_cap,
        }

    # Carleson constants and the test-function sup

    def carleson_constant(self, mu: Measure, profile: WeightProfile, p: float, q: float,
                          levels: Optional[int] = None) -> FunctionalReport:
        """sup_a mu(S(a)) / omega(S(a))^{q/p} over the a-grid."""
        _require_p_le_q(p, q)
        points, level = self.a_points(levels)
        ratios = self.quadrature.box_masses(mu, points) / profile.box_mass(points) ** (q / p)
        report = grid_report("carleson", ratios, points, level, self.describe_grid(levels))
        self.logger.info(f"Carleson constant of {mu.label}: {report.value:.6g} at a={report.witness:.4f}")
        return report

    def pushforward_carleson(self, spec: OperatorSpec, levels: Optional[int] = None) -> FunctionalReport:
        """Carleson constant of nu = |u|^q d(mu) o phi^{-1}."""
        _require_p_le_q(spec.p, spec.q)
        points, level = self.a_points(levels)
        masses = self._nu_box_masses(spec.pushforward(), points)
        ratios = masses / spec.profile.box_mass(points) ** (spec.q / spec.p)
        report = grid_report("carleson", ratios, points, level, self.describe_grid(levels))
        self.logger.info(f"Carleson constant of the pushforward: {report.value:.6g}")
        return report

    def boundedness_functional(self, spec: OperatorSpec, levels: Optional[int] = None) -> FunctionalReport:
        """sup_a of the integral of |F_{a,p,gamma}(phi)|^q |u|^q d(mu)."""
        _require_p_le_q(spec.p, spec.q)
        points, level = self.a_points(levels)
        self.logger.info(f"Boundedness functional over {points.size} a-values")
        values = self._test_integrals(spec.pushforward(), spec.profile, points, spec.p, spec.shape, spec.q)
        normalized = values / self._norm_powers(spec.profile, points, spec.p, spec.shape, spec.q)
        report = grid_report("bounded", values, points, level, self.describe_grid(levels), normalized)
        report.diagnostics["gamma"] = spec.shape
        self.logger.info(f"Boundedness functional: {report.value:.6g} (normalized {report.normalized_value:.6g})")
        return report

    # essential norm estimator

    def essential_norm_functional(self, spec: OperatorSpec, j0: Optional[int] = None,
                                  levels: Optional[int] = None) -> FunctionalReport:
        """Per-level sups over |a| = 1 - 2^{-j}, j = j0..J; the value is the max over the last levels."""
        if not 1 <= spec.p <= spec.q:
            raise SpecError(f"Essential norm functional needs 1 <= p <= q, got p={spec.p}, q={spec.q}")
        J = int(levels or self.grid.a_levels)
        j0 = int(self.grid.j0 if j0 is None else j0)
        if not 1 <= j0 <= J:
            raise SpecError(f"Tail start j0={j0} must lie in [1, {J}]")
        points, level = self.a_points(J)
        keep = level >= j0
        points, level = points[keep], level[keep]
        values = self._test_integrals(spec.pushforward(), spec.profile, points, spec.p, spec.shape, spec.q)
        normalized = values / self._norm_powers(spec.profile, points, spec.p, spec.shape, spec.q)
        index, per_level = level_maxima(values, level)
        normalized_levels = level_maxima(normalized, level)[1]

        window = min(self.grid.tail_window, per_level.size)
        tail = level >= index[-window]
        best = int(np.argmax(np.where(tail, values, -np.inf)))
        report = FunctionalReport(
            kind="essnorm",
            value=float(values[best]),
            witness=complex(points[best]),
            grid={**self.describe_grid(J), "j0": j0},
            levels=[float(v) for v in per_level],
            normalized_value=float(np.max(normalized_levels[-window:])),
            normalized_levels=[float(v) for v in normalized_levels],
            diagnostics={
                "level_index": [int(j) for j in index],
                "monotone_decay": bool(np.all(np.diff(per_level) <= 0)),
                "gamma": spec.shape,
            },
        )
        if diverges(report.levels):
            report.flags.append("divergent")
        self.logger.info(f"Essential norm estimate {report.value:.6g} over levels {j0}..{J}")
        return report

    # restricted measures

    def restricted_constant(self, spec: OperatorSpec, r: float, levels: Optional[int] = None) -> FunctionalReport:
        """sup_a nu_r(S(a)) / omega(S(a))^{q/p} with nu_r = nu restricted to |w| >= r.

        Diagnostics carry N_r^* = sup_{|a| > r} of the test-function integral,
        N_r = sup_{|a| >= r} nu(S(a)) / omega(S(a))^{q/p} and the largest
        covering count over the grid points with |a| < r.
        """
        if not 0.5 < r < 1.0:
            raise SpecError(f"Restriction radius must satisfy 1/2 < r < 1, got {r}")
        _require_p_le_q(spec.p, spec.q)
        points, level = self.a_points(levels)
        push = spec.pushforward()
        rho = np.abs(points)
        outer = rho > r
        if not np.any(outer):
            raise SpecError(f"The a-grid has no radius above r={r}; raise the number of levels")

        box = spec.profile.box_mass(points) ** (spec.q / spec.p)
        n_star = float(np.max(self._test_integrals(push, spec.profile, points[outer], spec.p, spec.shape, spec.q)))
        full = self._nu_box_masses(push, points) / box
        n_r = float(np.max(full[rho >= r]))
        restricted = self._restricted_box_masses(push, points, r) / box
        inner = points[rho < r]
        count = int(np.max(covering_count(inner, r))) if inner.size else 1

        report = grid_report("restricted", restricted, points, level, {**self.describe_grid(levels), "r": r})
        bound = self.brackets.restricted_constant * n_star
        if n_star > 0:
            ratio = report.value / n_star
        else:
            ratio = 0.0 if report.value == 0 else float("inf")
        report.diagnostics.update({
            "N_r_star": n_star,
            "N_r": n_r,
            "covering_count": count,
            "bound_constant": self.brackets.restricted_constant,
            "bound_ratio": ratio,
        })
        if report.value > bound:
            report.flags.append("bound_exceeded")
        self.logger.info(f"Restricted constant at r={r}: {report.value:.6g} vs N_r*={n_star:.6g}")
        return report

    # mixed-norm functionals for q < p

    def psi_functional(self, spec: OperatorSpec, a: complex, mode: str = "printed") -> float:
        """Psi(a) = integral of |F_{a,p,gamma}(phi)|^e |u|^q d(mu), e = p as printed or q in switch mode."""
        _require_q_lt_p(spec)
        power = _psi_power(spec, mode)
        return float(self._test_integrals(spec.pushforward(), spec.profile, np.array([complex(a)]),
                                          spec.p, spec.shape, power)[0])

    def psi_mixed_norm(self, spec: OperatorSpec, mode: str = "printed") -> FunctionalReport:
        """||Psi||_{L^{p/(p-q)}_omega}, with the other exponent mode recorded alongside."""
        _require_q_lt_p(spec)
        _psi_power(spec, mode)
        z, _ = self._outer_nodes()
        results = {}
        for name in PSI_MODES:
            power = _psi_power(spec, name)
            values = self._test_integrals(spec.pushforward(), spec.profile, z, spec.p, spec.shape, power)
            normalized = values / self._norm_powers(spec.profile, z, spec.p, spec.shape, power)
            results[name] = (self._mixed_norm(values, spec), self._mixed_norm(normalized, spec))

        (value, levels), (normalized_value, normalized_levels) = results[mode]
        other = PSI_MODES[1 - PSI_MODES.index(mode)]
        report = FunctionalReport(
            kind="psi",
            value=value,
            grid=self._outer_descriptor(),
            levels=levels,
            normalized_value=normalized_value,
            normalized_levels=normalized_levels,
            diagnostics={
                "mode": mode,
                "exponent": _mixed_exponent(spec),
                "alternate_mode": other,
                "alternate_value": results[other][0][0],
                "alternate_normalized_value": results[other][1][0],
                "gamma": spec.shape,
            },
        )
        if diverges(levels):
            report.flags.append("divergent")
        self.logger.info(f"Psi mixed norm ({mode}): {value:.6g}, {other}: {results[other][0][0]:.6g}")
        return report

    def maximal_function(self, spec: OperatorSpec, levels: Optional[int] = None) -> Callable[[np.ndarray], np.ndarray]:
        """M_omega(nu)(z) = sup over grid boxes S(a) containing z of nu(S(a)) / omega(S(a))."""
        points, _ = self.a_points(levels)
        ratios = self._nu_box_masses(spec.pushforward(), points) / spec.profile.box_mass(points)

        def evaluate(z):
            z = np.asarray(z, dtype=complex)
            out = np.zeros(z.shape)
            for a, ratio in zip(points, ratios):
                out = np.where(geometry.in_carleson_box(a, z), np.maximum(out, ratio), out)
            return out

        return evaluate

    def cone_function(self, spec: OperatorSpec) -> Callable[[np.ndarray], np.ndarray]:
        """Q(z) = integral over Gamma(z) of d nu(xi) / omega(T(xi))."""
        cloud = self.pushforward_cloud(spec.pushforward())
        points = cloud.points
        tents = spec.profile.tent_mass(points)
        tents = np.where(points == 0, spec.profile.box_mass(np.zeros(1))[0], tents)
        weights = cloud.masses / tents
        modulus = np.abs(points)
        size = max(1, CHUNK_ENTRIES // max(cloud.size, 1))

        def evaluate(z):
            z = np.atleast_1d(np.asarray(z, dtype=complex))
            out = np.zeros(z.shape)
            flat = z.ravel()
            if cloud.size == 0:
                return out
            for start in range(0, flat.size, size):
                block = flat[start:start + size]
                angle = np.abs(np.angle(points[None, :] * np.conj(block)[:, None]))
                inside = angle < 0.5 * (1.0 - modulus[None, :] / np.abs(block)[:, None])
                out.ravel()[start:start + size] = inside @ weights
            return out

        return evaluate

    def phi_r_function(self, spec: OperatorSpec, r: float) -> Callable[[np.ndarray], np.ndarray]:
        """Phi_r(z) = integral over Gamma(z) of nu(Delta(xi, r)) / omega(T(xi)) dA(xi) / (1-|xi|)^2."""
        if not 0.0 < r < 1.0:
            raise SpecError(f"Pseudo-hyperbolic radius must lie in (0, 1), got {r}")
        push = spec.pushforward()

        def evaluate(z):
            z = np.atleast_1d(np.asarray(z, dtype=complex))
            out = np.zeros(z.shape)
            for i, vertex in enumerate(z.ravel()):
                nodes, weights = quadrature.stolz_rule(vertex, PHI_R_CELLS, PHI_R_ANGULAR_ORDER)
                masses = self._pseudo_disk_masses(push, nodes, r)
                integrand = masses / spec.profile.tent_mass(nodes) / (1.0 - np.abs(nodes)) ** 2
                out.ravel()[i] = float(np.sum(integrand * weights))
            return out

        return evaluate

    def remark2_functionals(self, spec: OperatorSpec, experimental: bool = False,
                            r: float = 0.5) -> FunctionalReport:
        """L^{p/(p-q)}_omega norms of M_omega(nu), Q and Psi; Phi_r only in experimental mode."""
        _require_q_lt_p(spec)
        z, _ = self._outer_nodes()
        maximal = self.maximal_function(spec)(z)
        cone = self.cone_function(spec)(z)
        m_norm, m_levels = self._mixed_norm(maximal, spec)
        q_norm, q_levels = self._mixed_norm(cone, spec)
        psi = self.psi_mixed_norm(spec)
        norms = {"M_norm": m_norm, "Q_norm": q_norm, "psi_norm": psi.normalized_value}
        if experimental:
            phi_r = self.phi_r_function(spec, r)(z)
            norms["Phi_norm"] = self._mixed_norm(phi_r, spec)[0]
        positive = [v for v in norms.values() if v > 0]
        spread = max(positive) / min(positive) if positive else 1.0

        report = FunctionalReport(
            kind="remark2",
            value=m_norm,
            grid=self._outer_descriptor(),
            levels=m_levels,
            diagnostics={**norms, "Q_levels": q_levels, "spread": spread,
                         "exponent": _mixed_exponent(spec), "experimental": experimental},
        )
        if diverges(m_levels) or diverges(q_levels) or psi.divergent:
            report.flags.append("divergent")
        self.logger.info(f"Mixed norms: M={m_norm:.6g}, Q={q_norm:.6g}, Psi={psi.normalized_value:.6g}")
        return report

    # Schatten functional

    def schatten_functional(self, u: AnalyticMap, phi: AnalyticMap, profile: WeightProfile,
                            p: float, r: float) -> FunctionalReport:
        """Integral of (sigma(Delta(z, r)) / omega_*(z))^{p/2} dA(z) / (1-|z|^2)^2.

        sigma is the pushforward of |u|^2 omega dA under phi. The weight must
        pass the log^2 integrability check first (HypothesisFailed otherwise).
        Levels are running totals over the dyadic cells of the outer rule.
        """
        if p <= 0:
            raise SpecError(f"Schatten exponent must be positive, got {p}")
        if not 0.0 < r < 1.0:
            raise SpecError(f"Pseudo-hyperbolic radius must lie in (0, 1), got {r}")
        log2 = self.weights.log2_hypothesis(profile)
        base = Measure(label=f"warea:{profile.source.spec}", density=profile.source, profile=profile, radial=True)
        push = PushforwardSpec(u, phi, base, 2.0, label="sigma")

        cells = []
        for z, w in self.outer_quadrature().cells():
            masses = self._pseudo_disk_masses(push, z, r)
            modulus = np.abs(z)
            integrand = (masses / profile.star(modulus)) ** (p / 2.0) / (1.0 - modulus ** 2) ** 2
            quadrature._check_finite(integrand)
            cells.append(float(np.sum(integrand * w)))
        levels = cell_levels(cells)
        report = FunctionalReport(
            kind="schatten",
            value=levels[-1],
            grid=self._outer_descriptor(),
            levels=levels,
            diagnostics={"p": p, "r": r, "log2_integral": log2},
        )
        if diverges(levels):
            report.flags.append("divergent")
        self.logger.info(f"Schatten functional p={p}, r={r}: {report.value:.6g}")
        return report

    # multiplier bound shape

    def multiplier_bound_profile(self, u: AnalyticMap, phi: AnalyticMap, profile: WeightProfile,
                                 p: float, levels: int = 10) -> FunctionalReport:
        """sup over the z-grid of omega(S(phi(z))) / omega(S(z)) and of |u| against its p'-shape.

        The implied constant max(K^b, K), K = m + 2n(1+d)/(1-d) and b the
        upper exponent of omega_*, is reported with the split at r_0.
        """
        if not 1.0 < p < float("inf"):
            raise SpecError(f"Multiplier bound needs 1 < p < inf, got {p}")
        if not isinstance(phi, BlaschkeProduct):
            raise SpecError(f"Multiplier bound needs a finite Blaschke product, got {phi.spec}")
        points, level = self.a_points(levels)
        images = phi(points)
        ratio = profile.box_mass(images) / profile.box_mass(points)
        conjugate = p / (p - 1.0)
        shape = ratio ** (conjugate - 1.0)
        modulus_u = np.abs(u(points))

        data = phi.data
        K = geometry.blaschke_bound(data)
        implied = max(K ** profile.b_exp, K) if profile.b_exp is not None else None
        r0 = self._blaschke_r0(phi, data, profile.delta)
        inside = np.abs(points) <= r0
        shrinking = ~inside & (np.abs(images) < np.abs(points))

        report = grid_report("multbound", ratio, points, level, {**self.describe_grid(levels), "p": p})
        report.diagnostics.update({
            "shape_sup": float(np.max(shape)),
            "u_sup": float(np.max(modulus_u)),
            "u_over_shape": float(np.max(modulus_u / shape)),
            "blaschke_bound": K,
            "b_exp": profile.b_exp,
            "implied_bound": implied,
            "r0": r0,
            "sup_inside_r0": float(np.max(ratio[inside])) if np.any(inside) else None,
            "sup_shrinking": float(np.max(ratio[shrinking])) if np.any(shrinking) else None,
            "sup_expanding": float(np.max(ratio[~inside & ~shrinking])) if np.any(~inside & ~shrinking) else None,
        })
        if not profile.regular:
            report.flags.append("not_regular")
        self.logger.info(f"Multiplier ratio sup {report.value:.6g} (implied bound {implied})")
        return report

    def _blaschke_r0(self, phi: BlaschkeProduct, data, delta: float) -> float:
        """First sampled radius past max(c, delta) where |phi| >= delta on the whole circle."""
        start = max(data.c, delta)
        radii = np.linspace(start, 1.0, 258)[1:-1]
        moduli = geometry.boundary_modulus_profile(phi, radii, self.grid.boundary_samples)
        hits = np.nonzero(moduli >= delta)[0]
        return float(radii[hits[0]]) if hits.size else float(radii[-1])

    # helpers

    def _identity_scale(self, push: PushforwardSpec) -> Optional[float]:
        """|c|^q when u = c, phi(z) = z and the base is a profiled weighted area without atoms."""
        base = push.base
        if base.profile is None or base.atoms or base.density is None:
            return None
        if push.u.degree != 0 or push.phi.degree != 1:
            return None
        sample = np.array([0.0, 0.5, 0.5j])
        if not np.allclose(push.phi(sample), sample, rtol=0.0, atol=1e-15):
            return None
        constant = complex(np.ravel(push.u(np.zeros(1)))[0])
        return float(abs(constant) ** push.exponent)

    def _test_integrals(self, push: PushforwardSpec, profile: WeightProfile, centers: np.ndarray,
                        p: float, gamma: float, power: float) -> np.ndarray:
        """Integral of |F_{a,p,gamma}|^power d nu for each center a."""
        centers = np.asarray(centers, dtype=complex)
        exponent = (gamma + 1.0) / p * power
        box = profile.box_mass(centers) ** (-power / p)
        scale = self._identity_scale(push)
        if scale is not None:
            rho = np.abs(centers)
            means = {r: self.spaces.power_mean(push.base.profile, r, exponent - 1.0) for r in np.unique(rho)}
            return scale * np.array([means[r] for r in rho]) * box

        cloud = self.pushforward_cloud(push)
        if cloud.size == 0:
            return np.zeros(centers.shape)
        w, m = cloud.points, cloud.masses
        size = max(1, CHUNK_ENTRIES // cloud.size)

        def task(chunk: slice) -> np.ndarray:
            a = centers[chunk]
            gap = np.abs(1.0 - np.conj(a)[:, None] * w[None, :])
            return np.power((1.0 - np.abs(a) ** 2)[:, None] / gap, exponent) @ m

        chunks = [slice(start, start + size) for start in range(0, centers.size, size)]
        values = np.concatenate(self.threads.map(task, chunks))
        quadrature._check_finite(values)
        return values * box

    def _norm_powers(self, profile: WeightProfile, centers: np.ndarray, p: float, gamma: float,
                     power: float) -> np.ndarray:
        """||F_a||_{A^p_omega}^power per center."""
        rho = np.abs(np.asarray(centers, dtype=complex))
        norms = {}
        for r in np.unique(rho):
            tf = self.spaces.make_test_function(profile, complex(r), p, gamma)
            norms[r] = self.spaces.test_function_norm(profile, tf) ** power
        return np.array([norms[r] for r in rho])

    def _nu_box_masses(self, push: PushforwardSpec, centers: np.ndarray) -> np.ndarray:
        scale = self._identity_scale(push)
        if scale is not None:
            return scale * self.quadrature.box_masses(push.base, centers)
        return self.pushforward_cloud(push).box_masses(centers)

    def _restricted_box_masses(self, push: PushforwardSpec, centers: np.ndarray, r: float) -> np.ndarray:
        scale = self._identity_scale(push)
        if scale is None:
            return self.pushforward_cloud(push).restricted(r).box_masses(centers)
        # S(a) cut to |z| >= r keeps its angular width above max(|a|, r)
        rho = np.abs(centers)
        first = push.base.profile.engine.first_moment(np.maximum(rho, r))
        mass = np.where(rho == 0, 2.0 * first, (1.0 - rho) / np.pi * first)
        return scale * mass

    def _pseudo_disk_masses(self, push: PushforwardSpec, centers: np.ndarray, r: float) -> np.ndarray:
        scale = self._identity_scale(push)
        if scale is not None:
            return scale * np.array([self.quadrature.measure_of_region(push.base, PseudoDisk(complex(c), r))
                                     for c in np.ravel(centers)]).reshape(np.shape(centers))
        return self.pushforward_cloud(push).pseudo_disk_masses(centers, r)

    def _outer_nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        cells = self.outer_quadrature().cells()
        z = np.concatenate([c[0] for c in cells])
        index = np.concatenate([np.full(c[0].size, j) for j, c in enumerate(cells)])
        return z, index

    def _mixed_norm(self, values: np.ndarray, spec: OperatorSpec) -> Tuple[float, List[float]]:
        """(integral of values^s omega dA)^{1/s}, s = p/(p-q), and its running totals per cell."""
        s = _mixed_exponent(spec)
        weight = spec.profile.source
        totals, start = [], 0
        for z, w in self.outer_quadrature().cells():
            block = np.asarray(values[start:start + z.size], dtype=float)
            totals.append(float(np.sum(block ** s * weight(z) * w)))
            start += z.size
        levels = cell_levels(totals)
        return levels[-1] ** (1.0 / s), [v ** (1.0 / s) for v in levels]

    def _outer_descriptor(self) -> Dict[str, int]:
        return {
            "outer_levels": self.grid.outer_levels,
            "outer_order": OUTER_ORDER,
            "outer_angular_base": OUTER_ANGULAR_BASE,
            "outer_angular_cap": self.grid.outer_angular_cap,
            **self.describe_grid(),
        }


def covering_count(a, r: float) -> np.ndarray:
    """k = int((1-|a|)/(1-r)) + 1 boxes of radius r cover S(a) outside rD."""
    return np.floor((1.0 - np.abs(np.asarray(a))) / (1.0 - r)).astype(int) + 1


def _require_p_le_q(p: float, q: float):
    if p > q:
        raise SpecError(f"This functional needs p <= q, got p={p}, q={q}")


def _require_q_lt_p(spec: OperatorSpec):
    if not spec.q < spec.p:
        raise SpecError(f"Mixed-norm functionals need 0 < q < p, got p={spec.p}, q={spec.q}")


def _mixed_exponent(spec: OperatorSpec) -> float:
    return spec.p / (spec.p - spec.q)


def _psi_power(spec: OperatorSpec, mode: str) -> float:
    if mode == "printed":
        return spec.p
    if mode == "switch":
        return spec.q
    raise SpecError(f"Unknown Psi mode '{mode}', expected one of {PSI_MODES}")
