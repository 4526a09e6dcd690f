"""
Oracle service: the truncated matrix of u C_phi in the orthonormal monomial
basis of A^2_omega and the matrix of the Toeplitz operator T_sigma.
"""
import logging
import warnings
from typing import Optional

import numpy as np

from app.core.jacobi_svd import jacobi_svd
from app.core.quadrature import DiskQuadrature
from app.domain.errors import SpecError, TruncationWarning
from app.domain.models import AnalyticMap, GridConfig, MatrixOracle, WeightProfile

# relative column energy allowed below the kept rows
TRUNCATION_TOLERANCE = 1e-8
TOEPLITZ_LEVELS = 20
TOEPLITZ_ORDER = 24
TOEPLITZ_ANGULAR = 512


class OracleService:
    """Service for the matrix oracles of weighted composition operators."""

    def __init__(self, grid: Optional[GridConfig] = None):
        self.grid = grid or GridConfig()
        self.logger = logging.getLogger(__name__)

    def matrix_oracle(self, u: AnalyticMap, phi: AnalyticMap, profile: WeightProfile,
                      N: Optional[int] = None, rows: Optional[int] = None) -> MatrixOracle:
        """M_jk = <u C_phi e_k, e_j> with e_k = z^k / sqrt(2 omega_{2k+1}).

        The Taylor coefficients c_jk of u phi^k come from an FFT on the unit
        circle, and M_jk = c_jk sqrt(2 omega_{2j+1}) / sqrt(2 omega_{2k+1}).
        Polynomial symbols keep every row up to the closure degree
        deg u + (N-1) deg phi, so M^H M is exact; other symbols keep 4N rows.
        """
        N = int(N or self.grid.oracle_N)
        if N < 1:
            raise SpecError(f"Oracle truncation must be positive, got N={N}")
        closure = _closure_degree(u, phi, N)
        full_rows = closure + 1 if closure is not None else 4 * N
        rows = int(rows or max(full_rows, N))
        samples = max(self.grid.fft_samples, _fft_size(2 * max(rows, full_rows)))

        circle = np.exp(2j * np.pi * np.arange(samples) / samples)
        columns = u(circle)[:, None] * np.power(phi(circle)[:, None], np.arange(N)[None, :])
        coefficients = np.fft.fft(columns, axis=0) / samples

        half = samples // 2
        scale = np.sqrt(2.0 * profile.moments_upto(2 * half + 1)[1::2][:half])
        M = coefficients[:rows] * scale[:rows, None] / scale[None, :N]

        messages = []
        column_energy = np.sum(np.abs(coefficients[:half] * scale[:half, None]) ** 2, axis=0) / scale[:N] ** 2
        dropped = column_energy - np.sum(np.abs(M) ** 2, axis=0)
        worst = float(np.max(dropped / np.maximum(column_energy, np.finfo(float).tiny)))
        if worst > TRUNCATION_TOLERANCE:
            message = (f"Truncation to {rows} rows drops a relative column energy of {worst:.3g} "
                       f"for {u.spec} / {phi.spec}")
            warnings.warn(message, TruncationWarning)
            self.logger.warning(message)
            messages.append(message)

        sigma, _, sweeps = jacobi_svd(M)
        self.logger.debug(f"Matrix oracle N={N}, rows={rows}: sigma_1={sigma[0]:.6g} after {sweeps} sweeps")
        return MatrixOracle(N=N, rows=rows, matrix=M, singular_values=sigma, warnings=messages)

    def toeplitz_matrix(self, u: AnalyticMap, phi: AnalyticMap, profile: WeightProfile,
                        N: Optional[int] = None) -> np.ndarray:
        """<T_sigma e_k, e_j> = integral of e_k(phi) conj(e_j(phi)) |u|^2 omega dA.

        Uses its own dyadic rule (J = 20, 24 radial nodes per cell, uniform
        angles exact for the trigonometric degree of the integrand), so the
        result is independent of the FFT oracle.
        """
        N = int(N or self.grid.oracle_N)
        closure = _closure_degree(u, phi, N)
        degree = 2 * closure + 2 if closure is not None else 8 * N
        angular = max(TOEPLITZ_ANGULAR, _fft_size(degree))
        quad = DiskQuadrature(TOEPLITZ_LEVELS, TOEPLITZ_ORDER, angular, angular)
        scale = np.sqrt(2.0 * profile.moments_upto(2 * N - 1)[1::2][:N])
        k = np.arange(N)
        weight = profile.source
        T = np.zeros((N, N), dtype=complex)
        for z, w in quad.iter_chunks(1 << 14):
            root = np.sqrt(w * weight(z))
            V = (u(z) * root)[:, None] * np.power(phi(z)[:, None], k[None, :]) / scale[None, :]
            T += V.conj().T @ V
        self.logger.debug(f"Toeplitz matrix N={N} on {quad.size} nodes (angular {angular})")
        return T


def _closure_degree(u: AnalyticMap, phi: AnalyticMap, N: int) -> Optional[int]:
    if u.degree is None or phi.degree is None:
        return None
    return int(u.degree + (N - 1) * phi.degree)


def _fft_size(count: int) -> int:
    return int(2 ** np.ceil(np.log2(max(count, 2))))
