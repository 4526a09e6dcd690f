"""
One-sided Jacobi singular values for small dense complex matrices.
"""
import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)


def jacobi_svd(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> Tuple[np.ndarray, np.ndarray, int]:
    """Orthogonalize the columns of `matrix` by plane rotations.

    For a column pair (x, y) with g = x^H y = |g| e^{i psi}, y is rotated to
    e^{-i psi} y so the pair is real, then a real Jacobi rotation with angle
    theta = arctan2(2|g|, |x|^2 - |y|^2)/2 zeroes the inner product. Sweeps
    stop once every normalized inner product is below `tol`.

    Returns singular values in decreasing order, the right singular vectors
    as columns (same order) and the number of sweeps used.
    """
    U = np.array(matrix, dtype=complex, copy=True)
    n = U.shape[1]
    V = np.eye(n, dtype=complex)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                x, y = U[:, i], U[:, j]
                alpha = float(np.real(np.vdot(x, x)))
                beta = float(np.real(np.vdot(y, y)))
                g = np.vdot(x, y)
                if alpha == 0.0 or beta == 0.0:
                    continue
                magnitude = abs(g)
                off = max(off, magnitude / np.sqrt(alpha * beta))
                if magnitude <= tol * np.sqrt(alpha * beta):
                    continue
                phase = np.exp(-1j * np.angle(g))
                theta = 0.5 * np.arctan2(2.0 * magnitude, alpha - beta)
                c, s = np.cos(theta), np.sin(theta)
                y_real = phase * y
                U[:, i], U[:, j] = c * x + s * y_real, -s * x + c * y_real
                v_real = phase * V[:, j]
                V[:, i], V[:, j] = c * V[:, i] + s * v_real, -s * V[:, i] + c * v_real
        if off <= tol:
            break
    else:
        logger.warning(f"Jacobi SVD stopped after {max_sweeps} sweeps with off-diagonal {off:.3g}")
    values = np.linalg.norm(U, axis=0)
    order = np.argsort(-values, kind="stable")
    logger.debug(f"Jacobi SVD of {matrix.shape}: {sweeps} sweeps")
    return values[order], V[:, order], sweeps
