"""
Refinement grids for sup and limsup functionals and their level summaries.

The a-grid has the center a = 0 as level 0 and, for j = 1..J, the circle
|a| = 1 - 2^{-j} sampled at min(base 2^j, cap) equispaced angles starting at
angle 0, so the angular resolution follows the width of S(a).
"""
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.domain.models.report import FunctionalReport

DIVERGENCE_GROWTH = 2.0
DIVERGENCE_STEPS = 3


@lru_cache(maxsize=16)
def a_grid(levels: int, base: int, cap: int) -> Tuple[np.ndarray, np.ndarray]:
    """Points and level index of the dyadic a-grid."""
    points: List[np.ndarray] = [np.zeros(1, dtype=complex)]
    index: List[np.ndarray] = [np.zeros(1, dtype=int)]
    for j in range(1, levels + 1):
        count = int(min(base * 2 ** j, cap))
        theta = 2.0 * np.pi * np.arange(count) / count
        points.append((1.0 - 2.0 ** -j) * np.exp(1j * theta))
        index.append(np.full(count, j))
    points_array, index_array = np.concatenate(points), np.concatenate(index)
    points_array.setflags(write=False)
    index_array.setflags(write=False)
    return points_array, index_array


def level_maxima(values: np.ndarray, level: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(levels, max of values per level), levels ascending."""
    levels = np.unique(level)
    return levels, np.array([float(np.max(values[level == j])) for j in levels])


def diverges(levels: Sequence[float], growth: float = DIVERGENCE_GROWTH,
             steps: int = DIVERGENCE_STEPS) -> bool:
    """True when each of the last `steps` level-to-level ratios is at least `growth`."""
    levels = np.asarray(levels, dtype=float)
    if levels.size < steps + 1:
        return False
    tail = levels[-(steps + 1):]
    if np.any(tail[:-1] <= 0):
        return False
    return bool(np.all(tail[1:] / tail[:-1] >= growth))


def grid_report(kind: str, values: np.ndarray, points: np.ndarray, level: np.ndarray,
                grid: dict, normalized: Optional[np.ndarray] = None) -> FunctionalReport:
    """Sup report over a refinement grid: value = max over every evaluation."""
    values = np.asarray(values, dtype=float)
    _, per_level = level_maxima(values, level)
    best = int(np.argmax(values))
    report = FunctionalReport(
        kind=kind,
        value=float(values[best]),
        witness=complex(points[best]),
        grid=dict(grid),
        levels=[float(v) for v in per_level],
    )
    if normalized is not None:
        normalized = np.asarray(normalized, dtype=float)
        report.normalized_value = float(np.max(normalized))
        report.normalized_levels = [float(v) for v in level_maxima(normalized, level)[1]]
    if diverges(report.levels):
        report.flags.append("divergent")
    return report


def cell_levels(cell_values: Sequence[float]) -> List[float]:
    """Running totals over dyadic cells, the last entry including the final cell."""
    totals = np.cumsum(np.asarray(cell_values, dtype=float))
    return [float(v) for v in totals]
