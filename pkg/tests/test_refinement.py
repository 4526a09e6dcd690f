import numpy as np
import pytest

from app.core import refinement


def test_a_grid_layout():
    points, level = refinement.a_grid(3, 4, 16)
    assert points.size == 1 + 8 + 16 + 16
    assert points[0] == 0
    assert np.allclose(np.abs(points[level == 2]), 0.75)
    assert np.all(np.bincount(level) == [1, 8, 16, 16])


def test_a_grid_is_read_only():
    points, _ = refinement.a_grid(2, 4, 16)
    with pytest.raises(ValueError):
        points[0] = 1.0


@pytest.mark.parametrize("levels,expected", [
    ([1.0, 2.0, 4.0, 8.0], True),
    ([1.0, 1.0, 2.0, 4.0, 8.0], True),
    ([1.0, 2.0, 4.0, 7.0], False),
    ([0.0, 2.0, 4.0, 8.0], False),
    ([2.0, 4.0, 8.0], False),
])
def test_diverges(levels, expected):
    assert refinement.diverges(levels) is expected


def test_level_maxima():
    levels, maxima = refinement.level_maxima(np.array([1.0, 3.0, 2.0, 5.0]), np.array([0, 1, 1, 2]))
    assert levels.tolist() == [0, 1, 2]
    assert maxima.tolist() == [1.0, 3.0, 5.0]


def test_grid_report():
    values = np.array([1.0, 2.0, 4.0, 8.0])
    points = np.array([0, 0.5, 0.75, 0.875], dtype=complex)
    level = np.arange(4)
    report = refinement.grid_report("bounded", values, points, level, {"a_levels": 3},
                                    normalized=values / 8.0)
    assert report.value == 8.0
    assert report.witness == 0.875
    assert report.levels == [1.0, 2.0, 4.0, 8.0]
    assert report.normalized_value == 1.0
    assert report.divergent


def test_cell_levels():
    assert refinement.cell_levels([1.0, 0.5, 0.25]) == [1.0, 1.5, 1.75]
