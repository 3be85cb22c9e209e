import numpy as np
import pytest

from conres import errors
from conres.builders import (branch_paths, cycle, dumbbell, line, parallel_lines, rotation2d, rotation3d,
                             rotation_signature, wheatstone)
from conres.decompose import is_consistent
from helpers import assert_close


def test_rotations_are_orthogonal():
    for t in (0.0, 0.3, np.pi, 5.0):
        r = rotation3d(t)
        assert_close(r @ r.T, np.eye(3), 1e-15)
        assert np.isclose(np.linalg.det(r), 1.0)
    assert_close(rotation_signature(2, 0.4), rotation2d(0.4), 0)
    with pytest.raises(errors.InvalidParameter):
        rotation_signature(1, 0.1)


def test_cycle_layout():
    cg = cycle(5, 0.9)
    assert cg.n == 5 and cg.d == 2
    assert [e[:2] for e in cg.graph.edges] == [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    assert_close(cg.sigma(1, 2), rotation2d(0.9), 0)
    assert_close(cg.sigma(5, 1), np.eye(2), 0)
    with pytest.raises(errors.InvalidParameter):
        cycle(2, 0.1)
    with pytest.raises(errors.InvalidParameter):
        cycle(4, float("nan"))


def test_line_and_parallel_labels():
    cg = line([1.0, 2.0], [rotation2d(0.1), np.eye(2)])
    assert cg.n == 3 and cg.graph.has_edge(2, 3)
    branches = [([1.0], [np.eye(2)]), ([1.0, 1.0], [np.eye(2)] * 2), ([1.0] * 3, [np.eye(2)] * 3)]
    pl = parallel_lines(branches)
    assert pl.n == 2 + 1 + 2
    assert branch_paths(branches) == [[1, 2], [1, 3, 2], [1, 4, 5, 2]]
    with pytest.raises(errors.NotInternallyDisjoint):
        parallel_lines([([1.0], [np.eye(1)]), ([2.0], [np.eye(1)])])


@pytest.mark.parametrize("m", [2, 4, 5])
def test_dumbbell_shape(m):
    cg = dumbbell(m, 0.3, 1.1)
    assert cg.n == 2 * m + 1 and cg.d == 3
    assert len(cg.graph.edges) == m * (m - 1) + 2
    assert cg.graph.degree(2) == 2
    # both signed edges are bridges: always consistent
    assert is_consistent(cg)
    closed = dumbbell(m, 0.3, 1.1, closing_edge=True)
    assert closed.graph.has_edge(m + 2, 2 * m + 1)
    assert not is_consistent(closed)


def test_wheatstone():
    cg = wheatstone(0.5)
    assert len(cg.graph.edges) == 5
    assert_close(cg.sigma(2, 4), rotation3d(0.5), 0)
    alt = wheatstone(0.5, edge=(1, 3))
    assert_close(alt.sigma(2, 4), np.eye(3), 0)
    with pytest.raises(errors.InvalidParameter):
        wheatstone(0.5, edge=(1, 4))
    assert is_consistent(wheatstone(0.0))
    assert not is_consistent(cg)
