import numpy as np
import pytest
from hypothesis import given

from conres import errors
from conres.builders import cycle, rotation2d, wheatstone
from conres.classical import classical_effective_resistance
from conres.conductance import conductance_matrix
from conres.decompose import is_absolutely_inconsistent
from conres.generators import random_connected_graph, random_consistent_signature, random_signature
from conres.graph import connection_graph
from conres.resistance import (absolutely_inconsistent_poisson, chung_connection_resistance, inverse_block_identity,
                               lower_bound_gap, poisson_solve, resistance_decomposition_check,
                               resistance_matrix, resistance_matrix_from_conductance,
                               resistance_matrix_identity, scalar_connection_resistance, triangle_gap)
from helpers import assert_close
from strategies import engineered, graph_and_pair


@pytest.mark.parametrize("theta", [np.pi / 4, np.pi / 2, np.pi, 3 * np.pi / 2])
def test_chung_on_triangle(theta):
    assert abs(chung_connection_resistance(cycle(3, theta), 1, 2) - (5 + 4 * np.cos(theta))) < 1e-8


def test_chung_trivial_triangle():
    assert abs(chung_connection_resistance(cycle(3, 0.0), 1, 2) - 2 / 3) < 1e-12


def test_chung_consistent_transpose_variant(rng):
    g = random_connected_graph(rng, 6, extra=0.6)
    cg = random_consistent_signature(rng, g, 3)
    u, v, _ = g.edges[0]
    r = classical_effective_resistance(g, u, v)
    assert abs(chung_connection_resistance(cg, u, v, transpose_block=True) - r) < 1e-9


def test_chung_non_edge():
    cg = cycle(4, 0.0)
    assert abs(chung_connection_resistance(cg, 1, 3) - 1.0) < 1e-12
    with pytest.raises(errors.NotAnEdge):
        chung_connection_resistance(cycle(4, 1.0), 1, 3)


def test_scalar_on_triangle_constant():
    for t in np.linspace(0, 2 * np.pi, 7):
        assert abs(scalar_connection_resistance(cycle(3, t), 1, 2) - 2 / 3) < 1e-10


def test_scalar_method_validation():
    with pytest.raises(errors.InvalidParameter):
        scalar_connection_resistance(cycle(3, 0.1), 1, 2, method="bogus")


@given(graph_and_pair())
def test_scalar_routes_and_lower_bound(case):
    cg, i, j = case
    vals = [scalar_connection_resistance(cg, i, j, m) for m in ("schur", "energy", "trace")]
    assert max(vals) - min(vals) < 1e-8
    assert lower_bound_gap(cg, i, j) >= -1e-10
    assert vals[0] > 0


@given(graph_and_pair())
def test_resistance_matrix_routes(case):
    cg, i, j = case
    assert all(r.passed for r in resistance_matrix_identity(cg, i, j))
    assert inverse_block_identity(cg, i, j).passed
    sol = poisson_solve(cg, i, j)
    assert sol.residual(cg) < 1e-8


def test_resistance_projection_on_path():
    cg = connection_graph(3, [(1, 2, 1.0, 1.0), (2, 3, 1.0, 1.0)])
    raw = resistance_matrix(cg, 1, 2, project=False).full
    proj = resistance_matrix(cg, 1, 2).full
    assert_close(raw[:, 0], [2 / 3, -1 / 3], 1e-12)
    assert_close(proj, 0.5 * np.array([[1, -1], [-1, 1]]), 1e-12)
    assert_close(proj, resistance_matrix_from_conductance(cg, 1, 2).full, 1e-12)


@given(engineered())
def test_decomposition_formula(case):
    cg, _ = case
    assert resistance_decomposition_check(cg, 1, 2).passed


def test_absolutely_inconsistent_poisson(rng):
    cg = random_signature(rng, random_connected_graph(rng, 5, extra=0.8, min_degree=2), 3)
    assert is_absolutely_inconsistent(cg)
    assert_close(poisson_solve(cg, 1, 3).w.data, absolutely_inconsistent_poisson(cg, 1, 3), 1e-10)


def test_strict_lower_bound_witness():
    # on a bare cycle the two agree, the bridge needs a chord
    assert abs(lower_bound_gap(cycle(4, np.pi), 1, 3)) < 1e-12
    assert abs(lower_bound_gap(wheatstone(np.pi), 1, 4) - 1 / 9) < 1e-12


def test_triangle_gap_is_finite():
    cg = cycle(5, 1.3)
    assert np.isfinite(triangle_gap(cg, 1, 2, 4))


def test_edge_resistance_single_edge():
    cg = connection_graph(2, [(1, 2, 4.0, rotation2d(0.6))])
    assert abs(scalar_connection_resistance(cg, 1, 2) - 0.25) < 1e-12
    assert_close(conductance_matrix(cg, 1, 2).full, cg.laplacian, 0)
