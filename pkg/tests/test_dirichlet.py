import numpy as np
import pytest
from hypothesis import given

from conres import errors
from conres.builders import cycle
from conres.dirichlet import (BoundaryData, boundary_data, check_max_norm_principle, dirichlet_energy,
                              harmonic_residual, solve_dirichlet, vertex_boundary, voltage_function)
from conres.generators import random_orthogonal
from conres.graph import BlockVector
from helpers import assert_close
from strategies import connection_graphs


def test_boundary_everything_returns_phi(rng):
    cg = cycle(4, 0.5)
    vals = {v: random_orthogonal(rng, 2) for v in range(1, 5)}
    u = solve_dirichlet(cg, boundary_data(vals))
    for v in range(1, 5):
        assert_close(u.block(v), vals[v], 0)


def test_empty_boundary_rejected():
    with pytest.raises(errors.EmptyBoundary):
        BoundaryData((), {})


def test_boundary_value_shape():
    cg = cycle(3, 0.2)
    with pytest.raises(errors.DimensionMismatch):
        solve_dirichlet(cg, boundary_data({1: np.eye(3)}))


@given(connection_graphs(n_min=3))
def test_dirichlet_solution_harmonic_and_minimal(cg):
    rng = np.random.default_rng(cg.n + 11 * cg.d)
    vals = {1: random_orthogonal(rng, cg.d), cg.n: rng.normal(size=(cg.d, cg.d))}
    u = solve_dirichlet(cg, boundary_data(vals))
    interior = list(range(2, cg.n))
    assert harmonic_residual(cg, u, interior) < 1e-9
    e0 = dirichlet_energy(cg, u)
    for _ in range(5):
        pert = rng.normal(size=u.data.shape)
        pert[: cg.d] = 0
        pert[-cg.d:] = 0
        assert dirichlet_energy(cg, BlockVector(cg.n, cg.d, u.data + 1e-2 * pert)) >= e0 - 1e-12


@given(connection_graphs(n_min=3))
def test_voltage_boundary_values(cg):
    V = voltage_function(cg, 1, 2)
    assert_close(V.block(1), np.eye(cg.d), 0)
    assert_close(V.block(2), np.zeros((cg.d, cg.d)), 0)


def test_max_norm_principle_on_cycle():
    cg = cycle(6, 1.0)
    V = voltage_function(cg, 1, 4)
    H = [2, 3, 5, 6]
    assert vertex_boundary(cg, H) == [1, 4]
    assert check_max_norm_principle(cg, V, H).passed


def test_max_norm_rejects_non_harmonic(rng):
    cg = cycle(4, 0.3)
    f = BlockVector(4, 2, rng.normal(size=(8, 2)))
    with pytest.raises(errors.NotHarmonic):
        check_max_norm_principle(cg, f, [2, 3])
    with pytest.raises(errors.InvalidIndexSet):
        check_max_norm_principle(cg, f, [])
