"""Invariants that must hold on every random instance."""
import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from conres.classical import classical_effective_resistance
from conres.conductance import conductance_matrix
from conres.generators import random_orthogonal, random_signature
from conres.graph import ConnectionGraph, apply_switching, build_graph, direct_sum_graph
from conres.meanpath import omega0
from conres.resistance import chung_connection_resistance, resistance_matrix, scalar_connection_resistance
from helpers import assert_close
from strategies import connection_graphs, graph_and_pair


@given(graph_and_pair())
def test_switching_covariance(case):
    cg, i, j = case
    rng = np.random.default_rng(cg.n * 101 + i)
    f = random_orthogonal(rng, cg.d, size=cg.n)
    tau = apply_switching(cg, f)
    F = np.block([[f[i - 1], np.zeros((cg.d, cg.d))], [np.zeros((cg.d, cg.d)), f[j - 1]]])
    assert_close(conductance_matrix(tau, i, j).full, F @ conductance_matrix(cg, i, j).full @ F.T, 1e-9)
    assert_close(omega0(tau, i, j).value, f[i - 1] @ omega0(cg, i, j).value @ f[j - 1].T, 1e-9)
    assert abs(scalar_connection_resistance(tau, i, j) - scalar_connection_resistance(cg, i, j)) < 1e-9
    assert_close(resistance_matrix(tau, i, j).full, F @ resistance_matrix(cg, i, j).full @ F.T, 1e-8)


@given(graph_and_pair(d_max=2), st.integers(1, 2))
def test_direct_sum_averages_resistance(case, d2):
    cg, i, j = case
    rng = np.random.default_rng(cg.n + 7 * d2)
    tau = random_signature(rng, cg.graph, d2)
    s = direct_sum_graph(cg, tau)
    expected = (cg.d * scalar_connection_resistance(cg, i, j) + d2 * scalar_connection_resistance(tau, i, j))
    assert abs(scalar_connection_resistance(s, i, j) - expected / (cg.d + d2)) < 1e-9


@given(graph_and_pair(), st.floats(0.1, 10.0))
def test_weight_scaling(case, c):
    cg, i, j = case
    g = cg.graph
    scaled = ConnectionGraph(build_graph(g.n, [(u, v, c * w) for u, v, w in g.edges]), cg.signature)
    assert abs(c * scalar_connection_resistance(scaled, i, j) - scalar_connection_resistance(cg, i, j)) < 1e-8
    assert_close(conductance_matrix(scaled, i, j).full, c * conductance_matrix(cg, i, j).full, 1e-8 * c)


@given(graph_and_pair())
def test_scalar_between_zero_and_classical(case):
    cg, i, j = case
    r = classical_effective_resistance(cg.graph, i, j)
    rs = scalar_connection_resistance(cg, i, j)
    assert 0 < rs <= r + 1e-10


@given(graph_and_pair())
def test_pair_symmetry(case):
    cg, i, j = case
    assert abs(scalar_connection_resistance(cg, i, j) - scalar_connection_resistance(cg, j, i)) < 1e-10
    if cg.graph.has_edge(i, j):
        assert abs(chung_connection_resistance(cg, i, j) - chung_connection_resistance(cg, j, i)) < 1e-9


@given(connection_graphs(d_min=1, d_max=1))
def test_scalar_signatures_match_signed_graphs(cg):
    # d = 1 signatures are +-1, L is the signed Laplacian
    A = np.zeros((cg.n, cg.n))
    for (u, v, w), s in zip(cg.graph.edges, cg.sigmas):
        A[u - 1, v - 1] = A[v - 1, u - 1] = w * s[0, 0]
    assert_close(cg.laplacian, np.diag(cg.graph.degrees) - A, 0)
