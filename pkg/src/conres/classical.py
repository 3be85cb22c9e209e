"""Scalar (signature-free) quantities on a weighted graph."""
from __future__ import annotations

import numpy as np

from . import errors
from .graph import WeightedGraph
from .linalg import pseudoinverse, spd_solve


def classical_effective_resistance(g: WeightedGraph, i: int, j: int) -> float:
    """``r_ij = (e_i - e_j)^T L^+ (e_i - e_j)``."""
    i, j = g.check_pair(i, j)
    b = np.zeros(g.n)
    b[i - 1], b[j - 1] = 1.0, -1.0
    return float(b @ pseudoinverse(g.laplacian) @ b)


def classical_effective_conductance(g: WeightedGraph, i: int, j: int) -> float:
    """``c_ij = 1 / r_ij``."""
    return 1.0 / classical_effective_resistance(g, i, j)


def classical_voltage(g: WeightedGraph, i: int, j: int) -> np.ndarray:
    """Harmonic function off ``{i, j}`` equal to 1 at ``i`` and 0 at ``j``.

    Returns a length-``n`` array indexed by ``vertex - 1``.  Its value at
    ``x`` is the probability that the walk from ``x`` reaches ``i`` before
    ``j``.
    """
    i, j = g.check_pair(i, j)
    L = g.laplacian
    inner = np.array([v for v in range(g.n) if v not in (i - 1, j - 1)], dtype=int)
    out = np.zeros(g.n)
    out[i - 1] = 1.0
    if inner.size:
        out[inner] = spd_solve(L[np.ix_(inner, inner)], -L[inner, i - 1])
    return np.clip(out, 0.0, 1.0)


def hitting_probability(g: WeightedGraph, x: int, i: int, j: int) -> float:
    """``P^x[T_i < T_j]`` for the walk with kernel ``D^{-1} W`` (time-0 hits count)."""
    x = g.check_vertex(x)
    return float(classical_voltage(g, i, j)[x - 1])


def escape_probability(g: WeightedGraph, i: int, j: int) -> float:
    """``P^i[T_j^1 < T_i^1]``: from ``i``, reach ``j`` before returning to ``i``."""
    i, j = g.check_pair(i, j)
    h = 1.0 - classical_voltage(g, i, j)
    P = g.weight_matrix[i - 1] / g.degrees[i - 1]
    return float(P @ h)


def classical_conductance_matrix(g: WeightedGraph, i: int, j: int) -> np.ndarray:
    """``c_ij [[1, -1], [-1, 1]]``."""
    c = classical_effective_conductance(g, i, j)
    return c * np.array([[1.0, -1.0], [-1.0, 1.0]])
