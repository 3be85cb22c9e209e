"""Effective resistance on connection graphs.

Three notions live here: the classical scalar ``r_ij`` (re-exported), the
operator-norm resistance ``||M^T L^+ M||_2`` restricted to edges, and the
resistance built from the minimum-norm solution of a Poisson-type problem,
which yields a ``2d x 2d`` resistance matrix and a scalar resistance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .classical import classical_effective_conductance, classical_effective_resistance
from .conductance import PairMatrix, conductance_matrix
from .dirichlet import voltage_function
from .graph import BlockVector, ConnectionGraph, bfs_tree, tree_path
from .linalg import pseudoinverse, symmetrize
from .meanpath import omega0
from .reports import CheckReport, max_abs
from .tolerances import rank_tol

__all__ = [
    "classical_effective_resistance", "classical_effective_conductance", "chung_connection_resistance",
    "PoissonSolution", "poisson_solve", "resistance_matrix", "resistance_matrix_from_conductance",
    "poisson_source", "scalar_connection_resistance", "resistance_decomposition_check",
    "inverse_block_identity", "inverse_block_rhs", "resistance_matrix_identity", "lower_bound_gap",
    "triangle_gap", "absolutely_inconsistent_poisson",
]


def _laplacian_pinv(cg: ConnectionGraph) -> np.ndarray:
    return pseudoinverse(cg.laplacian)


def chung_connection_resistance(cg: ConnectionGraph, i: int, j: int, transpose_block: bool = False) -> float:
    """Operator-norm resistance ``||M^T L^+ M||_2``.

    ``M`` is ``nd x d`` with ``I`` in block ``i`` and ``-sigma_ij`` in block
    ``j``.  For a non-edge of a consistent graph ``sigma_ij`` is the product
    along any path.

    Args:
        transpose_block: put ``-sigma_ij^T`` in block ``j`` instead.  This is
            the variant that equals ``r_ij`` on consistent graphs whose
            signatures are not symmetric.

    Raises:
        NotAnEdge: ``{i, j}`` is not an edge and the signature is inconsistent.
    """
    from .decompose import is_consistent

    g = cg.graph
    i, j = g.check_pair(i, j)
    if g.has_edge(i, j):
        s = cg.sigma(i, j)
    elif is_consistent(cg):
        parent = bfs_tree(g, i)
        path = tree_path(parent, i, j)
        s = np.eye(cg.d)
        for a, b in zip(path[:-1], path[1:]):
            s = s @ cg.sigma(a, b)
    else:
        raise errors.NotAnEdge(f"({i}, {j}) is not an edge and the signature is inconsistent")
    d = cg.d
    M = np.zeros((cg.n * d, d))
    M[(i - 1) * d: i * d] = np.eye(d)
    M[(j - 1) * d: j * d] = -(s.T if transpose_block else s)
    return float(np.linalg.norm(symmetrize(M.T @ _laplacian_pinv(cg) @ M), 2))


@dataclass(frozen=True)
class PoissonSolution:
    """Minimum-norm solution ``W_{i->j} = L^+ N_ij``.

    Attributes:
        w: the solution as a block vector.
        pair: ``(i, j)``.
        source: ``N_ij``, with ``I`` at ``i``, ``-(Omega^0_{ij})^T`` at ``j`` and zero elsewhere.
    """

    w: BlockVector
    pair: tuple[int, int]
    source: BlockVector

    def residual(self, cg: ConnectionGraph) -> float:
        return max_abs(cg.laplacian @ self.w.data - self.source.data)


def poisson_source(cg: ConnectionGraph, i: int, j: int) -> BlockVector:
    """``N_ij``: ``I`` at ``i``, ``-(Omega^0_{ij})^T`` at ``j``."""
    i, j = cg.graph.check_pair(i, j)
    d = cg.d
    N = np.zeros((cg.n * d, d))
    N[(i - 1) * d: i * d] = np.eye(d)
    N[(j - 1) * d: j * d] = -omega0(cg, i, j).value.T
    return BlockVector(cg.n, d, N)


def poisson_solve(cg: ConnectionGraph, i: int, j: int) -> PoissonSolution:
    """Minimum Euclidean norm solution of ``L W = N_ij``."""
    N = poisson_source(cg, i, j)
    W = _laplacian_pinv(cg) @ N.data
    return PoissonSolution(BlockVector(cg.n, cg.d, W), (int(i), int(j)), N)


def _range_projector(C: np.ndarray) -> np.ndarray:
    lam, vec = np.linalg.eigh(symmetrize(C))
    top = max(float(np.max(np.abs(lam))), 0.0)
    keep = np.abs(lam) > rank_tol(C.shape[0]) * top
    return vec[:, keep] @ vec[:, keep].T


def _boundary_pair(cg: ConnectionGraph, i: int, j: int) -> np.ndarray:
    """``[[W_{i->j}(i), W_{j->i}(i)], [W_{i->j}(j), W_{j->i}(j)]]``."""
    d = cg.d
    Wi = poisson_solve(cg, i, j).w
    Wj = poisson_solve(cg, j, i).w
    return np.block([[Wi.block(i), Wj.block(i)], [Wi.block(j), Wj.block(j)]])


def resistance_matrix(cg: ConnectionGraph, i: int, j: int, project: bool = True) -> PairMatrix:
    """Resistance matrix from the boundary values of the Poisson solutions.

    The raw blocks are ``W_{i->j}(i), W_{j->i}(i), W_{i->j}(j), W_{j->i}(j)``.
    When ``L`` is singular these raw blocks can differ from
    ``C^+ B`` by a matrix whose columns lie in the kernel of ``C``; with
    ``project=True`` (default) that component is removed, giving exactly the
    matrix that satisfies ``R = C^+ B`` and reduces to the classical
    ``(r/2) [[1, -1], [-1, 1]]`` on consistent graphs.

    Args:
        project: remove the kernel-of-``C`` component of each column.
    """
    i, j = cg.graph.check_pair(i, j)
    R = _boundary_pair(cg, i, j)
    if project:
        R = _range_projector(conductance_matrix(cg, i, j).full) @ R
    return PairMatrix((i, j), R)


def inverse_block_rhs(cg: ConnectionGraph, i: int, j: int) -> np.ndarray:
    """``B = [[I, -(Omega^0_{ji})^T], [-(Omega^0_{ij})^T, I]]``."""
    i, j = cg.graph.check_pair(i, j)
    eye = np.eye(cg.d)
    return np.block([[eye, -omega0(cg, j, i).value.T], [-omega0(cg, i, j).value.T, eye]])


def resistance_matrix_from_conductance(cg: ConnectionGraph, i: int, j: int) -> PairMatrix:
    """``R = C^+ B`` with ``B`` from :func:`inverse_block_rhs`."""
    C = conductance_matrix(cg, i, j)
    return PairMatrix(C.pair, pseudoinverse(C.full) @ inverse_block_rhs(cg, i, j))


def scalar_connection_resistance(cg: ConnectionGraph, i: int, j: int, method: str = "schur") -> float:
    """Scalar connection resistance ``r^sigma_ij``.

    Args:
        method: ``"schur"`` uses ``(Tr C_ii^{-1} + Tr C_jj^{-1}) / 2d``;
            ``"energy"`` uses ``Tr(W^T L W)`` of both Poisson solutions;
            ``"trace"`` uses ``Tr(N^T L^+ N)`` of both sources.
    """
    i, j = cg.graph.check_pair(i, j)
    d = cg.d
    if method == "schur":
        C = conductance_matrix(cg, i, j)
        return float(np.trace(np.linalg.inv(C.ii)) + np.trace(np.linalg.inv(C.jj))) / (2 * d)
    if method == "energy":
        L = cg.laplacian
        total = 0.0
        for a, b in ((i, j), (j, i)):
            W = poisson_solve(cg, a, b).w.data
            total += float(np.trace(W.T @ L @ W))
        return total / (2 * d)
    if method == "trace":
        Lp = _laplacian_pinv(cg)
        total = 0.0
        for a, b in ((i, j), (j, i)):
            N = poisson_source(cg, a, b).data
            total += float(np.trace(N.T @ Lp @ N))
        return total / (2 * d)
    raise errors.InvalidParameter(f"unknown method {method!r}")


def resistance_decomposition_check(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-8) -> CheckReport:
    """Compare ``r^sigma`` with ``(rho/d) r + (Tr C^tau_ii^{-1} + Tr C^tau_jj^{-1}) / 2d``."""
    from .decompose import decompose_signature

    i, j = cg.graph.check_pair(i, j)
    dec = decompose_signature(cg)
    d = cg.d
    r = classical_effective_resistance(cg.graph, i, j)
    formula = dec.rho / d * r
    if dec.tau is not None:
        Ct = conductance_matrix(dec.tau_graph(), i, j)
        formula += float(np.trace(np.linalg.inv(Ct.ii)) + np.trace(np.linalg.inv(Ct.jj))) / (2 * d)
    direct = scalar_connection_resistance(cg, i, j)
    return CheckReport("resistance_decomposition", abs(formula - direct), tol,
                       {"rho": dec.rho, "formula": formula, "direct": direct, "classical": r})


def inverse_block_identity(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-8) -> CheckReport:
    """``N_ij^T L^+ N_ij = C_ii^{-1}``."""
    N = poisson_source(cg, i, j).data
    lhs = N.T @ _laplacian_pinv(cg) @ N
    C = conductance_matrix(cg, i, j)
    return CheckReport("source_energy_inverse_block", max_abs(lhs - np.linalg.inv(C.ii)), tol)


def resistance_matrix_identity(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-8) -> list[CheckReport]:
    """Cross-check the two resistance matrix routes and ``C R = B``."""
    R = resistance_matrix(cg, i, j).full
    R2 = resistance_matrix_from_conductance(cg, i, j).full
    C = conductance_matrix(cg, i, j).full
    B = inverse_block_rhs(cg, i, j)
    raw = _boundary_pair(cg, i, j)
    return [CheckReport("resistance_matrix_routes", max_abs(R - R2), tol),
            CheckReport("conductance_times_resistance", max_abs(C @ raw - B), tol)]


def absolutely_inconsistent_poisson(cg: ConnectionGraph, i: int, j: int) -> np.ndarray:
    """``V_{i->j} C_ii^{-1}``; the Poisson solution when ``L`` is invertible."""
    C = conductance_matrix(cg, i, j)
    return voltage_function(cg, i, j).data @ np.linalg.inv(C.ii)


def lower_bound_gap(cg: ConnectionGraph, i: int, j: int) -> float:
    """``r_ij - r^sigma_ij``, nonnegative in theory."""
    return classical_effective_resistance(cg.graph, i, j) - scalar_connection_resistance(cg, i, j)


def triangle_gap(cg: ConnectionGraph, i: int, j: int, k: int) -> float:
    """``r^sigma_ij + r^sigma_jk - r^sigma_ik``; a negative value violates the triangle inequality.

    Reported as a diagnostic only.
    """
    return (scalar_connection_resistance(cg, i, j) + scalar_connection_resistance(cg, j, k)
            - scalar_connection_resistance(cg, i, k))
