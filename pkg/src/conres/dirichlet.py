"""Matrix-valued harmonic functions and the Dirichlet problem."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import errors
from .graph import BlockVector, ConnectionGraph, _check_block_vector
from .linalg import block_rows, spd_solve
from .reports import CheckReport
from .tolerances import HARMONIC_TOL


@dataclass(frozen=True)
class BoundaryData:
    """Boundary vertices (1-based) and the prescribed ``d x d`` value at each."""

    boundary: tuple[int, ...]
    values: Mapping[int, np.ndarray]

    def __post_init__(self):
        b = tuple(sorted({int(v) for v in self.boundary}))
        if not b:
            raise errors.EmptyBoundary("boundary set is empty")
        missing = [v for v in b if v not in self.values]
        if missing:
            raise errors.InvalidParameter(f"no boundary value given for vertices {missing}")
        object.__setattr__(self, "boundary", b)


def boundary_data(values: Mapping[int, np.ndarray]) -> BoundaryData:
    """Boundary data whose boundary is exactly the key set of ``values``."""
    return BoundaryData(tuple(values), dict(values))


def vertex_boundary(cg: ConnectionGraph, H: Iterable[int]) -> list[int]:
    """Vertices outside ``H`` adjacent to some vertex of ``H``."""
    H = {cg.graph.check_vertex(v) for v in H}
    out = set()
    for v in H:
        out.update(u for u, _ in cg.graph.neighbors[v - 1] if u not in H)
    return sorted(out)


def solve_dirichlet(cg: ConnectionGraph, bd: BoundaryData) -> BlockVector:
    """Solve ``(L u)(x) = 0`` off the boundary with ``u = phi`` on it.

    The interior system ``L_HH u_H = -L_{H,B} phi`` is positive definite for
    every nonempty boundary of a connected graph, so the solution is unique.
    A boundary covering every vertex simply returns ``phi``.
    """
    n, d = cg.n, cg.d
    bset = [cg.graph.check_vertex(v) for v in bd.boundary]
    interior = [v for v in range(1, n + 1) if v not in set(bset)]
    u = np.zeros((n * d, d))
    for v in bset:
        val = np.asarray(bd.values[v], dtype=float)
        if val.shape != (d, d):
            raise errors.DimensionMismatch(f"boundary value at {v} has shape {val.shape}, expected {(d, d)}")
        u[(v - 1) * d: v * d] = val
    if interior:
        L = cg.laplacian
        hi = block_rows([v - 1 for v in interior], d)
        bi = block_rows([v - 1 for v in bset], d)
        u[hi] = spd_solve(L[np.ix_(hi, hi)], -L[np.ix_(hi, bi)] @ u[bi])
    return BlockVector(n, d, u)


def dirichlet_energy(cg: ConnectionGraph, f: BlockVector) -> float:
    """``E(f) = 1/2 Tr(f^T L f)``."""
    _check_block_vector(cg, f)
    return 0.5 * float(np.trace(f.data.T @ cg.laplacian @ f.data))


def voltage_function(cg: ConnectionGraph, i: int, j: int) -> BlockVector:
    """Harmonic off ``{i, j}`` with value ``I`` at ``i`` and ``0`` at ``j``."""
    i, j = cg.graph.check_pair(i, j)
    return solve_dirichlet(cg, boundary_data({i: np.eye(cg.d), j: np.zeros((cg.d, cg.d))}))


def harmonic_residual(cg: ConnectionGraph, f: BlockVector, H: Iterable[int]) -> float:
    """Max entry of ``L f`` over the blocks of ``H``."""
    _check_block_vector(cg, f)
    H = sorted({cg.graph.check_vertex(v) for v in H})
    if not H:
        return 0.0
    Lf = cg.laplacian @ f.data
    return float(np.max(np.abs(Lf[block_rows([v - 1 for v in H], cg.d)])))


def check_max_norm_principle(cg: ConnectionGraph, f: BlockVector, H: Iterable[int],
                             tol: float = HARMONIC_TOL) -> CheckReport:
    """Compare the largest spectral norm of ``f`` on the closure of ``H`` and on its boundary.

    Args:
        cg: connection graph.
        f: candidate harmonic function.
        H: interior vertex set (proper, nonempty).
        tol: tolerance for both the harmonicity precondition and the equality.

    Raises:
        NotHarmonic: if ``L f`` is not zero on ``H`` within ``tol``.
    """
    H = sorted({cg.graph.check_vertex(v) for v in H})
    if not H or len(H) == cg.n:
        raise errors.InvalidIndexSet("interior must be a nonempty proper vertex subset")
    res = harmonic_residual(cg, f, H)
    scale = max(1.0, float(np.max(np.abs(f.data))))
    if res > tol * scale:
        raise errors.NotHarmonic(f"function is not harmonic on the interior (residual {res:.3g})")
    bdry = vertex_boundary(cg, H)
    norms = {v: float(np.linalg.norm(f.block(v), 2)) for v in set(H) | set(bdry)}
    closure_max = max(norms.values())
    boundary_max = max(norms[v] for v in bdry)
    return CheckReport("max_norm_principle", abs(closure_max - boundary_max), tol,
                       {"closure_max": closure_max, "boundary_max": boundary_max,
                        "harmonic_residual": res})
