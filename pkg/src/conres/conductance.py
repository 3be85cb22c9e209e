"""The connection conductance matrix and its composition laws."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import errors
from .classical import classical_effective_conductance
from .graph import ConnectionGraph, build_graph, make_signature
from .linalg import schur_onto
from .meanpath import omega0, omega1_loop_first_step, omega_conditioned
from .reports import CheckReport, max_abs
from .tolerances import PROB_FLOOR


@dataclass(frozen=True)
class PairMatrix:
    """A ``2d x 2d`` matrix indexed by an ordered vertex pair ``(i, j)``.

    The first ``d`` rows and columns belong to ``i`` whatever the numeric
    order of the labels.
    """

    pair: tuple[int, int]
    full: np.ndarray

    @property
    def d(self) -> int:
        return self.full.shape[0] // 2

    @property
    def ii(self) -> np.ndarray:
        return self.full[: self.d, : self.d]

    @property
    def ij(self) -> np.ndarray:
        return self.full[: self.d, self.d:]

    @property
    def ji(self) -> np.ndarray:
        return self.full[self.d:, : self.d]

    @property
    def jj(self) -> np.ndarray:
        return self.full[self.d:, self.d:]

    @classmethod
    def from_blocks(cls, pair, ii, ij, ji, jj) -> "PairMatrix":
        return cls(tuple(pair), np.block([[ii, ij], [ji, jj]]))


def conductance_matrix(cg: ConnectionGraph, i: int, j: int) -> PairMatrix:
    """``C(i, j) = L / L_{{i,j}^c}``, the Schur complement onto the blocks of ``i`` and ``j``."""
    i, j = cg.graph.check_pair(i, j)
    return PairMatrix((i, j), schur_onto(cg.laplacian, [i - 1, j - 1], d=cg.d))


def conductance_via_escape(cg: ConnectionGraph, i: int, j: int,
                           prob_floor: float = PROB_FLOOR) -> PairMatrix:
    """Assemble ``C(i, j)`` from escape probabilities and conditioned mean path signatures.

    With ``c`` the classical effective conductance and ``p_i = c / deg(i)``::

        C_ii = deg(i) (I - (1 - p_i) Omega^1_i(j))
        C_ij = -c Omega^1_{ij}(i)
        C_ji = -c Omega^1_{ji}(j)
        C_jj = deg(j) (I - (1 - p_j) Omega^1_j(i))

    The conditioned signatures are solved on the conditioned walk, so this
    is an independent route to :func:`conductance_matrix`.

    Raises:
        DegenerateConditioning: ``i`` (or ``j``) cannot return to itself
            without passing through the other vertex.
    """
    g = cg.graph
    i, j = g.check_pair(i, j)
    c = classical_effective_conductance(g, i, j)
    eye = np.eye(cg.d)

    def diag(a: int, b: int) -> np.ndarray:
        q = 1.0 - c / g.degree(a)
        if q <= prob_floor:
            raise errors.DegenerateConditioning(
                f"vertex {a} cannot return to itself while avoiding {b}")
        return g.degree(a) * (eye - q * omega_conditioned(cg, a, a, b, s=1).value)

    Cij = -c * omega_conditioned(cg, i, j, i, s=1).value
    Cji = -c * omega_conditioned(cg, j, i, j, s=1).value
    return PairMatrix.from_blocks((i, j), diag(i, j), Cij, Cji, diag(j, i))


# ---------------------------------------------------------------------------
# series and parallel composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """A simple path ``vertices[0] - ... - vertices[-1]``.

    ``sigmas[t]`` is the signature from ``vertices[t]`` to ``vertices[t+1]``.
    """

    vertices: tuple[int, ...]
    weights: tuple[float, ...]
    sigmas: tuple[np.ndarray, ...]

    def __post_init__(self):
        k = len(self.weights)
        if k < 1 or len(self.vertices) != k + 1 or len(self.sigmas) != k:
            raise errors.InvalidParameter("a line with k edges needs k + 1 vertices and k signatures")
        if len(set(self.vertices)) != len(self.vertices):
            raise errors.InvalidParameter("a line may not repeat a vertex")
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "sigmas", tuple(np.atleast_2d(np.asarray(s, float)) for s in self.sigmas))

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def d(self) -> int:
        return self.sigmas[0].shape[0]

    def to_graph(self) -> ConnectionGraph:
        """The line alone, relabelled ``1..k+1`` in path order."""
        k = len(self.weights)
        g = build_graph(k + 1, [(t + 1, t + 2, self.weights[t]) for t in range(k)])
        return ConnectionGraph(g, make_signature(self.d, {(t + 1, t + 2): self.sigmas[t] for t in range(k)}))


def series_conductance(line: Line) -> PairMatrix:
    """Closed form for a path: ``(1 / sum 1/w) [[I, -S], [-S^T, I]]`` with ``S`` the path product."""
    S = np.eye(line.d)
    for s in line.sigmas:
        S = S @ s
    c = 1.0 / sum(1.0 / w for w in line.weights)
    eye = np.eye(line.d)
    return PairMatrix.from_blocks(line.ends, c * eye, -c * S, -c * S.T, c * eye)


def _check_parallel(lines: Sequence[Line]) -> tuple[int, int]:
    if not lines:
        raise errors.InvalidParameter("need at least one line")
    ends = lines[0].ends
    d = lines[0].d
    seen: set[int] = set()
    direct = 0
    for ln in lines:
        if ln.ends != ends:
            raise errors.NotInternallyDisjoint(f"line {ln.vertices} does not run from {ends[0]} to {ends[1]}")
        if ln.d != d:
            raise errors.DimensionMismatch("lines carry signatures of different dimensions")
        inner = set(ln.vertices[1:-1])
        if inner & (seen | set(ends)):
            raise errors.NotInternallyDisjoint(f"line {ln.vertices} shares an interior vertex")
        seen |= inner
        direct += len(ln.weights) == 1
    if direct > 1:
        raise errors.NotInternallyDisjoint("two single-edge lines would form a multi-edge")
    return ends


def parallel_sum(lines: Sequence[Line]) -> PairMatrix:
    """Sum of the conductance matrices of internally disjoint lines with common ends.

    Each term is the Schur complement of the line on its own.
    """
    ends = _check_parallel(lines)
    total = sum(conductance_matrix(ln.to_graph(), 1, len(ln.vertices)).full for ln in lines)
    return PairMatrix(ends, total)


def glue_lines(lines: Sequence[Line]) -> ConnectionGraph:
    """The graph formed by the union of internally disjoint lines.

    Vertex labels are kept, so they must cover ``1..n`` without gaps.
    """
    _check_parallel(lines)
    edges, vals = [], {}
    for ln in lines:
        for t, (w, s) in enumerate(zip(ln.weights, ln.sigmas)):
            u, v = ln.vertices[t], ln.vertices[t + 1]
            edges.append((u, v, w))
            vals[(u, v)] = s
    n = max(max(ln.vertices) for ln in lines)
    return ConnectionGraph(build_graph(n, edges), make_signature(lines[0].d, vals))


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def schur_block_identities(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-9) -> list[CheckReport]:
    """Check ``C / C_jj = deg(i) (I - Omega^1_i)`` and ``C / C_ii = deg(j) (I - Omega^1_j)``.

    The loop signatures come from first-step analysis on ``Omega^0``, not
    from a Schur complement.
    """
    C = conductance_matrix(cg, i, j)
    i, j = C.pair
    d = cg.d
    out = []
    for a, keep in ((i, 0), (j, 1)):
        lhs = schur_onto(C.full, [keep], d=d)
        rhs = cg.graph.degree(a) * (np.eye(d) - omega1_loop_first_step(cg, a))
        out.append(CheckReport(f"schur_loop_identity[{a}]", max_abs(lhs - rhs), tol))
    return out


def omega_from_conductance(C: PairMatrix) -> np.ndarray:
    """``-C_ii^{-1} C_ij``."""
    return -np.linalg.solve(C.ii, C.ij)


def omega_conductance_identity(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-9) -> CheckReport:
    """Compare ``Omega^0_{ij}`` with ``-C_ii^{-1} C_ij``."""
    C = conductance_matrix(cg, i, j)
    res = max_abs(omega0(cg, i, j).value - omega_from_conductance(C))
    return CheckReport("omega_from_conductance", res, tol)


def current_balance_residual(cg: ConnectionGraph, i: int, j: int) -> float:
    """Largest entry of ``L V_{i->j}`` away from ``i`` and ``j``."""
    from .dirichlet import harmonic_residual, voltage_function

    i, j = cg.graph.check_pair(i, j)
    rest = [v for v in range(1, cg.n + 1) if v not in (i, j)]
    return harmonic_residual(cg, voltage_function(cg, i, j), rest)


def bordered_voltage_conductance(cg: ConnectionGraph, i: int, j: int) -> PairMatrix:
    """``C(i, j)`` read off from the voltage functions: columns ``(L V_{i->j})`` and ``(L V_{j->i})`` at ``i, j``."""
    from .dirichlet import voltage_function

    i, j = cg.graph.check_pair(i, j)
    d = cg.d
    Vi = cg.laplacian @ voltage_function(cg, i, j).data
    Vj = cg.laplacian @ voltage_function(cg, j, i).data

    def blk(a, v):
        return a[(v - 1) * d: v * d]

    return PairMatrix.from_blocks((i, j), blk(Vi, i), blk(Vj, i), blk(Vi, j), blk(Vj, j))
