"""Consistency, nullity and the splitting of a signature into trivial and invertible parts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.linalg as sla

from . import errors
from .graph import (ConnectionGraph, apply_switching, bfs_tree, direct_sum, identity_signature,
                    make_signature, orthogonality_defect, tree_path)
from .linalg import complete_orthonormal, kernel_basis, schur_onto, symmetrize
from .tolerances import ORTH_TOL, rank_tol


def nullity(cg: ConnectionGraph, tol: float | None = None) -> int:
    """Number of eigenvalues of ``L`` at most ``tol * lambda_max`` (default ``1e-10 * nd``)."""
    lam = np.linalg.eigvalsh(cg.laplacian)
    tol = rank_tol(cg.laplacian.shape[0]) if tol is None else tol
    return int(np.count_nonzero(lam <= tol * max(lam[-1], 0.0)))


def tree_switching(cg: ConnectionGraph, parent: Mapping[int, int] | None = None, root: int = 1) -> np.ndarray:
    """Switching map that turns every tree edge into the identity.

    ``f(root) = I`` and ``f(child) = f(parent) sigma_{parent, child}``, so
    ``f(u) sigma_uv f(v)^T = I`` whenever ``{u, v}`` is a tree edge.
    """
    parent = bfs_tree(cg.graph, root) if parent is None else parent
    f = np.zeros((cg.n, cg.d, cg.d))
    for v in range(1, cg.n + 1):
        m = np.eye(cg.d)
        path = tree_path(parent, root, v)
        for a, b in zip(path[:-1], path[1:]):
            m = m @ cg.sigma(a, b)
        f[v - 1] = m
    return f


def spanning_tree_simplify(cg: ConnectionGraph, parent: Mapping[int, int] | None = None,
                           root: int = 1) -> tuple[ConnectionGraph, np.ndarray]:
    """Switch ``cg`` so that the signature is the identity on a spanning tree.

    Args:
        cg: connection graph.
        parent: ``child -> parent`` map of the tree; breadth-first from
            ``root`` when omitted.
        root: root vertex.

    Returns:
        ``(switched graph, f)`` with ``f`` of shape ``(n, d, d)``.
    """
    f = tree_switching(cg, parent, root)
    return apply_switching(cg, f), f


def _tree_edges(parent: Mapping[int, int]) -> set:
    return {frozenset((c, p)) for c, p in parent.items()}


def is_consistent(cg: ConnectionGraph, method: str = "spectral", tol: float | None = None) -> bool:
    """Whether every cycle of ``cg`` has trivial signature product.

    Args:
        method: ``"spectral"`` compares the nullity of ``L`` with ``d``;
            ``"cycles"`` checks the holonomy of every fundamental cycle of a
            breadth-first spanning tree.
        tol: rank tolerance for ``"spectral"``, entry tolerance (default
            ``orth_tol``) for ``"cycles"``.
    """
    if method == "spectral":
        return nullity(cg, tol) == cg.d
    if method != "cycles":
        raise errors.InvalidParameter(f"unknown method {method!r}")
    tol = ORTH_TOL if tol is None else tol
    parent = bfs_tree(cg.graph)
    f = tree_switching(cg, parent)
    tree = _tree_edges(parent)
    for u, v, _ in cg.graph.edges:
        if frozenset((u, v)) in tree:
            continue
        hol = f[u - 1] @ cg.sigma(u, v) @ f[v - 1].T
        if np.max(np.abs(hol - np.eye(cg.d))) > tol * max(1, cg.n):
            return False
    return True


def fundamental_holonomies(cg: ConnectionGraph) -> dict[tuple[int, int], np.ndarray]:
    """Signature product of the fundamental cycle of each non-tree edge ``(u, v)``."""
    parent = bfs_tree(cg.graph)
    f = tree_switching(cg, parent)
    tree = _tree_edges(parent)
    return {(u, v): f[u - 1] @ cg.sigma(u, v) @ f[v - 1].T
            for u, v, _ in cg.graph.edges if frozenset((u, v)) not in tree}


@dataclass(frozen=True)
class DecompositionResult:
    """``sigma`` switched into ``(iota^1 (+) ... (+) iota^1) (+) tau``.

    Attributes:
        rho: nullity of ``L^sigma``.
        switching: ``(n, d, d)`` map ``s`` with ``s(u) sigma_uv s(v)^T`` equal
            to ``I_rho (+) tau_uv``; pass it to :func:`apply_switching`.
        tau: the invertible component, or ``None`` when ``rho == d``.
        graph: the input graph.
    """

    rho: int
    switching: np.ndarray
    tau: object
    graph: ConnectionGraph

    @property
    def frames(self) -> np.ndarray:
        """Per-vertex orthonormal frames ``[f_1(v) ... f_rho(v) g(v) ...]`` (transposes of ``switching``)."""
        return np.transpose(self.switching, (0, 2, 1))

    def reconstruction(self) -> ConnectionGraph:
        """``(iota^1)^rho (+) tau`` on the same graph."""
        g = self.graph.graph
        triv = identity_signature(g, self.rho) if self.rho else None
        if self.tau is None:
            return ConnectionGraph(g, triv)
        if triv is None:
            return ConnectionGraph(g, self.tau)
        return ConnectionGraph(g, direct_sum(triv, self.tau))

    def tau_graph(self) -> ConnectionGraph | None:
        return None if self.tau is None else ConnectionGraph(self.graph.graph, self.tau)


def _polar(m: np.ndarray) -> np.ndarray:
    u, _, vt = np.linalg.svd(m, full_matrices=False)
    return u @ vt


def decompose_signature(cg: ConnectionGraph, tol: float | None = None,
                        frame_tol: float = 1e-8) -> DecompositionResult:
    """Split ``sigma`` into a trivial part of dimension ``rho`` and an invertible part.

    A kernel basis of ``L`` scaled to squared norm ``n`` has orthonormal
    columns at every vertex.  Each such ``d x rho`` block is completed to an
    orthogonal frame ``[F_v G_v]`` and ``tau_uv = G_u^T sigma_uv G_v``.

    Raises:
        KernelDegeneracy: the per-vertex kernel blocks are not orthonormal
            within ``frame_tol``, which means the numerical kernel is wrong.
    """
    n, d = cg.n, cg.d
    K = kernel_basis(cg.laplacian, tol)
    rho = K.shape[1]
    if rho > d:
        raise errors.KernelDegeneracy(f"kernel dimension {rho} exceeds d = {d}")
    if rho == 0:
        return DecompositionResult(0, np.broadcast_to(np.eye(d), (n, d, d)).copy(), cg.signature, cg)
    blocks = np.sqrt(n) * K.reshape(n, d, rho)
    frames = np.zeros((n, d, d))
    for v in range(n):
        defect = float(np.max(np.abs(blocks[v].T @ blocks[v] - np.eye(rho))))
        if defect > frame_tol:
            raise errors.KernelDegeneracy(f"kernel block at vertex {v + 1} is not orthonormal (defect {defect:.3g})")
        frames[v] = complete_orthonormal(_polar(blocks[v]))
    switching = np.transpose(frames, (0, 2, 1))
    tau = None
    if rho < d:
        vals = {}
        for (u, v, _), s in zip(cg.graph.edges, cg.sigmas):
            m = frames[u - 1][:, rho:].T @ s @ frames[v - 1][:, rho:]
            vals[(u, v)] = _polar(m)
        tau = make_signature(d - rho, vals, orth_tol=1e-6)
    return DecompositionResult(rho, switching, tau, cg)


# ---------------------------------------------------------------------------
# cycle graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleClassification:
    """Normal form of a signature on a cycle graph.

    Attributes:
        d1: number of ``iota^1`` summands.
        dminus1: number of ``iota^{-1}`` summands.
        angles: rotation angles in ``(0, pi)``, ascending.
        switching: map taking ``sigma`` to the normal form, in which every
            edge except ``(1, a)`` carries ``I`` and ``(1, a)`` carries
            ``diag(+1.., -1..) (+) R(angles[0]) (+) ...``; ``a`` is the
            smallest neighbour of vertex 1.
        edge: the edge ``(1, a)``.
    """

    d1: int
    dminus1: int
    angles: tuple[float, ...]
    switching: np.ndarray
    edge: tuple[int, int]

    def as_tuple(self) -> tuple[int, int, list[float]]:
        return self.d1, self.dminus1, list(self.angles)


def _check_cycle(cg: ConnectionGraph) -> None:
    g = cg.graph
    if len(g.edges) != g.n or any(len(nb) != 2 for nb in g.neighbors):
        raise errors.NotACycle("graph is not a single cycle")


def cycle_tree(cg: ConnectionGraph) -> tuple[dict[int, int], tuple[int, int]]:
    """Spanning path of a cycle omitting ``(1, a)``, ``a`` the smaller neighbour of 1."""
    _check_cycle(cg)
    a = cg.graph.neighbors[0][0][0]
    b = cg.graph.neighbors[0][1][0]
    parent, prev, cur = {}, 1, b
    while cur != 1:
        parent[cur] = prev
        nxt = [u for u, _ in cg.graph.neighbors[cur - 1] if u != prev][0]
        prev, cur = cur, nxt
    return parent, (1, a)


def classify_cycle_signature(cg: ConnectionGraph, tol: float = 1e-9) -> CycleClassification:
    """Decompose a cycle signature into ``+1``, ``-1`` and planar rotation summands.

    The signature is first made trivial along the path from 1 around to its
    smaller neighbour ``a``; the holonomy then sits on ``(1, a)``.  The real
    Schur form of that orthogonal matrix is block diagonal with ``+-1``
    entries and rotation blocks, and it is reordered into canonical order.

    Raises:
        NotACycle: the graph is not a single cycle.
    """
    parent, (one, a) = cycle_tree(cg)
    f = tree_switching(cg, parent, root=1)
    H = f[0] @ cg.sigma(one, a) @ f[a - 1].T
    T, Z = sla.schur(H, output="real")
    d = cg.d
    plus, minus, rots = [], [], []
    k = 0
    while k < d:
        if k + 1 < d and abs(T[k + 1, k]) > tol:
            z = Z[:, k:k + 2].copy()
            c, av = 0.5 * (T[k + 1, k] - T[k, k + 1]), 0.5 * (T[k, k] + T[k + 1, k + 1])
            if c < 0:
                z[:, 1] *= -1
                c = -c
            rots.append((float(np.arctan2(c, av)), z))
            k += 2
        else:
            (plus if T[k, k] > 0 else minus).append(Z[:, k:k + 1])
            k += 1
    rots.sort(key=lambda t: t[0])
    cols = plus + minus + [z for _, z in rots]
    P = np.hstack(cols) if cols else np.eye(d)
    switching = np.einsum("ab,vbc->vac", P.T, f)
    return CycleClassification(len(plus), len(minus), tuple(t for t, _ in rots), switching, (one, a))


def cycle_normal_form(cls: CycleClassification, cg: ConnectionGraph) -> ConnectionGraph:
    """The canonical signature described by ``cls`` on the graph of ``cg``."""
    d = cg.d
    m = np.zeros((d, d))
    k = 0
    for _ in range(cls.d1):
        m[k, k] = 1.0
        k += 1
    for _ in range(cls.dminus1):
        m[k, k] = -1.0
        k += 1
    for t in cls.angles:
        c, s = np.cos(t), np.sin(t)
        m[k:k + 2, k:k + 2] = [[c, -s], [s, c]]
        k += 2
    one, a = cls.edge
    vals = {(u, v): np.eye(d) for u, v, _ in cg.graph.edges if {u, v} != {one, a}}
    vals[(one, a)] = m
    return ConnectionGraph(cg.graph, make_signature(d, vals))


# ---------------------------------------------------------------------------
# absolute inconsistency
# ---------------------------------------------------------------------------

def is_absolutely_inconsistent(cg: ConnectionGraph, tol: float | None = None) -> bool:
    """Whether ``L`` is invertible, cross-checked against the loop criterion.

    The second criterion asks that ``I - Omega^1_v`` be positive definite at
    every vertex; ``deg(v) (I - Omega^1_v)`` is the one-vertex Schur
    complement of ``L``.

    Raises:
        CriterionMismatch: the two criteria disagree.
    """
    L = cg.laplacian
    d = cg.d
    lam = np.linalg.eigvalsh(L)
    thresh = (rank_tol(L.shape[0]) if tol is None else tol) * lam[-1]
    invertible = bool(lam[0] > thresh)
    margins = []
    for v in range(cg.n):
        S = schur_onto(L, [v], d=d, use_pseudo=True)
        margins.append(float(np.linalg.eigvalsh(symmetrize(S))[0]))
    loops_pd = bool(min(margins) > thresh)
    if invertible != loops_pd:
        raise errors.CriterionMismatch(
            f"spectral criterion says {invertible} (min eigenvalue {lam[0]:.3g}) but loop criterion says "
            f"{loops_pd} (min margin {min(margins):.3g}), threshold {thresh:.3g}")
    return invertible


def switching_defect(f: np.ndarray) -> float:
    return max(orthogonality_defect(m) for m in np.asarray(f))
