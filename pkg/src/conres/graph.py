"""Connection graph data model and the connection Laplacian.

Vertices are labelled ``1..n`` in every public function, matching the usual
way small example graphs are drawn.  Vertex ``v`` owns rows
``(v-1)*d : v*d`` of every ``nd``-row array.

A signature stores one orientation per edge; the reverse orientation is the
transpose, so ``sigma(v, u) == sigma(u, v).T`` holds exactly.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import errors
from .tolerances import ORTH_TOL


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def orthogonality_defect(m: np.ndarray) -> float:
    """Max-norm of ``m^T m - I``."""
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m.T @ m - np.eye(m.shape[1])))) if m.size else 0.0


@dataclass(frozen=True)
class WeightedGraph:
    """Connected, simple, undirected graph with positive edge weights.

    Use :func:`build_graph` rather than the constructor; it validates the
    edge list.

    Attributes:
        n: number of vertices.
        edges: ``(u, v, w)`` triples with 1-based endpoints, in input order.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n)
        for u, v, w in self.edges:
            deg[u - 1] += w
            deg[v - 1] += w
        return _frozen(deg)

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """``neighbors[v-1]`` lists ``(u, w_vu)`` sorted by ``u``."""
        nb: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            nb[u - 1].append((v, w))
            nb[v - 1].append((u, w))
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        W = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            W[u - 1, v - 1] = W[v - 1, u - 1] = w
        return _frozen(W)

    @cached_property
    def laplacian(self) -> np.ndarray:
        """Classical Laplacian ``D - W``."""
        return _frozen(np.diag(self.degrees) - self.weight_matrix)

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight_matrix[u - 1, v - 1] > 0

    def degree(self, v: int) -> float:
        return float(self.degrees[v - 1])

    def check_vertex(self, v: int) -> int:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 1 <= v <= self.n:
            raise errors.VertexOutOfRange(f"vertex {v!r} not in 1..{self.n}")
        return int(v)

    def check_pair(self, i: int, j: int) -> tuple[int, int]:
        i, j = self.check_vertex(i), self.check_vertex(j)
        if i == j:
            raise errors.SamePair(f"pair ({i}, {j}) must consist of distinct vertices")
        return i, j


def build_graph(n: int, edges: Iterable[Sequence[float]]) -> WeightedGraph:
    """Validate an edge list and return a :class:`WeightedGraph`.

    Args:
        n: vertex count, at least 2.
        edges: iterable of ``(u, v, w)`` with ``1 <= u, v <= n`` and ``w > 0``.

    Raises:
        SelfLoop, DuplicateEdge, NonpositiveWeight, VertexOutOfRange,
        DisconnectedGraph, InvalidParameter
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise errors.InvalidParameter(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    seen = set()
    clean = []
    for e in edges:
        if len(e) != 3:
            raise errors.InvalidParameter(f"edge {e!r} is not a (u, v, w) triple")
        u, v, w = e
        for x in (u, v):
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 1 <= x <= n:
                raise errors.VertexOutOfRange(f"edge endpoint {x!r} not in 1..{n}")
        u, v, w = int(u), int(v), float(w)
        if u == v:
            raise errors.SelfLoop(f"self-loop at vertex {u}")
        if not np.isfinite(w) or w <= 0:
            raise errors.NonpositiveWeight(f"edge ({u}, {v}) has weight {w}")
        key = frozenset((u, v))
        if key in seen:
            raise errors.DuplicateEdge(f"edge ({u}, {v}) appears more than once")
        seen.add(key)
        clean.append((u, v, w))
    g = WeightedGraph(n, tuple(clean))
    if len(_reachable(g, 1)) != n:
        raise errors.DisconnectedGraph(f"graph on {n} vertices is not connected")
    return g


def _reachable(g: WeightedGraph, root: int) -> list[int]:
    order, seen, queue = [], {root}, deque([root])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y, _ in g.neighbors[x - 1]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


def bfs_tree(g: WeightedGraph, root: int = 1) -> dict[int, int]:
    """Breadth-first spanning tree as a ``child -> parent`` map.

    Neighbors are visited in increasing label order, so the tree is
    deterministic.
    """
    parent = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, _ in g.neighbors[x - 1]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    del parent[root]
    return parent


@dataclass(frozen=True)
class Signature:
    """An O(d)-valued signature on an edge set.

    ``edges[k]`` is the stored orientation ``(u, v)`` and ``mats[k]`` is
    ``sigma_uv``.  Construct through :func:`make_signature`.
    """

    d: int
    edges: tuple[tuple[int, int], ...]
    mats: np.ndarray
    _index: Mapping[frozenset, int] = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self._index is None:
            object.__setattr__(self, "_index", {frozenset(e): k for k, e in enumerate(self.edges)})

    def __call__(self, u: int, v: int) -> np.ndarray:
        k = self._index.get(frozenset((u, v)))
        if k is None:
            raise errors.EdgeSetMismatch(f"no signature on edge ({u}, {v})")
        return self.mats[k] if self.edges[k][0] == u else self.mats[k].T

    def edge_set(self) -> frozenset:
        return frozenset(self._index)


def make_signature(d: int, values: Mapping[tuple[int, int], np.ndarray] | Iterable,
                   orth_tol: float = ORTH_TOL) -> Signature:
    """Build a validated signature.

    Args:
        d: signature dimension.
        values: mapping (or iterable of pairs) from oriented edge ``(u, v)``
            to the ``d x d`` matrix ``sigma_uv``.  Give one orientation per edge.
        orth_tol: accepted max-norm deviation of ``S^T S`` from ``I``.
    """
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 1:
        raise errors.InvalidParameter(f"signature dimension must be a positive integer, got {d!r}")
    items = values.items() if isinstance(values, Mapping) else values
    edges, mats, seen = [], [], set()
    for (u, v), m in items:
        m = np.asarray(m, dtype=float).reshape(d, d) if np.size(m) == d * d else np.asarray(m, dtype=float)
        if m.shape != (d, d):
            raise errors.DimensionMismatch(f"signature on ({u}, {v}) has shape {m.shape}, expected {(d, d)}")
        if not np.all(np.isfinite(m)):
            raise errors.NonOrthogonalSignature(f"signature on ({u}, {v}) is not finite")
        defect = orthogonality_defect(m)
        if defect > orth_tol:
            raise errors.NonOrthogonalSignature(
                f"signature on ({u}, {v}) is not orthogonal (defect {defect:.3g} > {orth_tol:g})")
        key = frozenset((u, v))
        if key in seen:
            raise errors.DuplicateEdge(f"signature given twice for edge ({u}, {v})")
        seen.add(key)
        edges.append((int(u), int(v)))
        mats.append(m)
    arr = np.array(mats, dtype=float).reshape(len(mats), d, d)
    return Signature(int(d), tuple(edges), _frozen(arr))


def identity_signature(g: WeightedGraph, d: int = 1) -> Signature:
    """The trivial signature, ``sigma_uv = I`` on every edge."""
    return make_signature(d, {(u, v): np.eye(d) for u, v, _ in g.edges})


@dataclass(frozen=True)
class ConnectionGraph:
    """A graph together with a signature on exactly its edges.

    ``sigmas[k]`` is the signature of ``graph.edges[k]`` in the orientation
    stored in the graph.
    """

    graph: WeightedGraph
    signature: Signature

    def __post_init__(self):
        gkeys = {frozenset((u, v)) for u, v, _ in self.graph.edges}
        if gkeys != self.signature.edge_set():
            missing = len(gkeys - self.signature.edge_set())
            extra = len(self.signature.edge_set() - gkeys)
            raise errors.EdgeSetMismatch(
                f"signature/graph edge sets differ ({missing} edges lack a signature, "
                f"{extra} signatures lack an edge)")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def d(self) -> int:
        return self.signature.d

    def sigma(self, u: int, v: int) -> np.ndarray:
        return self.signature(u, v)

    @cached_property
    def sigmas(self) -> np.ndarray:
        return _frozen(np.array([self.signature(u, v) for u, v, _ in self.graph.edges]))

    @cached_property
    def laplacian(self) -> np.ndarray:
        return _frozen(connection_laplacian(self))

    @cached_property
    def signature_table(self) -> np.ndarray:
        """Dense ``(n, n, d, d)`` array with ``sigma_uv`` at ``[u-1, v-1]`` (zero off edges)."""
        t = np.zeros((self.n, self.n, self.d, self.d))
        for (u, v, _), s in zip(self.graph.edges, self.sigmas):
            t[u - 1, v - 1] = s
            t[v - 1, u - 1] = s.T
        return _frozen(t)


def connection_graph(n: int, edges: Iterable[Sequence], d: int | None = None,
                     orth_tol: float = ORTH_TOL) -> ConnectionGraph:
    """Convenience constructor from ``(u, v, w, sigma_uv)`` tuples.

    ``sigma_uv`` may be a scalar when ``d == 1``.
    """
    edges = list(edges)
    if d is None:
        d = 1 if not edges else int(np.sqrt(np.size(edges[0][3])))
    g = build_graph(n, [(u, v, w) for u, v, w, _ in edges])
    sig = make_signature(d, [((u, v), np.reshape(np.asarray(s, float), (d, d))) for u, v, _, s in edges],
                         orth_tol=orth_tol)
    return ConnectionGraph(g, sig)


def connection_laplacian(cg: ConnectionGraph) -> np.ndarray:
    """Assemble the ``nd x nd`` connection Laplacian.

    Diagonal blocks are ``deg(v) I``; the ``(u, v)`` block of an edge is
    ``-w_uv sigma_uv`` and the ``(v, u)`` block is its transpose, so the
    result is symmetric bit for bit.
    """
    n, d = cg.n, cg.d
    L = np.zeros((n * d, n * d))
    for (u, v, w), s in zip(cg.graph.edges, cg.sigmas):
        a, b = (u - 1) * d, (v - 1) * d
        L[a:a + d, b:b + d] = -w * s
        L[b:b + d, a:a + d] = -w * s.T
    for v in range(n):
        L[v * d:(v + 1) * d, v * d:(v + 1) * d] = cg.graph.degrees[v] * np.eye(d)
    return L


@dataclass(frozen=True)
class BlockVector:
    """A function ``V -> R^{d x d}`` stored as an ``nd x d`` matrix."""

    n: int
    d: int
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.shape != (self.n * self.d, self.d):
            raise errors.DimensionMismatch(
                f"block vector data has shape {data.shape}, expected {(self.n * self.d, self.d)}")
        object.__setattr__(self, "data", _frozen(data))

    def block(self, v: int) -> np.ndarray:
        if not 1 <= v <= self.n:
            raise errors.VertexOutOfRange(f"vertex {v!r} not in 1..{self.n}")
        return self.data[(v - 1) * self.d: v * self.d]

    def blocks(self) -> np.ndarray:
        return self.data.reshape(self.n, self.d, self.d)

    @classmethod
    def from_blocks(cls, blocks) -> "BlockVector":
        b = np.asarray(blocks, dtype=float)
        n, d, _ = b.shape
        return cls(n, d, b.reshape(n * d, d))

    @classmethod
    def zeros(cls, n: int, d: int) -> "BlockVector":
        return cls(n, d, np.zeros((n * d, d)))


def _check_block_vector(cg: ConnectionGraph, f: BlockVector) -> None:
    if f.n != cg.n or f.d != cg.d:
        raise errors.DimensionMismatch(f"block vector is ({f.n}, {f.d}), graph is ({cg.n}, {cg.d})")


def quadratic_form(cg: ConnectionGraph, f: BlockVector) -> np.ndarray:
    """``f^T L f`` as a ``d x d`` matrix, accumulated edge by edge."""
    _check_block_vector(cg, f)
    out = np.zeros((cg.d, cg.d))
    for (u, v, w), s in zip(cg.graph.edges, cg.sigmas):
        diff = f.block(u) - s @ f.block(v)
        out += w * diff.T @ diff
    return out


def apply_laplacian(cg: ConnectionGraph, f: BlockVector) -> BlockVector:
    _check_block_vector(cg, f)
    return BlockVector(cg.n, cg.d, cg.laplacian @ f.data)


def direct_sum(sigma: Signature, tau: Signature) -> Signature:
    """Blockwise direct sum ``sigma (+) tau`` on a common edge set."""
    if sigma.edge_set() != tau.edge_set():
        raise errors.EdgeSetMismatch("direct sum needs signatures on the same edge set")
    d1, d2 = sigma.d, tau.d
    vals = {}
    for (u, v), s in zip(sigma.edges, sigma.mats):
        m = np.zeros((d1 + d2, d1 + d2))
        m[:d1, :d1] = s
        m[d1:, d1:] = tau(u, v)
        vals[(u, v)] = m
    return make_signature(d1 + d2, vals)


def direct_sum_graph(cg1: ConnectionGraph, cg2: ConnectionGraph) -> ConnectionGraph:
    if cg1.graph != cg2.graph:
        raise errors.EdgeSetMismatch("direct sum needs the same underlying graph")
    return ConnectionGraph(cg1.graph, direct_sum(cg1.signature, cg2.signature))


def direct_sum_permutation(n: int, d1: int, d2: int) -> np.ndarray:
    """Index permutation ``p`` with ``L[p][:, p] == block_diag(L1, L2)``.

    ``L`` is the Laplacian of a ``(d1 + d2)``-dimensional direct sum and
    ``L1``, ``L2`` those of the summands.
    """
    d = d1 + d2
    first = [v * d + k for v in range(n) for k in range(d1)]
    second = [v * d + d1 + k for v in range(n) for k in range(d2)]
    return np.array(first + second, dtype=int)


def _switching_array(cg: ConnectionGraph, f, orth_tol: float) -> np.ndarray:
    if isinstance(f, Mapping):
        f = [f[v] for v in range(1, cg.n + 1)]
    F = np.asarray(f, dtype=float)
    if F.shape != (cg.n, cg.d, cg.d):
        raise errors.DimensionMismatch(f"switching map has shape {F.shape}, expected {(cg.n, cg.d, cg.d)}")
    for v in range(cg.n):
        defect = orthogonality_defect(F[v])
        if defect > orth_tol:
            raise errors.NonOrthogonalSwitch(f"switching matrix at vertex {v + 1} has defect {defect:.3g}")
    return F


def apply_switching(cg: ConnectionGraph, f, orth_tol: float = ORTH_TOL) -> ConnectionGraph:
    """Switch ``cg`` by the vertex map ``f``: ``tau_uv = f(u) sigma_uv f(v)^T``.

    Args:
        cg: connection graph.
        f: ``(n, d, d)`` array or a mapping from vertex to orthogonal matrix.

    Returns:
        The switched connection graph; its Laplacian equals ``F L F^T`` with
        ``F = blockdiag(f(1), ..., f(n))``.
    """
    F = _switching_array(cg, f, orth_tol)
    vals = {(u, v): F[u - 1] @ s @ F[v - 1].T for (u, v, _), s in zip(cg.graph.edges, cg.sigmas)}
    # Products of orthogonal matrices drift by a few ulps; the tolerance absorbs it.
    return ConnectionGraph(cg.graph, make_signature(cg.d, vals, orth_tol=max(orth_tol, 1e-8)))


def block_diag_switch(f) -> np.ndarray:
    """The ``nd x nd`` block-diagonal matrix of a switching map."""
    from scipy.linalg import block_diag

    return block_diag(*np.asarray(f, dtype=float))


def invert_switching(f) -> np.ndarray:
    """Vertexwise transpose; switching by it undoes ``f``."""
    return np.transpose(np.asarray(f, dtype=float), (0, 2, 1))


def path_signature(cg: ConnectionGraph, path: Sequence[int]) -> np.ndarray:
    """Ordered product ``sigma_{p0 p1} sigma_{p1 p2} ...`` along a vertex path."""
    out = np.eye(cg.d)
    for a, b in zip(path[:-1], path[1:]):
        out = out @ cg.sigma(a, b)
    return out


def tree_path(parent: Mapping[int, int], root: int, v: int) -> list[int]:
    """Vertex sequence from ``root`` to ``v`` along a ``child -> parent`` tree."""
    path = [v]
    while path[-1] != root:
        path.append(parent[path[-1]])
    return path[::-1]
