"""Canonical connection graphs used throughout the examples and experiments."""
from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from . import errors
from .graph import ConnectionGraph, build_graph, make_signature


def rotation2d(theta: float) -> np.ndarray:
    """Counter-clockwise planar rotation by ``theta`` radians."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_signature(d: int, theta: float) -> np.ndarray:
    """``I_{d-2}`` followed by a planar rotation in the last two coordinates."""
    if d < 2:
        raise errors.InvalidParameter(f"a rotation needs d >= 2, got {d}")
    m = np.eye(d)
    m[d - 2:, d - 2:] = rotation2d(theta)
    return m


def rotation3d(theta: float) -> np.ndarray:
    """3x3 rotation about the first axis."""
    return rotation_signature(3, theta)


def _check_theta(*thetas: float) -> None:
    for t in thetas:
        if not np.isfinite(t):
            raise errors.InvalidParameter(f"angle must be finite, got {t!r}")


def cycle(n: int, theta: float, d: int = 2) -> ConnectionGraph:
    """Unit-weight ``n``-cycle ``1-2-...-n-1`` with a rotation on edge ``(1, 2)``.

    With the default ``d=2`` this is the elementary cycle signature: the
    planar rotation ``R(theta)`` on ``(1, 2)`` and the identity on every other
    edge.  Larger ``d`` pads the rotation with an identity block.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 3:
        raise errors.InvalidParameter(f"a cycle needs n >= 3 vertices, got {n!r}")
    _check_theta(theta)
    g = build_graph(n, [(k, k % n + 1, 1.0) for k in range(1, n + 1)])
    vals = {(k, k % n + 1): np.eye(d) for k in range(1, n + 1)}
    vals[(1, 2)] = rotation_signature(d, theta) if d >= 2 else np.array([[np.cos(theta)]])
    return ConnectionGraph(g, make_signature(d, vals))


def line(weights: Sequence[float], signatures: Sequence[np.ndarray],
         vertices: Sequence[int] | None = None) -> ConnectionGraph:
    """A path ``v_0 - v_1 - ... - v_k`` with the given edge weights and signatures.

    Args:
        weights: ``k`` positive weights, one per edge in path order.
        signatures: ``k`` matrices; ``signatures[t]`` is ``sigma_{v_t v_{t+1}}``.
        vertices: optional labels, default ``1..k+1``.
    """
    k = len(weights)
    if k < 1 or len(signatures) != k:
        raise errors.InvalidParameter("a line needs k >= 1 edges and one signature per edge")
    verts = list(range(1, k + 2)) if vertices is None else [int(v) for v in vertices]
    if len(verts) != k + 1:
        raise errors.InvalidParameter("a line with k edges needs k + 1 vertices")
    sig = [np.atleast_2d(np.asarray(s, dtype=float)) for s in signatures]
    d = sig[0].shape[0]
    g = build_graph(max(verts), [(verts[t], verts[t + 1], weights[t]) for t in range(k)])
    return ConnectionGraph(g, make_signature(d, {(verts[t], verts[t + 1]): sig[t] for t in range(k)}))


def parallel_lines(branches: Sequence[tuple[Sequence[float], Sequence[np.ndarray]]]) -> ConnectionGraph:
    """Glue paths between the shared endpoints ``1`` and ``2``.

    Each branch is a ``(weights, signatures)`` pair oriented from vertex 1 to
    vertex 2.  Interior vertices get fresh labels ``3, 4, ...`` branch by
    branch.  At most one branch may be a single edge, since the graph model
    has no multi-edges.
    """
    if not branches:
        raise errors.InvalidParameter("need at least one branch")
    edges, vals, nxt, direct = [], {}, 3, 0
    d = None
    for weights, sigs in branches:
        k = len(weights)
        if k < 1 or len(sigs) != k:
            raise errors.InvalidParameter("each branch needs k >= 1 edges and one signature per edge")
        if k == 1:
            direct += 1
            if direct > 1:
                raise errors.NotInternallyDisjoint("two single-edge branches would form a multi-edge")
        path = [1] + list(range(nxt, nxt + k - 1)) + [2]
        nxt += k - 1
        for t in range(k):
            s = np.atleast_2d(np.asarray(sigs[t], dtype=float))
            d = s.shape[0] if d is None else d
            edges.append((path[t], path[t + 1], weights[t]))
            vals[(path[t], path[t + 1])] = s
    g = build_graph(nxt - 1, edges)
    return ConnectionGraph(g, make_signature(d, vals))


def branch_paths(branches: Sequence[tuple[Sequence[float], Sequence[np.ndarray]]]) -> list[list[int]]:
    """Vertex labels of each branch as laid out by :func:`parallel_lines`."""
    out, nxt = [], 3
    for weights, _ in branches:
        k = len(weights)
        out.append([1] + list(range(nxt, nxt + k - 1)) + [2])
        nxt += k - 1
    return out


def dumbbell(m: int = 4, theta12: float = 0.0, theta23: float = 0.0,
             closing_edge: bool = False) -> ConnectionGraph:
    """Two ``K_m`` cliques bridged by the path ``1 - 2 - 3``.

    Clique A is ``{1, 4, ..., m+2}`` and clique B is ``{3, m+3, ..., 2m+1}``;
    vertex 2 sits between them.  Edges ``(1, 2)`` and ``(2, 3)`` carry
    ``rotation3d(theta12)`` and ``rotation3d(theta23)``; everything else
    carries ``I_3``.  All weights are 1.

    Args:
        m: clique size, at least 2.
        theta12: angle on edge ``(1, 2)``.
        theta23: angle on edge ``(2, 3)``.
        closing_edge: also join vertex ``m+2`` of clique A to vertex ``2m+1``
            of clique B with an identity edge.  Without it both signed edges
            are bridges, so every angle gives a consistent signature; the
            extra edge puts them on a cycle and makes the sweep informative.
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 2:
        raise errors.InvalidParameter(f"clique size must be an integer >= 2, got {m!r}")
    _check_theta(theta12, theta23)
    a = [1] + list(range(4, m + 3))
    b = [3] + list(range(m + 3, 2 * m + 2))
    edges = [(u, v, 1.0) for u, v in itertools.combinations(a, 2)]
    edges += [(u, v, 1.0) for u, v in itertools.combinations(b, 2)]
    edges += [(1, 2, 1.0), (2, 3, 1.0)]
    if closing_edge:
        if m < 2:
            raise errors.InvalidParameter("closing edge needs m >= 2")
        edges.append((a[-1], b[-1], 1.0))
    g = build_graph(2 * m + 1, edges)
    vals = {(u, v): np.eye(3) for u, v, _ in edges}
    vals[(1, 2)] = rotation3d(theta12)
    vals[(2, 3)] = rotation3d(theta23)
    return ConnectionGraph(g, make_signature(3, vals))


WHEATSTONE_EDGES = ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4))


def wheatstone(theta: float = 0.0, edge: tuple[int, int] = (2, 4)) -> ConnectionGraph:
    """Wheatstone bridge on 4 vertices with ``rotation3d(theta)`` on one edge.

    Args:
        theta: rotation angle.
        edge: the signed edge, ``(2, 4)`` by default; ``(1, 3)`` gives the
            alternative reading of the experiment.
    """
    _check_theta(theta)
    edge = tuple(int(x) for x in edge)
    if edge not in WHEATSTONE_EDGES:
        raise errors.InvalidParameter(f"edge {edge} is not an edge of the bridge")
    g = build_graph(4, [(u, v, 1.0) for u, v in WHEATSTONE_EDGES])
    vals = {e: np.eye(3) for e in WHEATSTONE_EDGES}
    vals[edge] = rotation3d(theta)
    return ConnectionGraph(g, make_signature(3, vals))


BUILDERS = {
    "cycle": cycle,
    "dumbbell": dumbbell,
    "wheatstone": wheatstone,
}
