"""Random graphs and signatures for tests, demos and the check suite."""
from __future__ import annotations

import numpy as np
from scipy.stats import ortho_group

from . import errors
from .graph import (ConnectionGraph, WeightedGraph, apply_switching, build_graph, direct_sum,
                    identity_signature, make_signature)


def random_orthogonal(rng: np.random.Generator, d: int, size: int | None = None) -> np.ndarray:
    """Haar-distributed element(s) of ``O(d)``."""
    if d == 1:
        signs = rng.choice([-1.0, 1.0], size=(size or 1, 1, 1))
        return signs if size is not None else signs[0]
    out = ortho_group.rvs(d, size=size or 1, random_state=rng)
    if size is None:
        return out if out.ndim == 2 else out[0]
    return out.reshape(size, d, d)


def random_connected_graph(rng: np.random.Generator, n: int, extra: float = 0.4,
                           weights: tuple[float, float] = (0.5, 2.0), min_degree: int = 1) -> WeightedGraph:
    """Random spanning tree plus each remaining pair with probability ``extra``.

    Args:
        min_degree: add random edges until every vertex has at least this
            many neighbours (capped at ``n - 1``).
    """
    if n < 2:
        raise errors.InvalidParameter("n must be >= 2")
    order = rng.permutation(n) + 1
    pairs = set()
    for k in range(1, n):
        u, v = int(order[k]), int(order[rng.integers(0, k)])
        pairs.add((min(u, v), max(u, v)))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if (u, v) not in pairs and rng.random() < extra:
                pairs.add((u, v))
    need = min(min_degree, n - 1)
    while True:
        deg = np.zeros(n + 1, dtype=int)
        for u, v in pairs:
            deg[u] += 1
            deg[v] += 1
        low = [u for u in range(1, n + 1) if deg[u] < need]
        if not low:
            break
        u = low[0]
        cand = [v for v in range(1, n + 1) if v != u and (min(u, v), max(u, v)) not in pairs]
        v = int(rng.choice(cand))
        pairs.add((min(u, v), max(u, v)))
    lo, hi = weights
    return build_graph(n, [(u, v, float(rng.uniform(lo, hi))) for u, v in sorted(pairs)])


def random_signature(rng: np.random.Generator, g: WeightedGraph, d: int) -> ConnectionGraph:
    """Independent Haar signatures on every edge."""
    mats = random_orthogonal(rng, d, size=len(g.edges))
    return ConnectionGraph(g, make_signature(d, {(u, v): m for (u, v, _), m in zip(g.edges, mats)}))


def random_consistent_signature(rng: np.random.Generator, g: WeightedGraph, d: int) -> ConnectionGraph:
    """``sigma_uv = f(u)^T f(v)`` for a random vertex map ``f``."""
    f = random_orthogonal(rng, d, size=g.n)
    return ConnectionGraph(g, make_signature(d, {(u, v): f[u - 1].T @ f[v - 1] for u, v, _ in g.edges},
                                             orth_tol=1e-8))


def engineered_signature(rng: np.random.Generator, g: WeightedGraph, d: int, rho: int,
                         max_tries: int = 200) -> ConnectionGraph:
    """A signature of nullity exactly ``rho``, hidden by a random switching.

    Built as ``(iota^1)^rho (+) tau`` with a random invertible ``tau`` and
    then switched by a random vertex map.
    """
    from .decompose import nullity

    if not 0 <= rho <= d:
        raise errors.InvalidParameter("need 0 <= rho <= d")
    if rho == d:
        return random_consistent_signature(rng, g, d)
    for _ in range(max_tries):
        tau = random_signature(rng, g, d - rho)
        if nullity(tau) == 0:
            break
    else:
        raise errors.InvalidParameter("could not draw an invertible component; the graph may be a tree")
    sig = tau.signature if rho == 0 else direct_sum(identity_signature(g, rho), tau.signature)
    return apply_switching(ConnectionGraph(g, sig), random_orthogonal(rng, d, size=g.n))


def random_instance(rng: np.random.Generator, n_range=(3, 8), d_range=(1, 3), kind: str = "random",
                    min_degree: int = 2) -> ConnectionGraph:
    """A random connection graph with ``n`` and ``d`` drawn uniformly from the ranges."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    d = int(rng.integers(d_range[0], d_range[1] + 1))
    g = random_connected_graph(rng, n, min_degree=min_degree)
    if kind == "consistent":
        return random_consistent_signature(rng, g, d)
    if kind != "random":
        raise errors.InvalidParameter(f"unknown kind {kind!r}")
    return random_signature(rng, g, d)


def random_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    i, j = rng.choice(n, size=2, replace=False) + 1
    return int(i), int(j)
