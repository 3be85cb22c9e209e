"""Mean path signatures: expected signature products along random walks.

For a walk ``X_0 = x, X_1, ...`` with kernel ``P = D^{-1} W`` the mean path
signature ``Omega^s_{xj}`` is the expectation of
``sigma_{X_0 X_1} sigma_{X_1 X_2} ... sigma_{X_{T-1} X_T}`` where ``T`` is the
first time ``t >= s`` with ``X_t = j``.  The conditioned version
``Omega^s_{xj}(k)`` takes the expectation given that ``j`` is reached before
``k`` (both hitting times measured from ``s``).

Exact values come from linear solves.  :func:`mc_mean_path` samples the
walks directly and is the independent oracle for all of them.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import errors
from .classical import classical_voltage, hitting_probability
from .dirichlet import voltage_function
from .graph import BlockVector, ConnectionGraph, WeightedGraph
from .linalg import block_rows, schur_onto, spd_solve
from .reports import CheckReport
from .tolerances import PROB_FLOOR

__all__ = [
    "MeanPathSignature", "WalkConfig", "CensoredWalkWarning", "omega0", "omega0_column",
    "omega1_loop", "omega1_loop_first_step", "omega_conditioned", "omega0_conditioned",
    "omega1_conditioned_loop", "omega1_escape", "mc_mean_path", "mc_hitting_probability",
    "hitting_probability", "kernel_transport_check", "default_max_steps",
]

BLOCK_SIZE = 16384


class CensoredWalkWarning(RuntimeWarning):
    """Some sampled walks reached ``max_steps`` before stopping."""


@dataclass(frozen=True)
class MeanPathSignature:
    """A mean path signature value with its provenance.

    Attributes:
        value: the ``d x d`` matrix.
        kind: human-readable label such as ``"Omega^0_{12}"``.
        provenance: ``"exact"`` or ``"monte_carlo"``.
        samples: walks drawn (Monte Carlo only).
        accepted: walks that contributed to the mean.
        censored: walks cut off at ``max_steps``.
        stderr: entrywise standard errors (Monte Carlo only).
    """

    value: np.ndarray
    kind: str
    provenance: str = "exact"
    samples: int = 0
    accepted: int = 0
    censored: int = 0
    stderr: np.ndarray | None = field(default=None, repr=False)

    @property
    def max_stderr(self) -> float:
        return float(np.max(self.stderr)) if self.stderr is not None else 0.0


@dataclass(frozen=True)
class WalkConfig:
    """Monte Carlo settings.

    ``max_steps=None`` selects :func:`default_max_steps` for the graph.
    """

    samples: int = 100_000
    seed: int = 0
    max_steps: int | None = None

    def __post_init__(self):
        if int(self.samples) < 1:
            raise errors.InvalidParameter(f"samples must be >= 1, got {self.samples}")
        if self.max_steps is not None and int(self.max_steps) < 1:
            raise errors.InvalidParameter(f"max_steps must be >= 1, got {self.max_steps}")
        if not 0 <= int(self.seed) < 2**64:
            raise errors.InvalidParameter("seed must fit in 64 unsigned bits")


def default_max_steps(g: WeightedGraph) -> int:
    """``100 n^2 max(deg) / min(w)`` rounded up."""
    wmin = min(w for _, _, w in g.edges)
    return int(np.ceil(100 * g.n**2 * float(np.max(g.degrees)) / wmin))


def _transition(g: WeightedGraph) -> np.ndarray:
    return g.weight_matrix / g.degrees[:, None]


# ---------------------------------------------------------------------------
# exact values
# ---------------------------------------------------------------------------

def omega0_column(cg: ConnectionGraph, j: int) -> BlockVector:
    """``x -> Omega^0_{xj}`` for every vertex ``x`` as a block vector.

    Solves ``L_{j^c} X = -L_{j^c, j}`` and puts ``I`` in block ``j``.
    """
    j = cg.graph.check_vertex(j)
    n, d = cg.n, cg.d
    L = cg.laplacian
    rest = block_rows([v for v in range(n) if v != j - 1], d)
    jr = block_rows([j - 1], d)
    out = np.zeros((n * d, d))
    out[jr] = np.eye(d)
    out[rest] = spd_solve(L[np.ix_(rest, rest)], -L[np.ix_(rest, jr)])
    return BlockVector(n, d, out)


def omega0(cg: ConnectionGraph, i: int, j: int) -> MeanPathSignature:
    """Exact ``Omega^0_{ij}``; the identity when ``i == j``."""
    i, j = cg.graph.check_vertex(i), cg.graph.check_vertex(j)
    val = np.eye(cg.d) if i == j else np.array(omega0_column(cg, j).block(i))
    return MeanPathSignature(val, f"Omega^0_{{{i}{j}}}")


def omega1_loop(cg: ConnectionGraph, i: int) -> MeanPathSignature:
    """``Omega^1_i`` from the one-vertex Schur complement: ``I - (L / L_{i^c}) / deg(i)``."""
    i = cg.graph.check_vertex(i)
    S = schur_onto(cg.laplacian, [i - 1], d=cg.d)
    val = np.eye(cg.d) - S / cg.graph.degree(i)
    return MeanPathSignature(0.5 * (val + val.T), f"Omega^1_{{{i}}}")


def omega1_loop_first_step(cg: ConnectionGraph, i: int) -> np.ndarray:
    """``Omega^1_i`` by first-step analysis: ``sum_y P_iy sigma_iy Omega^0_{yi}``."""
    i = cg.graph.check_vertex(i)
    col = omega0_column(cg, i)
    out = np.zeros((cg.d, cg.d))
    for y, w in cg.graph.neighbors[i - 1]:
        out += w * cg.sigma(i, y) @ col.block(y)
    return out / cg.graph.degree(i)


def omega_conditioned(cg: ConnectionGraph, x: int, j: int, k: int, s: int = 1,
                      prob_floor: float = PROB_FLOOR) -> MeanPathSignature:
    """Exact ``Omega^s_{xj}(k)`` through the conditioned (Doob-transformed) walk.

    With ``h(y) = P^y[T_j < T_k]`` the walk conditioned on hitting ``j``
    before ``k`` has kernel ``Q_yz = P_yz h(z) / h(y)``.  Its mean signature
    ``G`` solves ``G(y) - sum_z Q_yz sigma_yz G(z) = 0`` off ``{j, k}`` with
    ``G(j) = I``.  Starting points in ``{j, k}`` with ``s = 1`` take one
    step first.

    Raises:
        UnreachableConditioning: the event has probability ``<= prob_floor``.
        SamePair: ``j == k``.
    """
    g = cg.graph
    x, (j, k) = g.check_vertex(x), g.check_pair(j, k)
    if s not in (0, 1):
        raise errors.InvalidParameter(f"s must be 0 or 1, got {s!r}")
    kind = f"Omega^{s}_{{{x}{j}}}({k})"
    d = cg.d
    if s == 0 and x == j:
        return MeanPathSignature(np.eye(d), kind)
    if s == 0 and x == k:
        raise errors.UnreachableConditioning(f"{kind}: the walk starts on the avoided vertex")
    h = classical_voltage(g, j, k)
    P = _transition(g)
    live = [y for y in range(1, g.n + 1) if y not in (j, k) and h[y - 1] > prob_floor]
    pos = {y: t for t, y in enumerate(live)}
    m = len(live)
    A = np.eye(m * d)
    b = np.zeros((m * d, d))
    for y in live:
        r = pos[y] * d
        for z, _ in g.neighbors[y - 1]:
            q = P[y - 1, z - 1] * h[z - 1] / h[y - 1]
            if z == j:
                b[r:r + d] += q * cg.sigma(y, z)
            elif z in pos:
                c = pos[z] * d
                A[r:r + d, c:c + d] -= q * cg.sigma(y, z)
    G = {j: np.eye(d)}
    if m:
        sol = np.linalg.solve(A, b)
        G.update({y: sol[pos[y] * d:(pos[y] + 1) * d] for y in live})
    if x in (j, k):
        p = float(sum(P[x - 1, z - 1] * h[z - 1] for z, _ in g.neighbors[x - 1]))
        if p <= prob_floor:
            raise errors.DegenerateConditioning(f"{kind}: conditioning event has probability {p:.3g}")
        val = sum(P[x - 1, z - 1] * h[z - 1] * cg.sigma(x, z) @ G[z]
                  for z, _ in g.neighbors[x - 1] if z in G) / p
        return MeanPathSignature(np.asarray(val), kind)
    if x not in G:
        raise errors.UnreachableConditioning(f"{kind}: conditioning event has probability {h[x - 1]:.3g}")
    return MeanPathSignature(np.array(G[x]), kind)


def omega0_conditioned(cg: ConnectionGraph, x: int, i: int, j: int,
                       prob_floor: float = PROB_FLOOR) -> MeanPathSignature:
    """``Omega^0_{xi}(j)`` as the voltage function divided by the hitting probability.

    ``V_{i->j}(x) = P^x[T_i < T_j] Omega^0_{xi}(j)``; the probability comes
    from the scalar Dirichlet problem.
    """
    g = cg.graph
    x, (i, j) = g.check_vertex(x), g.check_pair(i, j)
    kind = f"Omega^0_{{{x}{i}}}({j})"
    if x == i:
        return MeanPathSignature(np.eye(cg.d), kind)
    p = hitting_probability(g, x, i, j)
    if p <= prob_floor:
        raise errors.UnreachableConditioning(f"{kind}: P^{x}[T_{i} < T_{j}] = {p:.3g}")
    return MeanPathSignature(np.array(voltage_function(cg, i, j).block(x)) / p, kind)


def omega1_conditioned_loop(cg: ConnectionGraph, i: int, j: int, method: str = "walk",
                            prob_floor: float = PROB_FLOOR) -> MeanPathSignature:
    """``Omega^1_i(j)``: mean loop signature at ``i`` given the loop avoids ``j``.

    Args:
        method: ``"walk"`` solves the conditioned walk directly;
            ``"schur"`` inverts the diagonal conductance block relation
            ``C_ii = deg(i) (I - (1 - p) Omega^1_i(j))`` with ``p`` the escape
            probability.

    Raises:
        DegenerateConditioning: every step from ``i`` is absorbed at ``j``.
    """
    i, j = cg.graph.check_pair(i, j)
    if method == "walk":
        return omega_conditioned(cg, i, i, j, s=1, prob_floor=prob_floor)
    if method != "schur":
        raise errors.InvalidParameter(f"unknown method {method!r}")
    from .classical import escape_probability
    from .conductance import conductance_matrix

    q = 1.0 - escape_probability(cg.graph, i, j)
    if q <= prob_floor:
        raise errors.DegenerateConditioning(f"Omega^1_{{{i}}}({j}): return probability {q:.3g}")
    Cii = conductance_matrix(cg, i, j).ii
    val = (np.eye(cg.d) - Cii / cg.graph.degree(i)) / q
    return MeanPathSignature(0.5 * (val + val.T), f"Omega^1_{{{i}}}({j})")


def omega1_escape(cg: ConnectionGraph, i: int, j: int) -> MeanPathSignature:
    """``Omega^1_{ij}(i)``: mean signature of walks from ``i`` reaching ``j`` before returning."""
    i, j = cg.graph.check_pair(i, j)
    return omega_conditioned(cg, i, j, i, s=1)


def kernel_transport_check(cg: ConnectionGraph, f: BlockVector, tol: float = 1e-8,
                           kernel_tol: float = 1e-9) -> CheckReport:
    """Check ``f(i) = Omega^0_{ij} f(j)`` for all pairs, for ``f`` in the kernel of ``L``.

    Raises:
        NotInKernel: ``||L f||`` exceeds ``kernel_tol`` relative to the
            largest entry of ``f`` (or absolutely when that is below 1).
    """
    if f.n != cg.n or f.d != cg.d:
        raise errors.DimensionMismatch("block vector does not match the graph")
    scale = max(1.0, float(np.max(np.abs(f.data))))
    res = float(np.max(np.abs(cg.laplacian @ f.data)))
    if res > kernel_tol * scale:
        raise errors.NotInKernel(f"||L f|| = {res:.3g} exceeds {kernel_tol:g}")
    worst = 0.0
    for j in range(1, cg.n + 1):
        col = omega0_column(cg, j)
        for i in range(1, cg.n + 1):
            worst = max(worst, float(np.max(np.abs(f.block(i) - col.block(i) @ f.block(j)))))
    return CheckReport("kernel_transport", worst, tol * scale, {"laplacian_residual": res})


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(int(block),))))


def _walk_blocks(cg: ConnectionGraph, start: int, stops: tuple[int, ...], s: int,
                 cfg: WalkConfig, track: bool = True) -> Iterator[tuple[np.ndarray, np.ndarray | None]]:
    """Run walks block by block.

    Yields ``(stop, prod)`` per block: ``stop[b]`` is the (1-based) vertex in
    ``stops`` where walk ``b`` stopped, or 0 when censored; ``prod[b]`` is
    the signature product accumulated up to that point.  Sample ``t`` lives
    in block ``t // BLOCK_SIZE`` and always consumes uniform number
    ``t % BLOCK_SIZE`` of that block's stream at each step, so results do not
    depend on how blocks are scheduled.
    """
    g = cg.graph
    n, d = g.n, cg.d
    max_steps = default_max_steps(g) if cfg.max_steps is None else int(cfg.max_steps)
    cum = np.cumsum(_transition(g), axis=1)
    cum[:, -1] = 1.0
    table = np.asarray(cg.signature_table)
    is_stop = np.zeros(n + 1, dtype=bool)
    is_stop[list(stops)] = True
    total = int(cfg.samples)
    for block in range(-(-total // BLOCK_SIZE)):
        size = min(BLOCK_SIZE, total - block * BLOCK_SIZE)
        rng = _block_rng(cfg.seed, block)
        cur = np.full(size, start, dtype=np.int64)
        stop = np.zeros(size, dtype=np.int64)
        prod = np.broadcast_to(np.eye(d), (size, d, d)).copy() if track else None
        if s == 0 and is_stop[start]:
            stop[:] = start
            yield stop, prod
            continue
        active = np.arange(size)
        for _ in range(max_steps):
            u = rng.random(BLOCK_SIZE)[:size]
            c = cur[active]
            nxt = (u[active, None] > cum[c - 1]).sum(axis=1) + 1
            if track:
                prod[active] = np.matmul(prod[active], table[c - 1, nxt - 1])
            cur[active] = nxt
            done = is_stop[nxt]
            stop[active[done]] = nxt[done]
            active = active[~done]
            if active.size == 0:
                break
        yield stop, prod


def mc_mean_path(cg: ConnectionGraph, i: int, j: int, s: int = 0, condition: int | None = None,
                 cfg: WalkConfig = WalkConfig()) -> MeanPathSignature:
    """Monte Carlo estimate of ``Omega^s_{ij}`` or ``Omega^s_{ij}(k)``.

    Args:
        cg: connection graph.
        i: start vertex.
        j: target vertex.
        s: 0 or 1; with ``s = 1`` the time-0 position does not count as a hit.
        condition: optional vertex ``k``; only walks reaching ``j`` before
            ``k`` contribute.
        cfg: sample count, seed and step cap.

    Returns:
        Sample mean over accepted walks with entrywise standard errors.
        Censored walks are excluded and counted; a
        :class:`CensoredWalkWarning` is issued when there are any.

    Raises:
        AllCensored: no walk produced a usable sample.
    """
    g = cg.graph
    i, j = g.check_vertex(i), g.check_vertex(j)
    if s not in (0, 1):
        raise errors.InvalidParameter(f"s must be 0 or 1, got {s!r}")
    stops = (j,)
    if condition is not None:
        k = g.check_vertex(condition)
        if k == j:
            raise errors.SamePair("conditioning vertex must differ from the target")
        stops = (j, k)
    d = cg.d
    acc, cens = 0, 0
    s1 = np.zeros((d, d))
    s2 = np.zeros((d, d))
    for stop, prod in _walk_blocks(cg, i, stops, s, cfg):
        cens += int(np.count_nonzero(stop == 0))
        ok = stop == j
        acc += int(np.count_nonzero(ok))
        if ok.any():
            s1 += prod[ok].sum(axis=0)
            s2 += (prod[ok] ** 2).sum(axis=0)
    kind = f"Omega^{s}_{{{i}{j}}}" + (f"({condition})" if condition is not None else "")
    if cens:
        warnings.warn(f"{kind}: {cens} of {cfg.samples} walks censored", CensoredWalkWarning, stacklevel=2)
    if acc == 0:
        reason = "every walk was censored" if cens == cfg.samples else "no walk met the conditioning event"
        raise errors.AllCensored(f"{kind}: {reason}")
    mean = s1 / acc
    var = np.maximum(s2 / acc - mean**2, 0.0) * (acc / max(acc - 1, 1))
    return MeanPathSignature(mean, kind, "monte_carlo", int(cfg.samples), acc, cens, np.sqrt(var / acc))


def mc_hitting_probability(g_or_cg, x: int, i: int, j: int, s: int = 0,
                           cfg: WalkConfig = WalkConfig()) -> tuple[float, float]:
    """Monte Carlo ``P^x[T^s_i < T^s_j]`` and its standard error.

    Accepts a :class:`WeightedGraph` or a :class:`ConnectionGraph`.
    """
    if isinstance(g_or_cg, ConnectionGraph):
        cg = g_or_cg
    else:
        from .graph import identity_signature

        cg = ConnectionGraph(g_or_cg, identity_signature(g_or_cg, 1))
    g = cg.graph
    x, (i, j) = g.check_vertex(x), g.check_pair(i, j)
    hits, done = 0, 0
    for stop, _ in _walk_blocks(cg, x, (i, j), s, cfg, track=False):
        hits += int(np.count_nonzero(stop == i))
        done += int(np.count_nonzero(stop != 0))
    if done == 0:
        raise errors.AllCensored("every walk was censored")
    p = hits / done
    return p, float(np.sqrt(max(p * (1 - p), 0.0) / done))
