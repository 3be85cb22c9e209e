"""The full battery of cross-route identity checks for one vertex pair."""
from __future__ import annotations

import numpy as np

from . import errors
from .classical import classical_effective_resistance, classical_voltage
from .conductance import (bordered_voltage_conductance, conductance_matrix, conductance_via_escape,
                          current_balance_residual, omega_conductance_identity, schur_block_identities)
from .dirichlet import voltage_function
from .graph import ConnectionGraph
from .linalg import schur_onto
from .meanpath import WalkConfig, mc_mean_path, omega0, omega_conditioned
from .reports import CheckReport, max_abs
from .resistance import (inverse_block_identity, resistance_decomposition_check, resistance_matrix_identity,
                         scalar_connection_resistance)
from .tolerances import PROB_FLOOR

DEFAULT_TOL = 1e-8


def quotient_identity(cg: ConnectionGraph, i: int, j: int, tol: float = DEFAULT_TOL) -> CheckReport:
    """``L / L_{{i,j}^c}`` in one step versus two nested eliminations."""
    i, j = cg.graph.check_pair(i, j)
    d = cg.d
    others = [v - 1 for v in range(1, cg.n + 1) if v not in (i, j)]
    direct = schur_onto(cg.laplacian, [i - 1, j - 1], d=d)
    half = others[: len(others) // 2]
    keep = [i - 1, j - 1] + half
    step = schur_onto(cg.laplacian, keep, d=d)
    nested = schur_onto(step, [0, 1], d=d)
    return CheckReport("quotient_identity", max_abs(direct - nested), tol)


def conditioned_transpose(cg: ConnectionGraph, i: int, j: int, tol: float = DEFAULT_TOL) -> CheckReport:
    """``Omega^1_{ij}(i) = (Omega^1_{ji}(j))^T``."""
    a = omega_conditioned(cg, i, j, i, s=1).value
    b = omega_conditioned(cg, j, i, j, s=1).value
    return CheckReport("conditioned_transpose", max_abs(a - b.T), tol)


def voltage_factorization(cg: ConnectionGraph, i: int, j: int, tol: float = DEFAULT_TOL) -> CheckReport:
    """``V_{i->j}(x) = P^x[T_i < T_j] Omega^0_{xi}(j)`` at every vertex.

    The conditioned signature is solved on the conditioned walk, which does
    not go through the voltage function.
    """
    V = voltage_function(cg, i, j)
    h = classical_voltage(cg.graph, i, j)
    worst = 0.0
    for x in range(1, cg.n + 1):
        if x == j or h[x - 1] <= PROB_FLOOR:
            worst = max(worst, max_abs(V.block(x)))
            continue
        rhs = h[x - 1] * omega_conditioned(cg, x, i, j, s=0).value
        worst = max(worst, max_abs(V.block(x) - rhs))
    return CheckReport("voltage_factorization", worst, tol)


def escape_assembly(cg: ConnectionGraph, i: int, j: int, tol: float = DEFAULT_TOL) -> CheckReport:
    """Conductance assembled from escape probabilities versus the Schur complement."""
    try:
        E = conductance_via_escape(cg, i, j).full
    except errors.DegenerateConditioning as exc:
        return CheckReport("escape_assembly", 0.0, tol, {"skipped": str(exc)})
    return CheckReport("escape_assembly", max_abs(E - conductance_matrix(cg, i, j).full), tol)


def scalar_routes(cg: ConnectionGraph, i: int, j: int, tol: float = DEFAULT_TOL) -> CheckReport:
    vals = {m: scalar_connection_resistance(cg, i, j, m) for m in ("schur", "energy", "trace")}
    spread = max(vals.values()) - min(vals.values())
    return CheckReport("scalar_resistance_routes", spread, tol, vals)


def lower_bound(cg: ConnectionGraph, i: int, j: int, tol: float = 1e-10) -> CheckReport:
    rs = scalar_connection_resistance(cg, i, j)
    r = classical_effective_resistance(cg.graph, i, j)
    return CheckReport("scalar_below_classical", max(0.0, rs - r), tol, {"scalar": rs, "classical": r})


def run_identity_suite(cg: ConnectionGraph, i: int, j: int, mc_samples: int = 0, seed: int = 0,
                       tolerances: dict[str, float] | None = None) -> list[CheckReport]:
    """Every identity relating the exact routes, optionally plus a Monte Carlo check.

    Args:
        cg: connection graph.
        i, j: distinct vertices.
        mc_samples: when positive, compare ``Omega^0_{ij}`` with a Monte
            Carlo estimate.  The residual is the largest entrywise z-score
            and the tolerance is 4, which keeps the false alarm rate small
            across up to nine entries.
        seed: Monte Carlo seed.
        tolerances: per-check overrides keyed by report name.
    """
    i, j = cg.graph.check_pair(i, j)
    reports = [
        omega_conductance_identity(cg, i, j, tol=DEFAULT_TOL),
        *schur_block_identities(cg, i, j, tol=DEFAULT_TOL),
        conditioned_transpose(cg, i, j),
        voltage_factorization(cg, i, j),
        escape_assembly(cg, i, j),
        CheckReport("bordered_voltage_conductance",
                    max_abs(bordered_voltage_conductance(cg, i, j).full - conductance_matrix(cg, i, j).full),
                    DEFAULT_TOL),
        CheckReport("current_balance", current_balance_residual(cg, i, j), 1e-9),
        *resistance_matrix_identity(cg, i, j, tol=DEFAULT_TOL),
        inverse_block_identity(cg, i, j, tol=DEFAULT_TOL),
        resistance_decomposition_check(cg, i, j, tol=DEFAULT_TOL),
        scalar_routes(cg, i, j),
        lower_bound(cg, i, j),
        quotient_identity(cg, i, j),
    ]
    if mc_samples > 0:
        est = mc_mean_path(cg, i, j, s=0, cfg=WalkConfig(samples=mc_samples, seed=seed))
        exact = omega0(cg, i, j).value
        z = float(np.max(np.abs(est.value - exact) / np.maximum(est.stderr, 1e-12)))
        reports.append(CheckReport("omega0_monte_carlo_zscore", z, 4.0,
                                   {"samples": est.samples, "censored": est.censored}))
    if tolerances:
        reports = [CheckReport(r.name, r.residual, tolerances.get(r.name, r.tolerance), r.details) for r in reports]
    return reports
