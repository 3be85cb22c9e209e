"""Acceptance battery: one test per criterion, each printing a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the lines inline, or
``python3 tests/test_acceptance.py`` for the summary alone.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

from conres import errors
from conres.builders import cycle, dumbbell, wheatstone
from conres.classical import classical_effective_conductance, classical_effective_resistance
from conres.conductance import Line, conductance_matrix, conductance_via_escape, glue_lines, parallel_sum, \
    series_conductance
from conres.decompose import (CycleClassification, classify_cycle_signature, cycle_normal_form,
                              decompose_signature)
from conres.dirichlet import boundary_data, check_max_norm_principle, dirichlet_energy, solve_dirichlet
from conres.generators import (engineered_signature, random_connected_graph, random_consistent_signature,
                               random_instance, random_orthogonal, random_pair, random_signature)
from conres.graph import BlockVector, ConnectionGraph, apply_switching, identity_signature
from conres.identities import run_identity_suite
from conres.meanpath import WalkConfig, mc_mean_path, omega0
from conres.resistance import chung_connection_resistance, resistance_matrix, scalar_connection_resistance

SEED = 20240611


def _rng(k):
    return np.random.default_rng([SEED, k])


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
        with capsys.disabled():
            sys.stdout.write("\n" + line + "\n")
        assert ok, line
    return emit


# 1 -------------------------------------------------------------------------
def test_01_triangle_discontinuity(report):
    errs = [abs(chung_connection_resistance(cycle(3, t), 1, 2) - (5 + 4 * np.cos(t)))
            for t in (np.pi / 4, np.pi / 2, np.pi, 3 * np.pi / 2)]
    at0 = chung_connection_resistance(cycle(3, 0.0), 1, 2)
    near0 = chung_connection_resistance(cycle(3, 3e-4), 1, 2)
    jump_err = abs((near0 - at0) - (9 - 2 / 3))
    ok = max(errs) <= 1e-8 and abs(at0 - 2 / 3) <= 1e-8 and jump_err <= 1e-6
    report(1, "triangle discontinuity", ok,
           f"max closed-form error {max(errs):.2e}, |r(0) - 2/3| {abs(at0 - 2 / 3):.2e}, jump error {jump_err:.2e}")


# 2 -------------------------------------------------------------------------
def test_02_classical_reduction(report):
    rng = _rng(2)
    worst_c = worst_r = 0.0
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(3, 9)))
        cg = ConnectionGraph(g, identity_signature(g, 1))
        i, j = random_pair(rng, g.n)
        c = classical_effective_conductance(g, i, j)
        worst_c = max(worst_c, np.abs(conductance_matrix(cg, i, j).full - c * np.array([[1, -1], [-1, 1]])).max())
        worst_r = max(worst_r, abs(scalar_connection_resistance(cg, i, j) - classical_effective_resistance(g, i, j)))
    tri = cycle(3, 0.0, d=1)
    tri_err = abs(scalar_connection_resistance(tri, 1, 2) - 2 / 3)
    ok = worst_c <= 1e-10 and worst_r <= 1e-10 and tri_err <= 1e-12
    report(2, "classical reduction", ok,
           f"conductance error {worst_c:.2e}, resistance error {worst_r:.2e}, triangle error {tri_err:.2e}")


# 3 -------------------------------------------------------------------------
def test_03_consistent_resistance_matrix(report):
    rng = _rng(3)
    d = 3
    worst = 0.0
    for _ in range(10):
        g = random_connected_graph(rng, int(rng.integers(3, 9)))
        cg = random_consistent_signature(rng, g, d)
        i, j = random_pair(rng, g.n)
        s = decompose_signature(cg).switching
        F = np.zeros((2 * d, 2 * d))
        F[:d, :d], F[d:, d:] = s[i - 1], s[j - 1]
        switched = F @ resistance_matrix(cg, i, j).full @ F.T
        # reorder (i_0, i_1, i_2, j_0, j_1, j_2) into (i_0, j_0, i_1, j_1, ...)
        perm = [k + d * side for k in range(d) for side in (0, 1)]
        r = classical_effective_resistance(g, i, j)
        target = np.kron(np.eye(d), 0.5 * np.array([[r, -r], [-r, r]]))
        worst = max(worst, np.abs(switched[np.ix_(perm, perm)] - target).max())
    report(3, "consistent resistance matrix", worst <= 1e-8, f"max deviation {worst:.2e}")


# 4 -------------------------------------------------------------------------
def test_04_monte_carlo(report):
    rng = _rng(4)
    cases = [(cycle(3, np.pi / 2), 1, 2)]
    for _ in range(5):
        g = random_connected_graph(rng, int(rng.integers(3, 7)))
        cases.append((random_signature(rng, g, 2), *random_pair(rng, g.n)))
    bad = total = 0
    for k, (cg, i, j) in enumerate(cases):
        est = mc_mean_path(cg, i, j, cfg=WalkConfig(samples=100_000, seed=SEED + k))
        dev = np.abs(est.value - omega0(cg, i, j).value)
        bad += int(np.count_nonzero(dev > 3 * est.stderr))
        total += dev.size
    report(4, "Monte Carlo mean path", bad <= 1, f"{bad} of {total} entries outside 3 standard errors")


# 5 -------------------------------------------------------------------------
def test_05_identity_suite(report):
    rng = _rng(5)
    worst, worst_name, failures = 0.0, "", []
    for _ in range(50):
        cg = random_instance(rng, (3, 8), (1, 3))
        i, j = random_pair(rng, cg.n)
        for r in run_identity_suite(cg, i, j):
            if r.residual > worst and r.tolerance <= 1e-8:
                worst, worst_name = r.residual, r.name
            if not r.passed or r.residual > 1e-8:
                failures.append(r.name)
    report(5, "identity suite", not failures,
           f"largest residual {worst:.2e} ({worst_name}), {len(failures)} failures over 50 instances")


# 6 -------------------------------------------------------------------------
def test_06_escape_assembly(report):
    rng = _rng(6)
    worst, done = 0.0, 0
    while done < 20:
        cg = random_instance(rng, (3, 8), (1, 3))
        i, j = random_pair(rng, cg.n)
        try:
            E = conductance_via_escape(cg, i, j).full
        except errors.DegenerateConditioning:
            continue
        worst = max(worst, np.abs(E - conductance_matrix(cg, i, j).full).max())
        done += 1
    report(6, "escape-probability assembly", worst <= 1e-8, f"max deviation {worst:.2e} over 20 instances")


# 7 -------------------------------------------------------------------------
def test_07_series_parallel(report):
    rng = _rng(7)
    worst_s = 0.0
    for _ in range(20):
        k, d = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        ln = Line(tuple(range(1, k + 2)), tuple(rng.uniform(0.5, 2, size=k)), tuple(random_orthogonal(rng, d, size=k)))
        worst_s = max(worst_s, np.abs(series_conductance(ln).full - conductance_matrix(ln.to_graph(), 1, k + 1).full).max())
    worst_p = 0.0
    for _ in range(20):
        m, d = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        lines, nxt = [], 3
        for b in range(m):
            k = 1 if b == 0 else int(rng.integers(2, 5))
            verts = (1, *range(nxt, nxt + k - 1), 2)
            nxt += k - 1
            lines.append(Line(verts, tuple(rng.uniform(0.5, 2, size=k)), tuple(random_orthogonal(rng, d, size=k))))
        worst_p = max(worst_p, np.abs(parallel_sum(lines).full - conductance_matrix(glue_lines(lines), 1, 2).full).max())
    ok = worst_s <= 1e-9 and worst_p <= 1e-9
    report(7, "series and parallel laws", ok, f"series error {worst_s:.2e}, parallel error {worst_p:.2e}")


# 8 -------------------------------------------------------------------------
def test_08_lower_bound(report):
    rng = _rng(8)
    worst_excess, best_gap = -np.inf, 0.0
    for _ in range(200):
        cg = random_instance(rng, (2, 8), (1, 3), min_degree=1)
        i, j = random_pair(rng, cg.n)
        gap = classical_effective_resistance(cg.graph, i, j) - scalar_connection_resistance(cg, i, j)
        worst_excess = max(worst_excess, -gap)
        best_gap = max(best_gap, gap)
    ok = worst_excess <= 1e-10 and best_gap > 1e-3
    report(8, "lower bound", ok, f"largest excess {worst_excess:.2e}, largest strict gap {best_gap:.3f}")


# 9 -------------------------------------------------------------------------
def _sweep(build, i, j, grid, delta=1e-5):
    r = np.array([scalar_connection_resistance(build(t), i, j) for t in grid])
    c = np.array([classical_effective_resistance(build(t).graph, i, j) for t in grid])
    der = np.array([(scalar_connection_resistance(build(t + delta), i, j)
                     - scalar_connection_resistance(build(t - delta), i, j)) / (2 * delta) for t in grid])
    return r, c, der


def test_09_continuity_sweeps(report):
    grid = np.linspace(0.0, 2 * np.pi, 200)
    h = grid[1] - grid[0]
    m = 4
    cases = [("wheatstone", lambda t: wheatstone(t), (1, 4), True)]
    for closing in (False, True):
        for t23 in (0.0, np.pi / 2):
            # equality at theta = 0 needs a consistent signature there, which the
            # closing edge breaks once theta23 is nonzero
            endpoint = not closing or t23 == 0.0
            cases.append((f"dumbbell(closing={closing}, theta23={t23:.3f})",
                          lambda t, c=closing, s=t23: dumbbell(m, t, s, closing_edge=c), (4, m + 3), endpoint))
    notes, ok = [], True
    for name, build, (i, j), endpoint in cases:
        r, c, der = _sweep(build, i, j, grid)
        step = np.abs(np.diff(r)).max()
        bound = 10 * np.abs(der).max() * h
        above = (r - c).max()
        end = max(abs(r[0] - c[0]), abs(r[-1] - c[-1]))
        good = step <= bound and above <= 1e-10 and (end <= 1e-9 or not endpoint)
        ok &= good
        notes.append(f"{name} step {step:.1e}<=bound {bound:.1e}, r-r_cl max {above:.1e}, endpoints {end:.1e}" + ("" if endpoint else " (not required)"))
    report(9, "continuity sweeps", ok, "; ".join(notes))


# 10 ------------------------------------------------------------------------
def test_10_cycle_insensitivity(report):
    thetas = np.linspace(0, 2 * np.pi, 20)
    worst = max(abs(scalar_connection_resistance(cycle(3, t), 1, 2) - 2 / 3) for t in thetas)
    a, b = cycle(3, 0.5), cycle(3, 2.5)
    dR = np.linalg.norm(resistance_matrix(a, 1, 2).ij - resistance_matrix(b, 1, 2).ij, 2)
    dC = np.linalg.norm(conductance_matrix(a, 1, 2).ij - conductance_matrix(b, 1, 2).ij, 2)
    # on the triangle the resistance off-diagonal block is zero for every theta != 0,
    # so the variation is carried by the conductance block
    ok = worst <= 1e-10 and max(dR, dC) > 1e-3
    report(10, "scalar insensitivity on cycles", ok,
           f"max |r - 2/3| {worst:.2e}, conductance block change {dC:.3f}, resistance block change {dR:.3f}")


# 11 ------------------------------------------------------------------------
def test_11_decomposition(report):
    rng = _rng(11)
    rho_ok, spectrum_err = True, 0.0
    for k in range(20):
        rho = k % 3
        g = random_connected_graph(rng, int(rng.integers(4, 9)), extra=0.5, min_degree=2)
        cg = engineered_signature(rng, g, 3, rho)
        res = decompose_signature(cg)
        rho_ok &= res.rho == rho
        lam = np.linalg.eigvalsh(cg.laplacian)
        lam_rec = np.linalg.eigvalsh(res.reconstruction().laplacian)
        spectrum_err = max(spectrum_err, np.abs(lam - lam_rec).max())
    angle_err = 0.0
    for _ in range(10):
        n, npl = int(rng.integers(3, 8)), int(rng.integers(1, 3))
        angles = tuple(sorted(rng.uniform(0.05, np.pi - 0.05, size=npl)))
        d1, dm1 = int(rng.integers(0, 2)), int(rng.integers(0, 2))
        d = d1 + dm1 + 2 * npl
        planted = CycleClassification(d1, dm1, angles, None, (1, 2))
        cg = apply_switching(cycle_normal_form(planted, cycle(n, 0.0, d=d)), random_orthogonal(rng, d, size=n))
        got = classify_cycle_signature(cg)
        if (got.d1, got.dminus1, len(got.angles)) != (d1, dm1, npl):
            angle_err = np.inf
            continue
        angle_err = max(angle_err, np.abs(np.sort(got.angles) - np.array(angles)).max())
    ok = rho_ok and spectrum_err <= 1e-9 and angle_err <= 1e-8
    report(11, "decomposition round trip", ok,
           f"rho recovered: {rho_ok}, spectrum error {spectrum_err:.2e}, planted angle error {angle_err:.2e}")


# 12 ------------------------------------------------------------------------
def test_12_max_norm_and_energy(report):
    rng = _rng(12)
    worst, energy_ok = 0.0, True
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(4, 9)))
        d = int(rng.integers(1, 4))
        cg = random_signature(rng, g, d)
        nb = int(rng.integers(1, g.n))
        B = sorted(int(v) for v in rng.choice(np.arange(1, g.n + 1), size=nb, replace=False))
        H = [v for v in range(1, g.n + 1) if v not in B]
        u = solve_dirichlet(cg, boundary_data({v: rng.normal(size=(d, d)) for v in B}))
        worst = max(worst, check_max_norm_principle(cg, u, H).residual)
        e0 = dirichlet_energy(cg, u)
        rows = np.concatenate([np.arange((v - 1) * d, v * d) for v in H])
        for _ in range(100):
            pert = np.zeros_like(u.data)
            pert[rows] = rng.normal(scale=10.0 ** rng.uniform(-4, 0), size=(len(rows), d))
            energy_ok &= dirichlet_energy(cg, BlockVector(cg.n, d, u.data + pert)) >= e0 - 1e-12
    ok = worst <= 1e-9 and energy_ok
    report(12, "maximum norm and energy minimization", ok,
           f"max-norm deviation {worst:.2e}, energy minimal against 2000 perturbations: {energy_ok}")


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q", "-p", "no:cacheprovider"]))
