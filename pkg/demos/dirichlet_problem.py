"""Matrix-valued harmonic extension and the maximum norm principle.

Fixing d x d matrices on a boundary set and extending harmonically gives the
unique minimizer of the Dirichlet energy.  The largest spectral norm over the
closure of the interior is attained on the vertex boundary.
"""
import numpy as np

from conres import boundary_data, cycle, dirichlet_energy, solve_dirichlet
from conres import check_max_norm_principle, voltage_function
from conres.graph import BlockVector

np.set_printoptions(precision=4, suppress=True)


def main():
    cg = cycle(8, 1.2)
    rng = np.random.default_rng(0)
    bd = boundary_data({1: np.eye(2), 5: rng.normal(size=(2, 2))})
    u = solve_dirichlet(cg, bd)
    interior = [2, 3, 4, 6, 7, 8]
    print(check_max_norm_principle(cg, u, interior).line())
    print("norms:", [round(float(np.linalg.norm(u.block(v), 2)), 4) for v in range(1, 9)])

    e0 = dirichlet_energy(cg, u)
    worse = 0
    for _ in range(100):
        pert = np.zeros_like(u.data)
        pert[2:8] = rng.normal(scale=0.1, size=(6, 2))
        worse += dirichlet_energy(cg, BlockVector(8, 2, u.data + pert)) >= e0
    print(f"energy {e0:.6f}; {worse} of 100 perturbations have at least that energy")

    print("voltage at vertex 3 for the pair (1, 5):\n", voltage_function(cg, 1, 5).block(3))


if __name__ == "__main__":
    main()
