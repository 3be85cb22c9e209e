"""Mean path signatures computed exactly and by simulation.

Omega^0_{ij} is the expected product of edge signatures along a random walk
from i stopped on first reaching j.  The exact value solves a linear system;
the simulation averages products over 10^5 walks and reports standard errors.
"""
import numpy as np

from conres import WalkConfig, cycle, mc_mean_path, omega0, omega1_loop

np.set_printoptions(precision=4, suppress=True)


def main():
    cg = cycle(3, np.pi / 2)
    exact = omega0(cg, 1, 2).value
    est = mc_mean_path(cg, 1, 2, cfg=WalkConfig(samples=100_000, seed=7))
    print("exact Omega^0_12:\n", exact)
    print("simulated:\n", est.value)
    print("standard errors:\n", est.stderr)
    print("z-scores:\n", (est.value - exact) / est.stderr)

    # With s = 1 the walk must take a step before it may stop, giving the
    # mean loop signature at vertex 1.
    loop = mc_mean_path(cg, 1, 1, s=1, cfg=WalkConfig(samples=100_000, seed=8))
    print("exact loop signature:\n", omega1_loop(cg, 1).value)
    print("simulated loop signature:\n", loop.value)


if __name__ == "__main__":
    main()
