"""The conductance matrix three ways, plus series and parallel composition.

The conductance matrix of a pair is the Schur complement of the connection
Laplacian onto their two blocks.  It can also be assembled from escape
probabilities and conditioned loop signatures of the random walk.
"""
import numpy as np

from conres import (Line, conductance_matrix, conductance_via_escape, glue_lines, parallel_sum,
                    series_conductance)
from conres.builders import rotation3d
from conres.generators import random_connected_graph, random_signature

np.set_printoptions(precision=4, suppress=True)


def main():
    rng = np.random.default_rng(1)
    cg = random_signature(rng, random_connected_graph(rng, 7, min_degree=2), 2)
    schur = conductance_matrix(cg, 2, 5).full
    walk = conductance_via_escape(cg, 2, 5).full
    print("Schur complement:\n", schur)
    print("difference to the walk assembly:", np.abs(schur - walk).max())

    # A line behaves like a single edge whose weight is the harmonic sum of
    # the weights and whose signature is the product along the path.
    line = Line((1, 3, 4, 2), (1.0, 2.0, 0.5), (rotation3d(0.3), rotation3d(0.4), np.eye(3)))
    print("series law error:",
          np.abs(series_conductance(line).full - conductance_matrix(line.to_graph(), 1, 4).full).max())

    # Internally disjoint lines in parallel add their conductance matrices.
    lines = [line, Line((1, 5, 2), (1.0, 1.0), (np.eye(3), rotation3d(2.0))), Line((1, 2), (0.8,), (np.eye(3),))]
    glued = glue_lines(lines)
    print("parallel law error:", np.abs(parallel_sum(lines).full - conductance_matrix(glued, 1, 2).full).max())


if __name__ == "__main__":
    main()
