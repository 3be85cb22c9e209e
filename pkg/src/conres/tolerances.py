"""Default numerical tolerances shared across modules."""

#: Max-norm deviation of ``S^T S`` from the identity accepted for a signature matrix.
ORTH_TOL = 1e-9

#: Relative eigenvalue cutoff per matrix dimension; the effective cutoff for an
#: ``m x m`` matrix is ``RANK_TOL_PER_DIM * m * max|eigenvalue|``.
RANK_TOL_PER_DIM = 1e-10

#: Residual below which a block of ``L f`` counts as zero.
HARMONIC_TOL = 1e-9

#: Probabilities at or below this are treated as structurally zero.
PROB_FLOOR = 1e-12


def rank_tol(dim: int) -> float:
    return RANK_TOL_PER_DIM * max(dim, 1)
