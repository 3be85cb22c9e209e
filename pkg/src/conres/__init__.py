"""Effective conductance and resistance on connection graphs.

A connection graph is a weighted graph whose oriented edges carry orthogonal
matrices.  The package assembles the connection Laplacian, solves the
associated Dirichlet and Poisson problems, computes conductance and
resistance matrices by Schur complements, estimates mean path signatures by
simulation and splits a signature into trivial and invertible parts.

Vertices are labelled ``1..n`` in every public function.
"""
from . import errors
from .builders import cycle, dumbbell, line, parallel_lines, rotation2d, rotation3d, rotation_signature, wheatstone
from .classical import (classical_effective_conductance, classical_effective_resistance, escape_probability,
                        hitting_probability)
from .conductance import (Line, PairMatrix, conductance_matrix, conductance_via_escape, glue_lines, parallel_sum,
                          schur_block_identities, series_conductance)
from .decompose import (DecompositionResult, classify_cycle_signature, decompose_signature, is_absolutely_inconsistent,
                        is_consistent, nullity, spanning_tree_simplify)
from .dirichlet import BoundaryData, boundary_data, check_max_norm_principle, dirichlet_energy, solve_dirichlet, voltage_function
from .graph import (BlockVector, ConnectionGraph, Signature, WeightedGraph, apply_switching, build_graph,
                    connection_graph, connection_laplacian, direct_sum, make_signature, quadratic_form)
from .identities import run_identity_suite
from .linalg import complete_orthonormal, kernel_basis, pseudoinverse, schur_complement
from .meanpath import (MeanPathSignature, WalkConfig, mc_mean_path, omega0, omega0_conditioned, omega1_conditioned_loop,
                       omega1_loop, omega_conditioned)
from .resistance import (chung_connection_resistance, poisson_solve, resistance_decomposition_check, resistance_matrix,
                         scalar_connection_resistance)

__version__ = "0.1.0"
