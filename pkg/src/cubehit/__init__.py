"""Exact hitting probabilities of the simple random walk on the hypercube."""

from .chain import (
    ChainSystem,
    LevelProfile,
    USequence,
    backward_recurrence,
    build_adjacent_chain,
    build_antipodal_chain,
    induction_identity_residuals,
    solve_chain,
    u_transform,
    z_sequence,
)
from .closed_form import (
    adjacent_hitting_probability,
    adjacent_hitting_probability_general,
    antipodal_hitting_probability,
    u_sequence,
)
from .cube import Vertex, hamming_distance, neighbors, parse_vertex, prefix_weight
from .mc import (
    MCEstimate,
    OccupationDistribution,
    empirical_occupation,
    occupation_formula,
    occupation_matrix_power,
    simulate_hitting,
)
from .network import (
    ConvergenceError,
    HarmonicSolution,
    HittingProblem,
    effective_resistance,
    solve_exact,
    solve_float,
)

__version__ = "0.1.0"
