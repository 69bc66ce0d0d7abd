"""MWIS solvers built on greedy lattice embedding and beam decomposition,
with an emulated Rydberg annealer as one of the interchangeable backends."""

from .beam import BeamConfig, Branch, SolverParams, solve_mwis, solve_mwis_detailed
from .embed import (
    DEFAULT_RANKING,
    LatticeMapping,
    RankingPolicy,
    greedy_embed,
    is_valid_placement,
    mapped_subgraph,
)
from .emulator import (
    AnnealSchedule,
    C6_DEFAULT,
    QuantumState,
    RydbergRegister,
    apply_hamiltonian,
    default_mis_schedule,
    evolve,
    interaction,
    mis_schedule,
    sample,
)
from .graph import (
    VertexSet,
    WeightedGraph,
    closed_neighborhood,
    erdos_renyi,
    is_independent,
    is_maximal_independent,
    optimality_gap,
    remove_vertices,
    unit_disk_graph,
    vertex_set,
)
from .lattice import LatticeLayout, build_lattice, lattice_center
from .solvers import (
    SolveRequest,
    SolverOutcome,
    exact_mwis,
    greedy_mis,
    quantum_mwis,
    repair_to_maximal,
    simulated_annealing_mwis,
)

__all__ = [
    "AnnealSchedule",
    "BeamConfig",
    "Branch",
    "C6_DEFAULT",
    "DEFAULT_RANKING",
    "LatticeLayout",
    "LatticeMapping",
    "QuantumState",
    "RankingPolicy",
    "RydbergRegister",
    "SolveRequest",
    "SolverOutcome",
    "SolverParams",
    "VertexSet",
    "WeightedGraph",
    "apply_hamiltonian",
    "build_lattice",
    "closed_neighborhood",
    "default_mis_schedule",
    "erdos_renyi",
    "evolve",
    "exact_mwis",
    "greedy_embed",
    "greedy_mis",
    "interaction",
    "is_independent",
    "is_maximal_independent",
    "is_valid_placement",
    "lattice_center",
    "mapped_subgraph",
    "mis_schedule",
    "optimality_gap",
    "quantum_mwis",
    "remove_vertices",
    "repair_to_maximal",
    "sample",
    "simulated_annealing_mwis",
    "solve_mwis",
    "solve_mwis_detailed",
    "unit_disk_graph",
    "vertex_set",
]

__version__ = "0.1.0"
