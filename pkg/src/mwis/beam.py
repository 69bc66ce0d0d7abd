"""Beam-search decomposition for MWIS on arbitrary graphs.

Each branch holds a partial independent set and the residual graph left
after removing the closed neighborhood of everything selected so far. A
generation expands every active branch: sample k embedded subgraphs of the
residual, solve each with the configured backend, keep the top s solutions
per subgraph, and spawn one child per kept solution. The beam keeps the
best ell branches per generation; branches whose residual is empty are
frozen and only compete at final selection, where the heaviest partial set
wins. By construction every finished branch is a maximal independent set
of the input graph.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .embed import DEFAULT_RANKING, RankingPolicy, greedy_embed, subgraph_mapping
from .emulator import mis_schedule
from .graph import (
    VertexSet,
    WeightedGraph,
    closed_neighborhood,
    is_independent,
    remove_vertices,
    vertex_set,
)
from .lattice import LatticeLayout, build_lattice
from .solvers import (
    SolveRequest,
    SolverOutcome,
    exact_mwis,
    greedy_mis,
    quantum_mwis,
    simulated_annealing_mwis,
    verify_outcome,
)

SUBSOLVERS = ("exact", "greedy", "sa", "quantum")
QUANTUM_CAPACITY = 16


@dataclass(frozen=True)
class SolverParams:
    """Effort knobs for the subgraph backends, desk-scale defaults."""

    sa_sweeps: int = 1000
    sa_restarts: int = 20
    sa_beta: tuple[float, float] = (0.1, 50.0)
    exact_node_budget: int = 0
    shots: int = 500
    anneal_time: float = 4.0
    anneal_dt: float = 1e-3


@dataclass(frozen=True)
class BeamConfig:
    k: int = 4
    s: int = 2
    ell: int = 10
    subsolver: str = "exact"
    layout_kind: str = "triangular"
    rng_seed: int = 0
    layout_rows: int = 12
    layout_cols: int = 12
    layout_spacing: float = 5.0
    max_subgraph: int | None = None
    start_selection: str = "random"  # or "max-degree"
    ranking: RankingPolicy = DEFAULT_RANKING
    params: SolverParams = field(default_factory=SolverParams)

    def __post_init__(self) -> None:
        if self.k < 1 or self.s < 1 or self.ell < 1:
            raise ValueError("k, s, and ell must all be at least 1")
        if self.subsolver not in SUBSOLVERS:
            raise ValueError(
                f"unknown subsolver {self.subsolver!r}, expected one of {SUBSOLVERS}"
            )
        if self.start_selection not in ("random", "max-degree"):
            raise ValueError("start_selection must be 'random' or 'max-degree'")

    def subgraph_cap(self) -> int | None:
        if self.max_subgraph is not None:
            return self.max_subgraph
        return QUANTUM_CAPACITY if self.subsolver == "quantum" else None


@dataclass(frozen=True)
class Branch:
    """One decomposition state: what is chosen and what is left."""

    residual: WeightedGraph
    residual_origin: tuple[int, ...]  # residual index -> original index
    partial: VertexSet  # original indices
    score: float
    depth: int
    largest_subgraph: int = 0

    def signature(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.partial.members, self.residual_origin)


def _seed_entropy(config: BeamConfig, branch: Branch) -> list[int]:
    return [
        config.rng_seed & 0xFFFFFFFF,
        (config.rng_seed >> 32) & 0xFFFFFFFF,
        branch.depth,
        *branch.partial.members,
    ]


def _start_vertices(branch: Branch, config: BeamConfig) -> list[int]:
    """k distinct start vertices of the residual, per-branch deterministic."""
    n = branch.residual.n
    count = min(config.k, n)
    if config.start_selection == "max-degree":
        order = sorted(range(n), key=lambda v: (-branch.residual.degree(v), v))
        return order[:count]
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(_seed_entropy(config, branch)))
    )
    return [int(v) for v in rng.choice(n, size=count, replace=False)]


def _solve_subgraph(sub, submap, config: BeamConfig, seed: int) -> SolverOutcome:
    params = config.params
    # Tiny subgraphs skip the configured backend: an exact solve is cheaper
    # than any annealing setup and avoids flooding it with trivial cases.
    if sub.n <= 3 or config.subsolver == "exact":
        return exact_mwis(
            SolveRequest(
                sub, want_top=config.s, budget=params.exact_node_budget, seed=seed
            )
        )
    if config.subsolver == "greedy":
        best = greedy_mis(sub, seed)
        return SolverOutcome(solutions=(best,), backend="greedy", effort=sub.n)
    if config.subsolver == "sa":
        return simulated_annealing_mwis(
            SolveRequest(sub, want_top=config.s, budget=params.sa_restarts, seed=seed),
            sweeps=params.sa_sweeps,
            beta_schedule=params.sa_beta,
        )
    return quantum_mwis(
        SolveRequest(sub, want_top=config.s, budget=params.shots, seed=seed),
        submap,
        schedule=mis_schedule(params.anneal_time),
        dt=params.anneal_dt,
    )


def expand_branch(
    branch: Branch, config: BeamConfig, layout: LatticeLayout
) -> list[Branch]:
    """All children of one branch: up to k subgraphs times s solutions each.

    Start vertices are drawn without replacement from the residual, seeded
    by (rng_seed, branch signature, depth) only, so the sampled mappings do
    not depend on which other branches survived pruning.
    """
    if branch.residual.n == 0:
        raise ValueError("cannot expand a branch with an empty residual")
    starts = _start_vertices(branch, config)
    children: list[Branch] = []
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for j, start in enumerate(starts):
        mapping = greedy_embed(
            branch.residual,
            layout,
            start,
            policy=config.ranking,
            max_size=config.subgraph_cap(),
        )
        sub, origin, submap = subgraph_mapping(mapping)
        # domain-separated from the start-vertex stream by the extra token
        solve_seed = int(
            np.random.SeedSequence(
                _seed_entropy(config, branch) + [7, j]
            ).generate_state(1)[0]
        )
        outcome = _solve_subgraph(sub, submap, config, solve_seed)
        verify_outcome(sub, outcome)
        for sol in outcome.solutions[: config.s]:
            if len(sol) == 0:
                continue
            in_residual = [origin[i] for i in sol.members]
            picked = sorted(branch.residual_origin[r] for r in in_residual)
            new_members = tuple(sorted(branch.partial.members + tuple(picked)))
            new_weight = branch.partial.total_weight + sum(
                branch.residual.weights[r] for r in in_residual
            )
            new_partial = VertexSet(members=new_members, total_weight=new_weight)
            drop = closed_neighborhood(branch.residual, in_residual)
            new_residual, kept = remove_vertices(branch.residual, drop)
            new_origin = tuple(branch.residual_origin[r] for r in kept)
            child = Branch(
                residual=new_residual,
                residual_origin=new_origin,
                partial=new_partial,
                score=new_partial.total_weight,
                depth=branch.depth + 1,
                largest_subgraph=max(branch.largest_subgraph, sub.n),
            )
            if child.signature() not in seen:
                seen.add(child.signature())
                children.append(child)
    return children


def prune_branches(branches: list[Branch], ell: int) -> list[Branch]:
    """Deduplicate by (partial, residual) signature, rank, keep the best ell.

    Ranking: score descending, then smaller residual, then lexicographically
    smaller partial set; the tiebreaks exist purely for determinism.
    """
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    unique: list[Branch] = []
    for b in branches:
        sig = b.signature()
        if sig not in seen:
            seen.add(sig)
            unique.append(b)
    unique.sort(key=lambda b: (-b.score, b.residual.n, b.partial.members))
    return unique[:ell]


@dataclass
class GenerationStats:
    scores: list[float]
    wall_ms: float


@dataclass
class BeamResult:
    solution: VertexSet
    largest_subgraph: int
    generations: list[GenerationStats]
    config: BeamConfig


def solve_mwis_detailed(g: WeightedGraph, config: BeamConfig) -> BeamResult:
    """Run the full beam decomposition and keep per-generation statistics."""
    for w in g.weights:
        if w <= 0:
            raise ValueError("beam solver requires strictly positive weights")
    layout = build_lattice(
        config.layout_kind,
        config.layout_rows,
        config.layout_cols,
        config.layout_spacing,
    )
    root = Branch(
        residual=g,
        residual_origin=tuple(range(g.n)),
        partial=vertex_set(g, ()),
        score=0.0,
        depth=0,
    )
    finished: list[Branch] = []
    active: list[Branch] = []
    if g.n == 0:
        finished.append(root)
    else:
        active.append(root)
    generations: list[GenerationStats] = []
    while active:
        t0 = time.perf_counter()
        pool: list[Branch] = []
        for branch in active:
            for child in expand_branch(branch, config, layout):
                if not is_independent(g, child.partial):
                    raise RuntimeError("beam produced a dependent partial set")
                if child.residual.n == 0:
                    finished.append(child)
                else:
                    pool.append(child)
        active = prune_branches(pool, config.ell)
        generations.append(
            GenerationStats(
                scores=[b.score for b in active],
                wall_ms=(time.perf_counter() - t0) * 1e3,
            )
        )
    best = min(finished, key=lambda b: (-b.score, b.partial.members))
    return BeamResult(
        solution=best.partial,
        largest_subgraph=best.largest_subgraph,
        generations=generations,
        config=config,
    )


def solve_mwis(g: WeightedGraph, config: BeamConfig) -> VertexSet:
    """Highest-weight maximal independent set found by the beam."""
    return solve_mwis_detailed(g, config).solution
