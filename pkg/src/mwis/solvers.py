"""Interchangeable MWIS backends: exact branch and bound, min-degree greedy,
penalty-based simulated annealing, and the quantum annealing adapter."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .emulator import AnnealSchedule, RydbergRegister, default_mis_schedule, evolve, sample
from .embed import LatticeMapping
from .graph import VertexSet, WeightedGraph, is_independent, vertex_set

EXACT_MAX_VERTICES = 40


@dataclass(frozen=True)
class SolveRequest:
    """One subgraph solve: how many distinct sets to return and how hard to try.

    `budget` is backend specific: node cap for the exact solver (0 means
    unlimited), restarts for simulated annealing, shots for the quantum
    backend.
    """

    graph: WeightedGraph
    want_top: int = 1
    budget: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.want_top < 1:
            raise ValueError("want_top must be at least 1")


@dataclass(frozen=True)
class SolverOutcome:
    """Solutions sorted by weight descending, ties by vertex order."""

    solutions: tuple[VertexSet, ...]
    backend: str
    effort: int


def _ranked(sets: dict[tuple[int, ...], float], want: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(sets, key=lambda ms: (-sets[ms], ms))[:want])


def _outcome(g: WeightedGraph, members_list: Sequence[tuple[int, ...]], backend: str, effort: int) -> SolverOutcome:
    sols = tuple(vertex_set(g, ms) for ms in members_list)
    return SolverOutcome(solutions=sols, backend=backend, effort=effort)


# ---------------------------------------------------------------------------
# Exact branch and bound
# ---------------------------------------------------------------------------

def exact_mwis(req: SolveRequest) -> SolverOutcome:
    """Optimal MWIS by bitmask branch and bound (graphs up to 40 vertices).

    Leaves of the search are maximal independent sets; a greedy clique-cover
    bound prunes branches that cannot reach the worst kept weight. With
    want_top > 1 the top sets are collected in (weight desc, lexicographic)
    order, and equal-bound branches are never pruned so ties are complete.
    """
    g = req.graph
    n = g.n
    if n > EXACT_MAX_VERTICES:
        raise ValueError(
            f"exact solver capped at {EXACT_MAX_VERTICES} vertices, got {n}"
        )
    if n == 0:
        return _outcome(g, [()], "exact", 0)

    w = g.weights
    nbr_mask = [0] * n
    for v in range(n):
        for u in g.adj[v]:
            nbr_mask[v] |= 1 << u
    full = (1 << n) - 1

    # pool entries: (weight, members) kept sorted by (-weight, members)
    pool: list[tuple[float, tuple[int, ...]]] = []

    def offer(weight: float, mask: int) -> None:
        members = tuple(v for v in range(n) if (mask >> v) & 1)
        entry = (weight, members)
        for wt, ms in pool:
            if ms == members:
                return
        pool.append(entry)
        pool.sort(key=lambda e: (-e[0], e[1]))
        if len(pool) > req.want_top:
            pool.pop()

    # Seed with the greedy solution so pruning bites early.
    seed_set = greedy_mis(g)
    seed_mask = 0
    for v in seed_set.members:
        seed_mask |= 1 << v
    offer(seed_set.total_weight, seed_mask)

    def clique_cover_bound(p_mask: int) -> float:
        total = 0.0
        remaining = p_mask
        while remaining:
            v = (remaining & -remaining).bit_length() - 1
            clique_max = w[v]
            cand = remaining & nbr_mask[v]
            remaining &= ~(1 << v)
            while cand:
                u = (cand & -cand).bit_length() - 1
                if w[u] > clique_max:
                    clique_max = w[u]
                remaining &= ~(1 << u)
                cand &= nbr_mask[u] & ~(1 << u)
            total += clique_max
        return total

    nodes = 0
    budget = req.budget

    def rec(s_mask: int, s_weight: float, p_mask: int, cover: int) -> None:
        nonlocal nodes
        nodes += 1
        if budget and nodes > budget:
            raise RuntimeError("exact solver node budget exhausted")
        if p_mask == 0:
            if cover == full:
                offer(s_weight, s_mask)
            return
        if len(pool) == req.want_top:
            worst = pool[-1][0]
            if s_weight + clique_cover_bound(p_mask) < worst - 1e-12:
                return
        # branch on the candidate with most candidate neighbors
        best_v, best_deg = -1, -1
        m = p_mask
        while m:
            v = (m & -m).bit_length() - 1
            d = (nbr_mask[v] & p_mask).bit_count()
            if d > best_deg:
                best_v, best_deg = v, d
            m &= m - 1
        v = best_v
        bit = 1 << v
        rec(s_mask | bit, s_weight + w[v], p_mask & ~nbr_mask[v] & ~bit, cover | bit | nbr_mask[v])
        rec(s_mask, s_weight, p_mask & ~bit, cover)

    rec(0, 0.0, full, 0)
    return _outcome(g, [ms for _, ms in pool], "exact", nodes)


# ---------------------------------------------------------------------------
# Min-degree greedy baseline
# ---------------------------------------------------------------------------

def greedy_mis(g: WeightedGraph, seed: int = 0) -> VertexSet:
    """Classic baseline: repeatedly take a minimum-degree vertex and drop its
    closed neighborhood until nothing remains.

    Ties go to the heavier vertex, then the lower index, so the run is fully
    deterministic; `seed` is accepted for interface parity and unused.
    """
    del seed
    alive = [True] * g.n
    degree = [g.degree(v) for v in range(g.n)]
    remaining = g.n
    chosen: list[int] = []
    while remaining:
        best = min(
            (v for v in range(g.n) if alive[v]),
            key=lambda v: (degree[v], -g.weights[v], v),
        )
        chosen.append(best)
        to_drop = [best] + [u for u in g.adj[best] if alive[u]]
        for u in to_drop:
            alive[u] = False
            remaining -= 1
        for u in to_drop:
            for x in g.adj[u]:
                if alive[x]:
                    degree[x] -= 1
    return vertex_set(g, chosen)


# ---------------------------------------------------------------------------
# Repair shared by the annealing backends
# ---------------------------------------------------------------------------

def repair_to_maximal(g: WeightedGraph, members: Sequence[int]) -> tuple[int, ...]:
    """Make an arbitrary vertex subset a maximal independent set.

    First pass drops the lighter endpoint of every violated edge (higher
    index on ties), scanning edges in (u < v) order; one pass suffices since
    drops never create violations. Then vertices are greedily added in
    (weight desc, index asc) order until no addition is possible.
    """
    s = set(members)
    for u, v in g.edges():
        if u in s and v in s:
            drop = v if g.weights[v] <= g.weights[u] else u
            s.discard(drop)
    order = sorted(range(g.n), key=lambda v: (-g.weights[v], v))
    for v in order:
        if v in s:
            continue
        if not (s & g.nbr_set(v)):
            s.add(v)
    return tuple(sorted(s))


# ---------------------------------------------------------------------------
# Simulated annealing on the penalized binary cost
# ---------------------------------------------------------------------------

def sa_energy(g: WeightedGraph, state: Sequence[int], alpha: float) -> float:
    """E(x) = -sum_i w_i x_i + alpha * sum_{(i,j) in E} x_i x_j."""
    e = -sum(g.weights[v] for v in range(g.n) if state[v])
    for u, v in g.edges():
        if state[u] and state[v]:
            e += alpha
    return e


def simulated_annealing_mwis(
    req: SolveRequest,
    sweeps: int = 1000,
    beta_schedule: tuple[float, float] = (0.1, 50.0),
    alpha: float | None = None,
    trace: Callable[[int, float, np.ndarray], None] | None = None,
) -> SolverOutcome:
    """Metropolis single-flip annealing of the penalized MWIS cost.

    The inverse temperature ramps geometrically from beta_schedule[0] to
    beta_schedule[1] over the sweeps; each sweep attempts n flips. The
    penalty alpha defaults to twice the maximum weight, making any edge
    violation strictly unprofitable, and must exceed the maximum weight.
    Final states of each restart (req.budget restarts, default 20) are
    repaired to maximal independent sets; the best distinct repaired sets
    are returned. `trace(flips, energy, state)` fires every 1000 attempted
    flips for bookkeeping checks.
    """
    g = req.graph
    n = g.n
    if n == 0:
        return _outcome(g, [()], "sa", 0)
    max_w = max(g.weights)
    if alpha is None:
        alpha = 2.0 * max_w
    if alpha <= max_w:
        raise ValueError(
            f"penalty alpha={alpha} must exceed the maximum weight {max_w}"
        )
    if sweeps < 1:
        raise ValueError("sweeps must be at least 1")
    b0, b1 = beta_schedule
    if b0 <= 0 or b1 <= 0:
        raise ValueError("beta schedule values must be positive")
    restarts = req.budget if req.budget > 0 else 20

    adj_arrays = [np.asarray(g.adj[v], dtype=np.intp) for v in range(n)]
    weights = np.asarray(g.weights)
    if sweeps > 1:
        betas = b0 * (b1 / b0) ** (np.arange(sweeps) / (sweeps - 1))
    else:
        betas = np.asarray([b0])

    found: dict[tuple[int, ...], float] = {}
    flips_total = 0
    for restart in range(restarts):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([req.seed & 0xFFFFFFFF, restart]))
        )
        state = np.zeros(n, dtype=np.int8)
        occ_nbrs = np.zeros(n, dtype=np.int32)  # selected neighbors per vertex
        energy = 0.0
        for beta in betas:
            picks = rng.integers(0, n, size=n)
            urand = rng.random(n)
            for t in range(n):
                i = int(picks[t])
                if state[i]:
                    delta = weights[i] - alpha * occ_nbrs[i]
                else:
                    delta = -weights[i] + alpha * occ_nbrs[i]
                if delta <= 0 or urand[t] < np.exp(-beta * delta):
                    flip_to = 1 - state[i]
                    state[i] = flip_to
                    occ_nbrs[adj_arrays[i]] += 1 if flip_to else -1
                    energy += delta
                flips_total += 1
                if trace is not None and flips_total % 1000 == 0:
                    trace(flips_total, energy, state.copy())
        repaired = repair_to_maximal(g, [v for v in range(n) if state[v]])
        found.setdefault(repaired, g.weight_of(repaired))

    return _outcome(g, _ranked(found, req.want_top), "sa", flips_total)


# ---------------------------------------------------------------------------
# Quantum annealing adapter
# ---------------------------------------------------------------------------

def quantum_mwis(
    req: SolveRequest,
    mapping: LatticeMapping,
    schedule: AnnealSchedule | None = None,
    dt: float = 1e-3,
) -> SolverOutcome:
    """Solve a mapped subgraph by emulated Rydberg annealing.

    Atoms sit at the lattice coordinates of the mapped sites with per-atom
    weighting taken from the graph weights. The register is annealed, then
    sampled req.budget times (default 500); every sample is repaired to a
    maximal independent set and the best distinct results are returned.
    The mapping must cover exactly the request graph (a valid induced
    embedding, which LatticeMapping construction already enforces).
    """
    g = req.graph
    if mapping.graph is not g and mapping.graph != g:
        raise ValueError("mapping does not belong to the request graph")
    if mapping.vertices() != tuple(range(g.n)):
        raise ValueError("mapping must place every vertex of the request graph")
    positions = tuple(mapping.layout.sites[mapping.site_of(v)] for v in range(g.n))
    register = RydbergRegister(positions=positions, weights=g.weights)
    if schedule is None:
        schedule = default_mis_schedule(register, total_time=4.0)
    state = evolve(register, schedule, dt=dt)
    shots = req.budget if req.budget > 0 else 500
    bitstrings = sample(state, shots, seed=req.seed)
    found: dict[tuple[int, ...], float] = {}
    for bits in bitstrings:
        raw = [v for v, b in enumerate(bits) if b == "1"]
        repaired = repair_to_maximal(g, raw)
        found.setdefault(repaired, g.weight_of(repaired))
    return _outcome(g, _ranked(found, req.want_top), "quantum", shots)


def verify_outcome(g: WeightedGraph, outcome: SolverOutcome) -> None:
    """Raise if any returned set is not independent in g."""
    for sol in outcome.solutions:
        if not is_independent(g, sol):
            raise RuntimeError(
                f"backend {outcome.backend} returned a non-independent set {sol.members}"
            )
