"""Benchmark harness: instance sweeps, gap aggregation, and layout scoring.

Backends are whole-graph strategies: the min-degree greedy baseline, the
exact solver, simulated annealing, and `beam+X` for the decomposition
solver with subgraph backend X. Gaps are measured against the best weight
any backend achieved on that instance, upgraded to the exact optimum
whenever the instance is small enough to solve exactly.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .beam import BeamConfig, SolverParams, solve_mwis_detailed
from .embed import greedy_embed
from .graph import WeightedGraph, erdos_renyi, optimality_gap
from .lattice import build_lattice
from .solvers import SolveRequest, exact_mwis, greedy_mis, simulated_annealing_mwis

EXACT_REFERENCE_MAX_N = 40

WHOLE_GRAPH_BACKENDS = ("greedy", "exact", "sa")
BEAM_BACKENDS = ("beam+exact", "beam+greedy", "beam+sa", "beam+quantum")
ALL_BACKENDS = WHOLE_GRAPH_BACKENDS + BEAM_BACKENDS

RECORD_COLUMNS = (
    "instance_id",
    "n",
    "p",
    "seed",
    "backend",
    "weight",
    "gap",
    "best_known",
    "reference",
    "largest_subgraph",
    "status",
)
SUMMARY_COLUMNS = ("n", "p", "backend", "count", "mean_weight", "mean_gap", "sem_gap")
TIMING_COLUMNS = ("instance_id", "backend", "wall_ms")


@dataclass(frozen=True)
class BenchConfig:
    n_values: tuple[int, ...]
    p_values: tuple[float, ...]
    instances: int
    backends: tuple[str, ...]
    base_seed: int = 0
    workers: int = 1
    beam: BeamConfig = field(default_factory=BeamConfig)

    def __post_init__(self) -> None:
        if self.instances < 1:
            raise ValueError("instances per cell must be at least 1")
        if not self.n_values or not self.p_values or not self.backends:
            raise ValueError("n_values, p_values, and backends must be nonempty")
        for n in self.n_values:
            if n < 1:
                raise ValueError("instance sizes must be positive")
        for p in self.p_values:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p={p} outside [0, 1]")
        for b in self.backends:
            if b not in ALL_BACKENDS:
                raise ValueError(f"unknown backend {b!r}, expected one of {ALL_BACKENDS}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass
class BenchRecord:
    instance_id: str
    n: int
    p: float
    seed: int
    backend: str
    weight: float | None
    gap: float | None
    best_known: float | None
    reference: str
    largest_subgraph: int
    status: str
    wall_ms: float


def bench_config_from_json(data: dict) -> BenchConfig:
    beam_data = dict(data.get("beam", {}))
    params_data = dict(data.get("params", {}))
    if "sa_beta" in params_data:
        params_data["sa_beta"] = tuple(params_data["sa_beta"])
    params = SolverParams(**params_data)
    beam = BeamConfig(params=params, **beam_data)
    return BenchConfig(
        n_values=tuple(int(n) for n in data["n_values"]),
        p_values=tuple(float(p) for p in data["p_values"]),
        instances=int(data["instances"]),
        backends=tuple(data["backends"]),
        base_seed=int(data.get("base_seed", 0)),
        workers=int(data.get("workers", 1)),
        beam=beam,
    )


def load_bench_config(path: str) -> BenchConfig:
    with open(path, encoding="utf-8") as fh:
        return bench_config_from_json(json.load(fh))


def _derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def _run_backend(
    g: WeightedGraph, backend: str, config: BenchConfig, seed: int
) -> tuple[float | None, int, str]:
    """(weight, largest_subgraph, status) for one backend on one instance."""
    params = config.beam.params
    if backend == "greedy":
        return greedy_mis(g, seed).total_weight, 0, "ok"
    if backend == "exact":
        if g.n > EXACT_REFERENCE_MAX_N:
            return None, 0, f"error: exact backend capped at n={EXACT_REFERENCE_MAX_N}"
        outcome = exact_mwis(SolveRequest(g, seed=seed, budget=params.exact_node_budget))
        return outcome.solutions[0].total_weight, 0, "ok"
    if backend == "sa":
        outcome = simulated_annealing_mwis(
            SolveRequest(g, budget=params.sa_restarts, seed=seed),
            sweeps=params.sa_sweeps,
            beta_schedule=params.sa_beta,
        )
        return outcome.solutions[0].total_weight, 0, "ok"
    sub = backend.split("+", 1)[1]
    beam_config = replace(config.beam, subsolver=sub, rng_seed=seed)
    result = solve_mwis_detailed(g, beam_config)
    return result.solution.total_weight, result.largest_subgraph, "ok"


def _run_instance(
    config: BenchConfig, n: int, p: float, index: int
) -> list[BenchRecord]:
    graph_seed = _derive_seed(config.base_seed, n, int(round(p * 1e6)), index)
    g = erdos_renyi(n, p, graph_seed)
    instance_id = f"n{n}-p{p}-i{index:03d}"
    records: list[BenchRecord] = []
    exact_weight: float | None = None
    for b_idx, backend in enumerate(config.backends):
        run_seed = _derive_seed(config.base_seed, n, int(round(p * 1e6)), index, b_idx)
        t0 = time.perf_counter()
        try:
            weight, largest, status = _run_backend(g, backend, config, run_seed)
        except Exception as exc:  # noqa: BLE001 - flagged, sweep continues
            weight, largest, status = None, 0, f"error: {exc}"
        wall_ms = (time.perf_counter() - t0) * 1e3
        if backend == "exact" and status == "ok":
            exact_weight = weight
        records.append(
            BenchRecord(
                instance_id=instance_id,
                n=n,
                p=p,
                seed=graph_seed,
                backend=backend,
                weight=weight,
                gap=None,
                best_known=None,
                reference="",
                largest_subgraph=largest,
                status=status,
                wall_ms=wall_ms,
            )
        )
    reference = "backends"
    if n <= EXACT_REFERENCE_MAX_N:
        if exact_weight is None:
            outcome = exact_mwis(SolveRequest(g, seed=graph_seed))
            exact_weight = outcome.solutions[0].total_weight
        reference = "exact"
    weights = [r.weight for r in records if r.weight is not None]
    if exact_weight is not None:
        weights.append(exact_weight)
    best = max(weights) if weights else None
    for r in records:
        r.best_known = best
        r.reference = reference
        if r.weight is not None and best:
            r.gap = optimality_gap(r.weight, best)
    return records


def run_benchmark(config: BenchConfig) -> list[BenchRecord]:
    """Every (n, p, instance, backend) record, deterministically ordered.

    Instances run independently across a thread pool; results are sorted
    after the fact so the output does not depend on scheduling.
    """
    tasks = [
        (n, p, i)
        for n in config.n_values
        for p in config.p_values
        for i in range(config.instances)
    ]
    if config.workers == 1:
        batches = [_run_instance(config, n, p, i) for n, p, i in tasks]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_run_instance, config, n, p, i) for n, p, i in tasks]
            batches = [f.result() for f in futures]
    records = [r for batch in batches for r in batch]
    order = {b: i for i, b in enumerate(config.backends)}
    records.sort(key=lambda r: (r.n, r.p, r.instance_id, order[r.backend]))
    return records


@dataclass
class SummaryRow:
    n: int
    p: float
    backend: str
    count: int
    mean_weight: float
    mean_gap: float
    sem_gap: float


def aggregate(records: list[BenchRecord]) -> list[SummaryRow]:
    """Per (n, p, backend): mean weight, mean gap, standard error of the mean."""
    cells: dict[tuple[int, float, str], list[BenchRecord]] = {}
    for r in records:
        if r.status != "ok" or r.gap is None:
            continue
        cells.setdefault((r.n, r.p, r.backend), []).append(r)
    rows = []
    for (n, p, backend), cell in sorted(cells.items()):
        gaps = [r.gap for r in cell]
        weights = [r.weight for r in cell]
        count = len(cell)
        mean_gap = sum(gaps) / count
        if count > 1:
            var = sum((x - mean_gap) ** 2 for x in gaps) / (count - 1)
            sem = math.sqrt(var / count)
        else:
            sem = 0.0
        rows.append(
            SummaryRow(
                n=n,
                p=p,
                backend=backend,
                count=count,
                mean_weight=sum(weights) / count,
                mean_gap=mean_gap,
                sem_gap=sem,
            )
        )
    return rows


def largest_subgraph_histogram(records: list[BenchRecord]) -> dict[int, int]:
    """Occurrences of the winning branch's largest extracted subgraph size."""
    hist: dict[int, int] = {}
    for r in records:
        if r.status == "ok" and r.backend.startswith("beam+") and r.largest_subgraph > 0:
            hist[r.largest_subgraph] = hist.get(r.largest_subgraph, 0) + 1
    return dict(sorted(hist.items()))


def lattice_scoring(
    graphs: list[WeightedGraph],
    kinds: list[str],
    samples_per_graph: int,
    rows: int = 10,
    cols: int = 10,
    spacing: float = 5.0,
    seed: int = 0,
) -> list[tuple[str, float]]:
    """Which layout kind hosts the largest embedded subgraphs.

    Every (graph, kind, sample) triple runs one embedding from a seeded
    random start vertex. All mapped sizes are pooled, the top decile by
    size is taken (every entry tying the decile boundary is included, so
    duplicated kinds are treated symmetrically), and each kind's share of
    that pool is reported. Shares sum to 1.
    """
    if len(kinds) < 2:
        raise ValueError("need at least two layout kinds to score")
    layouts = [build_lattice(kind, rows, cols, spacing) for kind in kinds]
    entries: list[tuple[int, int]] = []  # (mapped size, kind position)
    for gi, g in enumerate(graphs):
        if g.n == 0:
            continue
        for ki, layout in enumerate(layouts):
            for si in range(samples_per_graph):
                rng = np.random.Generator(
                    np.random.PCG64(np.random.SeedSequence([seed, gi, ki, si]))
                )
                start = int(rng.integers(g.n))
                mapping = greedy_embed(g, layout, start)
                entries.append((len(mapping), ki))
    if not entries:
        raise ValueError("no embeddings produced; empty graph ensemble")
    sizes = sorted((s for s, _ in entries), reverse=True)
    decile = max(1, len(entries) // 10)
    threshold = sizes[decile - 1]
    top = [ki for s, ki in entries if s >= threshold]
    return [(kind, top.count(ki) / len(top)) for ki, kind in enumerate(kinds)]


# ---------------------------------------------------------------------------
# Deterministic writers. Timing goes to its own file: wall clocks change
# run to run, while records/summary must be byte-identical for equal configs.
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records: list[BenchRecord]) -> str:
    lines = [",".join(RECORD_COLUMNS)]
    for r in records:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    r.instance_id,
                    r.n,
                    r.p,
                    r.seed,
                    r.backend,
                    r.weight,
                    r.gap,
                    r.best_known,
                    r.reference,
                    r.largest_subgraph,
                    r.status,
                )
            )
        )
    return "\n".join(lines) + "\n"


def summary_to_csv(rows: list[SummaryRow]) -> str:
    lines = [",".join(SUMMARY_COLUMNS)]
    for s in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (s.n, s.p, s.backend, s.count, s.mean_weight, s.mean_gap, s.sem_gap)
            )
        )
    return "\n".join(lines) + "\n"


def timing_to_csv(records: list[BenchRecord]) -> str:
    lines = [",".join(TIMING_COLUMNS)]
    for r in records:
        lines.append(",".join((r.instance_id, r.backend, f"{r.wall_ms:.3f}")))
    return "\n".join(lines) + "\n"


def records_to_json(records: list[BenchRecord]) -> str:
    payload = [
        {
            "instance_id": r.instance_id,
            "n": r.n,
            "p": r.p,
            "seed": r.seed,
            "backend": r.backend,
            "weight": r.weight,
            "gap": r.gap,
            "best_known": r.best_known,
            "reference": r.reference,
            "largest_subgraph": r.largest_subgraph,
            "status": r.status,
        }
        for r in records
    ]
    return json.dumps(payload, indent=1) + "\n"
