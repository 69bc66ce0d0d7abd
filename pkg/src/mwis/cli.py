"""Command-line harness: instance generation, solving, sweeps, embedding,
emulation, and layout scoring.

Exit codes: 0 on success, 2 on configuration errors, 3 when a sweep finished
but some backend runs failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .beam import BeamConfig, SolverParams, solve_mwis_detailed
from .bench import (
    ALL_BACKENDS,
    aggregate,
    bench_config_from_json,
    largest_subgraph_histogram,
    lattice_scoring,
    records_to_csv,
    records_to_json,
    run_benchmark,
    summary_to_csv,
    timing_to_csv,
)
from .embed import greedy_embed, mapping_to_json
from .emulator import (
    RydbergRegister,
    evolve,
    load_schedule,
    mis_schedule,
    sample,
)
from .graph import erdos_renyi, graph_to_json, load_graph, save_graph
from .lattice import KINDS, build_lattice, load_layout
from .solvers import SolveRequest, exact_mwis, greedy_mis, simulated_annealing_mwis


class ConfigError(Exception):
    pass


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _beam_config_from_args(args, subsolver: str) -> BeamConfig:
    params = SolverParams(
        sa_sweeps=args.sa_sweeps,
        sa_restarts=args.sa_restarts,
        shots=args.shots,
        anneal_time=args.anneal_time,
        anneal_dt=args.anneal_dt,
    )
    return BeamConfig(
        k=args.k,
        s=args.s,
        ell=args.ell,
        subsolver=subsolver,
        layout_kind=args.layout_kind,
        rng_seed=args.seed,
        layout_rows=args.rows,
        layout_cols=args.cols,
        layout_spacing=args.spacing,
        max_subgraph=args.max_subgraph,
        params=params,
    )


def cmd_generate(args) -> int:
    g = erdos_renyi(args.n, args.p, args.seed)
    text = json.dumps(graph_to_json(g)) + "\n"
    _write_or_print(text, args.out)
    return 0


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    if args.backend == "greedy":
        solution = greedy_mis(g, args.seed)
        payload = {"backend": "greedy", "solution": list(solution.members), "weight": solution.total_weight}
    elif args.backend == "exact":
        outcome = exact_mwis(SolveRequest(g, seed=args.seed))
        best = outcome.solutions[0]
        payload = {"backend": "exact", "solution": list(best.members), "weight": best.total_weight}
    elif args.backend == "sa":
        outcome = simulated_annealing_mwis(
            SolveRequest(g, budget=args.sa_restarts, seed=args.seed), sweeps=args.sa_sweeps
        )
        best = outcome.solutions[0]
        payload = {"backend": "sa", "solution": list(best.members), "weight": best.total_weight}
    elif args.backend.startswith("beam+"):
        config = _beam_config_from_args(args, args.backend.split("+", 1)[1])
        result = solve_mwis_detailed(g, config)
        payload = {
            "backend": args.backend,
            "solution": list(result.solution.members),
            "weight": result.solution.total_weight,
            "largest_subgraph": result.largest_subgraph,
            "config": {
                "k": config.k,
                "s": config.s,
                "ell": config.ell,
                "subsolver": config.subsolver,
                "layout_kind": config.layout_kind,
                "rng_seed": config.rng_seed,
            },
            "generations": [
                {"scores": gen.scores, "wall_ms": gen.wall_ms}
                for gen in result.generations
            ],
        }
    else:
        raise ConfigError(f"unknown backend {args.backend!r}, expected one of {ALL_BACKENDS}")
    _write_or_print(json.dumps(payload, indent=1) + "\n", args.out)
    return 0


def cmd_bench(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    if args.seed is not None:
        data["base_seed"] = args.seed
    if args.backend:
        data["backends"] = args.backend.split(",")
    if args.workers is not None:
        data["workers"] = args.workers
    try:
        config = bench_config_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad benchmark config: {exc}") from exc

    records = run_benchmark(config)
    summary = aggregate(records)
    hist = largest_subgraph_histogram(records)

    out_dir = Path(args.out if args.out else data.get("out", "bench-out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "records.csv").write_text(records_to_csv(records), encoding="utf-8")
    (out_dir / "summary.csv").write_text(summary_to_csv(summary), encoding="utf-8")
    (out_dir / "records.json").write_text(records_to_json(records), encoding="utf-8")
    (out_dir / "timing.csv").write_text(timing_to_csv(records), encoding="utf-8")
    if not args.no_figures:
        from .figures import plot_gap_curves, plot_size_histogram

        for p in config.p_values:
            plot_gap_curves(summary, p, str(out_dir / f"gap_p{p}.png"))
        if hist:
            plot_size_histogram(hist, str(out_dir / "largest_subgraph_hist.png"))
    failures = [r for r in records if r.status != "ok"]
    print(f"wrote {len(records)} records to {out_dir} ({len(failures)} failures)")
    return 3 if failures else 0


def cmd_map(args) -> int:
    g = load_graph(args.graph)
    if g.n == 0:
        raise ConfigError("cannot map an empty graph")
    layout = build_lattice(args.layout_kind, args.rows, args.cols, args.spacing)
    if args.start is not None:
        start = args.start
    elif args.random_start:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
        start = int(rng.integers(g.n))
    else:
        start = max(range(g.n), key=lambda v: (g.degree(v), -v))
    mapping = greedy_embed(g, layout, start, max_size=args.max_subgraph)
    payload = mapping_to_json(mapping, graph_ref=args.graph, layout_ref=None)
    payload["layout_kind"] = args.layout_kind
    payload["start_vertex"] = start
    _write_or_print(json.dumps(payload, indent=1) + "\n", args.out)
    return 0


def _register_from_args(args) -> RydbergRegister:
    if args.layout:
        layout = load_layout(args.layout)
        positions = layout.sites
        weights = layout.graph.weights
    elif args.coords:
        pts = []
        for part in args.coords.split(";"):
            x, y = part.split(",")
            pts.append((float(x), float(y)))
        positions = tuple(pts)
        weights = tuple(1.0 for _ in positions)
    else:
        raise ConfigError("emulate needs --layout or --coords")
    return RydbergRegister(positions=positions, weights=weights)


def cmd_emulate(args) -> int:
    register = _register_from_args(args)
    if args.schedule:
        schedule = load_schedule(args.schedule)
    else:
        schedule = mis_schedule(args.total_time)
    state = evolve(register, schedule, dt=args.dt)
    shots = sample(state, args.shots, args.seed)
    counts: dict[str, int] = {}
    for bits in shots:
        counts[bits] = counts.get(bits, 0) + 1
    payload = {
        "n_atoms": len(register),
        "shots": args.shots,
        "counts": dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    }
    _write_or_print(json.dumps(payload, indent=1) + "\n", args.out)
    return 0


def cmd_score_lattices(args) -> int:
    kinds = args.kinds.split(",")
    graphs = [
        erdos_renyi(args.n, args.p, _seed_for(args.seed, gi))
        for gi in range(args.graphs)
    ]
    fractions = lattice_scoring(
        graphs,
        kinds,
        samples_per_graph=args.samples,
        rows=args.rows,
        cols=args.cols,
        spacing=args.spacing,
        seed=args.seed,
    )
    payload = {"kinds": [{"kind": k, "fraction": f} for k, f in fractions]}
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "lattice_scores.json").write_text(
            json.dumps(payload, indent=1) + "\n", encoding="utf-8"
        )
        lines = ["kind,fraction"] + [f"{k},{repr(f)}" for k, f in fractions]
        (out_dir / "lattice_scores.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
        if not args.no_figures:
            from .figures import plot_lattice_scores

            plot_lattice_scores(fractions, str(out_dir / "lattice_scores.png"))
    print(json.dumps(payload, indent=1))
    return 0


def _seed_for(base: int, index: int) -> int:
    return int(np.random.SeedSequence([base, index]).generate_state(1)[0])


def _add_beam_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=4, help="subgraphs sampled per branch")
    p.add_argument("--s", type=int, default=2, help="solutions kept per subgraph")
    p.add_argument("--ell", type=int, default=10, help="beam width")
    p.add_argument("--layout-kind", default="triangular", choices=KINDS)
    p.add_argument("--rows", type=int, default=12)
    p.add_argument("--cols", type=int, default=12)
    p.add_argument("--spacing", type=float, default=5.0)
    p.add_argument("--max-subgraph", type=int, default=None)
    p.add_argument("--sa-sweeps", type=int, default=1000)
    p.add_argument("--sa-restarts", type=int, default=20)
    p.add_argument("--shots", type=int, default=500)
    p.add_argument("--anneal-time", type=float, default=4.0)
    p.add_argument("--anneal-dt", type=float, default=1e-3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwis", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit an Erdos-Renyi graph as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve one graph with one backend")
    p.add_argument("--graph", required=True)
    p.add_argument("--backend", default="beam+exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    _add_beam_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run a sweep from a JSON config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None, help="override base_seed")
    p.add_argument("--out", default=None, help="override output directory")
    p.add_argument("--backend", default=None, help="comma list overriding backends")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("map", help="embed a graph onto a lattice")
    p.add_argument("--graph", required=True)
    p.add_argument("--layout-kind", default="triangular", choices=KINDS)
    p.add_argument("--rows", type=int, default=12)
    p.add_argument("--cols", type=int, default=12)
    p.add_argument("--spacing", type=float, default=5.0)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--random-start", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-subgraph", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("emulate", help="anneal a register and report sample counts")
    p.add_argument("--layout", default=None, help="layout JSON providing coordinates")
    p.add_argument("--coords", default=None, help="inline coordinates x,y;x,y;...")
    p.add_argument("--schedule", default=None, help="schedule JSON file")
    p.add_argument("--total-time", type=float, default=4.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--shots", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_emulate)

    p = sub.add_parser("score-lattices", help="rank layout kinds by largest subgraphs")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--graphs", type=int, default=50)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--kinds", default="triangular,square,king")
    p.add_argument("--rows", type=int, default=10)
    p.add_argument("--cols", type=int, default=10)
    p.add_argument("--spacing", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_score_lattices)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
