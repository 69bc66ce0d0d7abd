"""Figure rendering for the benchmark report path."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import SummaryRow


def plot_gap_curves(rows: list[SummaryRow], p: float, path: str) -> None:
    """Mean optimality gap vs instance size, one errorbar curve per backend."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    backends = sorted({r.backend for r in rows if r.p == p})
    for backend in backends:
        pts = sorted((r.n, r.mean_gap, r.sem_gap) for r in rows if r.p == p and r.backend == backend)
        if not pts:
            continue
        ns = [x[0] for x in pts]
        gaps = [x[1] for x in pts]
        errs = [x[2] for x in pts]
        ax.errorbar(ns, gaps, yerr=errs, marker="o", capsize=3, label=backend)
    ax.set_xlabel("instance size n")
    ax.set_ylabel("gap to best known")
    ax.set_title(f"Erdos-Renyi p={p}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_size_histogram(hist: dict[int, int], path: str) -> None:
    """Occurrences of the largest extracted subgraph size per run."""
    fig, ax = plt.subplots(figsize=(5.0, 3.5))
    sizes = sorted(hist)
    ax.bar(sizes, [hist[s] for s in sizes], width=0.8, color="tab:orange")
    ax.set_xlabel("largest subgraph size n'")
    ax.set_ylabel("occurrences")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_lattice_scores(fractions: list[tuple[str, float]], path: str) -> None:
    """Share of top-decile largest subgraphs per layout kind."""
    fig, ax = plt.subplots(figsize=(5.0, 3.5))
    labels = [k for k, _ in fractions]
    values = [f for _, f in fractions]
    ax.bar(range(len(labels)), values, tick_label=labels, color="tab:blue")
    ax.set_ylabel("fraction of largest subgraphs")
    ax.set_ylim(0, 1)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
