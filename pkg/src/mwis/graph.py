"""Weighted simple graphs, instance generators, and independence predicates."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WEIGHT_RTOL = 1e-12


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable simple graph on vertices 0..n-1 with positive vertex weights.

    Adjacency is stored per vertex as a sorted tuple of neighbor indices.
    Symmetry, absence of self loops, and weights in (0, 1] are enforced on
    construction.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n or len(self.weights) != self.n:
            raise ValueError("adjacency/weights length must equal vertex count")
        for w in self.weights:
            if not (0.0 < w <= 1.0):
                raise ValueError(f"weights must lie in (0, 1], got {w}")
        nbr_sets = tuple(frozenset(nbrs) for nbrs in self.adj)
        for v, nbrs in enumerate(self.adj):
            if v in nbr_sets[v]:
                raise ValueError(f"self loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} out of range")
                if v not in nbr_sets[u]:
                    raise ValueError(f"adjacency not symmetric for edge ({v}, {u})")
        object.__setattr__(self, "_nbr_sets", nbr_sets)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Sequence[float] | None = None,
    ) -> WeightedGraph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self loop ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        if weights is None:
            weights = [1.0] * n
        return cls(
            n=n,
            adj=tuple(tuple(sorted(s)) for s in adj),
            weights=tuple(float(w) for w in weights),
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def nbr_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]  # type: ignore[attr-defined]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]  # type: ignore[attr-defined]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj) // 2

    def weight_of(self, vertices: Iterable[int]) -> float:
        return float(sum(self.weights[v] for v in sorted(vertices)))


@dataclass(frozen=True)
class VertexSet:
    """A vertex subset together with its total weight."""

    members: tuple[int, ...]
    total_weight: float

    def __post_init__(self) -> None:
        if tuple(sorted(set(self.members))) != self.members:
            raise ValueError("members must be sorted and duplicate free")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


def vertex_set(g: WeightedGraph, members: Iterable[int]) -> VertexSet:
    """Build a VertexSet over g, computing the weight from g's weights."""
    ms = tuple(sorted(set(members)))
    for v in ms:
        _check_vertex(g, v)
    return VertexSet(members=ms, total_weight=g.weight_of(ms))


def _check_vertex(g: WeightedGraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for graph with n={g.n}")


def erdos_renyi(n: int, p: float, seed: int) -> WeightedGraph:
    """G(n, p) with unit weights; each unordered pair drawn independently.

    Pairs are sampled in lexicographic (u < v) order from a PCG64 stream so
    that equal (n, p, seed) inputs give the same graph on any platform.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    m = n * (n - 1) // 2
    draws = rng.random(m)
    edges = []
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[idx] < p:
                edges.append((u, v))
            idx += 1
    return WeightedGraph.from_edges(n, edges)


def unit_disk_graph(
    positions: Sequence[tuple[float, float]], radius: float
) -> WeightedGraph:
    """Graph on 2D points with an edge wherever distance <= radius.

    The boundary is closed: points at exactly the radius are adjacent.
    Comparisons use squared distances to keep the tie deterministic.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts = [(float(x), float(y)) for x, y in positions]
    if len(set(pts)) != len(pts):
        raise ValueError("positions must be pairwise distinct")
    r2 = radius * radius
    n = len(pts)
    edges = []
    for u in range(n):
        xu, yu = pts[u]
        for v in range(u + 1, n):
            dx = pts[v][0] - xu
            dy = pts[v][1] - yu
            if dx * dx + dy * dy <= r2:
                edges.append((u, v))
    return WeightedGraph.from_edges(n, edges)


def closed_neighborhood(g: WeightedGraph, s: VertexSet | Iterable[int]) -> VertexSet:
    """N[s]: the members of s plus every vertex adjacent to one of them."""
    members = s.members if isinstance(s, VertexSet) else tuple(s)
    out: set[int] = set()
    for v in members:
        _check_vertex(g, v)
        out.add(v)
        out.update(g.adj[v])
    return vertex_set(g, out)


def remove_vertices(
    g: WeightedGraph, s: VertexSet | Iterable[int]
) -> tuple[WeightedGraph, tuple[int, ...]]:
    """Induced subgraph on the complement of s.

    Returns (subgraph, origin) where origin[i] is the original index of the
    subgraph's vertex i; the kept vertices stay in ascending order.
    """
    drop = set(s.members if isinstance(s, VertexSet) else s)
    for v in drop:
        _check_vertex(g, v)
    kept = [v for v in range(g.n) if v not in drop]
    new_index = {v: i for i, v in enumerate(kept)}
    adj = tuple(
        tuple(new_index[u] for u in g.adj[v] if u not in drop) for v in kept
    )
    weights = tuple(g.weights[v] for v in kept)
    return WeightedGraph(n=len(kept), adj=adj, weights=weights), tuple(kept)


def is_independent(g: WeightedGraph, s: VertexSet | Iterable[int]) -> bool:
    """True iff no edge of g has both endpoints in s."""
    members = s.members if isinstance(s, VertexSet) else tuple(sorted(set(s)))
    in_s = set(members)
    for v in members:
        _check_vertex(g, v)
        if in_s & g.nbr_set(v):
            return False
    return True


def is_maximal_independent(g: WeightedGraph, s: VertexSet | Iterable[int]) -> bool:
    """True iff s is independent and no outside vertex can be added.

    Raises ValueError if s is not independent: maximality is only defined
    for independent sets.
    """
    members = s.members if isinstance(s, VertexSet) else tuple(sorted(set(s)))
    if not is_independent(g, members):
        raise ValueError("set is not independent; maximality undefined")
    in_s = set(members)
    for v in range(g.n):
        if v in in_s:
            continue
        if not (in_s & g.nbr_set(v)):
            return False
    return True


def optimality_gap(candidate_weight: float, best_weight: float) -> float:
    """Normalized distance |candidate - best| / |best| of a solution value."""
    if best_weight == 0:
        raise ZeroDivisionError("best weight must be nonzero")
    return abs(candidate_weight - best_weight) / abs(best_weight)


def graph_to_json(g: WeightedGraph) -> dict:
    """Serializable form: {"n", "edges" (u < v, listed once), "weights"}."""
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()], "weights": list(g.weights)}


def graph_from_json(data: dict) -> WeightedGraph:
    n = int(data["n"])
    raw_edges = data.get("edges", [])
    edges = []
    seen = set()
    for e in raw_edges:
        u, v = int(e[0]), int(e[1])
        if u >= v:
            raise ValueError(f"edges must be listed once with u < v, got ({u}, {v})")
        if (u, v) in seen:
            raise ValueError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    weights = data.get("weights")
    return WeightedGraph.from_edges(n, edges, weights)


def load_graph(path: str) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))


def save_graph(g: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(g), fh)
        fh.write("\n")
