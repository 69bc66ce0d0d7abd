"""Greedy embedding of induced subgraphs onto lattice layouts.

Starting from a seed vertex pinned at the lattice center, the mapping grows
outward along graph edges: for each placed vertex we try to place its
unplaced neighbors on free lattice sites adjacent to its own site. A
placement is accepted only when it preserves adjacency both ways, so the
mapped vertices always induce a subgraph isomorphic to the induced lattice
subgraph on the occupied sites.
"""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass

from .graph import WeightedGraph
from .lattice import LatticeLayout


class RankingPolicy(enum.Enum):
    """Order in which a vertex's unplaced neighbors are attempted.

    MAPPED_THEN_DEGREE ranks by already-placed neighbor count (descending),
    then degree (descending), then vertex index; DEGREE_THEN_INDEX skips the
    placed-neighbor count. Both are total orders, so runs are deterministic.
    """

    MAPPED_THEN_DEGREE = "mapped-then-degree"
    DEGREE_THEN_INDEX = "degree-then-index"

    def sort_key(self, graph: WeightedGraph, placed: dict[int, int], u: int):
        if self is RankingPolicy.MAPPED_THEN_DEGREE:
            placed_nbrs = sum(1 for x in graph.neighbors(u) if x in placed)
            return (-placed_nbrs, -graph.degree(u), u)
        return (-graph.degree(u), u)


DEFAULT_RANKING = RankingPolicy.MAPPED_THEN_DEGREE


@dataclass(frozen=True)
class LatticeMapping:
    """Partial injective vertex -> site assignment preserving adjacency.

    Invariants checked on construction: no two vertices share a site, and for
    every mapped pair (u, v), u and v are adjacent in the graph exactly when
    their sites are adjacent on the lattice.
    """

    graph: WeightedGraph
    layout: LatticeLayout
    placement: tuple[tuple[int, int], ...]  # (vertex, site), sorted by vertex

    def __post_init__(self) -> None:
        pairs = self.placement
        if tuple(sorted(pairs)) != pairs:
            raise ValueError("placement must be sorted by vertex")
        site_of = dict(pairs)
        if len(site_of) != len(pairs):
            raise ValueError("a vertex appears twice in the placement")
        sites = [s for _, s in pairs]
        if len(set(sites)) != len(sites):
            raise ValueError("two vertices share a lattice site")
        for v, s in pairs:
            if not 0 <= v < self.graph.n:
                raise ValueError(f"vertex {v} out of range")
            if not 0 <= s < len(self.layout.sites):
                raise ValueError(f"site {s} out of range")
        verts = [v for v, _ in pairs]
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                g_edge = self.graph.has_edge(u, v)
                l_edge = self.layout.sites_adjacent(site_of[u], site_of[v])
                if g_edge != l_edge:
                    raise ValueError(
                        f"mapping breaks adjacency between vertices {u} and {v}"
                    )
        object.__setattr__(self, "_site_of", site_of)

    def __len__(self) -> int:
        return len(self.placement)

    def site_of(self, v: int) -> int:
        return self._site_of[v]  # type: ignore[attr-defined]

    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.placement)

    def as_dict(self) -> dict[int, int]:
        return dict(self.placement)


def is_valid_placement(m: LatticeMapping, g_vertex: int, l_site: int) -> bool:
    """Would placing g_vertex at l_site keep the mapping adjacency-true?

    Checks the biconditional against every already-placed vertex: graph
    neighbors must land on adjacent sites and non-neighbors on non-adjacent
    sites. Raises if g_vertex is already placed or l_site occupied.
    """
    placed = m.as_dict()
    if g_vertex in placed:
        raise ValueError(f"vertex {g_vertex} is already mapped")
    if l_site in placed.values():
        raise ValueError(f"site {l_site} is already occupied")
    return _placement_ok(m.graph, m.layout, placed, g_vertex, l_site)


def _placement_ok(
    graph: WeightedGraph,
    layout: LatticeLayout,
    placed: dict[int, int],
    g_vertex: int,
    l_site: int,
) -> bool:
    for u, s in placed.items():
        if graph.has_edge(u, g_vertex) != layout.sites_adjacent(s, l_site):
            return False
    return True


def greedy_embed(
    g: WeightedGraph,
    layout: LatticeLayout,
    start_vertex: int,
    policy: RankingPolicy = DEFAULT_RANKING,
    max_size: int | None = None,
) -> LatticeMapping:
    """Grow a valid mapping outward from start_vertex at the lattice center.

    A FIFO worklist holds placed vertices. For each, its unplaced neighbors
    are ranked by `policy` and tried against the free lattice neighbors of
    its own site in ascending site order; the first valid site wins. A
    neighbor that fails against every candidate site is excluded for the
    rest of the call: later placements only add constraints, so it can
    never become placeable. Optional `max_size` caps the mapping (needed
    when the downstream solver has a fixed register capacity).
    """
    if not 0 <= start_vertex < g.n:
        raise ValueError(f"start vertex {start_vertex} out of range")
    if not layout.sites:
        raise ValueError("layout is empty")
    if max_size is not None and max_size < 1:
        raise ValueError("max_size must be at least 1")

    placed: dict[int, int] = {start_vertex: layout.center_site}
    occupied = {layout.center_site}
    blocked: set[int] = set()
    worklist: deque[int] = deque([start_vertex])

    while worklist:
        if max_size is not None and len(placed) >= max_size:
            break
        v = worklist.popleft()
        site = placed[v]
        candidates = [
            u for u in g.neighbors(v) if u not in placed and u not in blocked
        ]
        candidates.sort(key=lambda u: policy.sort_key(g, placed, u))
        free_sites = [f for f in layout.site_neighbors(site) if f not in occupied]
        for u in candidates:
            if max_size is not None and len(placed) >= max_size:
                break
            chosen = None
            for f in free_sites:
                if _placement_ok(g, layout, placed, u, f):
                    chosen = f
                    break
            if chosen is None:
                blocked.add(u)
            else:
                placed[u] = chosen
                occupied.add(chosen)
                free_sites.remove(chosen)
                worklist.append(u)

    return LatticeMapping(
        graph=g, layout=layout, placement=tuple(sorted(placed.items()))
    )


def mapped_subgraph(m: LatticeMapping) -> tuple[WeightedGraph, tuple[int, ...]]:
    """Induced subgraph of the source graph on the mapped vertices.

    Returns (subgraph, origin) with origin[i] the source index of subgraph
    vertex i; weights carry over.
    """
    verts = m.vertices()
    new_index = {v: i for i, v in enumerate(verts)}
    adj = tuple(
        tuple(new_index[u] for u in m.graph.neighbors(v) if u in new_index)
        for v in verts
    )
    weights = tuple(m.graph.weights[v] for v in verts)
    return WeightedGraph(n=len(verts), adj=adj, weights=weights), verts


def subgraph_mapping(m: LatticeMapping) -> tuple[WeightedGraph, tuple[int, ...], LatticeMapping]:
    """mapped_subgraph plus the same placement reindexed to the subgraph."""
    sub, origin = mapped_subgraph(m)
    placement = tuple((i, m.site_of(v)) for i, v in enumerate(origin))
    return sub, origin, LatticeMapping(graph=sub, layout=m.layout, placement=placement)


def mapping_to_json(
    m: LatticeMapping, graph_ref: str | None = None, layout_ref: str | None = None
) -> dict:
    data: dict = {"pairs": [[v, s] for v, s in m.placement]}
    if graph_ref is not None:
        data["graph"] = graph_ref
    if layout_ref is not None:
        data["layout"] = layout_ref
    return data


def save_mapping(
    m: LatticeMapping,
    path: str,
    graph_ref: str | None = None,
    layout_ref: str | None = None,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(mapping_to_json(m, graph_ref, layout_ref), fh)
        fh.write("\n")
