"""Precalibrated target layouts: triangular, square, and king lattices."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .graph import WeightedGraph, graph_to_json, unit_disk_graph

KINDS = ("triangular", "square", "king")

# Unit-disk radius per kind, as a multiple of the site spacing. Each factor
# sits strictly between the nearest-neighbor and next-nearest-neighbor
# distances so adjacency is insensitive to floating-point noise.
RADIUS_FACTOR = {"triangular": 1.2, "square": 1.2, "king": 1.5}


@dataclass(frozen=True)
class LatticeLayout:
    """A finite patch of lattice sites with its unit-disk adjacency.

    `graph` is exactly the unit-disk graph of `sites` at `radius`;
    `center_site` is the site closest to the centroid (lowest index on ties).
    """

    kind: str
    sites: tuple[tuple[float, float], ...]
    spacing: float
    radius: float
    graph: WeightedGraph
    center_site: int

    @classmethod
    def from_sites(
        cls,
        kind: str,
        sites: tuple[tuple[float, float], ...],
        spacing: float,
        radius: float,
    ) -> LatticeLayout:
        if not sites:
            raise ValueError("layout must contain at least one site")
        graph = unit_disk_graph(sites, radius)
        cx = sum(x for x, _ in sites) / len(sites)
        cy = sum(y for _, y in sites) / len(sites)
        center = min(
            range(len(sites)),
            key=lambda i: ((sites[i][0] - cx) ** 2 + (sites[i][1] - cy) ** 2, i),
        )
        return cls(
            kind=kind,
            sites=sites,
            spacing=spacing,
            radius=radius,
            graph=graph,
            center_site=center,
        )

    def __len__(self) -> int:
        return len(self.sites)

    def site_neighbors(self, site: int) -> tuple[int, ...]:
        return self.graph.neighbors(site)

    def sites_adjacent(self, a: int, b: int) -> bool:
        return self.graph.has_edge(a, b)


def build_lattice(kind: str, rows: int, cols: int, spacing: float) -> LatticeLayout:
    """rows x cols patch of the requested geometry, row-major site indices.

    Triangular rows alternate an offset of spacing/2 with row pitch
    spacing*sqrt(3)/2; square and king sit on a plain grid. The unit-disk
    radius is fixed per kind (see RADIUS_FACTOR).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown lattice kind {kind!r}, expected one of {KINDS}")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be at least 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    sites: list[tuple[float, float]] = []
    if kind == "triangular":
        pitch = spacing * math.sqrt(3.0) / 2.0
        for r in range(rows):
            off = (spacing / 2.0) if r % 2 else 0.0
            for c in range(cols):
                sites.append((c * spacing + off, r * pitch))
    else:
        for r in range(rows):
            for c in range(cols):
                sites.append((c * spacing, r * spacing))
    radius = RADIUS_FACTOR[kind] * spacing
    return LatticeLayout.from_sites(kind, tuple(sites), spacing, radius)


def lattice_center(layout: LatticeLayout) -> int:
    """Site closest to the centroid of all sites, lowest index on ties."""
    if not layout.sites:
        raise ValueError("layout is empty")
    return layout.center_site


def layout_to_json(layout: LatticeLayout) -> dict:
    data = graph_to_json(layout.graph)
    data["coords"] = [[x, y] for x, y in layout.sites]
    data["radius"] = layout.radius
    data["kind"] = layout.kind
    data["spacing"] = layout.spacing
    return data


def layout_from_json(data: dict) -> LatticeLayout:
    sites = tuple((float(x), float(y)) for x, y in data["coords"])
    radius = float(data["radius"])
    kind = data.get("kind", "custom")
    spacing = float(data.get("spacing", radius))
    return LatticeLayout.from_sites(kind, sites, spacing, radius)


def save_layout(layout: LatticeLayout, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(layout_to_json(layout), fh)
        fh.write("\n")


def load_layout(path: str) -> LatticeLayout:
    with open(path, encoding="utf-8") as fh:
        return layout_from_json(json.load(fh))
