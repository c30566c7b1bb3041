"""Edge-coloured transversal multi-hypergraphs and rainbow matching search.

A coloured hypergraph here is r-partite and r-uniform; the same vertex set
may appear under several colours (multi-edges), but (edge, colour) pairs are
unique.  Colours are 1-based ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .hypercore import (
    Edge,
    MultipartiteHypergraph,
    Shape,
    Vertex,
    make_edge,
)
from . import solvers

ColoredEdge = tuple[Edge, int]


@dataclass(frozen=True)
class ColoredHypergraph:
    shape: Shape
    edges: tuple[ColoredEdge, ...]
    colors: int

    @classmethod
    def of(
        cls,
        shape: Shape,
        edges: "list[tuple] | tuple",
        colors: Optional[int] = None,
    ) -> "ColoredHypergraph":
        if shape.s != shape.r:
            raise ValueError(f"coloured hosts are transversal-uniform: need s = r, got {shape.s}, {shape.r}")
        canon = set()
        for e, c in edges:
            c = int(c)
            if c < 1:
                raise ValueError(f"colours are 1-based, got {c}")
            edge = make_edge(e)
            if len(edge) != shape.s:
                raise ValueError(f"edge {edge} has {len(edge)} vertices, expected {shape.s}")
            for v in edge:
                shape.require_vertex(v)
            canon.add((edge, c))
        f = colors if colors is not None else max((c for _, c in canon), default=0)
        if any(c > f for _, c in canon):
            raise ValueError("an edge colour exceeds the declared colour count")
        return cls(shape, tuple(sorted(canon, key=lambda ec: (ec[1], ec[0]))), f)

    def color_class(self, c: int) -> tuple[Edge, ...]:
        return tuple(e for e, col in self.edges if col == c)

    def class_graph(self, c: int) -> MultipartiteHypergraph:
        return MultipartiteHypergraph.of(self.shape, self.color_class(c))

    def to_json_dict(self) -> dict:
        return {
            "colors": self.colors,
            "r": self.shape.r,
            "s": self.shape.s,
            "sizes": list(self.shape.sizes),
            "edges": [
                {"edge": [[v.part, v.index] for v in e], "color": c}
                for e, c in self.edges
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ColoredHypergraph":
        try:
            shape = Shape(r=int(data["r"]), s=int(data["s"]), sizes=tuple(data["sizes"]))
            edges = [
                (make_edge((int(p), int(i)) for p, i in item["edge"]), int(item["color"]))
                for item in data["edges"]
            ]
            colors = int(data["colors"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed coloured hypergraph JSON: {exc}") from exc
        return cls.of(shape, edges, colors)


def is_fk_colored(C: ColoredHypergraph, k: int) -> bool:
    """Every colour class must contain k pairwise-disjoint edges."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    for c in range(1, C.colors + 1):
        if solvers.matching_number(C.class_graph(c)).size < k:
            return False
    return True


def find_rainbow_matching(
    C: ColoredHypergraph, k: int
) -> Optional[tuple[ColoredEdge, ...]]:
    """First (in colour-then-edge order) k disjoint edges with distinct
    colours, or None when no such matching exists.  Exact backtracking.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    by_color: dict[int, list[Edge]] = {}
    for e, c in C.edges:
        by_color.setdefault(c, []).append(e)
    colors = sorted(by_color)

    chosen: list[ColoredEdge] = []
    used: set[Vertex] = set()

    def walk(ci: int) -> Optional[tuple[ColoredEdge, ...]]:
        if len(chosen) == k:
            return tuple(chosen)
        if len(colors) - ci < k - len(chosen):
            return None
        if ci == len(colors):
            return None
        c = colors[ci]
        for e in by_color[c]:
            if any(v in used for v in e):
                continue
            chosen.append((e, c))
            used.update(e)
            got = walk(ci + 1)
            if got is not None:
                return got
            used.difference_update(e)
            chosen.pop()
        return walk(ci + 1)

    return walk(0)


def link_clique_coloring(G: MultipartiteHypergraph) -> ColoredHypergraph:
    """Colour the (r-1)-set transversal cliques of each last-part vertex's
    link graph by that vertex's index.

    For u in the last part, the link graph joins v_i ~ v_j when uv_i, uv_j and
    v_iv_j are all edges of G; the colour-u class lists its (r-1)-cliques.
    """
    if G.shape.s != 2:
        raise ValueError(f"link colouring needs a graph (s=2), got s={G.shape.s}")
    r = G.shape.r
    if r < 3:
        raise ValueError(f"link colouring needs at least 3 parts, got r={r}")
    inner_shape = Shape(r=r - 1, s=r - 1, sizes=G.shape.sizes[: r - 1])
    link_shape = Shape(r=r - 1, s=2, sizes=G.shape.sizes[: r - 1])
    es = G.edge_set
    colored: list[ColoredEdge] = []
    for c in range(1, G.shape.sizes[r - 1] + 1):
        u = Vertex(r, c)
        link_edges = [
            e
            for e in G.edges
            if e[1].part < r
            and make_edge((u, e[0])) in es
            and make_edge((u, e[1])) in es
        ]
        link_graph = MultipartiteHypergraph.of(link_shape, link_edges)
        for q in solvers.clique_list(link_graph, r - 1):
            colored.append((make_edge(q), c))
    return ColoredHypergraph.of(inner_shape, colored, colors=G.shape.sizes[r - 1])


def lift_rainbow_matching(
    matching: tuple[ColoredEdge, ...], color_part: int
) -> tuple[tuple[Vertex, ...], ...]:
    """Append each edge's colour vertex (in the given part) to the edge,
    producing candidate disjoint cliques in the original graph.
    """
    lifted = []
    for e, c in matching:
        lifted.append(tuple(sorted(e + (Vertex(color_part, c),))))
    return tuple(lifted)
