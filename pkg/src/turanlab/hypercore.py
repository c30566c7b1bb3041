"""Vertices, edges and immutable r-partite s-uniform hypergraphs.

Vertices are addressed 1-based as (part, index).  Edges keep their vertices
sorted by part, so equality is structural.  A hypergraph stores its edge set
in a fixed lexicographic order; all operations return new values, nothing is
mutated in place.  Counts are plain Python ints, hence unbounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple


class Vertex(NamedTuple):
    part: int
    index: int


#: An edge is a tuple of vertices sorted by part, one vertex per part at most.
Edge = tuple[Vertex, ...]


class Comparison(Enum):
    """Outcome of a partial-order query ``a ? b``.

    INCOMPARABLE means "a neither precedes nor equals b"; query with the
    arguments swapped to test the reverse direction.
    """

    PRECEDES = "precedes"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def make_edge(vertices: Iterable[Vertex | tuple[int, int]]) -> Edge:
    """Build a canonical edge: vertices sorted by part, parts pairwise distinct."""
    vs = tuple(sorted(Vertex(int(p), int(i)) for p, i in vertices))
    if len({v.part for v in vs}) != len(vs):
        raise ValueError(f"edge vertices must lie in pairwise distinct parts: {vs}")
    return vs


@dataclass(frozen=True)
class Shape:
    """Host description: r parts with the given sizes, edges of s vertices."""

    r: int
    s: int
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        if len(self.sizes) != self.r:
            raise ValueError(f"expected {self.r} part sizes, got {len(self.sizes)}")
        if not 2 <= self.s <= self.r:
            raise ValueError(f"uniformity must satisfy 2 <= s <= r, got s={self.s}, r={self.r}")
        if any(n < 1 for n in self.sizes):
            raise ValueError(f"part sizes must be positive: {self.sizes}")

    @classmethod
    def of(cls, s: int, sizes: Iterable[int]) -> "Shape":
        sizes = tuple(sizes)
        return cls(r=len(sizes), s=s, sizes=sizes)

    @property
    def canonical(self) -> bool:
        """True when the part sizes are sorted ascending."""
        return all(a <= b for a, b in zip(self.sizes, self.sizes[1:]))

    def require_canonical(self) -> None:
        if not self.canonical:
            raise ValueError(f"part sizes must be ascending: {self.sizes}")

    @property
    def vertex_count(self) -> int:
        return sum(self.sizes)

    def part_size(self, part: int) -> int:
        if not 1 <= part <= self.r:
            raise ValueError(f"part {part} out of range 1..{self.r}")
        return self.sizes[part - 1]

    def vertices(self) -> Iterator[Vertex]:
        for part, n in enumerate(self.sizes, start=1):
            for index in range(1, n + 1):
                yield Vertex(part, index)

    def __contains__(self, v: object) -> bool:
        try:
            part, index = v  # type: ignore[misc]
        except (TypeError, ValueError):
            return False
        return 1 <= part <= self.r and 1 <= index <= self.sizes[part - 1]

    def require_vertex(self, v: Vertex) -> None:
        if v not in self:
            raise ValueError(f"vertex {tuple(v)} outside shape {self.sizes}")


@dataclass(frozen=True)
class MultipartiteHypergraph:
    """An immutable edge set over a fixed multipartite shape.

    ``edges`` is always sorted lexicographically by the (part, index)
    sequence, which fixes the iteration order used by the solvers.
    """

    shape: Shape
    edges: tuple[Edge, ...]

    @classmethod
    def of(cls, shape: Shape, edges: Iterable[Iterable[Vertex | tuple[int, int]]]) -> "MultipartiteHypergraph":
        canon = sorted({make_edge(e) for e in edges})
        for e in canon:
            if len(e) != shape.s:
                raise ValueError(f"edge {e} has {len(e)} vertices, expected {shape.s}")
            for v in e:
                shape.require_vertex(v)
        return cls(shape, tuple(canon))

    @classmethod
    def empty(cls, shape: Shape) -> "MultipartiteHypergraph":
        return cls(shape, ())

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return e in self.edge_set

    def vertices(self) -> Iterator[Vertex]:
        return self.shape.vertices()


class InducedSubgraph(NamedTuple):
    graph: MultipartiteHypergraph
    #: old vertex -> new vertex, for the vertices that survive
    vertex_map: dict[Vertex, Vertex]


class CanonicalForm(NamedTuple):
    graph: MultipartiteHypergraph
    #: part_order[new_part - 1] = old part number
    part_order: tuple[int, ...]


def complete(shape: Shape) -> MultipartiteHypergraph:
    """The complete host: every s-set with at most one vertex per part."""
    edges = []
    for parts in itertools.combinations(range(1, shape.r + 1), shape.s):
        ranges = [range(1, shape.sizes[p - 1] + 1) for p in parts]
        for idxs in itertools.product(*ranges):
            edges.append(tuple(Vertex(p, i) for p, i in zip(parts, idxs)))
    return MultipartiteHypergraph(shape, tuple(sorted(edges)))


def link(H: MultipartiteHypergraph, u: Vertex) -> tuple[Edge, ...]:
    """All edges of H containing u, in canonical order."""
    H.shape.require_vertex(u)
    u = Vertex(*u)
    return tuple(e for e in H.edges if u in e)


def link_pair(H: MultipartiteHypergraph, u: Vertex, v: Vertex) -> tuple[Edge, ...]:
    """All edges of H containing both u and v."""
    H.shape.require_vertex(u)
    H.shape.require_vertex(v)
    u, v = Vertex(*u), Vertex(*v)
    return tuple(e for e in H.edges if u in e and v in e)


def degree(H: MultipartiteHypergraph, u: Vertex) -> int:
    return len(link(H, u))


def pair_degree(H: MultipartiteHypergraph, u: Vertex, v: Vertex) -> int:
    return len(link_pair(H, u, v))


def gamma(H: MultipartiteHypergraph, X: Iterable[Vertex]) -> tuple[Edge, ...]:
    """All edges of H that intersect the vertex set X."""
    xs = set()
    for v in X:
        v = Vertex(*v)
        H.shape.require_vertex(v)
        xs.add(v)
    return tuple(e for e in H.edges if any(v in xs for v in e))


def induced(H: MultipartiteHypergraph, keep: Iterable[Vertex]) -> InducedSubgraph:
    """Induced subgraph on ``keep``; empty parts are dropped and renumbered.

    Returns the new hypergraph together with the old->new vertex remapping.
    Raises if fewer than s nonempty parts remain (no valid shape exists).
    """
    kept = set()
    for v in keep:
        v = Vertex(*v)
        H.shape.require_vertex(v)
        kept.add(v)

    survivors: dict[int, list[int]] = {}
    for v in sorted(kept):
        survivors.setdefault(v.part, []).append(v.index)
    parts_alive = sorted(survivors)
    if len(parts_alive) < H.shape.s:
        raise ValueError(
            f"induced subgraph keeps {len(parts_alive)} nonempty parts, "
            f"need at least s={H.shape.s}"
        )

    vertex_map: dict[Vertex, Vertex] = {}
    sizes = []
    for new_part, old_part in enumerate(parts_alive, start=1):
        idxs = survivors[old_part]
        sizes.append(len(idxs))
        for new_index, old_index in enumerate(idxs, start=1):
            vertex_map[Vertex(old_part, old_index)] = Vertex(new_part, new_index)

    new_shape = Shape(r=len(sizes), s=H.shape.s, sizes=tuple(sizes))
    new_edges = [
        tuple(vertex_map[v] for v in e) for e in H.edges if all(v in kept for v in e)
    ]
    graph = MultipartiteHypergraph(new_shape, tuple(sorted(new_edges)))
    return InducedSubgraph(graph, vertex_map)


def delete(H: MultipartiteHypergraph, drop: Iterable[Vertex]) -> InducedSubgraph:
    """Induced subgraph on the complement of ``drop``."""
    dropped = set()
    for v in drop:
        v = Vertex(*v)
        H.shape.require_vertex(v)
        dropped.add(v)
    return induced(H, (v for v in H.shape.vertices() if v not in dropped))


def canonicalize(H: MultipartiteHypergraph) -> CanonicalForm:
    """Relabel parts so sizes are ascending; ties keep the original order."""
    order = sorted(range(1, H.shape.r + 1), key=lambda p: (H.shape.sizes[p - 1], p))
    new_part = {old: new for new, old in enumerate(order, start=1)}
    shape = Shape(
        r=H.shape.r, s=H.shape.s, sizes=tuple(H.shape.sizes[p - 1] for p in order)
    )
    edges = [make_edge(Vertex(new_part[v.part], v.index) for v in e) for e in H.edges]
    return CanonicalForm(MultipartiteHypergraph(shape, tuple(sorted(edges))), tuple(order))


def vertex_precedes(a: Vertex, b: Vertex) -> Comparison:
    """Within-part order by index; vertices in different parts are incomparable."""
    a, b = Vertex(*a), Vertex(*b)
    if a == b:
        return Comparison.EQUAL
    if a.part != b.part:
        return Comparison.INCOMPARABLE
    return Comparison.PRECEDES if a.index < b.index else Comparison.INCOMPARABLE


def edge_precedes(e1: Edge, e2: Edge) -> Comparison:
    """Componentwise order: e1 precedes e2 iff a part-respecting pairing sends
    every vertex of e1 to a vertex of e2 with index at least its own.

    Edges over different part sets are incomparable (each edge has at most one
    vertex per part, so the pairing is forced by the parts).
    """
    if e1 == e2:
        return Comparison.EQUAL
    if tuple(v.part for v in e1) != tuple(v.part for v in e2):
        return Comparison.INCOMPARABLE
    if all(x.index <= y.index for x, y in zip(e1, e2)):
        return Comparison.PRECEDES
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# canonical JSON encoding
# ---------------------------------------------------------------------------

def hypergraph_to_json(H: MultipartiteHypergraph) -> dict:
    """Canonical interchange form: parts, sizes and sorted edges."""
    return {
        "r": H.shape.r,
        "s": H.shape.s,
        "sizes": list(H.shape.sizes),
        "edges": [[[v.part, v.index] for v in e] for e in H.edges],
    }


def hypergraph_from_json(data: Mapping) -> MultipartiteHypergraph:
    try:
        shape = Shape(r=int(data["r"]), s=int(data["s"]), sizes=tuple(data["sizes"]))
        edges = [make_edge((int(p), int(i)) for p, i in e) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed hypergraph JSON: {exc}") from exc
    return MultipartiteHypergraph.of(shape, edges)
