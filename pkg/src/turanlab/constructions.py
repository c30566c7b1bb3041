"""Generators for the extremal constructions and the cyclic matching partition.

Vertex conventions (fixed for determinism, and chosen so the constructions are
stable under the within-part shifting order):

* h1 pins edges to the *first* k-1 vertices of part 1.
* h2 and g delete blocks against the *last* n_1-k+1 vertices of part 1, so the
  k-1 surviving high-degree vertices are again the first k-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .hypercore import (
    Edge,
    MultipartiteHypergraph,
    Shape,
    Vertex,
    complete,
    make_edge,
)


def h1_construction(shape: Shape, k: int) -> MultipartiteHypergraph:
    """Host edges meeting a fixed (k-1)-subset of part 1; avoids k disjoint edges."""
    shape.require_canonical()
    _check_k(shape, k)
    special = {Vertex(1, j) for j in range(1, k)}
    host = complete(shape)
    kept = tuple(e for e in host.edges if any(v in special for v in e))
    return MultipartiteHypergraph(shape, kept)


def h2_construction(shape: Shape, k: int) -> MultipartiteHypergraph:
    """Host minus the complete block spanned by the last n_1-k+1 vertices of
    part 1 together with parts 2..s; avoids k disjoint r-cliques.
    """
    shape.require_canonical()
    _check_k(shape, k)
    s = shape.s
    head_support = tuple(range(1, s + 1))
    host = complete(shape)
    kept = tuple(
        e
        for e in host.edges
        if not (
            tuple(v.part for v in e) == head_support
            and e[0].index >= k
        )
    )
    return MultipartiteHypergraph(shape, kept)


def g_construction(shape: Shape, k: int) -> MultipartiteHypergraph:
    """Graph case (s = 2): host minus all edges between the last n_1-k+1
    vertices of part 1 and part 2; avoids k disjoint r-cliques.
    """
    if shape.s != 2:
        raise ValueError(f"g_construction needs a graph host (s=2), got s={shape.s}")
    shape.require_canonical()
    _check_k(shape, k)
    host = complete(shape)
    kept = tuple(
        e
        for e in host.edges
        if not (e[0].part == 1 and e[1].part == 2 and e[0].index >= k)
    )
    return MultipartiteHypergraph(shape, kept)


@dataclass(frozen=True)
class MatchingPartition:
    """Partition of a complete s=r host into n_2*...*n_r transversal matchings.

    Class keys are 0-based offset tuples (x_2, ..., x_r); the class collects,
    for x = 0..n_1-1, the edge through part-1 vertex x and part-i vertex
    (x + x_i) mod n_i (indices shown 0-based, stored 1-based).
    """

    shape: Shape
    classes: Mapping[tuple[int, ...], tuple[Edge, ...]]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def all_edges(self) -> tuple[Edge, ...]:
        return tuple(e for cls in self.classes.values() for e in cls)

    def to_json_dict(self) -> dict:
        return {
            "r": self.shape.r,
            "s": self.shape.s,
            "sizes": list(self.shape.sizes),
            "classes": {
                ",".join(map(str, key)): [[[v.part, v.index] for v in e] for e in cls]
                for key, cls in sorted(self.classes.items())
            },
        }


def matching_partition(shape: Shape) -> MatchingPartition:
    """Cyclic-offset partition of the complete s=r host into perfect classes."""
    if shape.s != shape.r:
        raise ValueError(f"matching partition needs s = r, got s={shape.s}, r={shape.r}")
    shape.require_canonical()
    sizes = shape.sizes
    n1 = sizes[0]
    classes: dict[tuple[int, ...], tuple[Edge, ...]] = {}
    for offsets in itertools.product(*(range(n) for n in sizes[1:])):
        cls = []
        for x in range(n1):
            vs = [Vertex(1, x + 1)]
            for part, off in enumerate(offsets, start=2):
                n = sizes[part - 1]
                vs.append(Vertex(part, (x + off) % n + 1))
            cls.append(make_edge(vs))
        classes[offsets] = tuple(cls)
    return MatchingPartition(shape, classes)


def _check_k(shape: Shape, k: int) -> None:
    if not 1 <= k <= shape.sizes[0]:
        raise ValueError(f"need 1 <= k <= n_1 = {shape.sizes[0]}, got k={k}")
