"""Within-part compression: the shift operator, iterated stabilization with a
strictly decreasing potential, and the stability / downward-closure predicates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .hypercore import (
    Comparison,
    Edge,
    MultipartiteHypergraph,
    Vertex,
    edge_precedes,
    make_edge,
)


def shift(H: MultipartiteHypergraph, u: Vertex, v: Vertex) -> MultipartiteHypergraph:
    """Replace v by u in every edge where the replacement is not already
    present; u and v must share a part so the image stays partite.

    The edge count is always preserved.
    """
    u, v = Vertex(*u), Vertex(*v)
    H.shape.require_vertex(u)
    H.shape.require_vertex(v)
    if u.part != v.part:
        raise ValueError(f"shift endpoints must share a part: {u} vs {v}")
    if u == v:
        return H
    es = H.edge_set
    new_edges = []
    for e in H.edges:
        if v in e and u not in e:
            moved = make_edge([u if x == v else x for x in e])
            new_edges.append(moved if moved not in es else e)
        else:
            new_edges.append(e)
    return MultipartiteHypergraph(H.shape, tuple(sorted(new_edges)))


def shift_potential(H: MultipartiteHypergraph) -> int:
    """Sum of within-part indices over all edge slots; strictly drops per shift."""
    return sum(v.index for e in H.edges for v in e)


class ShiftStep(NamedTuple):
    u: Vertex
    v: Vertex
    potential_before: int
    potential_after: int


@dataclass(frozen=True)
class ShiftTrace:
    steps: tuple[ShiftStep, ...]
    final: MultipartiteHypergraph

    def to_json_dict(self) -> dict:
        from .hypercore import hypergraph_to_json

        return {
            "steps": [
                {
                    "u": [st.u.part, st.u.index],
                    "v": [st.v.part, st.v.index],
                    "potential_before": st.potential_before,
                    "potential_after": st.potential_after,
                }
                for st in self.steps
            ],
            "final": hypergraph_to_json(self.final),
        }


def _scan_pairs(H: MultipartiteHypergraph):
    for part, n in enumerate(H.shape.sizes, start=1):
        for j in range(1, n):
            for j2 in range(j + 1, n + 1):
                yield Vertex(part, j), Vertex(part, j2)


def stabilize(H: MultipartiteHypergraph) -> ShiftTrace:
    """Apply shifts down the fixed scan order (part, then index pairs) until
    none of them changes the hypergraph.  Terminates because the potential
    strictly decreases with every recorded step.
    """
    steps: list[ShiftStep] = []
    current = H
    changed = True
    while changed:
        changed = False
        for u, v in _scan_pairs(current):
            shifted = shift(current, u, v)
            if shifted != current:
                before = shift_potential(current)
                after = shift_potential(shifted)
                steps.append(ShiftStep(u, v, before, after))
                current = shifted
                changed = True
    return ShiftTrace(tuple(steps), current)


def is_stable(H: MultipartiteHypergraph) -> bool:
    """True iff every within-part shift toward a smaller index fixes H."""
    return all(shift(H, u, v) == H for u, v in _scan_pairs(H))


def downward_closed(H: MultipartiteHypergraph) -> bool:
    """True iff every edge dominates only edges: each same-support s-set that
    precedes an edge componentwise is itself an edge.
    """
    es = H.edge_set
    for e in H.edges:
        ranges = [range(1, v.index + 1) for v in e]
        parts = [v.part for v in e]
        for idxs in itertools.product(*ranges):
            cand: Edge = tuple(Vertex(p, i) for p, i in zip(parts, idxs))
            if edge_precedes(cand, e) is Comparison.INCOMPARABLE:
                continue
            if cand not in es:
                return False
    return True
