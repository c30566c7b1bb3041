"""Exact oracles: matching number, clique listing, clique packings, and
branch-and-bound search for extremal subgraphs of complete multipartite hosts.

The extremal search walks the host edge list in its canonical order,
branching include/exclude.  Includes are rejected as soon as they complete k
vertex-disjoint forbidden cliques; subtrees are cut with an admissible bound
built from a verified edge-disjoint decomposition of the host (matchings when
the forbidden clique is a single edge, disjoint k-packings otherwise).
Incumbents are seeded from the explicit constructions -- after checking they
really are free, so a bad construction can never corrupt the optimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .constructions import (
    g_construction,
    h1_construction,
    h2_construction,
    matching_partition,
)
from .formulas import hypothesis_check
from .hypercore import (
    Edge,
    MultipartiteHypergraph,
    Shape,
    Vertex,
    complete,
    hypergraph_to_json,
)

DEFAULT_NODE_BUDGET = 10**8


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------

class MatchingResult(NamedTuple):
    size: int
    matching: tuple[Edge, ...]


def _edge_vertex_masks(edges: Sequence[Edge]) -> list[int]:
    bit: dict[Vertex, int] = {}
    for e in edges:
        for v in e:
            if v not in bit:
                bit[v] = len(bit)
    return [sum(1 << bit[v] for v in e) for e in edges]


def matching_number(H: MultipartiteHypergraph) -> MatchingResult:
    """Exact maximum matching by depth-first search over the canonical edge order."""
    edges = H.edges
    if not edges:
        return MatchingResult(0, ())
    masks = _edge_vertex_masks(edges)
    n_vertices = max(m.bit_length() for m in masks)
    s = H.shape.s
    hard_cap = min(len(edges), n_vertices // s)

    best = 0
    best_sel: tuple[int, ...] = ()

    def grow(cand: list[int], chosen: list[int]) -> None:
        nonlocal best, best_sel
        if len(chosen) > best:
            best = len(chosen)
            best_sel = tuple(chosen)
        if best >= hard_cap:
            return
        for pos, j in enumerate(cand):
            if len(chosen) + (len(cand) - pos) <= best:
                return
            chosen.append(j)
            grow([x for x in cand[pos + 1 :] if not masks[x] & masks[j]], chosen)
            chosen.pop()
            if best >= hard_cap:
                return

    grow(list(range(len(edges))), [])
    return MatchingResult(best, tuple(edges[j] for j in best_sel))


# ---------------------------------------------------------------------------
# cliques
# ---------------------------------------------------------------------------

def clique_list(H: MultipartiteHypergraph, t: int) -> tuple[tuple[Vertex, ...], ...]:
    """All t-vertex sets across t distinct parts whose crossing s-subsets are
    all edges of H, in lexicographic order.
    """
    s, r = H.shape.s, H.shape.r
    if not s <= t <= r:
        raise ValueError(f"need s <= t <= r, got t={t} with s={s}, r={r}")
    es = H.edge_set
    sizes = H.shape.sizes
    out: list[tuple[Vertex, ...]] = []

    def extend(next_part: int, chosen: list[Vertex]) -> None:
        if len(chosen) == t:
            out.append(tuple(chosen))
            return
        # enough parts must remain
        for p in range(next_part, r - (t - len(chosen)) + 2):
            for idx in range(1, sizes[p - 1] + 1):
                v = Vertex(p, idx)
                if len(chosen) >= s - 1:
                    ok = all(
                        combo + (v,) in es
                        for combo in itertools.combinations(chosen, s - 1)
                    )
                else:
                    ok = True
                if ok:
                    chosen.append(v)
                    extend(p + 1, chosen)
                    chosen.pop()

    extend(1, [])
    return tuple(out)


def count_cliques(H: MultipartiteHypergraph, clique_size: int) -> int:
    return len(clique_list(H, clique_size))


def count_cliques_by_support(
    H: MultipartiteHypergraph, clique_size: int
) -> dict[tuple[int, ...], int]:
    """Counts keyed by the tuple of parts the clique's vertices occupy."""
    counts: dict[tuple[int, ...], int] = {}
    for q in clique_list(H, clique_size):
        key = tuple(v.part for v in q)
        counts[key] = counts.get(key, 0) + 1
    return counts


@dataclass(frozen=True)
class CliquePacking:
    t: int
    members: tuple[tuple[Vertex, ...], ...]


class PackingResult(NamedTuple):
    size: int
    packing: CliquePacking


def clique_packing_number(
    H: MultipartiteHypergraph, t: int, *, stop_at: Optional[int] = None
) -> PackingResult:
    """Exact maximum number of vertex-disjoint t-cliques (early exit at stop_at)."""
    cliques = clique_list(H, t)
    masks = _edge_vertex_masks(list(cliques)) if cliques else []
    cap = len(cliques) if stop_at is None else min(stop_at, len(cliques))
    cap = min(cap, H.shape.vertex_count // t)

    best = 0
    best_sel: tuple[int, ...] = ()

    def grow(cand: list[int], chosen: list[int]) -> None:
        nonlocal best, best_sel
        if len(chosen) > best:
            best = len(chosen)
            best_sel = tuple(chosen)
        if best >= cap:
            return
        for pos, j in enumerate(cand):
            if len(chosen) + (len(cand) - pos) <= best:
                return
            chosen.append(j)
            grow([x for x in cand[pos + 1 :] if not masks[x] & masks[j]], chosen)
            chosen.pop()
            if best >= cap:
                return

    grow(list(range(len(cliques))), [])
    return PackingResult(best, CliquePacking(t, tuple(cliques[j] for j in best_sel)))


def is_free(H: MultipartiteHypergraph, k: int, t: int) -> bool:
    """True iff H contains no k vertex-disjoint t-cliques."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return clique_packing_number(H, t, stop_at=k).size < k


# ---------------------------------------------------------------------------
# extremal branch and bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalReport:
    shape: Shape
    k: int
    t: int
    objective: str  # "edges" | "cliques"
    clique_size: Optional[int]
    optimum: int
    witness: MultipartiteHypergraph
    nodes_explored: int
    conclusive: bool
    hypothesis_ok: Optional[bool]

    def to_json_dict(self, include_witness: bool = True) -> dict:
        out = {
            "shape": {"r": self.shape.r, "s": self.shape.s, "sizes": list(self.shape.sizes)},
            "k": self.k,
            "t": self.t,
            "objective": self.objective,
            "clique_size": self.clique_size,
            "optimum": self.optimum,
            "nodes_explored": self.nodes_explored,
            "conclusive": self.conclusive,
            "hypothesis_ok": self.hypothesis_ok,
        }
        if include_witness:
            out["witness"] = hypergraph_to_json(self.witness)
        return out


def _crossing_subsets(q: tuple[Vertex, ...], s: int) -> list[Edge]:
    return [tuple(c) for c in itertools.combinations(q, s)]


def _max_disjoint_ids(ids: list[int], masks: Sequence[int]) -> list[int]:
    """Maximum pairwise-disjoint subset of the given masked items, exact."""
    best: list[int] = []
    if not ids:
        return best
    union = 0
    for j in ids:
        union |= masks[j]
    item_bits = min(masks[j].bit_count() for j in ids)
    cap = union.bit_count() // item_bits if item_bits else len(ids)

    def grow(cand: list[int], chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= cap:
            return
        for pos, j in enumerate(cand):
            if len(chosen) + (len(cand) - pos) <= len(best):
                return
            chosen.append(j)
            grow([x for x in cand[pos + 1 :] if not masks[x] & masks[j]], chosen)
            chosen.pop()
            if len(best) >= cap:
                return

    grow(ids, [])
    return best


def _is_matching(ids: list[int], evmask: Sequence[int]) -> bool:
    acc = 0
    for j in ids:
        if acc & evmask[j]:
            return False
        acc |= evmask[j]
    return True


def _matching_group_candidates(m: int, evmask: list[int]) -> list[list[list[int]]]:
    """Candidate partitions of the host edges into matchings: repeated
    maximum-matching extraction and a greedy proper colouring.  Matching-ness
    holds by construction for both.
    """
    extraction: list[list[int]] = []
    remaining = list(range(m))
    while remaining:
        sel = _max_disjoint_ids(remaining, evmask)
        extraction.append(sel)
        used = set(sel)
        remaining = [j for j in remaining if j not in used]

    colouring: list[list[int]] = []
    class_masks: list[int] = []
    for j in range(m):
        for ci, cm in enumerate(class_masks):
            if not cm & evmask[j]:
                colouring[ci].append(j)
                class_masks[ci] |= evmask[j]
                break
        else:
            colouring.append([j])
            class_masks.append(evmask[j])

    return [extraction, colouring]


def _packing_groups(
    cliques_emask: list[int],
    cliques_vmask: list[int],
    k: int,
    m: int,
) -> list[list[int]]:
    """Greedy edge-disjoint k-packings of forbidden cliques; each group is an
    edge set that every free subgraph must miss by at least one edge.
    """
    groups: list[list[int]] = []
    remaining = (1 << m) - 1
    ids = list(range(len(cliques_emask)))
    while True:
        live = [q for q in ids if cliques_emask[q] & remaining == cliques_emask[q]]
        found: list[int] = []

        def grow(cand: list[int], chosen: list[int]) -> bool:
            nonlocal found
            if len(chosen) == k:
                found = list(chosen)
                return True
            for pos, q in enumerate(cand):
                if len(chosen) + (len(cand) - pos) < k:
                    return False
                chosen.append(q)
                rest = [x for x in cand[pos + 1 :] if not cliques_vmask[x] & cliques_vmask[q]]
                if grow(rest, chosen):
                    return True
                chosen.pop()
            return False

        if not grow(live, []):
            break
        gmask = 0
        for q in found:
            gmask |= cliques_emask[q]
        edge_ids = [j for j in range(m) if gmask >> j & 1]
        groups.append(edge_ids)
        remaining &= ~gmask
    return groups


def _seed_candidates(shape: Shape, k: int, t: int) -> list[MultipartiteHypergraph]:
    if not shape.canonical or not 1 <= k <= shape.sizes[0]:
        return []
    out = [h1_construction(shape, k)]
    if t == shape.r:
        out.append(h2_construction(shape, k))
        if shape.s == 2:
            out.append(g_construction(shape, k))
    return out


class _SearchOutcome(NamedTuple):
    optimum: int
    witness_mask: int
    nodes: int
    conclusive: bool


def _solve_extremal(
    shape: Shape,
    k: int,
    t: int,
    objective_size: Optional[int],
    node_budget: int,
) -> tuple[_SearchOutcome, MultipartiteHypergraph]:
    host = complete(shape)
    edges = host.edges
    m = len(edges)
    s = shape.s
    obj_size = objective_size if objective_size is not None else s

    vbit = {v: i for i, v in enumerate(shape.vertices())}
    evmask = [sum(1 << vbit[v] for v in e) for e in edges]
    eindex = {e: j for j, e in enumerate(edges)}

    # forbidden t-cliques of the host
    forb_sets = clique_list(host, t)
    forb_vmask: list[int] = []
    forb_emask: list[int] = []
    forb_edges: list[list[int]] = []
    forb_through: list[list[int]] = [[] for _ in range(m)]
    for qi, q in enumerate(forb_sets):
        eids = [eindex[e] for e in _crossing_subsets(q, s)]
        forb_vmask.append(sum(1 << vbit[v] for v in q))
        forb_emask.append(sum(1 << j for j in eids))
        forb_edges.append(eids)
        for j in eids:
            forb_through[j].append(qi)

    # objective cliques (edges themselves when obj_size == s)
    obj_sets = clique_list(host, obj_size)
    obj_edges: list[list[int]] = []
    obj_through: list[list[int]] = [[] for _ in range(m)]
    for qi, q in enumerate(obj_sets):
        eids = [eindex[e] for e in _crossing_subsets(q, s)]
        obj_edges.append(eids)
        for j in eids:
            obj_through[j].append(qi)

    # bound groups over the host edge set
    if t == s:
        candidates = _matching_group_candidates(m, evmask)
        if s == shape.r and shape.canonical:
            # the cyclic transversal partition is usually perfect; trust it
            # only after re-checking every class really is a matching and the
            # classes do not share edges
            cyc = [
                [eindex[e] for e in cls]
                for cls in matching_partition(shape).classes.values()
            ]
            flat = [j for g in cyc for j in g]
            if len(flat) == len(set(flat)) and all(_is_matching(g, evmask) for g in cyc):
                candidates.append(cyc)
        groups = min(candidates, key=lambda gs: sum(min(len(g), k - 1) for g in gs))
        caps = [k - 1] * len(groups)
    else:
        groups = _packing_groups(forb_emask, forb_vmask, k, m)
        caps = [len(g) - 1 for g in groups]
    group_masks = [sum(1 << j for j in g) for g in groups]

    # charge each objective clique to at most one (group, edge) pair
    group_of_edge = [-1] * m
    for gi, g in enumerate(groups):
        for j in g:
            group_of_edge[j] = gi
    charge_edge = [-1] * len(obj_sets)
    charged: list[list[int]] = [[] for _ in range(m)]
    for qi, eids in enumerate(obj_edges):
        grouped = [j for j in eids if group_of_edge[j] >= 0]
        if grouped:
            j = min(grouped, key=lambda x: (group_of_edge[x], x))
            charge_edge[qi] = j
            charged[j].append(qi)

    # seeds (verified free before use)
    best = -1
    best_mask = 0
    for cand in _seed_candidates(shape, k, t):
        if not is_free(cand, k, t):
            continue
        val = cand.edge_count if obj_size == s else count_cliques(cand, obj_size)
        if val > best:
            best = val
            best_mask = sum(1 << eindex[e] for e in cand.edges)

    suffix = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suffix[j] = suffix[j + 1] | (1 << j)

    forb_missing = [len(eids) for eids in forb_edges]
    forb_alive = [True] * len(forb_sets)
    obj_missing = [len(eids) for eids in obj_edges]
    obj_alive_flags = [True] * len(obj_sets)
    obj_alive = len(obj_sets)
    charged_alive = [len(charged[j]) for j in range(m)]
    completed: list[int] = []  # forbidden cliques fully included, stack order

    nodes = 0
    aborted = False
    included_mask = 0

    def packs_with(new_ids: list[int]) -> bool:
        """Can any newly completed clique join k-1 completed ones disjointly?"""
        pool = completed  # excludes new_ids; handled separately
        for q in new_ids:
            qmask = forb_vmask[q]
            others = [x for x in pool if not forb_vmask[x] & qmask]
            others += [x for x in new_ids if x != q and not forb_vmask[x] & qmask]

            def pick(cand: list[int], got: int, used: int) -> bool:
                if got == k - 1:
                    return True
                for pos, x in enumerate(cand):
                    if got + (len(cand) - pos) < k - 1:
                        return False
                    if forb_vmask[x] & used:
                        continue
                    if pick(cand[pos + 1 :], got + 1, used | forb_vmask[x]):
                        return True
                return False

            if pick(others, 0, qmask):
                return True
        return False

    def bound(i: int) -> int:
        alive_mask = included_mask | suffix[i]
        total = obj_alive
        for gi, gmask in enumerate(group_masks):
            alive_in = (gmask & alive_mask).bit_count()
            need = alive_in - caps[gi]
            if need <= 0:
                continue
            avail = [j for j in groups[gi] if j >= i and not (included_mask >> j & 1)]
            if len(avail) < need:
                return -1
            if need == 1:
                total -= min(charged_alive[j] for j in avail)
            else:
                vals = sorted(charged_alive[j] for j in avail)
                total -= sum(vals[:need])
        return total

    def dfs(i: int, obj_count: int) -> None:
        nonlocal nodes, aborted, best, best_mask, included_mask, obj_alive
        if aborted:
            return
        nodes += 1
        if nodes > node_budget:
            aborted = True
            return
        if i == m:
            if obj_count > best:
                best = obj_count
                best_mask = included_mask
            return
        if obj_alive <= best or bound(i) <= best:
            return

        j = i
        # --- include branch ---
        newly = []
        for q in forb_through[j]:
            forb_missing[q] -= 1
            if forb_missing[q] == 0:
                newly.append(q)
        violates = bool(newly) and packs_with(newly)
        forced = all(not forb_alive[q] for q in forb_through[j])
        if not violates:
            gained = []
            for q in obj_through[j]:
                obj_missing[q] -= 1
                if obj_missing[q] == 0:
                    gained.append(q)
            completed.extend(newly)
            included_mask |= 1 << j
            dfs(i + 1, obj_count + len(gained))
            included_mask &= ~(1 << j)
            del completed[len(completed) - len(newly) :]
            for q in obj_through[j]:
                obj_missing[q] += 1
        for q in forb_through[j]:
            forb_missing[q] += 1
        if aborted or (forced and not violates):
            return

        # --- exclude branch ---
        killed_f = []
        for q in forb_through[j]:
            if forb_alive[q]:
                forb_alive[q] = False
                killed_f.append(q)
        killed_o = []
        for q in obj_through[j]:
            if obj_alive_flags[q]:
                obj_alive_flags[q] = False
                killed_o.append(q)
                obj_alive -= 1
                ce = charge_edge[q]
                if ce >= 0:
                    charged_alive[ce] -= 1
        dfs(i + 1, obj_count)
        for q in killed_f:
            forb_alive[q] = True
        for q in killed_o:
            obj_alive_flags[q] = True
            obj_alive += 1
            ce = charge_edge[q]
            if ce >= 0:
                charged_alive[ce] += 1

    dfs(0, 0)

    if best < 0:
        best, best_mask = 0, 0
    return _SearchOutcome(best, best_mask, nodes, not aborted), host


def _mask_to_graph(host: MultipartiteHypergraph, mask: int) -> MultipartiteHypergraph:
    kept = tuple(e for j, e in enumerate(host.edges) if mask >> j & 1)
    return MultipartiteHypergraph(host.shape, kept)


def max_edges_free(
    shape: Shape, k: int, t: int, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExtremalReport:
    """Exact maximum edge count over subgraphs with no k disjoint t-cliques."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not shape.s <= t <= shape.r:
        raise ValueError(f"need s <= t <= r, got t={t}")
    outcome, host = _solve_extremal(shape, k, t, None, node_budget)
    hyp: Optional[bool] = None
    if shape.canonical:
        if t == shape.s:
            hyp = hypothesis_check("thm13", shape.s, shape.r, k, shape.sizes)
        elif t == shape.r:
            hyp = hypothesis_check("thm14", shape.s, shape.r, k, shape.sizes)
    return ExtremalReport(
        shape=shape,
        k=k,
        t=t,
        objective="edges",
        clique_size=None,
        optimum=outcome.optimum,
        witness=_mask_to_graph(host, outcome.witness_mask),
        nodes_explored=outcome.nodes,
        conclusive=outcome.conclusive,
        hypothesis_ok=hyp,
    )


def max_cliques_free(
    shape: Shape,
    k: int,
    clique_size: int,
    t: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ExtremalReport:
    """Exact maximum number of clique_size-cliques over kK_t-free subgraphs of
    a graph host (s = 2).
    """
    if shape.s != 2:
        raise ValueError(f"cliques objective needs a graph host (s=2), got s={shape.s}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 2 <= clique_size <= shape.r:
        raise ValueError(f"need 2 <= clique_size <= r, got {clique_size}")
    if not 2 <= t <= shape.r:
        raise ValueError(f"need 2 <= t <= r, got t={t}")

    hyp: Optional[bool] = None
    if shape.canonical and t == shape.r:
        hyp = hypothesis_check("thm15", clique_size, shape.r, k, shape.sizes) or hypothesis_check(
            "thm16", clique_size, shape.r, k, shape.sizes
        )

    host = complete(shape)
    if k == 1 and clique_size >= t:
        # any t-clique is forbidden outright, so no clique of size >= t survives
        return ExtremalReport(
            shape=shape,
            k=k,
            t=t,
            objective="cliques",
            clique_size=clique_size,
            optimum=0,
            witness=MultipartiteHypergraph.empty(shape),
            nodes_explored=0,
            conclusive=True,
            hypothesis_ok=hyp,
        )

    outcome, host = _solve_extremal(shape, k, t, clique_size, node_budget)
    return ExtremalReport(
        shape=shape,
        k=k,
        t=t,
        objective="cliques",
        clique_size=clique_size,
        optimum=outcome.optimum,
        witness=_mask_to_graph(host, outcome.witness_mask),
        nodes_explored=outcome.nodes,
        conclusive=outcome.conclusive,
        hypothesis_ok=hyp,
    )
