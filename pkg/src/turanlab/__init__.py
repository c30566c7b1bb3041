"""Workbench for disjoint-clique extremal problems on multipartite hosts:
closed-form values, extremal constructions, exact search oracles, shifting,
the rational LP bound and rainbow matchings.
"""

from .hypercore import (
    CanonicalForm,
    Comparison,
    Edge,
    InducedSubgraph,
    MultipartiteHypergraph,
    Shape,
    Vertex,
    canonicalize,
    complete,
    degree,
    delete,
    edge_precedes,
    gamma,
    hypergraph_from_json,
    hypergraph_to_json,
    induced,
    link,
    link_pair,
    make_edge,
    vertex_precedes,
)
from .constructions import (
    MatchingPartition,
    g_construction,
    h1_construction,
    h2_construction,
    matching_partition,
)
from .formulas import (
    FormulaResult,
    emc_value,
    evaluate,
    f_value,
    g_value,
    h_value,
    hypothesis_check,
    lemma21_value,
    rainbow_bound,
    thm11_value,
    thm12_value,
)
from .solvers import (
    CliquePacking,
    ExtremalReport,
    clique_list,
    clique_packing_number,
    count_cliques,
    count_cliques_by_support,
    is_free,
    matching_number,
    max_cliques_free,
    max_edges_free,
)
from .shifting import (
    ShiftTrace,
    downward_closed,
    is_stable,
    shift,
    shift_potential,
    stabilize,
)
from .lpbound import (
    FeasibilityResult,
    LpInstance,
    build_p1,
    build_p2,
    feasibility_check,
    lp_optimum,
    p1_budget,
    p2_budget,
)
from .rainbow import (
    ColoredHypergraph,
    find_rainbow_matching,
    is_fk_colored,
    lift_rainbow_matching,
    link_clique_coloring,
)

__version__ = "0.1.0"
