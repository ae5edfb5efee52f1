"""Exact fractional coloring toolkit for bounded-degree graphs.

Rational arithmetic end to end: fractional chromatic numbers come from an
exact simplex over Fractions with verified primal and dual certificates,
colorings are checked combinatorially, and the bounded-degree pipeline
emits fold colorings whose ratio beats the trivial degree bound.
"""

from __future__ import annotations

from .bounds import (
    CATEGORIES,
    ClassificationVerdict,
    GapRecord,
    classify,
    cut2_upper_bound,
    find_two_cuts,
    gap_sweep,
    molloy_reed_bound,
    read_checkpoint,
    sweep_summary,
)
from .budget import DEFAULT_NODE_BUDGET, NodeBudget
from .cliques import (
    chromatic_number,
    clique_graph_components,
    clique_number,
    cliques_of_size,
    degeneracy_order,
    greedy_coloring,
    independence_number,
    is_k_colorable,
    max_clique,
    max_independent_set,
    max_independent_sets,
    max_weight_independent_set,
    maximal_independent_sets,
)
from .errors import (
    AssemblyConflictError,
    ChifracError,
    ClassInvalidError,
    Graph6FormatError,
    GraphInputError,
    HypothesisViolationError,
    NoValidSelectionError,
    NotConnectedError,
    NotFoundError,
    NotFourColorableError,
    NotSeparatorError,
    NotVertexTransitiveError,
    ResourceLimitError,
)
from .graph import (
    ContractionResult,
    Graph,
    blocks,
    contract,
    contract_pair,
    contract_triple,
    cycle_power,
    delta,
    edges_between,
    is_connected,
    is_gallai_forest,
    is_gallai_tree,
    make_complete,
    make_cycle,
    make_path,
    strong_product,
)
from .graph6 import (
    decode_graph6,
    encode_graph6,
    format_edge_list,
    parse_edge_list,
    read_graph6,
)
from .iso import (
    contains_induced,
    contains_subgraph,
    find_induced_copies,
    find_isomorphism,
    find_subgraph_copies,
    is_isomorphic,
    is_vertex_transitive,
)
from .lp import (
    FoldColoring,
    FractionalSolution,
    chi_b,
    chi_f_exact,
    chi_f_vertex_transitive,
    find_ab_coloring,
    fold_coloring_from_json,
    fold_coloring_to_json,
    format_rational,
    fractional_solution_to_json,
    parse_rational,
    verify_fold_coloring,
    verify_fractional_solution,
)
from .patterns import (
    CATALOG,
    HittingFamily,
    LemmaReport,
    catalog_graph,
    catalog_names,
    check_lemma_hypotheses,
    contains_forbidden_pattern,
    hitting_independent_set,
    lemma_family,
    stable_set_meeting_max_cliques,
    stable_transversal_of_clique_partition,
)
from .pipeline import (
    AuxiliaryGraph,
    ClassColoring,
    ClassGraph,
    Selection,
    assemble_fold_coloring,
    build_auxiliary,
    build_class_graph,
    four_color_class_graph,
    greedy_class_coloring,
    neighborhoods,
    run_pipeline,
    select_S,
    select_all,
)

__version__ = "0.1.0"
