"""Adaptive causal DAG discovery under a round budget."""

from .chordal import (
    CliqueTree,
    NotChordalError,
    Peo,
    build_clique_tree,
    clique_tree_separation_check,
    lex_bfs_peo,
    max_clique_size,
    maximal_cliques,
    min_vertex_cover_chordal,
)
from .graphs import (
    ChainComponent,
    GraphError,
    InternalInvariantError,
    InvalidInputError,
    MixedGraph,
    NotChainGraphError,
    chain_components,
    has_partially_directed_cycle,
    read_edgelist,
    skeleton,
    to_dot,
    topological_order,
    v_structures,
    write_edgelist,
)
from .meek import (
    InconsistentOrientationError,
    OrientationDelta,
    has_consistent_extension,
    meek_closure,
)
from .oracle import (
    EssentialState,
    HiddenDag,
    InterventionSet,
    intervene,
    observational_essential,
    recovered_arcs,
    relevant_nodes,
    unoriented_subdag,
)
from .partition import TreePartition, balanced_tree_partition, nested_ceiling_div
from .search import (
    LabelingScheme,
    PathAdversary,
    SearchConfig,
    SearchTranscript,
    adaptive_search,
    adaptive_search_bounded,
    build_labeling,
    labeling_separating_system,
    path_search,
    run_search,
    run_with_checks,
    separating_system_nonadaptive,
    tree_search,
)
from .synth import (
    GeneratorConfig,
    generate,
    generate_er_styled,
    generate_gnp_union_tree,
    generate_tree_like,
)
from .verify import (
    CoveredEdgeForest,
    bounded_verification_lower_bound,
    brute_force_min_verifying_set,
    clique_sum_lower_bound,
    covered_edges,
    verification_number_atomic,
)

__version__ = "0.1.0"
