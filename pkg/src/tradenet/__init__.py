"""Trade-network toolkit: share networks, partition metrics, spanning trees.

From a per-country export-profile corpus this package builds two weighted
one-mode projections of bipartite graphs, the destination share network
(countries linked by mutual leading export destinations) and the commodity
share network (countries linked by mutual leading export commodities),
computes partition-averaged topological coefficients on them, and extracts
minimal spanning trees via nearest-neighbor single-linkage clustering.
"""

from .bipartite import (
    BipartiteGraph,
    WeightedGraph,
    build_bipartite,
    edge_list_csv,
    graph_dot,
    link_weight,
    project,
)
from .dataset import (
    COMMODITY_AXIS,
    COMMODITY_CLUSTER_ORDER,
    COMMODITY_TAXONOMY,
    DESTINATION_AXIS,
    DESTINATION_CLUSTER_ORDER,
    DESTINATION_TAXONOMY,
    ORGANIZATION_ORDER,
    ORGANIZATIONS,
    CountryRecord,
    Dataset,
    DatasetError,
    classify_commodity,
    classify_destination,
    frequency_histogram,
    load_dataset,
    parse_dataset,
    partition_labels,
    serialize_dataset,
    taxonomy_order,
    validate,
)
from .metrics import (
    NetworkSummary,
    NodeMetrics,
    PartitionSummary,
    betweenness,
    connected_components,
    density,
    diameter,
    local_clustering,
    network_summary,
    node_metrics,
    partition_summaries,
    unweighted_degree,
    weighted_degree,
)
from .mst import (
    Dendrogram,
    DistanceMatrix,
    MergeStep,
    SpanningTree,
    dendrogram_csv,
    distance_matrix,
    mst_edges,
    single_linkage,
    tree_edge_csv,
    tree_stats,
)

__version__ = "0.1.0"
