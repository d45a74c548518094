//! Neighbor-matrix graph analysis.
//!
//! The neighbor matrix of a simple graph is the n x k integer matrix whose
//! `(i, j)` entry counts the vertices at exact geodesic distance `j` from
//! vertex `i`, columns spanning distances 1 through the diameter. This crate
//! builds it by three independent methods, extracts the classical invariants
//! it encodes, compares graphs through matrix signatures, certifies
//! non-isomorphism, and ranks vertices by how much their removal disturbs
//! the distance distribution.

pub mod comparison;
pub mod distance;
pub mod graph;
pub mod influence;
pub mod invariants;
pub mod matrix;

pub use comparison::{
    classical_metrics, clustering, compare, frobenius_norm, metrics_block, noniso_certificate,
    pearson_degree_correlation, s_metric, similar, ClassicalMetrics, ComparisonError,
    ComparisonReport, GraphMetricsBlock, NonIsoVerdict, PairwiseComparison, SMetric,
    DEFAULT_SMAX_BOUND,
};
pub use distance::{
    all_pairs_distances, components, eccentricities, ComponentLabeling, DistanceMatrix,
    EccentricityVector,
};
pub use graph::{
    generate, parse_edge_list, to_edge_list, FamilySpec, Graph, GraphError, ParsedGraph, VertexId,
};
pub use influence::{
    distance_signature, influence_score, rank_vertices, DistanceSignature, InfluenceConfig,
    InfluenceError, InfluenceRanking, LostPairWeight, Norm, RankedVertex,
};
pub use invariants::{
    average_distance, closeness, count_components, degree_stats, invariant_report, is_connected,
    periphery, power_edge_counts, radius_center, row_partition, DegreeStats, InvariantError,
    InvariantReport, RowPartition,
};
pub use matrix::{
    build_from_distances, build_unsorted, build_via_boolean_matrices, build_via_graph_powers,
    neighbor_matrix, permuted_equivalence_check, power_graph, sort_rows, MatrixJson,
    NeighborMatrix, NeighborMatrixUnsorted, PowerGraph,
};
