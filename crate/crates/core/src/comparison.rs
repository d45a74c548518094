//! Classical graph metrics, the Frobenius-norm matrix signature, similarity
//! testing, and the non-isomorphism certificate.

use std::fmt;

use serde::Serialize;

use crate::graph::Graph;
use crate::invariants::average_distance;
use crate::matrix::{build_unsorted, neighbor_matrix, sort_rows, NeighborMatrix};

/// Default vertex-count cap for the exhaustive s_max search.
pub const DEFAULT_SMAX_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComparisonError {
    /// Pearson degree correlation needs at least one edge.
    EmptyGraph,
}

impl fmt::Display for ComparisonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonError::EmptyGraph => {
                write!(f, "requires a graph with at least one edge")
            }
        }
    }
}

impl std::error::Error for ComparisonError {}

/// Average local clustering and transitivity.
///
/// Local clustering of a vertex is the edge density among its neighbors (0
/// for degree below 2); transitivity is 3 * triangles / connected triples,
/// 0 when there are no triples.
pub fn clustering(g: &Graph) -> (f64, f64) {
    let n = g.vertex_count();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mut local_sum = 0.0;
    let mut closed_triples = 0u64; // sum over vertices of edges among neighbors
    let mut triples = 0u64;
    for v in 0..n {
        let neighbors = g.neighbors(v);
        let d = neighbors.len() as u64;
        let mut among = 0u64;
        for (idx, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[idx + 1..] {
                if g.has_edge(a, b) {
                    among += 1;
                }
            }
        }
        closed_triples += among;
        triples += d * d.saturating_sub(1) / 2;
        if d >= 2 {
            local_sum += among as f64 / (d * (d - 1) / 2) as f64;
        }
    }
    let average_local = local_sum / n as f64;
    // 3 * triangles = closed_triples, since each triangle closes a triple at
    // each of its three vertices
    let transitivity = if triples == 0 {
        0.0
    } else {
        closed_triples as f64 / triples as f64
    };
    (average_local, transitivity)
}

/// Newman degree assortativity over edge endpoint degrees, computed with
/// exact integer sums so regular graphs yield an exact zero variance and
/// stars an exact -1. Returns `Ok(None)` when the endpoint-degree variance
/// is zero (the coefficient is undefined), `Err` on an edgeless graph.
pub fn pearson_degree_correlation(g: &Graph) -> Result<Option<f64>, ComparisonError> {
    if g.edge_count() == 0 {
        return Err(ComparisonError::EmptyGraph);
    }
    let m = g.edge_count() as i128;
    let mut prod = 0i128; // sum of d_u * d_v
    let mut lin = 0i128; // sum of d_u + d_v
    let mut sq = 0i128; // sum of d_u^2 + d_v^2
    for (u, v) in g.edges() {
        let du = g.degree(u) as i128;
        let dv = g.degree(v) as i128;
        prod += du * dv;
        lin += du + dv;
        sq += du * du + dv * dv;
    }
    let numerator = 4 * m * prod - lin * lin;
    let denominator = 2 * m * sq - lin * lin;
    if denominator == 0 {
        return Ok(None);
    }
    Ok(Some(numerator as f64 / denominator as f64))
}

/// The s-metric and, when determinable, its normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SMetric {
    /// Sum over edges of endpoint degree products.
    pub value: u64,
    /// `value / s_max` over all simple graphs with the same degree sequence;
    /// 1 for regular graphs (no degree variability in the background set),
    /// `None` when the graph exceeds the brute-force bound.
    pub normalized: Option<f64>,
}

fn s_metric_value(g: &Graph) -> u64 {
    g.edges()
        .map(|(u, v)| g.degree(u) as u64 * g.degree(v) as u64)
        .sum()
}

/// Exhaustive maximum of the s-metric over simple graphs realizing the given
/// non-increasing degree sequence, by backtracking over vertex pairs with
/// remaining-degree pruning. Exponential in the worst case; callers cap n.
fn max_s_metric_over_realizations(degrees: &[u32]) -> u64 {
    let n = degrees.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut rem: Vec<u32> = degrees.to_vec();
    let mut best = 0u64;

    fn recurse(
        idx: usize,
        pairs: &[(usize, usize)],
        degrees: &[u32],
        rem: &mut [u32],
        current: u64,
        best: &mut u64,
    ) {
        if idx == pairs.len() {
            if rem.iter().all(|&r| r == 0) {
                *best = (*best).max(current);
            }
            return;
        }
        let (i, j) = pairs[idx];
        let n = rem.len();
        // everything before row i must already be satisfied
        if j == i + 1 && i > 0 && rem[i - 1] != 0 {
            return;
        }
        // vertex i has only the pairs (i, j..n) left
        if rem[i] as usize > n - j {
            return;
        }
        if rem[i] > 0 && rem[j] > 0 {
            rem[i] -= 1;
            rem[j] -= 1;
            recurse(
                idx + 1,
                pairs,
                degrees,
                rem,
                current + degrees[i] as u64 * degrees[j] as u64,
                best,
            );
            rem[i] += 1;
            rem[j] += 1;
        }
        // skipping (i, j) is only viable if vertex i can still be satisfied
        if (rem[i] as usize) < n - j {
            recurse(idx + 1, pairs, degrees, rem, current, best);
        }
    }

    recurse(0, &pairs, degrees, &mut rem, 0, &mut best);
    best
}

/// s-metric with normalization: regular graphs short-circuit to 1; otherwise
/// s_max is found by exhaustive realization search when `n <= smax_bound`,
/// and the normalization is reported unavailable beyond that.
pub fn s_metric(g: &Graph, smax_bound: usize) -> SMetric {
    let value = s_metric_value(g);
    if g.is_regular() {
        return SMetric {
            value,
            normalized: Some(1.0),
        };
    }
    if g.vertex_count() <= smax_bound {
        let degrees: Vec<u32> = g.degree_sequence().iter().map(|&d| d as u32).collect();
        let s_max = max_s_metric_over_realizations(&degrees);
        let normalized = if s_max == 0 {
            None
        } else {
            Some(value as f64 / s_max as f64)
        };
        return SMetric { value, normalized };
    }
    SMetric {
        value,
        normalized: None,
    }
}

/// Square root of the sum of squared entries: the scalar signature.
pub fn frobenius_norm(x: &NeighborMatrix) -> f64 {
    x.rows()
        .flat_map(|row| row.iter())
        .map(|&e| {
            let e = f64::from(e);
            e * e
        })
        .sum::<f64>()
        .sqrt()
}

/// Equal distance distributions: after right-padding the narrower matrix
/// with zero columns, the sorted matrices agree entry-wise.
pub fn similar(a: &NeighborMatrix, b: &NeighborMatrix) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let k = a.k().max(b.k());
    for r in 0..a.n() {
        let ra = a.row(r);
        let rb = b.row(r);
        for j in 0..k {
            if ra.get(j).copied().unwrap_or(0) != rb.get(j).copied().unwrap_or(0) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the certificate: either a proof of non-isomorphism or a refusal
/// to decide. Equal neighbor matrices never imply isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonIsoVerdict {
    NotIsomorphic,
    Inconclusive,
}

impl fmt::Display for NonIsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsoVerdict::NotIsomorphic => write!(f, "not_isomorphic"),
            NonIsoVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Non-isomorphism certificate: vertex counts, edge counts, or sorted
/// neighbor matrices that differ prove non-isomorphism; anything else is
/// inconclusive.
pub fn noniso_certificate(g: &Graph, h: &Graph) -> NonIsoVerdict {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return NonIsoVerdict::NotIsomorphic;
    }
    if !similar(&neighbor_matrix(g), &neighbor_matrix(h)) {
        return NonIsoVerdict::NotIsomorphic;
    }
    NonIsoVerdict::Inconclusive
}

/// The classical per-graph metrics of the comparison block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalMetrics {
    pub average_local_clustering: f64,
    pub transitivity: f64,
    /// `None` marks the undefined case (zero endpoint-degree variance, or no
    /// edges at all).
    pub pearson_degree_correlation: Option<f64>,
    pub s_metric: u64,
    /// `None` marks "unavailable" (vertex count beyond the s_max bound).
    pub normalized_s_metric: Option<f64>,
}

pub fn classical_metrics(g: &Graph, smax_bound: usize) -> ClassicalMetrics {
    let (average_local_clustering, transitivity) = clustering(g);
    let pearson = pearson_degree_correlation(g).unwrap_or(None);
    let s = s_metric(g, smax_bound);
    ClassicalMetrics {
        average_local_clustering,
        transitivity,
        pearson_degree_correlation: pearson,
        s_metric: s.value,
        normalized_s_metric: s.normalized,
    }
}

/// Per-graph side of a comparison: matrix dimensions, norm, classical
/// metrics, and average distance (`None` when disconnected).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphMetricsBlock {
    pub n: usize,
    pub k: usize,
    pub frobenius_norm: f64,
    pub metrics: ClassicalMetrics,
    pub average_distance: Option<f64>,
}

pub fn metrics_block(g: &Graph, smax_bound: usize) -> GraphMetricsBlock {
    let unsorted = build_unsorted(g);
    let sorted = sort_rows(&unsorted);
    GraphMetricsBlock {
        n: unsorted.n(),
        k: unsorted.k(),
        frobenius_norm: frobenius_norm(&sorted),
        metrics: classical_metrics(g, smax_bound),
        average_distance: average_distance(&unsorted).ok(),
    }
}

/// Pairwise side of a comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseComparison {
    pub similar: bool,
    pub verdict: NonIsoVerdict,
    /// Frobenius norm of the difference of the zero-padded sorted matrices;
    /// only defined for equal vertex counts (rows align after sorting).
    pub frobenius_distance: Option<f64>,
    /// Absolute difference of the two Frobenius norms; always available.
    pub norm_difference: f64,
}

/// Frobenius distance between zero-padded sorted matrices of equal row count.
fn padded_frobenius_distance(a: &NeighborMatrix, b: &NeighborMatrix) -> f64 {
    debug_assert_eq!(a.n(), b.n());
    let k = a.k().max(b.k());
    let mut sum = 0.0;
    for r in 0..a.n() {
        let ra = a.row(r);
        let rb = b.row(r);
        for j in 0..k {
            let d = f64::from(ra.get(j).copied().unwrap_or(0))
                - f64::from(rb.get(j).copied().unwrap_or(0));
            sum += d * d;
        }
    }
    sum.sqrt()
}

/// Full comparison report for a pair of graphs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub left: GraphMetricsBlock,
    pub right: GraphMetricsBlock,
    pub pairwise: PairwiseComparison,
}

pub fn compare(g: &Graph, h: &Graph, smax_bound: usize) -> ComparisonReport {
    let left = metrics_block(g, smax_bound);
    let right = metrics_block(h, smax_bound);
    let xg = neighbor_matrix(g);
    let xh = neighbor_matrix(h);
    let frobenius_distance = if g.vertex_count() == h.vertex_count() {
        Some(padded_frobenius_distance(&xg, &xh))
    } else {
        None
    };
    let pairwise = PairwiseComparison {
        similar: similar(&xg, &xh),
        verdict: noniso_certificate(g, h),
        frobenius_distance,
        norm_difference: (left.frobenius_norm - right.frobenius_norm).abs(),
    };
    ComparisonReport {
        left,
        right,
        pairwise,
    }
}
