//! Vertex influence: rank vertices by how much their removal disturbs the
//! graph's distance distribution, plus a penalty for severed vertex pairs.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::components;
use crate::graph::{Graph, VertexId};
use crate::matrix::{build_unsorted, NeighborMatrixUnsorted};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfluenceError {
    InvalidVertex {
        vertex: usize,
        n: usize,
    },
    /// Ranking needs at least two vertices.
    GraphTooSmall {
        n: usize,
    },
}

impl fmt::Display for InfluenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfluenceError::InvalidVertex { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            InfluenceError::GraphTooSmall { n } => {
                write!(f, "ranking requires at least 2 vertices, got {n}")
            }
        }
    }
}

impl std::error::Error for InfluenceError {}

/// Column sums of the neighbor matrix: entry j is twice the number of vertex
/// pairs at distance j + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSignature {
    counts: Vec<u64>,
}

impl DistanceSignature {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

pub fn distance_signature(x: &NeighborMatrixUnsorted) -> DistanceSignature {
    DistanceSignature {
        counts: (0..x.k()).map(|j| x.column_sum(j)).collect(),
    }
}

/// Norm applied to the padded signature difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
}

/// Weight applied to each severed intra-component pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LostPairWeight {
    /// The original graph's largest finite distance plus one: a severed pair
    /// counts as farther than any geodesic could have been.
    DiameterPlusOne,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceConfig {
    pub norm: Norm,
    pub lost_pair_weight: LostPairWeight,
}

impl Default for InfluenceConfig {
    fn default() -> Self {
        InfluenceConfig {
            norm: Norm::L1,
            lost_pair_weight: LostPairWeight::DiameterPlusOne,
        }
    }
}

fn signature_distance(a: &[u64], b: &[u64], norm: Norm) -> f64 {
    let len = a.len().max(b.len());
    let diff = (0..len).map(|j| {
        let x = a.get(j).copied().unwrap_or(0) as f64;
        let y = b.get(j).copied().unwrap_or(0) as f64;
        x - y
    });
    match norm {
        Norm::L1 => diff.map(f64::abs).sum(),
        Norm::L2 => diff.map(|d| d * d).sum::<f64>().sqrt(),
    }
}

/// Unordered intra-component pairs of `g` (excluding pairs containing `v`)
/// that are no longer connected in `g - v`.
fn severed_pairs(g: &Graph, v: VertexId, reduced: &Graph) -> u64 {
    let before = components(g);
    let after = components(reduced);
    let n = g.vertex_count();
    let mut severed = 0u64;
    for a in 0..n {
        if a == v {
            continue;
        }
        let a_new = if a > v { a - 1 } else { a };
        for b in a + 1..n {
            if b == v {
                continue;
            }
            let b_new = if b > v { b - 1 } else { b };
            if before.same_component(a, b) && !after.same_component(a_new, b_new) {
                severed += 1;
            }
        }
    }
    severed
}

/// Score shared by `influence_score` and `rank_vertices`: the base signature
/// and resolved weight are computed once by the caller.
fn score_against_base(g: &Graph, base: &DistanceSignature, w: f64, norm: Norm, v: VertexId) -> f64 {
    let reduced = g.remove_vertex(v);
    let sig = distance_signature(&build_unsorted(&reduced));
    signature_distance(base.counts(), sig.counts(), norm) + w * severed_pairs(g, v, &reduced) as f64
}

fn resolve_weight(cfg: &InfluenceConfig, k: usize) -> f64 {
    match cfg.lost_pair_weight {
        LostPairWeight::DiameterPlusOne => (k + 1) as f64,
        LostPairWeight::Fixed(w) => w,
    }
}

/// Influence of one vertex: the norm of the change in the distance signature
/// after removing it, plus `w` per severed pair.
pub fn influence_score(
    g: &Graph,
    v: VertexId,
    cfg: &InfluenceConfig,
) -> Result<f64, InfluenceError> {
    let n = g.vertex_count();
    if v >= n {
        return Err(InfluenceError::InvalidVertex { vertex: v, n });
    }
    let base_matrix = build_unsorted(g);
    let base = distance_signature(&base_matrix);
    let w = resolve_weight(cfg, base_matrix.k());
    Ok(score_against_base(g, &base, w, cfg.norm, v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedVertex {
    pub vertex: VertexId,
    pub score: f64,
}

/// All vertices by descending score; ties break by ascending vertex id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfluenceRanking {
    entries: Vec<RankedVertex>,
}

impl InfluenceRanking {
    pub fn entries(&self) -> &[RankedVertex] {
        &self.entries
    }

    pub fn top(&self) -> &RankedVertex {
        &self.entries[0]
    }

    pub fn score_of(&self, v: VertexId) -> f64 {
        self.entries
            .iter()
            .find(|e| e.vertex == v)
            .expect("vertex present in ranking")
            .score
    }
}

/// Scores every vertex (removals evaluated in parallel) and sorts. The
/// ranking is deterministic regardless of worker count: scores are collected
/// per vertex and the sort key is (score desc, vertex asc).
pub fn rank_vertices(g: &Graph, cfg: &InfluenceConfig) -> Result<InfluenceRanking, InfluenceError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(InfluenceError::GraphTooSmall { n });
    }
    let base_matrix = build_unsorted(g);
    let base = distance_signature(&base_matrix);
    let w = resolve_weight(cfg, base_matrix.k());
    let mut entries: Vec<RankedVertex> = (0..n)
        .into_par_iter()
        .map(|v| RankedVertex {
            vertex: v,
            score: score_against_base(g, &base, w, cfg.norm, v),
        })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.vertex.cmp(&b.vertex))
    });
    Ok(InfluenceRanking { entries })
}
