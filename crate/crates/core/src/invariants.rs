//! Graph quantities extracted from the neighbor matrix alone: connectivity,
//! component count, radius/center/periphery, closeness, average distance,
//! degree statistics, power-graph edge counts, and the row partition.
//!
//! Every extraction here has an independent oracle in the distance engine;
//! the test suites hold them equal on the whole corpus.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::graph::VertexId;
use crate::matrix::NeighborMatrixUnsorted;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantError {
    /// A connected-only quantity was requested for a disconnected matrix.
    DisconnectedInput,
    /// The matrix cannot have come from a simple graph.
    InconsistentMatrix(String),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::DisconnectedInput => write!(f, "requires connected graph"),
            InvariantError::InconsistentMatrix(why) => write!(f, "inconsistent matrix: {why}"),
        }
    }
}

impl std::error::Error for InvariantError {}

/// Connectivity test: the entries sum to n(n-1) exactly when every ordered
/// vertex pair is at some finite distance.
pub fn is_connected(x: &NeighborMatrixUnsorted) -> bool {
    let n = x.n() as u64;
    x.total() == n * (n - 1)
}

/// Component count from row sums alone: a component of order d+1 contributes
/// d+1 rows summing to d, so counting rows per sum and dividing gives the
/// number of components of each order. Rows summing to 0 (isolated vertices)
/// are included so the count covers them too.
pub fn count_components(x: &NeighborMatrixUnsorted) -> usize {
    let mut per_sum: BTreeMap<u64, usize> = BTreeMap::new();
    for i in 0..x.n() {
        *per_sum.entry(x.row_sum(i)).or_insert(0) += 1;
    }
    per_sum
        .into_iter()
        .map(|(d, count)| count / (d as usize + 1))
        .sum()
}

fn require_connected(x: &NeighborMatrixUnsorted) -> Result<(), InvariantError> {
    if is_connected(x) {
        Ok(())
    } else {
        Err(InvariantError::DisconnectedInput)
    }
}

/// Radius and center from column supports: the radius is the last column with
/// no zero entry, and the center collects the rows whose support ends exactly
/// there. Requires a connected matrix.
pub fn radius_center(x: &NeighborMatrixUnsorted) -> Result<(usize, Vec<VertexId>), InvariantError> {
    require_connected(x)?;
    if x.k() == 0 {
        // single vertex: radius 0, the vertex is its own center
        return Ok((0, (0..x.n()).collect()));
    }
    let radius = (1..=x.k())
        .filter(|&j| (0..x.n()).all(|i| x.row(i)[j - 1] != 0))
        .max()
        .expect("connected matrix has a full first column");
    let center = (0..x.n())
        .filter(|&i| {
            let row = x.row(i);
            row[radius - 1] != 0 && row[radius..].iter().all(|&e| e == 0)
        })
        .collect();
    Ok((radius, center))
}

/// Periphery from the last column: vertices with a neighbor at the maximum
/// distance. Requires a connected matrix.
pub fn periphery(x: &NeighborMatrixUnsorted) -> Result<Vec<VertexId>, InvariantError> {
    require_connected(x)?;
    if x.k() == 0 {
        return Ok((0..x.n()).collect());
    }
    Ok((0..x.n()).filter(|&i| x.row(i)[x.k() - 1] != 0).collect())
}

/// Distance-weighted row sum: sum over columns of (distance * count).
fn weighted_row_sum(x: &NeighborMatrixUnsorted, i: VertexId) -> u64 {
    x.row(i)
        .iter()
        .enumerate()
        .map(|(j, &count)| (j as u64 + 1) * u64::from(count))
        .sum()
}

/// Closeness centrality per vertex: (n-1) over the sum of distances from the
/// vertex, both read off its row. Requires a connected matrix. The singleton
/// graph gets 0 by convention.
pub fn closeness(x: &NeighborMatrixUnsorted) -> Result<Vec<f64>, InvariantError> {
    require_connected(x)?;
    let n = x.n();
    Ok((0..n)
        .map(|i| {
            let denom = weighted_row_sum(x, i);
            if denom == 0 {
                0.0
            } else {
                (n as u64 - 1) as f64 / denom as f64
            }
        })
        .collect())
}

/// Average distance over ordered vertex pairs; exact integer sums with a
/// single final division. Requires a connected matrix.
pub fn average_distance(x: &NeighborMatrixUnsorted) -> Result<f64, InvariantError> {
    require_connected(x)?;
    let n = x.n() as u64;
    if n <= 1 {
        return Ok(0.0);
    }
    let weighted: u64 = (0..x.n()).map(|i| weighted_row_sum(x, i)).sum();
    Ok(weighted as f64 / (n * (n - 1)) as f64)
}

/// Degree sequence, edge count, and density, all from the first column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    /// Non-increasing.
    pub degree_sequence: Vec<u32>,
    pub edge_count: u64,
    pub density: f64,
}

pub fn degree_stats(x: &NeighborMatrixUnsorted) -> Result<DegreeStats, InvariantError> {
    let n = x.n();
    let degrees: Vec<u32> = (0..n)
        .map(|i| x.row(i).first().copied().unwrap_or(0))
        .collect();
    let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    if !sum.is_multiple_of(2) {
        return Err(InvariantError::InconsistentMatrix(format!(
            "first column sums to {sum}, which is odd"
        )));
    }
    let edge_count = sum / 2;
    let mut degree_sequence = degrees;
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let possible = n as u64 * (n as u64).saturating_sub(1) / 2;
    let density = if possible == 0 {
        0.0
    } else {
        edge_count as f64 / possible as f64
    };
    Ok(DegreeStats {
        degree_sequence,
        edge_count,
        density,
    })
}

/// Edge counts of the power graphs G^s for s = 1..=k: each column sum is
/// twice the number of pairs at that exact distance, so the running half-sum
/// is |E(G^s)|. Assumes a valid matrix (column sums even).
pub fn power_edge_counts(x: &NeighborMatrixUnsorted) -> Vec<u64> {
    let mut running = 0u64;
    (0..x.k())
        .map(|j| {
            running += x.column_sum(j);
            running / 2
        })
        .collect()
}

/// Vertices grouped by exact row equality: a necessary-condition refinement
/// of the orbit partition (never finer than it). Classes are ordered by
/// their row in reverse lexicographic order; members ascend by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowPartition {
    classes: Vec<Vec<VertexId>>,
}

impl RowPartition {
    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn row_partition(x: &NeighborMatrixUnsorted) -> RowPartition {
    let mut by_row: BTreeMap<&[u32], Vec<VertexId>> = BTreeMap::new();
    for i in 0..x.n() {
        by_row.entry(x.row(i)).or_default().push(i);
    }
    let classes = by_row.into_values().rev().collect();
    RowPartition { classes }
}

/// Everything the matrix yields, in one serializable report. Connected-only
/// fields are `None` for disconnected inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub connected: bool,
    pub component_count: usize,
    /// Largest finite distance (the diameter when connected).
    pub diameter: usize,
    pub radius: Option<usize>,
    pub center: Option<Vec<VertexId>>,
    pub periphery: Option<Vec<VertexId>>,
    pub closeness: Option<Vec<f64>>,
    pub average_distance: Option<f64>,
    pub degree_sequence: Vec<u32>,
    pub edge_count: u64,
    pub density: f64,
    pub column_sums: Vec<u64>,
    pub power_edge_counts: Vec<u64>,
}

pub fn invariant_report(x: &NeighborMatrixUnsorted) -> Result<InvariantReport, InvariantError> {
    let connected = is_connected(x);
    let stats = degree_stats(x)?;
    let (radius, center) = match radius_center(x) {
        Ok((r, c)) => (Some(r), Some(c)),
        Err(InvariantError::DisconnectedInput) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(InvariantReport {
        connected,
        component_count: count_components(x),
        diameter: x.k(),
        radius,
        center,
        periphery: periphery(x).ok(),
        closeness: closeness(x).ok(),
        average_distance: average_distance(x).ok(),
        degree_sequence: stats.degree_sequence,
        edge_count: stats.edge_count,
        density: stats.density,
        column_sums: (0..x.k()).map(|j| x.column_sum(j)).collect(),
        power_edge_counts: power_edge_counts(x),
    })
}
