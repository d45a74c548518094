//! Exact all-pairs geodesic distances, components, and eccentricities via
//! per-source breadth-first search.

use rayon::prelude::*;
use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};

/// Marker for "not reached from this source" while a BFS row is in flight.
const UNREACHED: u32 = u32::MAX;

/// n x n matrix of exact geodesic lengths. Cross-component entries are 0;
/// a [`ComponentLabeling`] disambiguates them from the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: VertexId, j: VertexId) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: VertexId) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest finite distance in the graph (0 for edgeless graphs). For a
    /// connected graph this is the diameter.
    pub fn max_finite(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

/// Per-vertex component ids (dense, by order of discovery) and component
/// orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    component: Vec<usize>,
    orders: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.orders.len()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component[v]
    }

    /// Number of vertices in component `c`.
    pub fn order(&self, c: usize) -> usize {
        self.orders[c]
    }

    /// Number of vertices in the component containing `v`.
    pub fn order_of(&self, v: VertexId) -> usize {
        self.orders[self.component[v]]
    }

    pub fn same_component(&self, u: VertexId, v: VertexId) -> bool {
        self.component[u] == self.component[v]
    }
}

/// Per-vertex eccentricity, computed within each vertex's own component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityVector {
    values: Vec<u32>,
}

impl EccentricityVector {
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.values[v]
    }
}

fn bfs_row(g: &Graph, source: VertexId, row: &mut [u32]) {
    row.fill(UNREACHED);
    row[source] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = row[u];
        for &v in g.neighbors(u) {
            if row[v] == UNREACHED {
                row[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    for d in row.iter_mut() {
        if *d == UNREACHED {
            *d = 0; // cross-component convention
        }
    }
}

/// Exact BFS distances from every source. Sources run in parallel; each row
/// is written independently, so output is identical for any worker count.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut data = vec![0u32; n * n];
    data.par_chunks_mut(n.max(1))
        .enumerate()
        .for_each(|(source, row)| {
            if source < n {
                bfs_row(g, source, row);
            }
        });
    DistanceMatrix { n, data }
}

/// BFS component labeling; ids are assigned in increasing order of each
/// component's smallest vertex.
pub fn components(g: &Graph) -> ComponentLabeling {
    let n = g.vertex_count();
    let mut component = vec![usize::MAX; n];
    let mut orders = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = orders.len();
        let mut size = 0usize;
        let mut queue = VecDeque::new();
        component[start] = id;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                if component[v] == usize::MAX {
                    component[v] = id;
                    queue.push_back(v);
                }
            }
        }
        orders.push(size);
    }
    ComponentLabeling { component, orders }
}

/// Eccentricities over each vertex's own component: `e(v) = max d(v, w)` for
/// `w` in the component of `v`. With the 0-for-disconnected convention this
/// is the row maximum.
pub fn eccentricities(d: &DistanceMatrix, c: &ComponentLabeling) -> EccentricityVector {
    let n = d.n();
    debug_assert!((0..n).all(|v| c.component_of(v) < c.count()));
    let values = (0..n)
        .map(|v| d.row(v).iter().copied().max().unwrap_or(0))
        .collect();
    EccentricityVector { values }
}
