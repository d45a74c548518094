//! Shared fixtures for the integration suites: the worked-example graphs,
//! the analyzed family corpus with its reference values, seeded random
//! graphs, and the brute-force oracles the suites check against.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nbrmat_core::graph::{generate, FamilySpec, Graph};

/// The 6-vertex, 8-edge worked example: a pendant path hanging off a K_4.
pub fn example_six() -> Graph {
    Graph::from_edges(
        6,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// 8-vertex graph whose vertices 0 and 1 share a matrix row yet lie in
/// different orbits (two internally-disjoint paths join 0 to vertex 6).
pub fn row_tie_graph() -> Graph {
    Graph::from_edges(
        8,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (3, 6),
            (4, 7),
        ],
    )
    .unwrap()
}

/// 13-vertex tree whose vertices 1 and 2 share a matrix row yet lie in
/// different orbits (their two distance-2 leaves hang differently).
pub fn row_tie_tree() -> Graph {
    Graph::from_edges(
        13,
        [
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 7),
            (2, 8),
            (4, 9),
            (4, 10),
            (7, 11),
            (8, 12),
        ],
    )
    .unwrap()
}

/// The two 12-vertex graphs built from a K_8 plus four degree-4 vertices
/// whose attachment patterns give equal neighbor matrices without
/// isomorphism. Vertices 0..8 are the clique; attachment lists use 1-based
/// clique numbering.
pub fn counterexample_pair() -> (Graph, Graph) {
    let n = 8usize;
    let build = |attachments: [[usize; 4]; 4]| {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        for (extra, nbrs) in attachments.iter().enumerate() {
            for &x in nbrs {
                edges.push((n + extra, x - 1));
            }
        }
        Graph::from_edges(n + 4, edges).unwrap()
    };
    let g = build([
        [n, n - 1, 3, 4],
        [1, 2, 3, 4],
        [n, n - 1, n - 2, n - 3],
        [1, 2, n - 2, n - 3],
    ]);
    let h = build([
        [n, 2, 3, 4],
        [1, 2, 3, 4],
        [n, n - 1, n - 2, n - 3],
        [1, n - 1, n - 2, n - 3],
    ]);
    (g, h)
}

/// One analyzed row: the family instance plus its reference dimension,
/// Frobenius norm, and average local clustering.
pub struct AnalyzedRow {
    pub name: &'static str,
    pub graph: Graph,
    pub dimension: (usize, usize),
    pub frobenius: f64,
    pub avg_clustering: f64,
}

/// The fourteen analyzed family instances with their reference values. The
/// P_16 row's reference data (dimension 15 x 14, norm 17.55) is that of a
/// 15-vertex path, so that row is bound to path(15) here.
pub fn analyzed_rows() -> Vec<AnalyzedRow> {
    let row = |name, spec: FamilySpec, dimension, frobenius, avg_clustering| AnalyzedRow {
        name,
        graph: generate(&spec).unwrap(),
        dimension,
        frobenius,
        avg_clustering,
    };
    vec![
        row(
            "B_7,7",
            FamilySpec::Barbell { clique: 7, path: 7 },
            (21, 10),
            43.36,
            0.640,
        ),
        row(
            "W_1,20",
            FamilySpec::Wheel { rim: 20 },
            (21, 2),
            79.75,
            0.640,
        ),
        row(
            "K_1,15",
            FamilySpec::Star { leaves: 15 },
            (16, 2),
            56.39,
            0.0,
        ),
        row("P_16", FamilySpec::Path { n: 15 }, (15, 14), 17.55, 0.0),
        row(
            "W_1,31",
            FamilySpec::Wheel { rim: 31 },
            (32, 2),
            159.8,
            0.648,
        ),
        row(
            "B_10,12",
            FamilySpec::Barbell {
                clique: 10,
                path: 12,
            },
            (32, 15),
            77.05,
            0.613,
        ),
        row("K_32", FamilySpec::Complete { n: 32 }, (32, 1), 175.4, 1.0),
        row(
            "K_16,16",
            FamilySpec::CompleteBipartite {
                left: 16,
                right: 16,
            },
            (32, 2),
            124.1,
            0.0,
        ),
        row(
            "CL_32",
            FamilySpec::CircularLadder { n: 32 },
            (32, 9),
            60.66,
            0.0,
        ),
        row("C_32", FamilySpec::Cycle { n: 32 }, (32, 16), 44.18, 0.0),
        row("H_32", FamilySpec::Hypercube { n: 32 }, (32, 5), 89.62, 0.0),
        row(
            "L_21,11",
            FamilySpec::Lollipop {
                clique: 21,
                path: 11,
            },
            (32, 12),
            116.0,
            0.653,
        ),
        row("P_32", FamilySpec::Path { n: 32 }, (32, 31), 38.37, 0.0),
        row(
            "K_1,31",
            FamilySpec::Star { leaves: 31 },
            (32, 2),
            170.0,
            0.0,
        ),
    ]
}

/// Erdos-Renyi style graph from a fixed seed; used only as test input.
pub fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exhaustive isomorphism test by backtracking over vertex images, pruned by
/// degree and adjacency consistency. Independent of the neighbor matrix.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return false;
    }
    // map high-degree vertices first; their candidate sets are usually small
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    fn extend(
        idx: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        mapping: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for u in 0..h.vertex_count() {
            if used[u] || h.degree(u) != g.degree(v) {
                continue;
            }
            let consistent = order[..idx]
                .iter()
                .all(|&w| g.has_edge(v, w) == h.has_edge(u, mapping[w]));
            if !consistent {
                continue;
            }
            mapping[v] = u;
            used[u] = true;
            if extend(idx + 1, order, g, h, mapping, used) {
                return true;
            }
            used[u] = false;
        }
        false
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, g, h, &mut mapping, &mut used)
}

/// Orbit partition by exhaustive automorphism enumeration (all n!
/// permutations); only usable for tiny graphs.
pub fn orbits_by_brute_force(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    assert!(n <= 8, "factorial enumeration only at tiny n");
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }

    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let is_automorphism = g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]));
        if is_automorphism {
            for (v, &image) in perm.iter().enumerate() {
                let a = find(&mut parent, v);
                let b = find(&mut parent, image);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let root = find(&mut parent, v);
        classes.entry(root).or_default().push(v);
    }
    classes.into_values().collect()
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}
