//! Simple undirected graphs: edge-list I/O and deterministic family generators.

use std::collections::HashMap;
use std::fmt;

/// Dense 0-based vertex index. External labels live in the graph's label table.
pub type VertexId = usize;

/// Errors from parsing, construction, and generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// A line of the form `a a` in an edge list.
    SelfLoop { line: usize, label: String },
    /// A line with more than two tokens.
    MalformedLine { line: usize, content: String },
    /// Programmatic edge endpoint outside `[0, n)`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// Programmatic self-loop edge.
    SelfLoopEdge { vertex: usize },
    /// A family generator was given an out-of-range parameter.
    InvalidFamilyParameter {
        family: &'static str,
        reason: String,
    },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { line, label } => {
                write!(
                    f,
                    "line {line}: self-loop at vertex `{label}` is not allowed"
                )
            }
            GraphError::MalformedLine { line, content } => {
                write!(
                    f,
                    "line {line}: expected one or two tokens, got `{content}`"
                )
            }
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            GraphError::SelfLoopEdge { vertex } => {
                write!(f, "self-loop at vertex {vertex} is not allowed")
            }
            GraphError::InvalidFamilyParameter { family, reason } => {
                write!(f, "invalid parameter for family `{family}`: {reason}")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// A simple undirected graph. Immutable after construction.
///
/// Vertices are dense 0-based indices; adjacency lists are kept sorted, with
/// no self-loops and no duplicate edges. A label table preserves external
/// vertex names for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    labels: Vec<String>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges are
    /// collapsed; self-loops are rejected. Labels default to the decimal index.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::from_labeled_edges(labels, edges)
    }

    /// Like [`Graph::from_edges`] with an explicit label table; `labels.len()`
    /// fixes the vertex count.
    pub fn from_labeled_edges<I>(labels: Vec<String>, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut edge_count = 0usize;
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoopEdge { vertex: u });
            }
            if adjacency[u].contains(&v) {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            labels,
            edge_count,
        })
    }

    /// Internal constructor from pre-validated adjacency lists.
    pub(crate) fn from_adjacency(adjacency: Vec<Vec<VertexId>>, labels: Vec<String>) -> Graph {
        debug_assert_eq!(adjacency.len(), labels.len());
        let mut edge_count = 0usize;
        for (u, list) in adjacency.iter().enumerate() {
            debug_assert!(
                list.windows(2).all(|w| w[0] < w[1]),
                "unsorted or duplicate"
            );
            debug_assert!(!list.contains(&u), "self-loop");
            edge_count += list.len();
        }
        debug_assert_eq!(edge_count % 2, 0, "asymmetric adjacency");
        Graph {
            adjacency,
            labels,
            edge_count: edge_count / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges as `(u, v)` pairs with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees
    }

    /// True when every vertex has the same degree (vacuously true for n <= 1).
    pub fn is_regular(&self) -> bool {
        match self.adjacency.first() {
            Some(first) => {
                let d = first.len();
                self.adjacency.iter().all(|list| list.len() == d)
            }
            None => true,
        }
    }

    /// Returns the graph with vertex `u` renamed to `perm[u]`. Labels move
    /// with their vertices.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation of 0..n");
            seen[p] = true;
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut labels = vec![String::new(); n];
        for u in 0..n {
            let mut list: Vec<VertexId> = self.adjacency[u].iter().map(|&v| perm[v]).collect();
            list.sort_unstable();
            adjacency[perm[u]] = list;
            labels[perm[u]] = self.labels[u].clone();
        }
        Graph::from_adjacency(adjacency, labels)
    }

    /// Returns the graph with vertex `v` deleted; remaining vertices are
    /// reindexed preserving order (`u` becomes `u - 1` for `u > v`).
    ///
    /// Panics if `v >= n`.
    pub fn remove_vertex(&self, v: VertexId) -> Graph {
        let n = self.vertex_count();
        assert!(v < n, "vertex out of range");
        let map = |u: VertexId| if u > v { u - 1 } else { u };
        let mut adjacency = Vec::with_capacity(n - 1);
        let mut labels = Vec::with_capacity(n - 1);
        for u in 0..n {
            if u == v {
                continue;
            }
            adjacency.push(
                self.adjacency[u]
                    .iter()
                    .filter(|&&w| w != v)
                    .map(|&w| map(w))
                    .collect(),
            );
            labels.push(self.labels[u].clone());
        }
        Graph::from_adjacency(adjacency, labels)
    }
}

/// Result of parsing an edge list: the graph plus non-fatal diagnostics
/// (currently only duplicate-edge notices).
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Parses the edge-list format: UTF-8 text, `#`-prefixed comment lines and
/// blank lines ignored, tokens separated by any whitespace. A two-token line
/// declares an edge, a one-token line declares an (isolated) vertex. Labels
/// are mapped to dense ids by first appearance. Duplicate edges are accepted
/// idempotently with a warning; self-loops are errors.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, GraphError> {
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut seen: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut warnings = Vec::new();

    let mut intern = |token: &str, labels: &mut Vec<String>| -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        ids.insert(token.to_string(), id);
        labels.push(token.to_string());
        id
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [single] => {
                intern(single, &mut labels);
            }
            [a, b] => {
                if a == b {
                    return Err(GraphError::SelfLoop {
                        line: line_no,
                        label: (*a).to_string(),
                    });
                }
                let u = intern(a, &mut labels);
                let v = intern(b, &mut labels);
                let key = (u.min(v), u.max(v));
                if let Some(first) = seen.get(&key) {
                    warnings.push(format!(
                        "line {line_no}: duplicate edge `{a} {b}` (first declared on line {first}) ignored"
                    ));
                } else {
                    seen.insert(key, line_no);
                    edges.push(key);
                }
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line: line_no,
                    content: line.to_string(),
                });
            }
        }
    }

    let graph = Graph::from_labeled_edges(labels, edges)?;
    Ok(ParsedGraph { graph, warnings })
}

/// Canonical edge-list text: one `u v` line per edge with `u < v`, in
/// increasing `(u, v)` order, followed by one single-label line per isolated
/// vertex. Parsing the output reproduces the graph up to relabeling.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        out.push('\n');
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            out.push_str(g.label(v));
            out.push('\n');
        }
    }
    out
}

/// Deterministic generator specification for the named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// K_n.
    Complete { n: usize },
    /// Path on `n` vertices.
    Path { n: usize },
    /// Cycle on `n` vertices, n >= 3.
    Cycle { n: usize },
    /// Star K_{1,leaves}: hub is vertex 0.
    Star { leaves: usize },
    /// Wheel W_{1,rim}: hub is vertex 0, rim cycle 1..=rim, rim >= 3.
    Wheel { rim: usize },
    /// K_{left,right}: left part 0..left, right part left..left+right.
    CompleteBipartite { left: usize, right: usize },
    /// Prism C_{n/2} x K_2 on `n` total vertices (n even, n >= 6): inner
    /// cycle 0..n/2, outer cycle n/2..n, rung i -- i+n/2.
    CircularLadder { n: usize },
    /// Hypercube on `n` total vertices (a power of two): vertices are bit
    /// patterns, edges join patterns differing in one bit.
    Hypercube { n: usize },
    /// Two K_clique joined by a path of `path` additional internal vertices:
    /// first clique 0..clique, path vertices, second clique; the chain runs
    /// clique-1, clique, ..., clique+path.
    Barbell { clique: usize, path: usize },
    /// K_clique joined to a path of `path` additional vertices, attached at
    /// vertex clique-1.
    Lollipop { clique: usize, path: usize },
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Wheel { .. } => "wheel",
            FamilySpec::CompleteBipartite { .. } => "complete-bipartite",
            FamilySpec::CircularLadder { .. } => "circular-ladder",
            FamilySpec::Hypercube { .. } => "hypercube",
            FamilySpec::Barbell { .. } => "barbell",
            FamilySpec::Lollipop { .. } => "lollipop",
        }
    }
}

fn param_err(family: &'static str, reason: impl Into<String>) -> GraphError {
    GraphError::InvalidFamilyParameter {
        family,
        reason: reason.into(),
    }
}

/// Generates the requested family with its documented vertex numbering.
/// Deterministic: equal specs yield identical adjacency structures.
pub fn generate(spec: &FamilySpec) -> Result<Graph, GraphError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let n = match *spec {
        FamilySpec::Complete { n } => {
            if n == 0 {
                return Err(param_err("complete", "need n >= 1"));
            }
            clique_edges(&mut edges, 0, n);
            n
        }
        FamilySpec::Path { n } => {
            if n == 0 {
                return Err(param_err("path", "need n >= 1"));
            }
            path_edges(&mut edges, 0, n);
            n
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(param_err("cycle", "need n >= 3"));
            }
            cycle_edges(&mut edges, 0, n);
            n
        }
        FamilySpec::Star { leaves } => {
            if leaves == 0 {
                return Err(param_err("star", "need at least 1 leaf"));
            }
            for v in 1..=leaves {
                edges.push((0, v));
            }
            leaves + 1
        }
        FamilySpec::Wheel { rim } => {
            if rim < 3 {
                return Err(param_err("wheel", "need rim >= 3"));
            }
            for v in 1..=rim {
                edges.push((0, v));
            }
            for i in 0..rim {
                edges.push((1 + i, 1 + (i + 1) % rim));
            }
            rim + 1
        }
        FamilySpec::CompleteBipartite { left, right } => {
            if left == 0 || right == 0 {
                return Err(param_err(
                    "complete-bipartite",
                    "both parts must be non-empty",
                ));
            }
            for u in 0..left {
                for v in left..left + right {
                    edges.push((u, v));
                }
            }
            left + right
        }
        FamilySpec::CircularLadder { n } => {
            if n < 6 || n % 2 != 0 {
                return Err(param_err(
                    "circular-ladder",
                    "need an even vertex count >= 6",
                ));
            }
            let h = n / 2;
            cycle_edges(&mut edges, 0, h);
            cycle_edges(&mut edges, h, h);
            for i in 0..h {
                edges.push((i, h + i));
            }
            n
        }
        FamilySpec::Hypercube { n } => {
            if n == 0 || !n.is_power_of_two() {
                return Err(param_err(
                    "hypercube",
                    "vertex count must be a power of two",
                ));
            }
            let dim = n.trailing_zeros() as usize;
            for u in 0..n {
                for b in 0..dim {
                    let v = u ^ (1 << b);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
        FamilySpec::Barbell { clique, path } => {
            if clique < 2 {
                return Err(param_err("barbell", "need clique size >= 2"));
            }
            if path == 0 {
                return Err(param_err("barbell", "need path length >= 1"));
            }
            clique_edges(&mut edges, 0, clique);
            clique_edges(&mut edges, clique + path, clique);
            // chain: last vertex of clique 1, the path, first vertex of clique 2
            for i in 0..=path {
                edges.push((clique - 1 + i, clique + i));
            }
            2 * clique + path
        }
        FamilySpec::Lollipop { clique, path } => {
            if clique < 2 {
                return Err(param_err("lollipop", "need clique size >= 2"));
            }
            if path == 0 {
                return Err(param_err("lollipop", "need path length >= 1"));
            }
            clique_edges(&mut edges, 0, clique);
            for i in 0..path {
                edges.push((clique - 1 + i, clique + i));
            }
            clique + path
        }
    };
    Graph::from_edges(n, edges)
}

fn clique_edges(edges: &mut Vec<(usize, usize)>, base: usize, size: usize) {
    for i in 0..size {
        for j in i + 1..size {
            edges.push((base + i, base + j));
        }
    }
}

fn path_edges(edges: &mut Vec<(usize, usize)>, base: usize, size: usize) {
    for i in 0..size.saturating_sub(1) {
        edges.push((base + i, base + i + 1));
    }
}

fn cycle_edges(edges: &mut Vec<(usize, usize)>, base: usize, size: usize) {
    for i in 0..size {
        edges.push((base + i, base + (i + 1) % size));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 6-vertex, 8-edge example graph used throughout the test suite.
    pub(crate) fn example_six() -> Graph {
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

    #[test]
    fn parse_two_edge_path() {
        let parsed = parse_edge_list("a b\nb c").unwrap();
        let g = parsed.graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.labels(), &["a", "b", "c"]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn parse_example_six_edges() {
        let text = "v1 v2\nv2 v3\nv3 v4\nv3 v5\nv3 v6\nv4 v5\nv4 v6\nv5 v6\n";
        let g = parse_edge_list(text).unwrap().graph;
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn parse_rejects_self_loop_with_line_number() {
        let err = parse_edge_list("a a").unwrap_err();
        assert_eq!(
            err,
            GraphError::SelfLoop {
                line: 1,
                label: "a".into()
            }
        );
        let err = parse_edge_list("# header\na b\nc c\n").unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { line: 3, .. }));
    }

    #[test]
    fn parse_rejects_malformed_line() {
        let err = parse_edge_list("a b c").unwrap_err();
        assert!(matches!(err, GraphError::MalformedLine { line: 1, .. }));
    }

    #[test]
    fn parse_duplicate_edge_warns_once() {
        let parsed = parse_edge_list("a b\nb a\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("line 2"));
    }

    #[test]
    fn parse_comments_blank_lines_isolated_vertices() {
        let parsed = parse_edge_list("# comment\n\n  \nx y\nz\n").unwrap();
        let g = parsed.graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(2), 0);
        assert_eq!(g.label(2), "z");
    }

    #[test]
    fn edge_list_output_is_canonical() {
        let p3 = generate(&FamilySpec::Path { n: 3 }).unwrap();
        assert_eq!(to_edge_list(&p3), "0 1\n1 2\n");
        let k3 = generate(&FamilySpec::Complete { n: 3 }).unwrap();
        assert_eq!(to_edge_list(&k3), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn edge_list_round_trip_preserves_edge_set() {
        let g = generate(&FamilySpec::Barbell { clique: 7, path: 7 }).unwrap();
        let back = parse_edge_list(&to_edge_list(&g)).unwrap().graph;
        let a: Vec<_> = g.edges().collect();
        let b: Vec<_> = back.edges().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trip_keeps_isolated_vertices() {
        let g = parse_edge_list("a b\nlonely\n").unwrap().graph;
        let back = parse_edge_list(&to_edge_list(&g)).unwrap().graph;
        assert_eq!(back.vertex_count(), 3);
        assert_eq!(back.edge_count(), 1);
    }

    #[test]
    fn generated_family_sizes() {
        let k32 = generate(&FamilySpec::Complete { n: 32 }).unwrap();
        assert_eq!((k32.vertex_count(), k32.edge_count()), (32, 496));

        let b77 = generate(&FamilySpec::Barbell { clique: 7, path: 7 }).unwrap();
        assert_eq!((b77.vertex_count(), b77.edge_count()), (21, 50));

        let w20 = generate(&FamilySpec::Wheel { rim: 20 }).unwrap();
        assert_eq!((w20.vertex_count(), w20.edge_count()), (21, 40));

        let cl32 = generate(&FamilySpec::CircularLadder { n: 32 }).unwrap();
        assert_eq!((cl32.vertex_count(), cl32.edge_count()), (32, 48));
        assert!(cl32.is_regular());

        let h32 = generate(&FamilySpec::Hypercube { n: 32 }).unwrap();
        assert_eq!((h32.vertex_count(), h32.edge_count()), (32, 80));

        let l2111 = generate(&FamilySpec::Lollipop {
            clique: 21,
            path: 11,
        })
        .unwrap();
        assert_eq!((l2111.vertex_count(), l2111.edge_count()), (32, 221));
    }

    #[test]
    fn generator_parameter_errors() {
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Hypercube { n: 12 }).is_err());
        assert!(generate(&FamilySpec::CircularLadder { n: 7 }).is_err());
        assert!(generate(&FamilySpec::Barbell { clique: 1, path: 3 }).is_err());
    }

    #[test]
    fn handshake_identity_on_generators() {
        let specs = [
            FamilySpec::Complete { n: 9 },
            FamilySpec::Wheel { rim: 11 },
            FamilySpec::Barbell { clique: 4, path: 3 },
            FamilySpec::CircularLadder { n: 10 },
            FamilySpec::Hypercube { n: 16 },
            FamilySpec::Star { leaves: 8 },
        ];
        for spec in specs {
            let g = generate(&spec).unwrap();
            let degree_sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(degree_sum, 2 * g.edge_count(), "{spec:?}");
        }
    }

    #[test]
    fn generate_is_deterministic() {
        let a = generate(&FamilySpec::Barbell { clique: 5, path: 4 }).unwrap();
        let b = generate(&FamilySpec::Barbell { clique: 5, path: 4 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn relabel_moves_edges_and_labels() {
        let g = example_six();
        let perm = [5, 4, 3, 2, 1, 0];
        let h = g.relabel(&perm);
        assert_eq!(h.edge_count(), g.edge_count());
        for (u, v) in g.edges() {
            assert!(h.has_edge(perm[u], perm[v]));
        }
        assert_eq!(h.label(5), g.label(0));
    }

    #[test]
    fn remove_vertex_reindexes() {
        let g = example_six();
        let h = g.remove_vertex(2);
        assert_eq!(h.vertex_count(), 5);
        // edges not touching vertex 2 survive with shifted ids
        assert!(h.has_edge(0, 1)); // was (0,1)
        assert!(h.has_edge(2, 3)); // was (3,4)
        assert_eq!(h.edge_count(), 4);
    }
}
