//! `nbrmat`: neighbor-matrix graph analysis from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input/data error. Results go to
//! stdout, diagnostics to stderr, and output is byte-deterministic for fixed
//! inputs and flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nbrmat_core::comparison::{metrics_block, noniso_certificate, similar, NonIsoVerdict};
use nbrmat_core::graph::{generate, parse_edge_list, to_edge_list, FamilySpec, Graph};
use nbrmat_core::influence::{rank_vertices, InfluenceConfig, LostPairWeight, Norm};
use nbrmat_core::invariants::{invariant_report, InvariantReport};
use nbrmat_core::matrix::{
    build_unsorted, build_via_boolean_matrices, build_via_graph_powers, neighbor_matrix, sort_rows,
    NeighborMatrixUnsorted,
};

#[derive(Parser)]
#[command(
    name = "nbrmat",
    version,
    about = "Neighbor-matrix graph analysis: build the matrix, extract invariants, \
             compare graphs, certify non-isomorphism, and rank vertex influence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph family as an edge list
    Generate {
        /// Family: complete, path, cycle, star, wheel, complete-bipartite,
        /// circular-ladder, hypercube, barbell, lollipop
        #[arg(long)]
        family: String,
        /// Size parameter for single-parameter families (vertex count; leaf
        /// count for star, rim count for wheel)
        #[arg(long)]
        n: Option<usize>,
        /// First parameter for barbell/lollipop (clique size) and
        /// complete-bipartite (left part)
        #[arg(long)]
        m: Option<usize>,
        /// Second parameter for barbell/lollipop (path length) and
        /// complete-bipartite (right part)
        #[arg(long)]
        p: Option<usize>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a graph's neighbor matrix
    Matrix {
        input: PathBuf,
        /// Reverse-lexicographically sorted rows (the default)
        #[arg(long, conflicts_with = "unsorted")]
        sorted: bool,
        /// Rows in vertex order
        #[arg(long)]
        unsorted: bool,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Extract every invariant the neighbor matrix encodes
    Invariants {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Per-graph metric blocks plus pairwise similarity/non-isomorphism
    Compare {
        /// Two or more edge-list files
        #[arg(num_args = 2.., required = true)]
        inputs: Vec<PathBuf>,
        /// Largest vertex count for the exhaustive normalized s-metric search
        #[arg(long, default_value_t = 8)]
        smax_bound: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Rank vertices by distance-distribution disruption on removal
    Rank {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = NormChoice::L1)]
        norm: NormChoice,
        /// Weight per severed vertex pair: a number, or `diam+1`
        #[arg(long, default_value = "diam+1")]
        lost_pair_weight: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Certify non-isomorphism of two graphs (never claims isomorphism)
    Noniso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Bfs,
    Powers,
    Boolean,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormChoice {
    L1,
    L2,
}

enum AppError {
    Usage(String),
    Data(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Data(_) => 2,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) | AppError::Data(msg) => write!(f, "{msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    init_thread_pool();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// NBRMAT_THREADS caps the worker count; results are identical either way.
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("NBRMAT_THREADS") {
        match raw.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid NBRMAT_THREADS value `{raw}`"),
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Generate {
            family,
            n,
            m,
            p,
            output,
        } => cmd_generate(&family, n, m, p, output.as_deref()),
        Command::Matrix {
            input,
            sorted: _,
            unsorted,
            method,
            format,
        } => cmd_matrix(&input, !unsorted, method, format),
        Command::Invariants { input, format } => cmd_invariants(&input, format),
        Command::Compare {
            inputs,
            smax_bound,
            format,
        } => cmd_compare(&inputs, smax_bound, format),
        Command::Rank {
            input,
            norm,
            lost_pair_weight,
            format,
        } => cmd_rank(&input, norm, &lost_pair_weight, format),
        Command::Noniso { a, b, format } => cmd_noniso(&a, &b, format),
    }
}

fn load_graph(path: &Path) -> Result<Graph, AppError> {
    let text = fs::read_to_string(path)
        .map_err(|err| AppError::Data(format!("{}: {err}", path.display())))?;
    let parsed = parse_edge_list(&text)
        .map_err(|err| AppError::Data(format!("{}: {err}", path.display())))?;
    for warning in &parsed.warnings {
        eprintln!("warning: {}: {warning}", path.display());
    }
    Ok(parsed.graph)
}

fn resolve_family(
    family: &str,
    n: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
) -> Result<FamilySpec, AppError> {
    let single = |value: Option<usize>, family: &str| {
        if m.is_some() || p.is_some() {
            return Err(AppError::Usage(format!("family `{family}` takes only --n")));
        }
        value.ok_or_else(|| AppError::Usage(format!("family `{family}` requires --n")))
    };
    let pair = |family: &str| {
        if n.is_some() {
            return Err(AppError::Usage(format!(
                "family `{family}` takes --m and --p, not --n"
            )));
        }
        match (m, p) {
            (Some(m), Some(p)) => Ok((m, p)),
            _ => Err(AppError::Usage(format!(
                "family `{family}` requires both --m and --p"
            ))),
        }
    };
    Ok(match family {
        "complete" => FamilySpec::Complete {
            n: single(n, family)?,
        },
        "path" => FamilySpec::Path {
            n: single(n, family)?,
        },
        "cycle" => FamilySpec::Cycle {
            n: single(n, family)?,
        },
        "star" => FamilySpec::Star {
            leaves: single(n, family)?,
        },
        "wheel" => FamilySpec::Wheel {
            rim: single(n, family)?,
        },
        "circular-ladder" => FamilySpec::CircularLadder {
            n: single(n, family)?,
        },
        "hypercube" => FamilySpec::Hypercube {
            n: single(n, family)?,
        },
        "complete-bipartite" => {
            let (left, right) = pair(family)?;
            FamilySpec::CompleteBipartite { left, right }
        }
        "barbell" => {
            let (clique, path) = pair(family)?;
            FamilySpec::Barbell { clique, path }
        }
        "lollipop" => {
            let (clique, path) = pair(family)?;
            FamilySpec::Lollipop { clique, path }
        }
        other => {
            return Err(AppError::Usage(format!(
                "unknown family `{other}` (expected complete, path, cycle, star, wheel, \
                 complete-bipartite, circular-ladder, hypercube, barbell, or lollipop)"
            )))
        }
    })
}

fn cmd_generate(
    family: &str,
    n: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
    output: Option<&Path>,
) -> Result<(), AppError> {
    let spec = resolve_family(family, n, m, p)?;
    let graph = generate(&spec).map_err(|err| AppError::Usage(err.to_string()))?;
    let text = to_edge_list(&graph);
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|err| AppError::Data(format!("{}: {err}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Real-valued metrics render with four significant digits in text and CSV.
fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (3 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn format_opt(value: Option<f64>, undefined_marker: &str) -> String {
    value.map_or_else(|| undefined_marker.to_string(), format_sig)
}

fn matrix_text(rows: Vec<Vec<u32>>) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|e| e.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn cmd_matrix(
    input: &Path,
    sorted: bool,
    method: Method,
    format: OutputFormat,
) -> Result<(), AppError> {
    let graph = load_graph(input)?;
    let unsorted: NeighborMatrixUnsorted = match method {
        Method::Bfs => build_unsorted(&graph),
        Method::Powers => build_via_graph_powers(&graph),
        Method::Boolean => build_via_boolean_matrices(&graph),
    };
    let output = if sorted {
        let x = sort_rows(&unsorted);
        match format {
            OutputFormat::Csv => x.to_csv(),
            OutputFormat::Json => to_json_line(&x.to_json(graph.labels()))?,
            OutputFormat::Text => matrix_text(x.rows().map(<[u32]>::to_vec).collect()),
        }
    } else {
        match format {
            OutputFormat::Csv => unsorted.to_csv(),
            OutputFormat::Json => to_json_line(&unsorted.to_json(graph.labels()))?,
            OutputFormat::Text => matrix_text(unsorted.rows().map(<[u32]>::to_vec).collect()),
        }
    };
    print!("{output}");
    Ok(())
}

fn to_json_line<T: Serialize>(value: &T) -> Result<String, AppError> {
    serde_json::to_string(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|err| AppError::Data(format!("serialization failed: {err}")))
}

/// Invariant report with vertex ids replaced by their labels.
#[derive(Serialize)]
struct LabeledReport {
    connected: bool,
    component_count: usize,
    diameter: usize,
    radius: Option<usize>,
    center: Option<Vec<String>>,
    periphery: Option<Vec<String>>,
    closeness: Option<Vec<f64>>,
    average_distance: Option<f64>,
    degree_sequence: Vec<u32>,
    edge_count: u64,
    density: f64,
    column_sums: Vec<u64>,
    power_edge_counts: Vec<u64>,
}

fn label_report(report: InvariantReport, labels: &[String]) -> LabeledReport {
    let name = |ids: Vec<usize>| ids.into_iter().map(|v| labels[v].clone()).collect();
    LabeledReport {
        connected: report.connected,
        component_count: report.component_count,
        diameter: report.diameter,
        radius: report.radius,
        center: report.center.map(name),
        periphery: report.periphery.map(name),
        closeness: report.closeness,
        average_distance: report.average_distance,
        degree_sequence: report.degree_sequence,
        edge_count: report.edge_count,
        density: report.density,
        column_sums: report.column_sums,
        power_edge_counts: report.power_edge_counts,
    }
}

fn cmd_invariants(input: &Path, format: OutputFormat) -> Result<(), AppError> {
    let graph = load_graph(input)?;
    let x = build_unsorted(&graph);
    let report = invariant_report(&x).map_err(|err| AppError::Data(err.to_string()))?;
    if !report.connected {
        eprintln!(
            "warning: {}: graph is disconnected; connected-only invariants are omitted",
            input.display()
        );
    }
    let labeled = label_report(report, graph.labels());
    match format {
        OutputFormat::Json => print!("{}", to_json_line(&labeled)?),
        OutputFormat::Csv => print!("{}", report_rows(&labeled, ",", ";")),
        OutputFormat::Text => print!("{}", report_rows(&labeled, ": ", " ")),
    }
    Ok(())
}

/// Field-per-line rendering shared by the text and CSV report formats.
fn report_rows(report: &LabeledReport, sep: &str, list_sep: &str) -> String {
    let join_f64 = |values: &[f64]| {
        values
            .iter()
            .map(|&v| format_sig(v))
            .collect::<Vec<_>>()
            .join(list_sep)
    };
    let join_display = |values: Vec<String>| values.join(list_sep);
    let opt = |value: Option<String>| value.unwrap_or_else(|| "*".to_string());
    let mut out = String::new();
    let mut field = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(sep);
        out.push_str(&value);
        out.push('\n');
    };
    field("connected", report.connected.to_string());
    field("component_count", report.component_count.to_string());
    field("diameter", report.diameter.to_string());
    field("radius", opt(report.radius.map(|r| r.to_string())));
    field("center", opt(report.center.clone().map(join_display)));
    field("periphery", opt(report.periphery.clone().map(join_display)));
    field("closeness", opt(report.closeness.as_deref().map(join_f64)));
    field(
        "average_distance",
        opt(report.average_distance.map(format_sig)),
    );
    field(
        "degree_sequence",
        join_display(report.degree_sequence.iter().map(u32::to_string).collect()),
    );
    field("edge_count", report.edge_count.to_string());
    field("density", format_sig(report.density));
    field(
        "column_sums",
        join_display(report.column_sums.iter().map(u64::to_string).collect()),
    );
    field(
        "power_edge_counts",
        join_display(
            report
                .power_edge_counts
                .iter()
                .map(u64::to_string)
                .collect(),
        ),
    );
    out
}

#[derive(Serialize)]
struct NamedBlock {
    name: String,
    n: usize,
    k: usize,
    frobenius_norm: f64,
    average_distance: Option<f64>,
    average_local_clustering: f64,
    transitivity: f64,
    pearson_degree_correlation: Option<f64>,
    s_metric: u64,
    normalized_s_metric: Option<f64>,
}

#[derive(Serialize)]
struct PairOut {
    left: String,
    right: String,
    similar: bool,
    verdict: NonIsoVerdict,
    frobenius_distance: Option<f64>,
    norm_difference: f64,
}

#[derive(Serialize)]
struct CompareOut {
    graphs: Vec<NamedBlock>,
    pairs: Vec<PairOut>,
}

fn cmd_compare(
    inputs: &[PathBuf],
    smax_bound: usize,
    format: OutputFormat,
) -> Result<(), AppError> {
    let mut graphs = Vec::new();
    for path in inputs {
        graphs.push((path.display().to_string(), load_graph(path)?));
    }

    let blocks: Vec<NamedBlock> = graphs
        .iter()
        .map(|(name, g)| {
            let block = metrics_block(g, smax_bound);
            NamedBlock {
                name: name.clone(),
                n: block.n,
                k: block.k,
                frobenius_norm: block.frobenius_norm,
                average_distance: block.average_distance,
                average_local_clustering: block.metrics.average_local_clustering,
                transitivity: block.metrics.transitivity,
                pearson_degree_correlation: block.metrics.pearson_degree_correlation,
                s_metric: block.metrics.s_metric,
                normalized_s_metric: block.metrics.normalized_s_metric,
            }
        })
        .collect();
    for block in &blocks {
        if block.average_distance.is_none() {
            eprintln!(
                "warning: {}: graph is disconnected; average distance is omitted",
                block.name
            );
        }
    }

    let matrices: Vec<_> = graphs.iter().map(|(_, g)| neighbor_matrix(g)).collect();
    let mut pairs = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let (gi, gj) = (&graphs[i].1, &graphs[j].1);
            let frobenius_distance = if gi.vertex_count() == gj.vertex_count() {
                Some(padded_distance(&matrices[i], &matrices[j]))
            } else {
                None
            };
            pairs.push(PairOut {
                left: graphs[i].0.clone(),
                right: graphs[j].0.clone(),
                similar: similar(&matrices[i], &matrices[j]),
                verdict: noniso_certificate(gi, gj),
                frobenius_distance,
                norm_difference: (blocks[i].frobenius_norm - blocks[j].frobenius_norm).abs(),
            });
        }
    }

    match format {
        OutputFormat::Json => print!(
            "{}",
            to_json_line(&CompareOut {
                graphs: blocks,
                pairs
            })?
        ),
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(
                "graph,avg_distance,avg_cluster_coeff,pearson,s_metric_normalized,dimension,frobenius_norm\n",
            );
            for b in &blocks {
                out.push_str(&format!(
                    "{},{},{},{},{},{} x {},{}\n",
                    b.name,
                    format_opt(b.average_distance, "*"),
                    format_sig(b.average_local_clustering),
                    format_opt(b.pearson_degree_correlation, "*"),
                    format_opt(b.normalized_s_metric, "unavailable"),
                    b.n,
                    b.k,
                    format_sig(b.frobenius_norm),
                ));
            }
            out.push_str("left,right,similar,verdict,frobenius_distance,norm_difference\n");
            for p in &pairs {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    p.left,
                    p.right,
                    p.similar,
                    p.verdict,
                    format_opt(p.frobenius_distance, "*"),
                    format_sig(p.norm_difference),
                ));
            }
            print!("{out}");
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for b in &blocks {
                out.push_str(&format!(
                    "{}: dimension {} x {}, frobenius {}, avg distance {}, clustering {}, \
                     transitivity {}, pearson {}, s-metric {} (normalized {})\n",
                    b.name,
                    b.n,
                    b.k,
                    format_sig(b.frobenius_norm),
                    format_opt(b.average_distance, "*"),
                    format_sig(b.average_local_clustering),
                    format_sig(b.transitivity),
                    format_opt(b.pearson_degree_correlation, "*"),
                    b.s_metric,
                    format_opt(b.normalized_s_metric, "unavailable"),
                ));
            }
            for p in &pairs {
                out.push_str(&format!(
                    "{} vs {}: similar={}, verdict={}, frobenius distance {}, norm difference {}\n",
                    p.left,
                    p.right,
                    p.similar,
                    p.verdict,
                    format_opt(p.frobenius_distance, "*"),
                    format_sig(p.norm_difference),
                ));
            }
            print!("{out}");
        }
    }
    Ok(())
}

fn padded_distance(
    a: &nbrmat_core::matrix::NeighborMatrix,
    b: &nbrmat_core::matrix::NeighborMatrix,
) -> f64 {
    let k = a.k().max(b.k());
    let mut sum = 0.0;
    for r in 0..a.n() {
        let (ra, rb) = (a.row(r), b.row(r));
        for j in 0..k {
            let d = f64::from(ra.get(j).copied().unwrap_or(0))
                - f64::from(rb.get(j).copied().unwrap_or(0));
            sum += d * d;
        }
    }
    sum.sqrt()
}

#[derive(Serialize)]
struct RankRow {
    rank: usize,
    vertex: String,
    score: f64,
}

fn cmd_rank(
    input: &Path,
    norm: NormChoice,
    lost_pair_weight: &str,
    format: OutputFormat,
) -> Result<(), AppError> {
    let graph = load_graph(input)?;
    let weight = match lost_pair_weight {
        "diam+1" => LostPairWeight::DiameterPlusOne,
        raw => {
            let value: f64 = raw.parse().map_err(|_| {
                AppError::Usage(format!(
                    "--lost-pair-weight expects a number or `diam+1`, got `{raw}`"
                ))
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(AppError::Usage(
                    "--lost-pair-weight must be finite and non-negative".to_string(),
                ));
            }
            LostPairWeight::Fixed(value)
        }
    };
    let cfg = InfluenceConfig {
        norm: match norm {
            NormChoice::L1 => Norm::L1,
            NormChoice::L2 => Norm::L2,
        },
        lost_pair_weight: weight,
    };
    let ranking = rank_vertices(&graph, &cfg).map_err(|err| AppError::Data(err.to_string()))?;
    let rows: Vec<RankRow> = ranking
        .entries()
        .iter()
        .enumerate()
        .map(|(idx, entry)| RankRow {
            rank: idx + 1,
            vertex: graph.label(entry.vertex).to_string(),
            score: entry.score,
        })
        .collect();
    match format {
        OutputFormat::Json => print!("{}", to_json_line(&rows)?),
        OutputFormat::Csv => {
            let mut out = String::from("rank,vertex,score\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    row.rank,
                    row.vertex,
                    format_sig(row.score)
                ));
            }
            print!("{out}");
        }
        OutputFormat::Text => {
            let width = rows.iter().map(|r| r.vertex.len()).max().unwrap_or(1);
            for row in &rows {
                println!(
                    "{:>3}  {:<width$}  {}",
                    row.rank,
                    row.vertex,
                    format_sig(row.score)
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerdictOut {
    verdict: NonIsoVerdict,
}

fn cmd_noniso(a: &Path, b: &Path, format: OutputFormat) -> Result<(), AppError> {
    let ga = load_graph(a)?;
    let gb = load_graph(b)?;
    let verdict = noniso_certificate(&ga, &gb);
    match format {
        OutputFormat::Json => print!("{}", to_json_line(&VerdictOut { verdict })?),
        OutputFormat::Csv => print!("verdict\n{verdict}\n"),
        OutputFormat::Text => println!("{verdict}"),
    }
    Ok(())
}
