//! Command-line front end for the Schubert-stratum classifier and the
//! bundle splitting oracles.
//!
//! Exit codes encode verdicts so the tool composes in shell pipelines:
//! `0` for split / all checks passed, `1` for non-split / a failed check,
//! `2` for any error (bad input, unsupported type, engine failure).

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use schubsplit::schubert::hyperplane_times;
use schubsplit::{
    bott, canonical_table, classify_x2, complex_cohomology_with_cutoff, is_split_p2_with_cutoff,
    is_split_wedge, CosetPoset, Error, RootSystem, SplitVerdict, TableRow, DEFAULT_MAX_CUTOFF,
};

use schubsplit_cli::bundlefile::{BundleFile, WedgeFile};

#[derive(Parser)]
#[command(
    name = "schubsplit",
    version,
    about = "Exact Schubert combinatorics of minuscule homogeneous spaces and \
             splitting tests for vector bundles on the plane and on two glued planes"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text (splitting verdicts are
    /// always JSON).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root-system facts: positive roots, Cartan matrix, minuscule nodes.
    Roots {
        /// Dynkin series: A, B, C, D or E.
        series: String,
        /// Rank (A: >= 1, B/C: >= 2, D: >= 3, E: 6 or 7).
        rank: usize,
    },
    /// Hasse diagram of the minimal coset representatives for one marked node.
    Hasse {
        series: String,
        rank: usize,
        /// Marked node, 1-based in Bourbaki numbering.
        node: usize,
        /// Emit a DOT digraph (vertices: reduced word with dimension and
        /// codimension; edges: covering relations).
        #[arg(long)]
        dot: bool,
        /// Build the diagram even when the node is not minuscule.
        #[arg(long)]
        allow_nonminuscule: bool,
    },
    /// Products of every Schubert class with the hyperplane class.
    Pieri {
        series: String,
        rank: usize,
        /// Marked node, 1-based in Bourbaki numbering.
        node: usize,
        /// Compute the products even when the node is not minuscule
        /// (coefficients above 1 become possible).
        #[arg(long)]
        allow_nonminuscule: bool,
    },
    /// Classification of the two-dimensional Schubert stratum: a plane, or
    /// two planes glued along a line.
    X2 {
        series: String,
        rank: usize,
        /// Marked node, 1-based in Bourbaki numbering.
        node: usize,
    },
    /// Recompute the catalogue mapping each homogeneous space to its
    /// splitting test, and verify it against the expected shapes.
    Table {
        /// Single family to print, by its classical name (e.g. "OP2",
        /// "Q4", "Gr(k,n)").
        #[arg(long)]
        variety: Option<String>,
    },
    /// Decide whether the bundle presented in FILE splits on the plane.
    SplitP2 {
        /// Bundle presentation (JSON; see the bundle-file format).
        file: PathBuf,
        /// Cap on the truncation ladder of the cohomology engine.
        #[arg(long, default_value_t = DEFAULT_MAX_CUTOFF)]
        max_cutoff: i64,
    },
    /// Decide whether the bundle glued over two planes in FILE splits.
    SplitWedge {
        /// Wedge datum (JSON: "left", "right", "gluing").
        file: PathBuf,
        /// Seed for the randomized distinct-eigenvalue certificate.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cohomology of the line bundle O(TWIST) on the plane, or, with
    /// --file, certified cohomology of a presented bundle at that twist.
    Bott {
        #[arg(allow_negative_numbers = true)]
        twist: i64,
        /// Bundle presentation to evaluate instead of O(TWIST).
        #[arg(long)]
        file: Option<PathBuf>,
        /// Cap on the truncation ladder of the cohomology engine.
        #[arg(long, default_value_t = DEFAULT_MAX_CUTOFF)]
        max_cutoff: i64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, code)) => {
            emit(&output);
            process::exit(code);
        }
        Err(message) => {
            eprintln!("error: {message}");
            process::exit(2);
        }
    }
}

/// Writes the finished output to stdout. A broken pipe (the reader went
/// away, e.g. `schubsplit hasse ... | head`) exits quietly with the
/// conventional SIGPIPE code instead of panicking.
fn emit(output: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(output.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            process::exit(141);
        }
        eprintln!("error: cannot write to stdout: {e}");
        process::exit(2);
    }
}

/// Each command produces its full output plus the process exit code.
type Outcome = Result<(String, i32), String>;

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Roots { series, rank } => cmd_roots(&series, rank, json),
        Command::Hasse {
            series,
            rank,
            node,
            dot,
            allow_nonminuscule,
        } => cmd_hasse(&series, rank, node, dot, allow_nonminuscule, json),
        Command::Pieri {
            series,
            rank,
            node,
            allow_nonminuscule,
        } => cmd_pieri(&series, rank, node, allow_nonminuscule, json),
        Command::X2 { series, rank, node } => cmd_x2(&series, rank, node, json),
        Command::Table { variety } => cmd_table(variety.as_deref(), json),
        Command::SplitP2 { file, max_cutoff } => cmd_split_p2(&file, max_cutoff),
        Command::SplitWedge { file, seed } => cmd_split_wedge(&file, seed),
        Command::Bott {
            twist,
            file,
            max_cutoff,
        } => cmd_bott(twist, file.as_deref(), max_cutoff, json),
    }
}

fn root_system(series: &str, rank: usize) -> Result<RootSystem, String> {
    RootSystem::from_label(&format!("{series}{rank}")).map_err(|e| e.to_string())
}

/// Builds the coset poset, enforcing minusculity unless explicitly waived.
fn coset_poset(
    series: &str,
    rank: usize,
    node: usize,
    allow_nonminuscule: bool,
) -> Result<CosetPoset, String> {
    let rs = root_system(series, rank)?;
    rs.check_node(node).map_err(|e| e.to_string())?;
    if !rs.is_minuscule(node) && !allow_nonminuscule {
        return Err(Error::NotMinuscule {
            node,
            context: "pass --allow-nonminuscule to compute on this marking anyway".to_string(),
        }
        .to_string());
    }
    CosetPoset::new(rs, node).map_err(|e| e.to_string())
}

fn to_pretty(value: &impl serde::Serialize) -> Result<String, String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

fn cmd_roots(series: &str, rank: usize, json: bool) -> Outcome {
    let rs = root_system(series, rank)?;
    if json {
        let value = json!({
            "label": rs.label(),
            "series": rs.series().to_string(),
            "rank": rs.rank(),
            "positive_roots": rs.num_positive_roots(),
            "minuscule_nodes": rs.minuscule_nodes(),
            "cartan_matrix": rs.cartan_matrix(),
        });
        return Ok((to_pretty(&value)?, 0));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "root system {}: rank {}, {} positive roots",
        rs.label(),
        rs.rank(),
        rs.num_positive_roots()
    );
    let nodes: Vec<String> = rs.minuscule_nodes().iter().map(|n| n.to_string()).collect();
    let _ = writeln!(
        out,
        "minuscule nodes: {}",
        if nodes.is_empty() {
            "(none)".to_string()
        } else {
            nodes.join(", ")
        }
    );
    let _ = writeln!(out, "Cartan matrix:");
    for row in rs.cartan_matrix() {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:>2}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    Ok((out, 0))
}

fn cmd_hasse(
    series: &str,
    rank: usize,
    node: usize,
    dot: bool,
    allow_nonminuscule: bool,
    json: bool,
) -> Outcome {
    let poset = coset_poset(series, rank, node, allow_nonminuscule)?;
    let label = format!("{}/{}", poset.root_system().label(), node);
    let dim = poset.dimension();
    if dot {
        return Ok((render_dot(&poset, &label), 0));
    }
    if json {
        let vertices: Vec<_> = (0..poset.len())
            .map(|i| {
                json!({
                    "index": i,
                    "length": poset.length_of(i),
                    "word": poset.rep(i).word(),
                    "display": poset.rep(i).to_string(),
                })
            })
            .collect();
        let value = json!({
            "label": label,
            "node": node,
            "dimension": dim,
            "size": poset.len(),
            "vertices": vertices,
            "edges": cover_edges(&poset),
        });
        return Ok((to_pretty(&value)?, 0));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "coset poset {label}: {} elements, dimension {dim}",
        poset.len()
    );
    for length in 0..=dim {
        let words: Vec<String> = poset
            .level(length)
            .map(|i| poset.rep(i).to_string())
            .collect();
        let _ = writeln!(out, "level {length}: {}", words.join(", "));
    }
    let edge_count: usize = (0..poset.len()).map(|i| poset.up_edges(i).len()).sum();
    let _ = writeln!(
        out,
        "cover edges: {edge_count}, max divisor coefficient {}",
        poset.max_cover_coefficient()
    );
    Ok((out, 0))
}

fn cover_edges(poset: &CosetPoset) -> Vec<serde_json::Value> {
    let mut edges = Vec::new();
    for i in 0..poset.len() {
        for e in poset.up_edges(i) {
            edges.push(json!({ "from": i, "to": e.to, "coeff": e.coeff }));
        }
    }
    edges
}

/// DOT digraph of the Hasse diagram, oriented toward increasing
/// codimension; vertex labels carry the reduced word with the dimension
/// and codimension of its Schubert variety (codimension = word length).
fn render_dot(poset: &CosetPoset, label: &str) -> String {
    let dim = poset.dimension();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{label}\" {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for i in 0..poset.len() {
        let length = poset.length_of(i);
        let _ = writeln!(
            out,
            "  v{i} [label=\"{}\\n(dim {}, codim {length})\"];",
            poset.rep(i),
            dim - length
        );
    }
    for i in 0..poset.len() {
        for e in poset.up_edges(i) {
            if e.coeff == 1 {
                let _ = writeln!(out, "  v{i} -> v{};", e.to);
            } else {
                let _ = writeln!(out, "  v{i} -> v{} [label=\"{}\"];", e.to, e.coeff);
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

fn cmd_pieri(
    series: &str,
    rank: usize,
    node: usize,
    allow_nonminuscule: bool,
    json: bool,
) -> Outcome {
    let poset = coset_poset(series, rank, node, allow_nonminuscule)?;
    let label = format!("{}/{}", poset.root_system().label(), node);
    let mut max_coeff: u64 = 0;
    let mut products = Vec::with_capacity(poset.len());
    for i in 0..poset.len() {
        let product = hyperplane_times(&poset, i).map_err(|e| e.to_string())?;
        for &c in product.coeffs().values() {
            max_coeff = max_coeff.max(c);
        }
        products.push((i, product));
    }
    if json {
        let items: Vec<_> = products
            .iter()
            .map(|(i, product)| {
                let terms: Vec<_> = product
                    .coeffs()
                    .iter()
                    .map(|(&j, &c)| {
                        json!({
                            "coeff": c,
                            "index": j,
                            "display": poset.rep(j).to_string(),
                        })
                    })
                    .collect();
                json!({
                    "index": i,
                    "display": poset.rep(*i).to_string(),
                    "terms": terms,
                })
            })
            .collect();
        let value = json!({
            "label": label,
            "node": node,
            "max_coefficient": max_coeff,
            "products": items,
        });
        return Ok((to_pretty(&value)?, 0));
    }
    let mut out = String::new();
    let _ = writeln!(out, "divisor products on {label} ({} classes)", poset.len());
    for (i, product) in &products {
        let rendered = if product.is_zero() {
            "0".to_string()
        } else {
            let terms: Vec<String> = product
                .coeffs()
                .iter()
                .map(|(&j, &c)| {
                    if c == 1 {
                        format!("[{}]", poset.rep(j))
                    } else {
                        format!("{c}*[{}]", poset.rep(j))
                    }
                })
                .collect();
            terms.join(" + ")
        };
        let _ = writeln!(out, "H * [{}] = {rendered}", poset.rep(*i));
    }
    let _ = writeln!(out, "maximum coefficient: {max_coeff}");
    Ok((out, 0))
}

fn cmd_x2(series: &str, rank: usize, node: usize, json: bool) -> Outcome {
    // classify_x2 issues the authoritative minusculity error, so the poset
    // is built permissively here.
    let poset = coset_poset(series, rank, node, true)?;
    let report = classify_x2(&poset).map_err(|e| e.to_string())?;
    if json {
        return Ok((to_pretty(&report)?, 0));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "two-dimensional stratum of {}/{} (space dimension {})",
        report.label, report.node, report.dimension
    );
    let _ = writeln!(out, "verdict: {}", report.verdict);
    for (pos, word) in report.class_words.iter().enumerate() {
        let display: Vec<String> = word.iter().map(|s| format!("s{s}")).collect();
        let _ = writeln!(
            out,
            "class [{}]: degree {}",
            display.join(" "),
            report.degrees[pos]
        );
    }
    if report.intersection_indices.is_empty() {
        let _ = writeln!(out, "intersection: (single class)");
    } else {
        for &k in &report.intersection_indices {
            let _ = writeln!(out, "intersection: [{}]", poset.rep(k));
        }
    }
    let _ = writeln!(out, "connected: {}", report.connected);
    Ok((out, 0))
}

/// Name of a family without its qualifier: the part before the first
/// comma outside parentheses (`"Gr(k,n), 1 < k < n-1"` -> `"Gr(k,n)"`).
fn family_head(family: &str) -> &str {
    let mut depth = 0usize;
    for (i, c) in family.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return family[..i].trim_end(),
            _ => {}
        }
    }
    family.trim()
}

fn matches_family(family: &str, name: &str) -> bool {
    family.eq_ignore_ascii_case(name) || family_head(family).eq_ignore_ascii_case(name)
}

fn cmd_table(variety: Option<&str>, json: bool) -> Outcome {
    let rows = canonical_table().map_err(|e| e.to_string())?;
    let selected: Vec<&TableRow> = match variety {
        None => rows.iter().collect(),
        Some(name) => {
            let hits: Vec<&TableRow> = rows
                .iter()
                .filter(|r| matches_family(&r.family, name))
                .collect();
            if hits.is_empty() {
                let known: Vec<&str> = rows.iter().map(|r| family_head(&r.family)).collect();
                return Err(format!(
                    "unknown variety {name:?}; known families: {}",
                    known.join(", ")
                ));
            }
            hits
        }
    };
    let failures = selected.iter().filter(|r| !r.pass).count();
    let code = if failures == 0 { 0 } else { 1 };
    if json {
        return Ok((to_pretty(&selected)?, code));
    }
    let mut out = String::new();
    if variety.is_some() {
        for row in &selected {
            let _ = writeln!(
                out,
                "{}: group {}, X2 = {}, decided by the {}",
                row.family, row.group, row.x2, row.test
            );
            let _ = writeln!(out, "checked: {}", row.checked.join(", "));
            let _ = writeln!(out, "result: {}", if row.pass { "PASS" } else { "FAIL" });
        }
        return Ok((out, code));
    }
    let headers = ["family", "group", "X2", "test", "checked", "result"];
    let mut grid: Vec<[String; 6]> = Vec::with_capacity(selected.len());
    for row in &selected {
        grid.push([
            row.family.clone(),
            row.group.clone(),
            row.x2.clone(),
            row.test.clone(),
            row.checked.join(", "),
            if row.pass { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &grid {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let render = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    let _ = writeln!(out, "{}", render(&header_cells));
    for row in &grid {
        let _ = writeln!(out, "{}", render(row));
    }
    let _ = writeln!(
        out,
        "{} families checked: {}",
        selected.len(),
        if failures == 0 {
            "all PASS".to_string()
        } else {
            format!("{failures} FAIL")
        }
    );
    Ok((out, code))
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_outcome(verdict: &SplitVerdict) -> Outcome {
    let mut line = serde_json::to_string(verdict).map_err(|e| e.to_string())?;
    line.push('\n');
    Ok((line, if verdict.is_split() { 0 } else { 1 }))
}

fn cmd_split_p2(file: &Path, max_cutoff: i64) -> Outcome {
    let bundle: BundleFile = load_json(file)?;
    let complex = bundle
        .to_complex()
        .map_err(|e| format!("{}: {e}", file.display()))?;
    let verdict = is_split_p2_with_cutoff(&complex, max_cutoff).map_err(|e| e.to_string())?;
    verdict_outcome(&verdict)
}

fn cmd_split_wedge(file: &Path, seed: u64) -> Outcome {
    let wedge_file: WedgeFile = load_json(file)?;
    let wedge = wedge_file
        .to_wedge()
        .map_err(|e| format!("{}: {e}", file.display()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verdict = is_split_wedge(&wedge, &mut rng).map_err(|e| e.to_string())?;
    verdict_outcome(&verdict)
}

fn cmd_bott(twist: i64, file: Option<&Path>, max_cutoff: i64, json: bool) -> Outcome {
    match file {
        None => {
            let h = bott(twist);
            if json {
                let value = json!({ "twist": twist, "h": h });
                Ok((to_pretty(&value)?, 0))
            } else {
                Ok((
                    format!("O({twist}) on the plane: h = [{}, {}, {}]\n", h[0], h[1], h[2]),
                    0,
                ))
            }
        }
        Some(path) => {
            let bundle: BundleFile = load_json(path)?;
            let complex = bundle
                .to_complex()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let report = complex_cohomology_with_cutoff(&complex, twist, max_cutoff)
                .map_err(|e| e.to_string())?;
            if json {
                let value = json!({ "twist": twist, "h": report.h, "cutoff": report.cutoff });
                Ok((to_pretty(&value)?, 0))
            } else {
                Ok((
                    format!(
                        "bundle from {} at twist {twist}: h = [{}, {}, {}] (certified at cutoff {})\n",
                        path.display(),
                        report.h[0],
                        report.h[1],
                        report.h[2],
                        report.cutoff
                    ),
                    0,
                ))
            }
        }
    }
}
