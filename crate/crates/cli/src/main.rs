use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltacomp::enumerate::EdgeProbability;
use deltacomp::extremal::{check_witness, Family};
use deltacomp::sweep::{product_conjecture_scan, sweep_verify, with_workers, Checks, SweepConfig, Universe};
use deltacomp::{delta_complement, from_edge_list_text, from_graph6, ng_report, to_graph6, Error, Graph, ReportOptions};
use serde::Serialize;

const JOBS_ENV: &str = "DELTACOMP_JOBS";

#[derive(Parser)]
#[command(name = "deltacomp", version, about = "δ-complements and Nordhaus-Gaddum-type bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the δ-complement of each input graph as graph6.
    Delta {
        /// graph6 lines or an edge list; stdin when omitted.
        input: Option<PathBuf>,
        /// Also print the degree partition of the input graph.
        #[arg(long)]
        show_partition: bool,
    },
    /// Evaluate every bound row for each input graph.
    Report {
        input: Option<PathBuf>,
        /// Add rows against the ordinary complement.
        #[arg(long)]
        classical: bool,
        /// Add chromatic rows (n <= 16).
        #[arg(long)]
        chromatic: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Check all bounds over a universe of graphs.
    Verify {
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[command(flatten)]
        range: NRange,
        /// Samples per n for --mode random.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for --mode random, as a/b, integer or decimal.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Comma-separated groups: bounds, theorem, lemma, whitney, graph6,
        /// oracle, chromatic, classical, core, all.
        #[arg(long, default_value = "core")]
        checks: String,
        #[command(flatten)]
        workers: Workers,
        #[arg(long)]
        json: bool,
    },
    /// Build and check the extremal families.
    Extremal {
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value = "3..20")]
        n_range: String,
        #[command(flatten)]
        format: Format,
    },
    /// Largest products δ·δ_δ, κ·κ_δ, λ·λ_δ found against their upper bound.
    ScanConjecture {
        #[arg(long, default_value = "3..7")]
        n_range: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[command(flatten)]
        workers: Workers,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Args)]
struct Format {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct NRange {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long)]
    n_range: Option<String>,
}

#[derive(Args)]
struct Workers {
    /// Worker threads (default: $DELTACOMP_JOBS, else all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Noniso,
    Random,
}

impl Mode {
    fn universe(self) -> Universe {
        match self {
            Mode::Exhaustive => Universe::Labeled,
            Mode::Noniso => Universe::NonIsomorphic,
            Mode::Random => Universe::Random,
        }
    }
}

enum Failure {
    Usage(String),
    Format(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) | Error::Input(_) => Failure::Format(e.to_string()),
            Error::Domain(_) | Error::Unsupported(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Format(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Format(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Format(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Delta { input, show_partition } => cmd_delta(input, show_partition),
        Command::Report {
            input,
            classical,
            chromatic,
            format,
        } => cmd_report(input, ReportOptions { classical, chromatic }, &format),
        Command::Verify {
            mode,
            range,
            samples,
            seed,
            p,
            checks,
            workers,
            json,
        } => cmd_verify(mode, &range, samples, seed, &p, &checks, &workers, json),
        Command::Extremal {
            family,
            n_range,
            format,
        } => cmd_extremal(&family, &n_range, &format),
        Command::ScanConjecture {
            n_range,
            mode,
            samples,
            seed,
            p,
            workers,
            format,
        } => cmd_scan(&n_range, mode, samples, seed, &p, &workers, &format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Format(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_input(path: Option<PathBuf>) -> std::result::Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(&p).map_err(|e| Failure::Format(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// An edge list starts with a digit (`n m`); graph6 never does.
fn parse_graphs(text: &str) -> std::result::Result<Vec<Graph>, Failure> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    let graphs = match first {
        None => return Err(Failure::Format("no graph in input".into())),
        Some(l) if l.starts_with(|c: char| c.is_ascii_digit()) => vec![from_edge_list_text(text)?],
        Some(_) => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(from_graph6)
            .collect::<deltacomp::Result<Vec<_>>>()?,
    };
    Ok(graphs)
}

fn parse_range(text: &str) -> std::result::Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("invalid range {text:?}; expected a..b"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn parse_probability(text: &str) -> std::result::Result<EdgeProbability, Failure> {
    text.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn jobs(workers: &Workers) -> std::result::Result<Option<usize>, Failure> {
    if let Some(j) = workers.jobs {
        return Ok(Some(j));
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{JOBS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn write_csv<T: Serialize>(records: impl IntoIterator<Item = T>) -> CmdResult {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned columns separated by two spaces.
fn print_table(header: &[&str], rows: &[Vec<String>]) -> CmdResult {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = io::stdout().lock();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn cmd_delta(input: Option<PathBuf>, show_partition: bool) -> CmdResult {
    let graphs = parse_graphs(&read_input(input)?)?;
    let mut out = io::stdout().lock();
    for g in graphs {
        writeln!(out, "{}", to_graph6(&delta_complement(&g)?)?)?;
        if show_partition {
            for class in g.degree_partition()?.classes {
                let members: Vec<String> = class.vertices.iter().map(usize::to_string).collect();
                writeln!(out, "  degree {}: {}", class.degree, members.join(" "))?;
            }
        }
    }
    Ok(())
}

fn cmd_report(input: Option<PathBuf>, options: ReportOptions, format: &Format) -> CmdResult {
    let graphs = parse_graphs(&read_input(input)?)?;
    let reports = graphs
        .iter()
        .map(|g| ng_report(g, options))
        .collect::<deltacomp::Result<Vec<_>>>()?;
    let all_hold = reports.iter().all(|r| r.rows.iter().all(|row| row.holds()));

    if format.json {
        let mut out = io::stdout().lock();
        for r in &reports {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        }
    } else if format.csv {
        write_csv(reports.iter().flat_map(|r| r.records()))?;
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                println!();
            }
            println!("graph {}  n={}  k={}", r.graph6, r.n, r.k);
            println!(
                "  G:   δ={} Δ={} κ={} λ={} m={}",
                r.graph.min_degree,
                r.graph.max_degree,
                r.graph.vertex_connectivity,
                r.graph.edge_connectivity,
                r.graph.degree_classes
            );
            println!(
                "  G_δ: δ={} Δ={} κ={} λ={} m={}",
                r.delta_complement.min_degree,
                r.delta_complement.max_degree,
                r.delta_complement.vertex_connectivity,
                r.delta_complement.edge_connectivity,
                r.delta_complement.degree_classes
            );
            let rows: Vec<Vec<String>> = r
                .records()
                .into_iter()
                .map(|b| {
                    vec![
                        b.anchor.to_string(),
                        b.left.to_string(),
                        match b.relation {
                            deltacomp::bounds::Relation::AtMost => "<=".to_string(),
                            deltacomp::bounds::Relation::Equal => "==".to_string(),
                        },
                        b.right.to_string(),
                        b.slack.to_string(),
                        if b.holds { "ok" } else { "VIOLATED" }.to_string(),
                    ]
                })
                .collect();
            print_table(&["row", "left", "rel", "right", "slack", "status"], &rows)?;
            for s in &r.skipped {
                println!("  skipped: {s}");
            }
        }
    }
    if all_hold {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    mode: Mode,
    range: &NRange,
    samples: Option<u64>,
    seed: u64,
    p: &str,
    checks: &str,
    workers: &Workers,
    json: bool,
) -> CmdResult {
    let n_values: Vec<usize> = match (&range.n, &range.n_range) {
        (Some(n), _) => vec![*n],
        (None, Some(r)) => parse_range(r)?.collect(),
        (None, None) => return Err(Failure::Usage("one of --n or --n-range is required".into())),
    };
    let checks: Checks = checks.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut config = SweepConfig::new(mode.universe(), n_values, checks);
    match (mode, samples) {
        (Mode::Random, Some(s)) => config.samples = s,
        (Mode::Random, None) => return Err(Failure::Usage("--mode random needs --samples".into())),
        (_, Some(_)) => return Err(Failure::Usage("--samples only applies to --mode random".into())),
        _ => {}
    }
    config.seed = seed;
    config.edge_probability = parse_probability(p)?;
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let summaries = with_workers(jobs(workers)?, || sweep_verify(&config))??;
    if json {
        println!("{}", serde_json::to_string_pretty(&summaries)?);
    } else {
        for s in &summaries {
            println!("n={} {}: {}", s.n, config.universe, s.headline());
            for (reason, count) in &s.skipped {
                println!("  skipped {reason}: {count}");
            }
            for v in &s.violations {
                println!(
                    "  violation {} on {}: {} vs {}",
                    v.anchor, v.graph6, v.left, v.right
                );
            }
        }
    }
    if summaries.iter().all(|s| s.zero_violations) {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

#[derive(Serialize)]
struct ExtremalRow {
    family: &'static str,
    n: usize,
    k: Option<usize>,
    l: Option<usize>,
    graph6: Option<String>,
    targets: String,
    status: &'static str,
}

fn cmd_extremal(family: &str, n_range: &str, format: &Format) -> CmdResult {
    let families: Vec<Family> = if family == "all" {
        Family::ALL.to_vec()
    } else {
        vec![family.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?]
    };
    let range = parse_range(n_range)?;
    if *range.start() == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut all_attained = true;
    for &f in &families {
        for n in range.clone() {
            if n < f.min_n() {
                rows.push(ExtremalRow {
                    family: f.name(),
                    n,
                    k: None,
                    l: None,
                    graph6: None,
                    targets: String::new(),
                    status: "inapplicable",
                });
                continue;
            }
            let w = f.generate(n)?;
            let check = check_witness(&w)?;
            let attained = check.attained();
            all_attained &= attained;
            rows.push(ExtremalRow {
                family: f.name(),
                n,
                k: Some(w.k),
                l: w.l,
                graph6: Some(to_graph6(&w.graph)?),
                targets: check
                    .outcomes
                    .iter()
                    .map(|o| format!("{}={}/{}", o.anchor, o.left, o.right))
                    .collect::<Vec<_>>()
                    .join(";"),
                status: if attained { "attained" } else { "NOT ATTAINED" },
            });
        }
    }
    if format.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else if format.csv {
        write_csv(&rows)?;
    } else {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.family.to_string(),
                    r.n.to_string(),
                    opt(r.k),
                    opt(r.l),
                    r.status.to_string(),
                    r.graph6.clone().unwrap_or_else(|| "-".into()),
                ]
            })
            .collect();
        print_table(&["family", "n", "k", "l", "status", "graph6"], &table)?;
    }
    if all_attained {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    n_range: &str,
    mode: Mode,
    samples: u64,
    seed: u64,
    p: &str,
    workers: &Workers,
    format: &Format,
) -> CmdResult {
    let range = parse_range(n_range)?;
    let mut config = SweepConfig::new(mode.universe(), range, Checks::none());
    config.samples = samples;
    config.seed = seed;
    config.edge_probability = parse_probability(p)?;
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let table = with_workers(jobs(workers)?, || product_conjecture_scan(&config))??;
    if format.json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else if format.csv {
        write_csv(table.records())?;
    } else {
        let rows: Vec<Vec<String>> = table
            .records()
            .into_iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.k.to_string(),
                    r.invariant.to_string(),
                    r.scaled_max.to_string(),
                    r.scaled_bound.to_string(),
                    r.gap.to_string(),
                    if r.tight { "yes" } else { "no" }.to_string(),
                    r.graphs.to_string(),
                    r.coverage.to_string(),
                    r.witness,
                ]
            })
            .collect();
        print_table(
            &["n", "k", "product", "4*max", "bound", "gap", "tight", "graphs", "coverage", "witness"],
            &rows,
        )?;
    }
    // Violations of the upper bound would surface as a negative gap.
    if table.records().iter().all(|r| r.gap >= 0) {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}
