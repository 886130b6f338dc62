//! Universe-wide verification sweeps and the empirical scan of the product
//! upper bounds.
//!
//! Work is split into fixed-size chunks of the universe's index range. Chunks
//! run on a rayon pool and their partial results are merged in index order,
//! so every output is identical for any worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{check_min_degree_theorem, ng_report, triangular_index, Invariants, Relation, ReportOptions, Violation};
use crate::connectivity::{
    edge_connectivity, edge_connectivity_bruteforce, vertex_connectivity, vertex_connectivity_bruteforce,
    EDGE_BRUTEFORCE_MAX_EDGES, VERTEX_BRUTEFORCE_MAX_N,
};
use crate::delta::{complement_commutes, delta_complement};
use crate::enumerate::{
    labeled_count, nonisomorphic_graphs, random_graph, sample_seed, EdgeProbability, LABELED_MAX_N,
    NONISOMORPHIC_MAX_N,
};
use crate::error::{Error, Result};
use crate::formats::{from_graph6, to_graph6};
use crate::graph::Graph;

const CHUNK: u64 = 2048;
/// Violations kept verbatim per summary; the total is always counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// Every labeled graph on n vertices.
    Labeled,
    /// One canonical graph per isomorphism class.
    NonIsomorphic,
    /// Seeded G(n, p) samples.
    Random,
}

impl Universe {
    pub fn name(self) -> &'static str {
        match self {
            Universe::Labeled => "exhaustive",
            Universe::NonIsomorphic => "noniso",
            Universe::Random => "random",
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" | "labeled" => Ok(Universe::Labeled),
            "noniso" | "nonisomorphic" => Ok(Universe::NonIsomorphic),
            "random" => Ok(Universe::Random),
            _ => Err(Error::Input(format!("unknown universe {s:?}"))),
        }
    }
}

/// Check groups a sweep can run on every graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checks {
    /// Sum and product rows for δ, Δ, κ, λ (and the two-vertex equalities).
    pub bounds: bool,
    /// `δ(G) <= n - k + p - 1`.
    pub min_degree_theorem: bool,
    /// complement ∘ δ-complement = δ-complement ∘ complement.
    pub lemma: bool,
    /// κ <= λ <= δ <= Δ for G and G_δ.
    pub whitney: bool,
    /// graph6 encode/decode round trip.
    pub graph6: bool,
    /// Flow-based κ, λ against subset enumeration, and cut witnesses.
    pub oracle: bool,
    /// χ rows (δ-complement and classical).
    pub chromatic: bool,
    /// Classical rows against the ordinary complement.
    pub classical: bool,
}

impl Checks {
    pub const NAMES: [&'static str; 8] = [
        "bounds", "theorem", "lemma", "whitney", "graph6", "oracle", "chromatic", "classical",
    ];

    pub fn none() -> Self {
        Checks {
            bounds: false,
            min_degree_theorem: false,
            lemma: false,
            whitney: false,
            graph6: false,
            oracle: false,
            chromatic: false,
            classical: false,
        }
    }

    /// Everything exercised by the exhaustive bound verification.
    pub fn core() -> Self {
        Checks {
            bounds: true,
            min_degree_theorem: true,
            lemma: true,
            whitney: true,
            graph6: true,
            ..Checks::none()
        }
    }

    pub fn all() -> Self {
        Checks {
            oracle: true,
            chromatic: true,
            classical: true,
            ..Checks::core()
        }
    }

    fn set(&mut self, name: &str) -> Result<()> {
        match name {
            "bounds" => self.bounds = true,
            "theorem" => self.min_degree_theorem = true,
            "lemma" => self.lemma = true,
            "whitney" => self.whitney = true,
            "graph6" => self.graph6 = true,
            "oracle" => self.oracle = true,
            "chromatic" => self.chromatic = true,
            "classical" => self.classical = true,
            "core" => *self = Checks::core().union(*self),
            "all" => *self = Checks::all(),
            _ => return Err(Error::Input(format!("unknown check group {name:?}"))),
        }
        Ok(())
    }

    fn union(self, o: Checks) -> Checks {
        Checks {
            bounds: self.bounds || o.bounds,
            min_degree_theorem: self.min_degree_theorem || o.min_degree_theorem,
            lemma: self.lemma || o.lemma,
            whitney: self.whitney || o.whitney,
            graph6: self.graph6 || o.graph6,
            oracle: self.oracle || o.oracle,
            chromatic: self.chromatic || o.chromatic,
            classical: self.classical || o.classical,
        }
    }

    fn needs_report(&self) -> bool {
        self.bounds || self.min_degree_theorem || self.whitney || self.chromatic || self.classical
    }
}

/// Comma-separated group names, e.g. `bounds,lemma` or `all`.
impl FromStr for Checks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut checks = Checks::none();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            checks.set(part)?;
        }
        Ok(checks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub universe: Universe,
    pub n_values: Vec<usize>,
    /// Samples per n (random universe only).
    pub samples: u64,
    pub seed: u64,
    pub edge_probability: EdgeProbability,
    pub checks: Checks,
}

impl SweepConfig {
    pub fn new(universe: Universe, n_values: impl IntoIterator<Item = usize>, checks: Checks) -> Self {
        SweepConfig {
            universe,
            n_values: n_values.into_iter().collect(),
            samples: 0,
            seed: 0,
            edge_probability: EdgeProbability::HALF,
            checks,
        }
    }

    pub fn random(n_values: impl IntoIterator<Item = usize>, samples: u64, seed: u64, checks: Checks) -> Self {
        SweepConfig {
            samples,
            seed,
            ..SweepConfig::new(Universe::Random, n_values, checks)
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &n in &self.n_values {
            if n == 0 {
                return Err(Error::Input("universes need n >= 1".into()));
            }
            match self.universe {
                Universe::Labeled if n > LABELED_MAX_N => {
                    return Err(Error::Unsupported(format!(
                        "labeled universes are limited to n <= {LABELED_MAX_N}; use noniso or random"
                    )))
                }
                Universe::NonIsomorphic if n > NONISOMORPHIC_MAX_N => {
                    return Err(Error::Unsupported(format!(
                        "non-isomorphic universes are limited to n <= {NONISOMORPHIC_MAX_N}"
                    )))
                }
                _ => {}
            }
        }
        if self.universe == Universe::Random && self.samples == 0 {
            return Err(Error::Input("random universes need a positive sample count".into()));
        }
        EdgeProbability::new(self.edge_probability.num, self.edge_probability.den)?;
        Ok(())
    }
}

/// Indexable view of one universe at one n.
enum Source {
    Labeled(usize),
    Listed(Vec<Graph>),
    Random {
        n: usize,
        p: EdgeProbability,
        seed: u64,
        samples: u64,
    },
}

impl Source {
    fn open(config: &SweepConfig, n: usize) -> Result<Self> {
        Ok(match config.universe {
            Universe::Labeled => Source::Labeled(n),
            Universe::NonIsomorphic => Source::Listed(nonisomorphic_graphs(n)?),
            Universe::Random => Source::Random {
                n,
                p: config.edge_probability,
                seed: config.seed,
                samples: config.samples,
            },
        })
    }

    fn len(&self) -> u64 {
        match self {
            Source::Labeled(n) => labeled_count(*n),
            Source::Listed(v) => v.len() as u64,
            Source::Random { samples, .. } => *samples,
        }
    }

    fn get(&self, i: u64) -> Graph {
        match self {
            Source::Labeled(n) => Graph::from_mask(*n, i).expect("index below 2^pairs"),
            Source::Listed(v) => v[i as usize].clone(),
            Source::Random { n, p, seed, .. } => {
                random_graph(*n, *p, sample_seed(*seed, *n, i)).expect("validated probability")
            }
        }
    }

    /// Processes the whole universe in ordered chunks.
    fn fold<T, F, M>(&self, per_chunk: F, merge: M) -> T
    where
        T: Send + Default,
        F: Fn(&mut T, u64, Graph) + Sync,
        M: Fn(&mut T, T),
        Self: Sync,
    {
        let len = self.len();
        let chunks = len.div_ceil(CHUNK);
        let parts: Vec<T> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = T::default();
                for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                    per_chunk(&mut acc, i, self.get(i));
                }
                acc
            })
            .collect();
        let mut total = T::default();
        for part in parts {
            merge(&mut total, part);
        }
        total
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub universe: Option<Universe>,
    pub n: usize,
    pub graphs: u64,
    /// True for random universes: results cover a sample only.
    pub sampled: bool,
    /// Number of graphs each check group ran on.
    pub checks_run: BTreeMap<String, u64>,
    /// Number of graphs on which a group (or part of it) was skipped, by reason.
    pub skipped: BTreeMap<String, u64>,
    /// Number of graphs on which each bound row held with equality.
    pub tight: BTreeMap<String, u64>,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub zero_violations: bool,
}

impl SweepSummary {
    fn merge(&mut self, other: SweepSummary) {
        self.graphs += other.graphs;
        for (map, from) in [
            (&mut self.checks_run, other.checks_run),
            (&mut self.skipped, other.skipped),
            (&mut self.tight, other.tight),
        ] {
            for (k, v) in from {
                *map.entry(k).or_default() += v;
            }
        }
        self.violation_count += other.violation_count;
        let room = MAX_RECORDED_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }

    fn bump(map: &mut BTreeMap<String, u64>, key: &str) {
        if let Some(v) = map.get_mut(key) {
            *v += 1;
        } else {
            map.insert(key.to_string(), 1);
        }
    }

    fn violate(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < MAX_RECORDED_VIOLATIONS {
            self.violations.push(v);
        }
    }

    /// One-line human summary, e.g. `64 graphs, 0 violations`.
    pub fn headline(&self) -> String {
        format!(
            "{} graphs, {} violations",
            self.graphs, self.violation_count
        )
    }
}

fn group_of(anchor: &str) -> &'static str {
    if anchor == "min_degree_theorem" {
        "theorem"
    } else if anchor.starts_with("whitney") || anchor.starts_with("min_le_max") {
        "whitney"
    } else if anchor.contains("chromatic") {
        "chromatic"
    } else if anchor.starts_with("xu_") || anchor.starts_with("alavi_") || anchor.starts_with("classical_") {
        "classical"
    } else {
        "bounds"
    }
}

fn enabled(checks: &Checks, group: &str) -> bool {
    match group {
        "theorem" => checks.min_degree_theorem,
        "whitney" => checks.whitney,
        "chromatic" => checks.chromatic,
        "classical" => checks.classical,
        _ => checks.bounds,
    }
}

fn equality_violation(anchor: &str, g6: &str, left: i64, right: i64) -> Violation {
    Violation {
        anchor: anchor.to_string(),
        graph6: g6.to_string(),
        relation: Relation::Equal,
        left,
        right,
    }
}

/// Runs every enabled check group on one graph.
pub fn check_graph(g: &Graph, checks: &Checks, summary: &mut SweepSummary) -> Result<()> {
    let g6 = to_graph6(g)?;
    summary.graphs += 1;

    if checks.needs_report() {
        let report = ng_report(
            g,
            ReportOptions {
                classical: checks.classical,
                chromatic: checks.chromatic,
            },
        )?;
        for row in &report.rows {
            let group = group_of(row.anchor);
            if !enabled(checks, group) {
                continue;
            }
            if row.tight() {
                SweepSummary::bump(&mut summary.tight, row.anchor);
            }
            if !row.holds() {
                summary.violate(Violation {
                    anchor: row.anchor.to_string(),
                    graph6: g6.clone(),
                    relation: row.relation,
                    left: row.left,
                    right: row.right,
                });
            }
        }
        for reason in &report.skipped {
            SweepSummary::bump(&mut summary.skipped, reason);
        }
        for (group, on) in [
            ("bounds", checks.bounds),
            ("theorem", checks.min_degree_theorem),
            ("whitney", checks.whitney),
            ("chromatic", checks.chromatic),
            ("classical", checks.classical),
        ] {
            if on {
                SweepSummary::bump(&mut summary.checks_run, group);
            }
        }
    }
    if checks.min_degree_theorem && !check_min_degree_theorem(g)? {
        summary.violate(equality_violation("min_degree_theorem_direct", &g6, 0, 1));
    }
    if checks.lemma {
        SweepSummary::bump(&mut summary.checks_run, "lemma");
        if !complement_commutes(g)? {
            summary.violate(equality_violation("complement_commutes", &g6, 0, 1));
        }
    }
    if checks.graph6 {
        SweepSummary::bump(&mut summary.checks_run, "graph6");
        let back = from_graph6(&g6)?;
        if back != *g || to_graph6(&back)? != g6 {
            summary.violate(equality_violation("graph6_round_trip", &g6, 0, 1));
        }
    }
    if checks.oracle {
        oracle_checks(g, &g6, summary)?;
    }
    Ok(())
}

fn oracle_checks(g: &Graph, g6: &str, summary: &mut SweepSummary) -> Result<()> {
    let gd = delta_complement(g)?;
    for (label, h) in [("graph", g), ("delta_complement", &gd)] {
        let vc = vertex_connectivity(h)?;
        let ec = edge_connectivity(h)?;
        if h.n() <= VERTEX_BRUTEFORCE_MAX_N {
            SweepSummary::bump(&mut summary.checks_run, "oracle_vertex");
            let brute = vertex_connectivity_bruteforce(h)?;
            if brute != vc.value {
                summary.violate(equality_violation(
                    &format!("oracle_vertex_connectivity_{label}"),
                    g6,
                    vc.value as i64,
                    brute as i64,
                ));
            }
        } else {
            SweepSummary::bump(&mut summary.skipped, "oracle_vertex (n too large)");
        }
        if h.edge_count() <= EDGE_BRUTEFORCE_MAX_EDGES {
            SweepSummary::bump(&mut summary.checks_run, "oracle_edge");
            let brute = edge_connectivity_bruteforce(h)?;
            if brute != ec.value {
                summary.violate(equality_violation(
                    &format!("oracle_edge_connectivity_{label}"),
                    g6,
                    ec.value as i64,
                    brute as i64,
                ));
            }
        } else {
            SweepSummary::bump(&mut summary.skipped, "oracle_edge (too many edges)");
        }
        SweepSummary::bump(&mut summary.checks_run, "cut_witness");
        if !vc.witness.is_empty()
            && (vc.witness.len() != vc.value || h.without_vertices(&vc.witness).is_connected()?)
        {
            summary.violate(equality_violation(&format!("vertex_cut_witness_{label}"), g6, 0, 1));
        }
        if !ec.witness.is_empty() && (ec.witness.len() != ec.value || h.without_edges(&ec.witness).is_connected()?) {
            summary.violate(equality_violation(&format!("edge_cut_witness_{label}"), g6, 0, 1));
        }
    }
    Ok(())
}

/// Runs the configured checks over every graph of every requested n.
pub fn sweep_verify(config: &SweepConfig) -> Result<Vec<SweepSummary>> {
    config.validate()?;
    config
        .n_values
        .iter()
        .map(|&n| {
            let source = Source::open(config, n)?;
            let total = source.fold(
                |acc: &mut Option<Result<SweepSummary>>, _, g| {
                    let s = acc.get_or_insert_with(|| Ok(SweepSummary::default()));
                    if let Ok(summary) = s {
                        if let Err(e) = check_graph(&g, &config.checks, summary) {
                            *s = Err(e);
                        }
                    }
                },
                |acc, part| match (acc.as_mut(), part) {
                    (_, None) => {}
                    (None, part) => *acc = part,
                    (Some(Err(_)), _) => {}
                    (Some(Ok(_)), Some(Err(e))) => *acc = Some(Err(e)),
                    (Some(Ok(a)), Some(Ok(b))) => a.merge(b),
                },
            );
            let mut summary = total.unwrap_or_else(|| Ok(SweepSummary::default()))?;
            summary.universe = Some(config.universe);
            summary.n = n;
            summary.sampled = config.universe == Universe::Random;
            summary.zero_violations = summary.violation_count == 0;
            Ok(summary)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Product upper-bound scan
// ---------------------------------------------------------------------------

/// Largest `4·a·b` seen for one invariant pair over a universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductExtremum {
    pub invariant: &'static str,
    /// `4·x(G)·x(G_δ)` at the maximum.
    pub scaled_max: i64,
    /// `(2n - k - 1)^2`.
    pub scaled_bound: i64,
    pub gap: i64,
    pub tight: bool,
    /// Number of graphs attaining `scaled_max`.
    pub attained_by: u64,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub universe: Universe,
    pub graphs: u64,
    /// `exhaustive` or `sampled: lower bound on the maximum`.
    pub coverage: &'static str,
    pub products: Vec<ProductExtremum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessTable {
    pub rows: Vec<ScanRow>,
}

/// One CSV line of a [`SharpnessTable`].
#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub n: usize,
    pub k: usize,
    pub universe: Universe,
    pub coverage: &'static str,
    pub graphs: u64,
    pub invariant: &'static str,
    pub scaled_max: i64,
    pub scaled_bound: i64,
    pub gap: i64,
    pub tight: bool,
    pub attained_by: u64,
    pub witness: String,
}

impl SharpnessTable {
    pub fn records(&self) -> Vec<ScanRecord> {
        self.rows
            .iter()
            .flat_map(|r| {
                r.products.iter().map(move |p| ScanRecord {
                    n: r.n,
                    k: r.k,
                    universe: r.universe,
                    coverage: r.coverage,
                    graphs: r.graphs,
                    invariant: p.invariant,
                    scaled_max: p.scaled_max,
                    scaled_bound: p.scaled_bound,
                    gap: p.gap,
                    tight: p.tight,
                    attained_by: p.attained_by,
                    witness: p.witness.clone(),
                })
            })
            .collect()
    }
}

pub const SCAN_INVARIANTS: [&str; 3] = ["delta", "kappa", "lambda"];

/// The three scaled products `4·x(G)·x(G_δ)` for x = δ, κ, λ.
pub fn scaled_products(g: &Graph) -> Result<[i64; 3]> {
    let a = Invariants::of(g)?;
    let b = Invariants::of(&delta_complement(g)?)?;
    Ok([
        4 * (a.min_degree * b.min_degree) as i64,
        4 * (a.vertex_connectivity * b.vertex_connectivity) as i64,
        4 * (a.edge_connectivity * b.edge_connectivity) as i64,
    ])
}

#[derive(Default)]
struct ScanAcc {
    graphs: u64,
    /// Per invariant: (max, first index attaining it, count attaining it).
    best: [Option<(i64, u64, u64)>; 3],
    error: Option<Error>,
}

impl ScanAcc {
    fn merge(&mut self, other: ScanAcc) {
        self.graphs += other.graphs;
        if self.error.is_none() {
            self.error = other.error;
        }
        for (mine, theirs) in self.best.iter_mut().zip(other.best) {
            *mine = match (*mine, theirs) {
                (None, t) => t,
                (m, None) => m,
                (Some(m), Some(t)) if t.0 > m.0 => Some(t),
                (Some(m), Some(t)) if t.0 == m.0 => Some((m.0, m.1, m.2 + t.2)),
                (m, _) => m,
            };
        }
    }
}

/// Empirical maxima of the three scaled products against `(2n-k-1)^2`.
pub fn product_conjecture_scan(config: &SweepConfig) -> Result<SharpnessTable> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.n_values.len());
    for &n in &config.n_values {
        let source = Source::open(config, n)?;
        let acc = source.fold(
            |acc: &mut ScanAcc, i, g| {
                if acc.error.is_some() {
                    return;
                }
                match scaled_products(&g) {
                    Ok(values) => {
                        acc.graphs += 1;
                        for (slot, v) in acc.best.iter_mut().zip(values) {
                            *slot = match *slot {
                                Some((m, _, _)) if v > m => Some((v, i, 1)),
                                Some((m, first, c)) if v == m => Some((m, first, c + 1)),
                                Some(s) => Some(s),
                                None => Some((v, i, 1)),
                            };
                        }
                    }
                    Err(e) => acc.error = Some(e),
                }
            },
            ScanAcc::merge,
        );
        if let Some(e) = acc.error {
            return Err(e);
        }
        let k = triangular_index(n)?.k;
        let top = 2 * n as i64 - k as i64 - 1;
        let bound = top * top;
        let products = SCAN_INVARIANTS
            .iter()
            .zip(acc.best)
            .map(|(&invariant, best)| {
                let (max, index, count) = best.expect("universes are non-empty");
                Ok(ProductExtremum {
                    invariant,
                    scaled_max: max,
                    scaled_bound: bound,
                    gap: bound - max,
                    tight: bound == max,
                    attained_by: count,
                    witness: to_graph6(&source.get(index))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(ScanRow {
            n,
            k,
            universe: config.universe,
            graphs: acc.graphs,
            coverage: if config.universe == Universe::Random {
                "sampled: lower bound on the maximum"
            } else {
                "exhaustive"
            },
            products,
        });
    }
    Ok(SharpnessTable { rows })
}

/// Runs `f` on a dedicated pool with `jobs` workers (`None`: rayon default).
pub fn with_workers<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Input(format!("cannot start {j} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}
