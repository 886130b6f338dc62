//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.
//!
//! Custom harness (no libtest) so the lines reach stdout without
//! `--nocapture`.

use std::process::ExitCode;
use std::time::Instant;

use deltacomp::enumerate::{labeled_graphs, nonisomorphic_graphs};
use deltacomp::extremal::{check_witness, Family};
use deltacomp::sweep::{
    product_conjecture_scan, scaled_products, sweep_verify, with_workers, Checks, SharpnessTable, SweepConfig,
    SweepSummary, Universe,
};
use deltacomp::{from_graph6, to_graph6, Graph};
use itertools::Itertools;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Runs {
    exhaustive: Vec<SweepSummary>,
    oracle: Vec<SweepSummary>,
    scan: SharpnessTable,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_violation(summaries: &[SweepSummary]) -> String {
    summaries
        .iter()
        .find_map(|s| s.violations.first().map(|v| format!("n={} {} on {}", s.n, v.anchor, v.graph6)))
        .unwrap_or_else(|| "none recorded".into())
}

fn totals(summaries: &[SweepSummary]) -> (u64, u64) {
    summaries
        .iter()
        .fold((0, 0), |(g, v), s| (g + s.graphs, v + s.violation_count))
}

/// Own recomputation of k(n) as the smallest k with C(k+1, 2) >= n.
fn k_of(n: usize) -> usize {
    (1..).find(|k| k * (k + 1) / 2 >= n).unwrap()
}

fn exhaustive_config() -> SweepConfig {
    SweepConfig::new(Universe::Labeled, 1..=7, Checks::core())
}

fn oracle_configs() -> Vec<SweepConfig> {
    let checks = Checks {
        oracle: true,
        ..Checks::none()
    };
    vec![
        SweepConfig::new(Universe::NonIsomorphic, 1..=6, checks),
        SweepConfig::random([7], 1000, 20240607, checks),
        SweepConfig::random([8], 1000, 20240607, checks),
    ]
}

fn scan_config() -> SweepConfig {
    SweepConfig::new(Universe::NonIsomorphic, 3..=8, Checks::none())
}

fn run_oracle() -> Vec<SweepSummary> {
    oracle_configs()
        .iter()
        .flat_map(|c| sweep_verify(c).expect("oracle sweep"))
        .collect()
}

fn criterion_1(runs: &Runs) -> Outcome {
    let s = &runs.exhaustive;
    let (graphs, violations) = totals(s);
    let expected: u64 = (1..=7).map(|n: u32| 1u64 << (n * (n - 1) / 2)).sum();
    ensure(graphs == expected, || format!("saw {graphs} graphs, expected {expected}"))?;
    ensure(violations == 0, || format!("{violations} violations, first: {}", first_violation(s)))?;
    for summary in s {
        for group in ["bounds", "theorem", "lemma", "whitney"] {
            ensure(summary.checks_run.get(group) == Some(&summary.graphs), || {
                format!("group {group} did not run on every graph at n={}", summary.n)
            })?;
        }
    }
    let n2 = &s[1];
    for anchor in ["n2_delta_sum", "n2_max_degree_sum", "n2_kappa_sum", "n2_lambda_sum"] {
        ensure(n2.tight.get(anchor) == Some(&2), || format!("{anchor} not evaluated as an equality on both graphs"))?;
    }
    Ok(format!("n=1..7, {graphs} labeled graphs, 0 violations"))
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    a.edge_count() == b.edge_count()
        && (0..n)
            .permutations(n)
            .any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

fn criterion_2() -> Outcome {
    for (n, expected) in [(4, 11), (5, 34)] {
        let mut reps: Vec<Graph> = Vec::new();
        for g in labeled_graphs(n).unwrap() {
            if !reps.iter().any(|r| isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        let generated = nonisomorphic_graphs(n).map_err(|e| e.to_string())?.len();
        ensure(reps.len() == expected && generated == expected, || {
            format!("n={n}: pairwise dedup {} classes, generator {generated}", reps.len())
        })?;
    }
    let s = sweep_verify(&SweepConfig::new(Universe::NonIsomorphic, [8], Checks::core())).map_err(|e| e.to_string())?;
    let (graphs, violations) = totals(&s);
    ensure(graphs == 12346, || format!("{graphs} classes at n=8"))?;
    ensure(violations == 0, || format!("{violations} violations, first: {}", first_violation(&s)))?;
    Ok(format!("{graphs} classes at n=8, 0 violations; dedup oracle 11 and 34 classes"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 3..=100 {
        let k = k_of(n) as i64;
        let n_i = n as i64;
        for family in Family::ALL {
            let w = family.generate(n).map_err(|e| e.to_string())?;
            let check = check_witness(&w).map_err(|e| e.to_string())?;
            ensure(check.attained(), || format!("{family} at n={n} not attained: {:?}", check.outcomes))?;
            for o in &check.outcomes {
                let expected = match o.anchor {
                    "delta_sum_upper" | "kappa_sum_upper" | "lambda_sum_upper" => Some(2 * n_i - k - 1),
                    "max_degree_sum_lower" => Some(k - 1),
                    "max_degree_sum_upper" => Some(2 * n_i - 2),
                    "max_degree_product_upper" => Some((n_i - 1) * (n_i - 1)),
                    a if a.ends_with("_lower") => Some(0),
                    _ => None,
                };
                // Upper rows hold the attained value on the left, lower rows on the right.
                let value = if o.anchor.ends_with("_upper") { o.left } else { o.right };
                ensure(expected == Some(value), || {
                    format!("{family} at n={n}: {} = {value}, expected {expected:?}", o.anchor)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} witnesses over n=3..100, every targeted row exact"))
}

fn criterion_4(runs: &Runs) -> Outcome {
    let s = &runs.oracle;
    let (graphs, violations) = totals(s);
    ensure(violations == 0, || format!("{violations} disagreements, first: {}", first_violation(s)))?;
    for summary in s {
        let both = 2 * summary.graphs;
        ensure(summary.checks_run.get("oracle_vertex") == Some(&both), || {
            format!("vertex oracle skipped at n={}", summary.n)
        })?;
        ensure(summary.checks_run.get("oracle_edge") == Some(&both), || {
            format!("edge oracle skipped at n={}: {:?}", summary.n, summary.skipped)
        })?;
    }
    Ok(format!("{graphs} graphs (non-isomorphic n<=6, 1000 random each at n=7,8), flow = brute force"))
}

fn criterion_5() -> Outcome {
    let checks = Checks {
        chromatic: true,
        classical: true,
        ..Checks::none()
    };
    let s = sweep_verify(&SweepConfig::new(Universe::NonIsomorphic, 4..=8, checks)).map_err(|e| e.to_string())?;
    let (graphs, violations) = totals(&s);
    ensure(violations == 0, || format!("{violations} violations, first: {}", first_violation(&s)))?;
    for summary in &s {
        ensure(summary.skipped.is_empty(), || format!("skipped at n={}: {:?}", summary.n, summary.skipped))?;
        ensure(summary.checks_run.get("chromatic") == Some(&summary.graphs), || {
            format!("chromatic rows missing at n={}", summary.n)
        })?;
    }
    Ok(format!("{graphs} non-isomorphic graphs n=4..8, δ-chromatic and classical rows hold"))
}

fn criterion_6(runs: &Runs) -> Outcome {
    for summary in &runs.exhaustive {
        ensure(summary.checks_run.get("graph6") == Some(&summary.graphs), || {
            format!("round trip skipped at n={}", summary.n)
        })?;
    }
    ensure(
        runs.exhaustive
            .iter()
            .all(|s| s.violations.iter().all(|v| v.anchor != "graph6_round_trip")),
        || "round-trip failure".into(),
    )?;
    let path3 = Graph::path(3);
    let vectors = [
        ("A_", Graph::complete(2)),
        ("Bw", Graph::complete(3)),
        ("Bg", path3),
        ("@", Graph::empty(1)),
    ];
    for (text, g) in &vectors {
        let decoded = from_graph6(text).map_err(|e| e.to_string())?;
        let encoded = to_graph6(g).map_err(|e| e.to_string())?;
        ensure(decoded == *g && encoded == *text, || format!("vector {text} mismatch"))?;
    }
    let (graphs, _) = totals(&runs.exhaustive);
    Ok(format!("{graphs} round trips bit-exact, 4 fixed vectors"))
}

fn criterion_7(runs: &Runs) -> Outcome {
    let mut gaps = Vec::new();
    for row in &runs.scan.rows {
        for p in &row.products {
            ensure(p.scaled_max <= p.scaled_bound, || {
                format!("n={} {}: 4*prod {} exceeds {}", row.n, p.invariant, p.scaled_max, p.scaled_bound)
            })?;
            let g = from_graph6(&p.witness).map_err(|e| e.to_string())?;
            let values = scaled_products(&g).map_err(|e| e.to_string())?;
            let i = ["delta", "kappa", "lambda"].iter().position(|&x| x == p.invariant).unwrap();
            ensure(values[i] == p.scaled_max, || {
                format!("witness {} re-evaluates to {} not {}", p.witness, values[i], p.scaled_max)
            })?;
        }
        gaps.push(format!(
            "n={}:{}",
            row.n,
            row.products.iter().map(|p| p.gap.to_string()).join("/")
        ));
    }
    ensure(runs.scan.rows.len() == 6, || "missing rows".into())?;
    Ok(format!("gaps (δ/κ/λ, scaled by 4) {}", gaps.join(" ")))
}

fn criterion_8(runs: &Runs) -> Outcome {
    let again = with_workers(Some(3), || {
        (
            sweep_verify(&exhaustive_config()).expect("sweep"),
            run_oracle(),
            product_conjecture_scan(&scan_config()).expect("scan"),
        )
    })
    .map_err(|e| e.to_string())?;
    ensure(json(&runs.exhaustive) == json(&again.0), || "criterion 1 output differs".into())?;
    ensure(json(&runs.oracle) == json(&again.1), || "criterion 4 output differs".into())?;
    ensure(json(&runs.scan) == json(&again.2), || "criterion 7 output differs".into())?;
    Ok("criteria 1, 4, 7 byte-identical JSON with 1 and 3 workers".into())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let runs = with_workers(Some(1), || Runs {
        exhaustive: sweep_verify(&exhaustive_config()).expect("exhaustive sweep"),
        oracle: run_oracle(),
        scan: product_conjecture_scan(&scan_config()).expect("scan"),
    })
    .expect("worker pool");

    let criteria: Vec<Criterion> = vec![
        ("exhaustive bound verification", Box::new(|| criterion_1(&runs))),
        ("non-isomorphic n=8 sweep", Box::new(criterion_2)),
        ("sharpness equalities", Box::new(criterion_3)),
        ("connectivity oracle equivalence", Box::new(|| criterion_4(&runs))),
        ("chromatic cross-checks", Box::new(criterion_5)),
        ("format fidelity", Box::new(|| criterion_6(&runs))),
        ("product conjecture scan", Box::new(|| criterion_7(&runs))),
        ("determinism", Box::new(|| criterion_8(&runs))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
