//! Bound formulas for a graph and its δ-complement, the per-graph report that
//! evaluates every inequality, and violation detection.
//!
//! Every row is an exact integer comparison. Half-integer product bounds
//! `((2n-k-1)/2)^2` are compared as `4·a·b <= (2n-k-1)^2`, and square-root
//! bounds `2·sqrt(x) <= s` as `4·x <= s^2`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::chromatic::{chromatic_number, CHROMATIC_MAX_N};
use crate::connectivity::{edge_connectivity, vertex_connectivity};
use crate::delta::delta_complement;
use crate::error::{Error, Result};
use crate::formats::to_graph6;
use crate::graph::Graph;

/// The unique `k` with `C(k,2) + 1 <= n <= C(k+1,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KIndex {
    pub n: usize,
    pub k: usize,
}

pub fn triangular_index(n: usize) -> Result<KIndex> {
    if n < 1 {
        return Err(Error::Domain("the triangular index needs n >= 1".into()));
    }
    // Real root of k(k+1)/2 = n, then exact integer correction.
    let mut k = (((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0).ceil() as usize;
    while k > 1 && (k - 1) * k / 2 >= n {
        k -= 1;
    }
    while k * (k + 1) / 2 < n {
        k += 1;
    }
    Ok(KIndex { n, k })
}

/// Alavi–Mitchem product bound `M(n)` for a graph and its complement.
pub fn alavi_m(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain("M(n) is defined for n >= 2".into()));
    }
    let n = n as u64;
    Ok(if n % 4 == 3 {
        (n - 3) / 2 * n.div_ceil(2)
    } else {
        (n - 1) / 2 * (n - 1).div_ceil(2)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `left <= right`
    AtMost,
    /// `left == right`
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundRow {
    pub anchor: &'static str,
    pub relation: Relation,
    pub left: i64,
    pub right: i64,
}

impl BoundRow {
    fn at_most(anchor: &'static str, left: i64, right: i64) -> Self {
        BoundRow {
            anchor,
            relation: Relation::AtMost,
            left,
            right,
        }
    }

    fn equal(anchor: &'static str, left: i64, right: i64) -> Self {
        BoundRow {
            anchor,
            relation: Relation::Equal,
            left,
            right,
        }
    }

    pub fn slack(&self) -> i64 {
        self.right - self.left
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::AtMost => self.left <= self.right,
            Relation::Equal => self.left == self.right,
        }
    }

    /// Equality case: the bound is attained by this graph.
    pub fn tight(&self) -> bool {
        self.slack() == 0
    }
}

impl Serialize for BoundRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("relation", &self.relation)?;
        map.serialize_entry("left", &self.left)?;
        map.serialize_entry("right", &self.right)?;
        map.serialize_entry("slack", &self.slack())?;
        map.serialize_entry("holds", &self.holds())?;
        map.end()
    }
}

fn rows_by_anchor<S: Serializer>(rows: &[BoundRow], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(rows.iter().map(|r| (r.anchor, r)))
}

/// Degree and connectivity invariants of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub min_degree: usize,
    pub max_degree: usize,
    pub vertex_connectivity: usize,
    pub edge_connectivity: usize,
    pub degree_classes: usize,
    pub max_class_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic_number: Option<usize>,
}

impl Invariants {
    pub fn of(g: &Graph) -> Result<Self> {
        crate::error::require_vertices(g.n(), "graph invariants")?;
        let degrees = g.degrees();
        let partition = crate::graph::DegreePartition::from_degrees(&degrees);
        Ok(Invariants {
            min_degree: *degrees.iter().min().expect("n >= 1"),
            max_degree: *degrees.iter().max().expect("n >= 1"),
            vertex_connectivity: vertex_connectivity(g)?.value,
            edge_connectivity: edge_connectivity(g)?.value,
            degree_classes: partition.m(),
            max_class_size: partition.max_class_size(),
            chromatic_number: None,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Add the classical rows against the ordinary complement.
    pub classical: bool,
    /// Compute χ and add the chromatic rows (δ-complement and classical).
    pub chromatic: bool,
}

/// All invariants of `g` and its δ-complement with every bound row.
#[derive(Debug, Clone, Serialize)]
pub struct NgReport {
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub graph: Invariants,
    pub delta_complement: Invariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement: Option<Invariants>,
    #[serde(serialize_with = "rows_by_anchor")]
    pub rows: Vec<BoundRow>,
    pub skipped: Vec<String>,
}

/// One CSV line of a report.
#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub anchor: &'static str,
    pub relation: Relation,
    pub left: i64,
    pub right: i64,
    pub slack: i64,
    pub holds: bool,
}

impl NgReport {
    pub fn row(&self, anchor: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.anchor == anchor)
    }

    pub fn records(&self) -> Vec<BoundRecord> {
        self.rows
            .iter()
            .map(|r| BoundRecord {
                graph6: self.graph6.clone(),
                n: self.n,
                k: self.k,
                anchor: r.anchor,
                relation: r.relation,
                left: r.left,
                right: r.right,
                slack: r.slack(),
                holds: r.holds(),
            })
            .collect()
    }
}

pub fn ng_report(g: &Graph, options: ReportOptions) -> Result<NgReport> {
    let n = g.n();
    let KIndex { k, .. } = triangular_index(n)?;
    let gd = delta_complement(g)?;
    let mut inv = Invariants::of(g)?;
    let mut inv_d = Invariants::of(&gd)?;

    let (ni, ki) = (n as i64, k as i64);
    let top = 2 * ni - ki - 1;
    let mut rows = Vec::with_capacity(40);

    let p = ni - inv_d.min_degree as i64;
    rows.push(BoundRow::at_most("min_degree_theorem", inv.min_degree as i64, ni - ki + p - 1));

    let pairs = [
        ("delta", inv.min_degree, inv_d.min_degree),
        ("kappa", inv.vertex_connectivity, inv_d.vertex_connectivity),
        ("lambda", inv.edge_connectivity, inv_d.edge_connectivity),
    ];
    let dmax = (inv.max_degree as i64, inv_d.max_degree as i64);

    if n == 2 {
        rows.push(BoundRow::equal("n2_delta_sum", pairs[0].1 as i64 + pairs[0].2 as i64, 1));
        rows.push(BoundRow::equal("n2_max_degree_sum", dmax.0 + dmax.1, 1));
        rows.push(BoundRow::equal("n2_kappa_sum", pairs[1].1 as i64 + pairs[1].2 as i64, 1));
        rows.push(BoundRow::equal("n2_lambda_sum", pairs[2].1 as i64 + pairs[2].2 as i64, 1));
    }
    for (name, a, b) in pairs {
        let (a, b) = (a as i64, b as i64);
        if n != 2 {
            rows.push(BoundRow::at_most(anchor(name, "sum_lower"), 0, a + b));
            rows.push(BoundRow::at_most(anchor(name, "sum_upper"), a + b, top));
        }
        rows.push(BoundRow::at_most(anchor(name, "product_lower"), 0, a * b));
        rows.push(BoundRow::at_most(anchor(name, "product_upper"), 4 * a * b, top * top));
    }
    if n != 2 {
        rows.push(BoundRow::at_most("max_degree_sum_lower", ki - 1, dmax.0 + dmax.1));
        rows.push(BoundRow::at_most("max_degree_sum_upper", dmax.0 + dmax.1, 2 * ni - 2));
    }
    rows.push(BoundRow::at_most("max_degree_product_lower", 0, dmax.0 * dmax.1));
    rows.push(BoundRow::at_most("max_degree_product_upper", dmax.0 * dmax.1, (ni - 1) * (ni - 1)));

    for (suffix, x) in [("", &inv), ("_delta_complement", &inv_d)] {
        let chain = [
            ("whitney_kappa_lambda", x.vertex_connectivity, x.edge_connectivity),
            ("whitney_lambda_delta", x.edge_connectivity, x.min_degree),
            ("min_le_max_degree", x.min_degree, x.max_degree),
        ];
        for (name, a, b) in chain {
            rows.push(BoundRow::at_most(suffixed(name, suffix), a as i64, b as i64));
        }
    }

    let mut skipped = Vec::new();
    let mut complement = None;
    if options.classical || options.chromatic {
        let gc = g.complement();
        let mut inv_c = Invariants::of(&gc)?;
        if options.classical {
            if n >= 2 {
                classical_rows(&mut rows, n, &inv, &inv_c)?;
            } else {
                skipped.push("classical rows need n >= 2".to_string());
            }
        }
        if options.chromatic {
            if n <= CHROMATIC_MAX_N {
                let chi = chromatic_number(g)? as i64;
                let chi_d = chromatic_number(&gd)? as i64;
                let chi_c = chromatic_number(&gc)? as i64;
                inv.chromatic_number = Some(chi as usize);
                inv_d.chromatic_number = Some(chi_d as usize);
                inv_c.chromatic_number = Some(chi_c as usize);

                let s = chi + chi_c;
                rows.push(BoundRow::at_most("ng_chromatic_sum_lower", 4 * ni, s * s));
                rows.push(BoundRow::at_most("ng_chromatic_sum_upper", s, ni + 1));
                rows.push(BoundRow::at_most("ng_chromatic_product_lower", ni, chi * chi_c));
                rows.push(BoundRow::at_most(
                    "ng_chromatic_product_upper",
                    4 * chi * chi_c,
                    (ni + 1) * (ni + 1),
                ));
                if n >= 4 {
                    let m = inv.degree_classes as i64;
                    let biggest = inv.max_class_size as i64;
                    let s = chi + chi_d;
                    rows.push(BoundRow::at_most("delta_chromatic_sum_lower", 4 * biggest, s * s));
                    rows.push(BoundRow::at_most("delta_chromatic_sum_upper", s, m + ni));
                    rows.push(BoundRow::at_most("delta_chromatic_product_lower", biggest, chi * chi_d));
                    rows.push(BoundRow::at_most(
                        "delta_chromatic_product_upper",
                        4 * chi * chi_d,
                        (m + ni) * (m + ni),
                    ));
                } else {
                    skipped.push("delta_chromatic rows need n >= 4".to_string());
                }
            } else {
                skipped.push(format!("chromatic rows need n <= {CHROMATIC_MAX_N}"));
            }
        }
        if options.classical {
            complement = Some(inv_c);
        }
    }

    Ok(NgReport {
        graph6: to_graph6(g)?,
        n,
        k,
        graph: inv,
        delta_complement: inv_d,
        complement,
        rows,
        skipped,
    })
}

fn classical_rows(rows: &mut Vec<BoundRow>, n: usize, g: &Invariants, c: &Invariants) -> Result<()> {
    let ni = n as i64;
    let m = alavi_m(n)? as i64;
    let dmax = g.max_degree as i64 + c.max_degree as i64;
    rows.push(BoundRow::at_most("xu_max_degree_sum_lower", ni - 1, dmax));
    rows.push(BoundRow::at_most("xu_max_degree_sum_upper", dmax, 2 * ni - 3));
    rows.push(BoundRow::at_most(
        "classical_max_degree_product_upper",
        (g.max_degree * c.max_degree) as i64,
        (ni - 1) * (ni - 1),
    ));
    let pairs = [
        ("alavi_delta", g.min_degree, c.min_degree),
        ("alavi_kappa", g.vertex_connectivity, c.vertex_connectivity),
        ("alavi_lambda", g.edge_connectivity, c.edge_connectivity),
    ];
    for (name, a, b) in pairs {
        let (a, b) = (a as i64, b as i64);
        rows.push(BoundRow::at_most(anchor(name, "sum_lower"), 1, a + b));
        rows.push(BoundRow::at_most(anchor(name, "sum_upper"), a + b, ni - 1));
        rows.push(BoundRow::at_most(anchor(name, "product_upper"), a * b, m));
    }
    Ok(())
}

fn anchor(name: &str, part: &str) -> &'static str {
    match (name, part) {
        ("delta", "sum_lower") => "delta_sum_lower",
        ("delta", "sum_upper") => "delta_sum_upper",
        ("delta", "product_lower") => "delta_product_lower",
        ("delta", "product_upper") => "delta_product_upper",
        ("kappa", "sum_lower") => "kappa_sum_lower",
        ("kappa", "sum_upper") => "kappa_sum_upper",
        ("kappa", "product_lower") => "kappa_product_lower",
        ("kappa", "product_upper") => "kappa_product_upper",
        ("lambda", "sum_lower") => "lambda_sum_lower",
        ("lambda", "sum_upper") => "lambda_sum_upper",
        ("lambda", "product_lower") => "lambda_product_lower",
        ("lambda", "product_upper") => "lambda_product_upper",
        ("alavi_delta", "sum_lower") => "alavi_delta_sum_lower",
        ("alavi_delta", "sum_upper") => "alavi_delta_sum_upper",
        ("alavi_delta", "product_upper") => "alavi_delta_product_upper",
        ("alavi_kappa", "sum_lower") => "alavi_kappa_sum_lower",
        ("alavi_kappa", "sum_upper") => "alavi_kappa_sum_upper",
        ("alavi_kappa", "product_upper") => "alavi_kappa_product_upper",
        ("alavi_lambda", "sum_lower") => "alavi_lambda_sum_lower",
        ("alavi_lambda", "sum_upper") => "alavi_lambda_sum_upper",
        ("alavi_lambda", "product_upper") => "alavi_lambda_product_upper",
        _ => unreachable!("unknown bound row {name}_{part}"),
    }
}

fn suffixed(name: &str, suffix: &str) -> &'static str {
    match (name, suffix) {
        ("whitney_kappa_lambda", "") => "whitney_kappa_lambda",
        ("whitney_lambda_delta", "") => "whitney_lambda_delta",
        ("min_le_max_degree", "") => "min_le_max_degree",
        ("whitney_kappa_lambda", _) => "whitney_kappa_lambda_delta_complement",
        ("whitney_lambda_delta", _) => "whitney_lambda_delta_delta_complement",
        ("min_le_max_degree", _) => "min_le_max_degree_delta_complement",
        _ => unreachable!("unknown chain row {name}"),
    }
}

/// `δ(G) <= n - k + p - 1` where `δ(G_δ) = n - p`.
pub fn check_min_degree_theorem(g: &Graph) -> Result<bool> {
    let n = g.n() as i64;
    let k = triangular_index(g.n())?.k as i64;
    let p = n - delta_complement(g)?.min_degree()? as i64;
    Ok((g.min_degree()? as i64) < n - k + p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub anchor: String,
    pub graph6: String,
    pub relation: Relation,
    pub left: i64,
    pub right: i64,
}

/// Every row of `report` that fails; empty when all bounds hold.
pub fn check_all_bounds(report: &NgReport) -> Vec<Violation> {
    report
        .rows
        .iter()
        .filter(|r| !r.holds())
        .map(|r| Violation {
            anchor: r.anchor.to_string(),
            graph6: report.graph6.clone(),
            relation: r.relation,
            left: r.left,
            right: r.right,
        })
        .collect()
}
