//! Generators for the graphs that attain the δ-complement bounds with
//! equality, and their verification.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::bounds::{ng_report, triangular_index, ReportOptions};
use crate::delta::delta_complement;
use crate::error::{Error, Result};
use crate::formats::to_graph6;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Complete multipartite graph with distinct part sizes `{1..k} \ {l}`.
    Multipartite,
    /// Disjoint union of cliques `K_i`, `i in {1..k} \ {l}`.
    Cliques,
    /// `K_{1,n-1}`.
    Star,
    /// `K_n`.
    Complete,
    /// `K_{n-1}` plus one isolated vertex.
    Isolated,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Multipartite,
        Family::Cliques,
        Family::Star,
        Family::Complete,
        Family::Isolated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Multipartite => "multipartite",
            Family::Cliques => "cliques",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Isolated => "isolated",
        }
    }

    /// Smallest `n` for which the family is generated.
    pub fn min_n(self) -> usize {
        match self {
            Family::Multipartite | Family::Cliques | Family::Isolated => 3,
            Family::Star => 2,
            Family::Complete => 1,
        }
    }

    pub fn generate(self, n: usize) -> Result<ExtremalWitness> {
        match self {
            Family::Multipartite => multipartite_extremal(n),
            Family::Cliques => clique_union_extremal(n),
            Family::Star => star_extremal(n),
            Family::Complete => complete_extremal(n),
            Family::Isolated => isolated_vertex_extremal(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown extremal family {s:?}")))
    }
}

/// What the δ-complement of a witness must look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaShape {
    Complete,
    Empty,
    /// The last vertex stays isolated.
    LastVertexIsolated,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalWitness {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(serialize_with = "graph_as_graph6")]
    pub graph: Graph,
    /// Bound rows that must have zero slack.
    pub targets: Vec<&'static str>,
    pub delta_shape: DeltaShape,
    pub attained: bool,
}

fn graph_as_graph6<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    let text = to_graph6(g).map_err(serde::ser::Error::custom)?;
    s.serialize_str(&text)
}

fn require_n(family: Family, n: usize) -> Result<()> {
    if n < family.min_n() {
        Err(Error::Domain(format!(
            "the {family} family needs n >= {}, got {n}",
            family.min_n()
        )))
    } else {
        Ok(())
    }
}

/// `k = k(n)` and `l = C(k+1,2) - n`, so `{1..k} \ {l}` sums to `n`.
fn k_and_l(n: usize) -> Result<(usize, usize)> {
    let k = triangular_index(n)?.k;
    Ok((k, k * (k + 1) / 2 - n))
}

fn sizes_without(k: usize, l: usize) -> Vec<usize> {
    (1..=k).filter(|&i| i != l).collect()
}

pub fn multipartite_extremal(n: usize) -> Result<ExtremalWitness> {
    require_n(Family::Multipartite, n)?;
    let (k, l) = k_and_l(n)?;
    Ok(ExtremalWitness {
        family: Family::Multipartite,
        n,
        k,
        l: Some(l),
        graph: Graph::complete_multipartite(&sizes_without(k, l)),
        targets: vec!["delta_sum_upper", "kappa_sum_upper", "lambda_sum_upper"],
        delta_shape: DeltaShape::Complete,
        attained: false,
    })
}

pub fn clique_union_extremal(n: usize) -> Result<ExtremalWitness> {
    require_n(Family::Cliques, n)?;
    let (k, l) = k_and_l(n)?;
    let blocks: Vec<Graph> = sizes_without(k, l).into_iter().map(Graph::complete).collect();
    Ok(ExtremalWitness {
        family: Family::Cliques,
        n,
        k,
        l: Some(l),
        graph: Graph::disjoint_union(&blocks),
        targets: vec!["max_degree_sum_lower"],
        delta_shape: DeltaShape::Empty,
        attained: false,
    })
}

/// For `n = 2` the star is `K_2`, whose δ-complement is `N_2`; only the
/// two-vertex equality row is targeted there.
pub fn star_extremal(n: usize) -> Result<ExtremalWitness> {
    require_n(Family::Star, n)?;
    let (targets, delta_shape) = if n == 2 {
        (vec!["n2_max_degree_sum"], DeltaShape::Empty)
    } else {
        (
            vec!["max_degree_sum_upper", "max_degree_product_upper"],
            DeltaShape::Complete,
        )
    };
    Ok(ExtremalWitness {
        family: Family::Star,
        n,
        k: triangular_index(n)?.k,
        l: None,
        graph: Graph::star(n),
        targets,
        delta_shape,
        attained: false,
    })
}

pub fn complete_extremal(n: usize) -> Result<ExtremalWitness> {
    require_n(Family::Complete, n)?;
    Ok(ExtremalWitness {
        family: Family::Complete,
        n,
        k: triangular_index(n)?.k,
        l: None,
        graph: Graph::complete(n),
        targets: vec![
            "delta_product_lower",
            "max_degree_product_lower",
            "kappa_product_lower",
            "lambda_product_lower",
        ],
        delta_shape: DeltaShape::Empty,
        attained: false,
    })
}

pub fn isolated_vertex_extremal(n: usize) -> Result<ExtremalWitness> {
    require_n(Family::Isolated, n)?;
    Ok(ExtremalWitness {
        family: Family::Isolated,
        n,
        k: triangular_index(n)?.k,
        l: None,
        graph: Graph::disjoint_union(&[Graph::complete(n - 1), Graph::empty(1)]),
        targets: vec![
            "delta_sum_lower",
            "kappa_sum_lower",
            "lambda_sum_lower",
            "delta_product_lower",
            "kappa_product_lower",
            "lambda_product_lower",
        ],
        delta_shape: DeltaShape::LastVertexIsolated,
        attained: false,
    })
}

/// One targeted row as recomputed from the witness graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetOutcome {
    pub anchor: &'static str,
    pub left: i64,
    pub right: i64,
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessCheck {
    pub outcomes: Vec<TargetOutcome>,
    pub delta_shape_holds: bool,
}

impl SharpnessCheck {
    pub fn attained(&self) -> bool {
        self.delta_shape_holds && self.outcomes.iter().all(|o| o.slack == 0)
    }
}

/// Recomputes every target row of `w` and the shape of its δ-complement.
pub fn check_witness(w: &ExtremalWitness) -> Result<SharpnessCheck> {
    let report = ng_report(&w.graph, ReportOptions::default())?;
    let outcomes = w
        .targets
        .iter()
        .map(|&anchor| {
            let row = report
                .row(anchor)
                .ok_or_else(|| Error::Domain(format!("row {anchor} is not defined for n = {}", w.n)))?;
            Ok(TargetOutcome {
                anchor,
                left: row.left,
                right: row.right,
                slack: row.slack(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gd = delta_complement(&w.graph)?;
    let n = w.n;
    let delta_shape_holds = match w.delta_shape {
        DeltaShape::Complete => gd == Graph::complete(n),
        DeltaShape::Empty => gd == Graph::empty(n),
        DeltaShape::LastVertexIsolated => gd.degree(n - 1) == 0,
    };
    Ok(SharpnessCheck {
        outcomes,
        delta_shape_holds,
    })
}

pub fn verify_sharpness(w: &ExtremalWitness) -> Result<bool> {
    Ok(check_witness(w)?.attained())
}

impl ExtremalWitness {
    /// Runs [`verify_sharpness`] and records the result in `attained`.
    pub fn verified(mut self) -> Result<Self> {
        self.attained = verify_sharpness(&self)?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DegreePartition;

    fn part_sizes(w: &ExtremalWitness) -> Vec<usize> {
        let l = w.l.unwrap();
        sizes_without(w.k, l)
    }

    #[test]
    fn multipartite_examples() {
        let w = multipartite_extremal(6).unwrap();
        assert_eq!((w.k, w.l), (3, Some(0)));
        assert_eq!(w.graph, Graph::complete_multipartite(&[1, 2, 3]));
        assert!(verify_sharpness(&w).unwrap());

        let w = multipartite_extremal(7).unwrap();
        assert_eq!((w.k, w.l), (4, Some(3)));
        assert_eq!(part_sizes(&w), vec![1, 2, 4]);
        assert_eq!(w.graph.min_degree().unwrap(), 3);
        let check = check_witness(&w).unwrap();
        assert_eq!(check.outcomes[0].left, 9);
        assert!(check.attained());

        let w = multipartite_extremal(4).unwrap();
        assert_eq!(part_sizes(&w), vec![1, 3]);
        assert_eq!(check_witness(&w).unwrap().outcomes[0].left, 4);

        let w = multipartite_extremal(3).unwrap();
        assert_eq!(w.graph, Graph::star(3));
        assert!(matches!(multipartite_extremal(2), Err(Error::Domain(_))));
    }

    #[test]
    fn multipartite_parts_are_distinct() {
        for n in 3..60 {
            let w = multipartite_extremal(n).unwrap();
            let sizes = part_sizes(&w);
            assert_eq!(sizes.iter().sum::<usize>(), n);
            let m = DegreePartition::from_degrees(&w.graph.degrees()).m();
            assert_eq!(m, sizes.len());
        }
    }

    #[test]
    fn clique_union_examples() {
        let w = clique_union_extremal(6).unwrap();
        assert_eq!(w.graph.degrees(), vec![0, 1, 1, 2, 2, 2]);
        assert_eq!(delta_complement(&w.graph).unwrap(), Graph::empty(6));
        let check = check_witness(&w).unwrap();
        assert_eq!(check.outcomes[0], TargetOutcome { anchor: "max_degree_sum_lower", left: 2, right: 2, slack: 0 });

        let w = clique_union_extremal(7).unwrap();
        assert_eq!(sizes_without(w.k, w.l.unwrap()), vec![1, 2, 4]);
        assert_eq!(check_witness(&w).unwrap().outcomes[0].right, 3);

        let w = clique_union_extremal(9).unwrap();
        assert_eq!((w.k, w.l), (4, Some(1)));
        assert_eq!(sizes_without(w.k, w.l.unwrap()), vec![2, 3, 4]);
        assert!(verify_sharpness(&w).unwrap());
    }

    #[test]
    fn star_examples() {
        let w = star_extremal(6).unwrap();
        let check = check_witness(&w).unwrap();
        assert_eq!(check.outcomes[0].left, 10);
        assert_eq!(check.outcomes[1].left, 25);
        assert!(check.attained());
        let w = star_extremal(4).unwrap();
        let check = check_witness(&w).unwrap();
        assert_eq!((check.outcomes[0].left, check.outcomes[1].left), (6, 9));
        assert!(star_extremal(10).unwrap().verified().unwrap().attained);

        let w = star_extremal(2).unwrap();
        assert_eq!(w.graph, Graph::complete(2));
        assert!(verify_sharpness(&w).unwrap());
    }

    #[test]
    fn lower_bound_witnesses() {
        for n in [1, 3, 5, 7] {
            assert!(verify_sharpness(&complete_extremal(n).unwrap()).unwrap(), "n = {n}");
        }
        let w = isolated_vertex_extremal(6).unwrap();
        let report = ng_report(&w.graph, ReportOptions::default()).unwrap();
        assert_eq!((report.graph.min_degree, report.delta_complement.min_degree), (0, 0));
        assert!(verify_sharpness(&w).unwrap());
        let w = isolated_vertex_extremal(4).unwrap();
        assert_eq!(check_witness(&w).unwrap().outcomes[1].right, 0);
        assert!(matches!(isolated_vertex_extremal(2), Err(Error::Domain(_))));
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("wheel".parse::<Family>().is_err());
    }
}
