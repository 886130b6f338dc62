//! Delta-complements of simple graphs and Nordhaus-Gaddum-type bounds.
//!
//! The δ-complement `G_δ` of `G` keeps an edge between vertices of different
//! degree and flips adjacency between vertices of equal degree. This crate
//! computes `G_δ`, the degree and connectivity invariants of both graphs,
//! evaluates every sum/product bound relating them, generates the graphs
//! attaining those bounds, and sweeps whole graph universes for violations.

pub mod bounds;
pub mod chromatic;
pub mod connectivity;
pub mod delta;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod flow;
pub mod formats;
pub mod graph;
pub mod sweep;

pub use bounds::{
    alavi_m, check_all_bounds, check_min_degree_theorem, ng_report, triangular_index, BoundRow,
    KIndex, NgReport, ReportOptions, Violation,
};
pub use connectivity::{edge_connectivity, vertex_connectivity, CutResult};
pub use delta::{complement_commutes, delta_complement};
pub use error::{Error, Result};
pub use formats::{from_edge_list_text, from_graph6, to_edge_list, to_graph6};
pub use graph::{DegreePartition, Graph};
