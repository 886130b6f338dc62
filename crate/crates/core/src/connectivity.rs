//! Vertex connectivity κ and edge connectivity λ via unit-capacity max-flow
//! (Menger), plus subset-enumeration oracles that transcribe the
//! definitions directly.
//!
//! Conventions: κ and λ are 0 for disconnected graphs and for `N_1`;
//! κ(K_n) = n - 1.

use serde::Serialize;

use crate::error::{require_vertices, Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::Graph;

pub const VERTEX_BRUTEFORCE_MAX_N: usize = 10;
pub const EDGE_BRUTEFORCE_MAX_EDGES: usize = 28;

/// A minimum cut. `witness` is empty when the graph is already disconnected
/// (value 0), has a single vertex, or is complete (κ = n - 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult<T> {
    pub value: usize,
    pub witness: Vec<T>,
}

impl<T> CutResult<T> {
    fn trivial(value: usize) -> Self {
        CutResult {
            value,
            witness: Vec::new(),
        }
    }
}

pub type VertexCut = CutResult<usize>;
pub type EdgeCut = CutResult<(usize, usize)>;

fn min_degree_vertex(g: &Graph) -> usize {
    (0..g.n()).min_by_key(|&v| (g.degree(v), v)).unwrap_or(0)
}

#[inline]
fn v_in(v: usize) -> usize {
    2 * v
}

#[inline]
fn v_out(v: usize) -> usize {
    2 * v + 1
}

/// κ(G) with a separating vertex set.
///
/// Pair coverage (Even): fix the order 0..n and let S be a minimum separator.
/// The lowest-indexed vertex `i` outside S has index at most |S|, and every
/// vertex in a different component of G - S from `i` lies outside S, hence
/// has a larger index and is not adjacent to `i`. So it suffices to try the
/// non-adjacent pairs `(i, j)`, `j > i`, for `i` up to the current best value.
pub fn vertex_connectivity(g: &Graph) -> Result<VertexCut> {
    require_vertices(g.n(), "vertex connectivity")?;
    let n = g.n();
    if n == 1 || !g.is_connected()? {
        return Ok(CutResult::trivial(0));
    }
    if g.edge_count() == n * (n - 1) / 2 {
        return Ok(CutResult::trivial(n - 1));
    }

    // Neighbourhood of a minimum-degree vertex separates it from its
    // non-neighbours, so κ ≤ δ.
    let v = min_degree_vertex(g);
    let mut best = g.degree(v);
    let mut witness: Vec<usize> = g.neighbors(v).collect();

    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        net.add_arc(v_in(v), v_out(v), 1);
    }
    for (u, v) in g.edges() {
        net.add_arc(v_out(u), v_in(v), n as u64);
        net.add_arc(v_out(v), v_in(u), n as u64);
    }

    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            net.reset();
            let flow = net.max_flow_limited(v_out(i), v_in(j), best as u64) as usize;
            if flow < best {
                best = flow;
                let side = net.source_side(v_out(i));
                witness = (0..n).filter(|&x| side[v_in(x)] && !side[v_out(x)]).collect();
            }
        }
        i += 1;
    }
    Ok(CutResult {
        value: best,
        witness,
    })
}

/// λ(G) with a disconnecting edge set, from `n - 1` max-flows out of vertex 0.
pub fn edge_connectivity(g: &Graph) -> Result<EdgeCut> {
    require_vertices(g.n(), "edge connectivity")?;
    let n = g.n();
    if n == 1 || !g.is_connected()? {
        return Ok(CutResult::trivial(0));
    }

    let v = min_degree_vertex(g);
    let mut best = g.degree(v);
    let mut witness: Vec<(usize, usize)> = g.neighbors(v).map(|u| (u.min(v), u.max(v))).collect();
    witness.sort_unstable();

    let mut net = FlowNetwork::new(n);
    let edges = g.edges();
    for &(u, v) in &edges {
        net.add_undirected(u, v, 1);
    }
    for t in 1..n {
        if best == 0 {
            break;
        }
        net.reset();
        let flow = net.max_flow_limited(0, t, best as u64) as usize;
        if flow < best {
            best = flow;
            let side = net.source_side(0);
            witness = edges.iter().copied().filter(|&(a, b)| side[a] != side[b]).collect();
        }
    }
    Ok(CutResult {
        value: best,
        witness,
    })
}

/// Smallest |S| such that G - S is disconnected or has at most one vertex.
pub fn vertex_connectivity_bruteforce(g: &Graph) -> Result<usize> {
    require_vertices(g.n(), "vertex connectivity")?;
    let n = g.n();
    if n > VERTEX_BRUTEFORCE_MAX_N {
        return Err(Error::Unsupported(format!(
            "brute-force vertex connectivity is limited to n <= {VERTEX_BRUTEFORCE_MAX_N}, got {n}"
        )));
    }
    for size in 0..=n {
        for removed in 0u64..1 << n {
            if removed.count_ones() as usize != size {
                continue;
            }
            let left = n - size;
            if left <= 1 {
                return Ok(size);
            }
            let start = (!removed).trailing_zeros() as usize;
            if g.reachable_from(start, &[removed]) < left {
                return Ok(size);
            }
        }
    }
    unreachable!("removing all but one vertex always qualifies")
}

/// Smallest number of edges whose deletion disconnects G (0 when already
/// disconnected or n = 1).
pub fn edge_connectivity_bruteforce(g: &Graph) -> Result<usize> {
    require_vertices(g.n(), "edge connectivity")?;
    let edges = g.edges();
    if edges.len() > EDGE_BRUTEFORCE_MAX_EDGES {
        return Err(Error::Unsupported(format!(
            "brute-force edge connectivity is limited to {EDGE_BRUTEFORCE_MAX_EDGES} edges, got {}",
            edges.len()
        )));
    }
    if g.n() == 1 {
        return Ok(0);
    }
    let no_block = vec![0u64; g.words()];
    for size in 0..=edges.len() {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let mut h = g.clone();
            for &e in &chosen {
                let (u, v) = edges[e];
                h.clear_edge(u, v);
            }
            if h.reachable_from(0, &no_block) < g.n() {
                return Ok(size);
            }
            if !next_combination(&mut chosen, edges.len()) {
                break;
            }
        }
    }
    unreachable!("deleting every edge disconnects a graph with n >= 2")
}

/// Advances `c` to the next k-subset of `0..m` in lexicographic order.
fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
