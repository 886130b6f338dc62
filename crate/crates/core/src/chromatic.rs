//! Exact chromatic number for small graphs: DSATUR-ordered branch and bound,
//! seeded with a greedy clique (lower bound) and a greedy colouring (upper
//! bound).

use crate::error::{require_vertices, Error, Result};
use crate::graph::Graph;

pub const CHROMATIC_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: usize,
    /// Colour of each vertex, in `0..colors`.
    pub assignment: Vec<usize>,
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    optimal_coloring(g).map(|c| c.colors)
}

pub fn optimal_coloring(g: &Graph) -> Result<Coloring> {
    require_vertices(g.n(), "the chromatic number")?;
    let n = g.n();
    if n > CHROMATIC_MAX_N {
        return Err(Error::Unsupported(format!(
            "exact colouring is limited to n <= {CHROMATIC_MAX_N}, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let lower = greedy_clique(&adj).count_ones() as usize;
    let greedy = greedy_coloring(&adj);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut search = Search {
        adj: &adj,
        lower,
        best: upper,
        best_assignment: greedy,
        assignment: vec![usize::MAX; n],
    };
    if lower < upper {
        search.run(0, 0);
    }
    Ok(Coloring {
        colors: search.best,
        assignment: search.best_assignment,
    })
}

/// Whether `assignment` gives distinct colours to the ends of every edge.
pub fn is_proper(g: &Graph, assignment: &[usize]) -> bool {
    assignment.len() == g.n() && g.edges().iter().all(|&(u, v)| assignment[u] != assignment[v])
}

/// A clique grown greedily by highest remaining degree.
pub(crate) fn greedy_clique(adj: &[u32]) -> u32 {
    let mut clique = 0u32;
    let mut candidates: u32 = if adj.is_empty() { 0 } else { u32::MAX >> (32 - adj.len()) };
    while candidates != 0 {
        let v = (0..adj.len())
            .filter(|&v| candidates >> v & 1 == 1)
            .max_by_key(|&v| ((adj[v] & candidates).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty candidate set");
        clique |= 1 << v;
        candidates &= adj[v];
    }
    clique
}

/// Largest-degree-first sequential colouring.
pub(crate) fn greedy_coloring(adj: &[u32]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));
    let mut colors = vec![usize::MAX; n];
    for v in order {
        let used: u32 = (0..n)
            .filter(|&u| adj[v] >> u & 1 == 1 && colors[u] != usize::MAX)
            .fold(0, |m, u| m | 1 << colors[u]);
        colors[v] = (!used).trailing_zeros() as usize;
    }
    colors
}

struct Search<'a> {
    adj: &'a [u32],
    lower: usize,
    best: usize,
    best_assignment: Vec<usize>,
    assignment: Vec<usize>,
}

impl Search<'_> {
    fn neighbor_colors(&self, v: usize) -> u32 {
        let mut mask = 0u32;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.assignment[u] != usize::MAX {
                mask |= 1 << self.assignment[u];
            }
        }
        mask
    }

    fn run(&mut self, colored: usize, used: usize) {
        let n = self.adj.len();
        if colored == n {
            self.best = used;
            self.best_assignment = self.assignment.clone();
            return;
        }
        // Saturation first, then degree into the uncoloured part, then index.
        let uncolored: u32 = (0..n)
            .filter(|&v| self.assignment[v] == usize::MAX)
            .fold(0, |m, v| m | 1 << v);
        let (v, forbidden) = (0..n)
            .filter(|&v| uncolored >> v & 1 == 1)
            .map(|v| (v, self.neighbor_colors(v)))
            .max_by_key(|&(v, f)| {
                (
                    f.count_ones(),
                    (self.adj[v] & uncolored).count_ones(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("an uncoloured vertex remains");

        for c in 0..used {
            if forbidden >> c & 1 == 0 {
                self.assignment[v] = c;
                self.run(colored + 1, used);
                self.assignment[v] = usize::MAX;
                if self.best <= self.lower {
                    return;
                }
            }
        }
        // A fresh colour is always the next unused index, which removes
        // colour-permutation symmetry.
        if used + 1 < self.best {
            self.assignment[v] = used;
            self.run(colored + 1, used + 1);
            self.assignment[v] = usize::MAX;
        }
    }
}
