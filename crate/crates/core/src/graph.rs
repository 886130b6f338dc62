//! Immutable simple undirected graphs on the vertex set `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex (`words` 64-bit words per
//! row). Rows are kept symmetric and the diagonal is always clear.

use std::fmt;

use serde::Serialize;

use crate::error::{require_vertices, Error, Result};

/// Largest vertex count for which a graph fits in a single `u64` edge mask.
pub const MAX_MASK_VERTICES: usize = 11;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Position of the pair `(i, j)`, `i < j`, in column order: pairs sorted by
/// `j` ascending, then `i` ascending. This is the graph6 bit order and the
/// bit order of [`Graph::from_mask`].
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Number of unordered vertex pairs, `n(n-1)/2`.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph `N_n`.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Path on `n` vertices, edges `{i, i+1}`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::path(n);
        g.set_edge(0, n - 1);
        Ok(g)
    }

    /// Star `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(0, v);
        }
        g
    }

    /// Complete multipartite graph. Parts occupy contiguous vertex ranges in
    /// the order given.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Self {
        let n = part_sizes.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (p, &size) in part_sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size));
        }
        let mut g = Graph::empty(n);
        for v in 0..n {
            for u in 0..v {
                if part_of[u] != part_of[v] {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from an edge mask whose bit `pair_index(i, j)` encodes
    /// the pair `{i, j}`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_MASK_VERTICES {
            return Err(Error::Unsupported(format!(
                "edge masks hold at most {MAX_MASK_VERTICES} vertices, got {n}"
            )));
        }
        if pair_count(n) < 64 && mask >> pair_count(n) != 0 {
            return Err(Error::Input(format!("mask {mask:#x} has bits beyond {n} vertices")));
        }
        let mut g = Graph::empty(n);
        let mut bits = mask;
        while bits != 0 {
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (i, j) = pair_from_index(idx);
            g.set_edge(i, j);
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_mask`]; `None` when `n` exceeds
    /// [`MAX_MASK_VERTICES`].
    pub fn edge_mask(&self) -> Option<u64> {
        if self.n > MAX_MASK_VERTICES {
            return None;
        }
        let mut mask = 0u64;
        for j in 1..self.n {
            let row = self.rows[j];
            let below = row & ((1u64 << j) - 1);
            mask |= below << pair_index(0, j);
        }
        Some(mask)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Neighbour bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Induced subgraph on the vertices not listed in `removed`, relabelled
    /// in increasing order.
    pub fn without_vertices(&self, removed: &[usize]) -> Self {
        let mut keep = vec![true; self.n];
        for &v in removed {
            keep[v] = false;
        }
        let label: Vec<Option<usize>> = keep
            .iter()
            .scan(0, |next, &k| {
                Some(k.then(|| {
                    *next += 1;
                    *next - 1
                }))
            })
            .collect();
        let mut out = Graph::empty(keep.iter().filter(|&&k| k).count());
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (label[u], label[v]) {
                out.set_edge(a, b);
            }
        }
        out
    }

    /// Same vertex set with the listed edges deleted.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Self {
        let mut out = self.clone();
        for &(u, v) in removed {
            out.clear_edge(u, v);
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// δ(G).
    pub fn min_degree(&self) -> Result<usize> {
        require_vertices(self.n, "minimum degree")?;
        Ok((0..self.n).map(|v| self.degree(v)).min().unwrap_or(0))
    }

    /// Δ(G).
    pub fn max_degree(&self) -> Result<usize> {
        require_vertices(self.n, "maximum degree")?;
        Ok((0..self.n).map(|v| self.degree(v)).max().unwrap_or(0))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Classical complement: flips every off-diagonal pair.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        let full = full_mask(self.n, self.words);
        for v in 0..self.n {
            let row = out.row_mut(v);
            for (w, f) in row.iter_mut().zip(&full) {
                *w = !*w & f;
            }
            row[v / 64] &= !(1u64 << (v % 64));
        }
        out
    }

    pub fn is_connected(&self) -> Result<bool> {
        require_vertices(self.n, "connectivity")?;
        Ok(self.reachable_from(0, &vec![0; self.words]) == self.n)
    }

    /// Number of vertices reachable from `start` while avoiding the vertices
    /// in `blocked` (a bitset with `words` words). `start` must not be blocked.
    pub(crate) fn reachable_from(&self, start: usize, blocked: &[u64]) -> usize {
        if self.words == 1 {
            let allowed = !blocked[0];
            let mut seen = 1u64 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & allowed & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
            return seen.count_ones() as usize;
        }
        let mut seen = vec![0u64; self.words];
        seen[start / 64] |= 1 << (start % 64);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (wi, (&r, &b)) in self.row(v).iter().zip(blocked).enumerate() {
                let mut fresh = r & !b & !seen[wi];
                seen[wi] |= fresh;
                while fresh != 0 {
                    let bit = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    stack.push(wi * 64 + bit);
                    count += 1;
                }
            }
        }
        count
    }

    /// Vertex blocks concatenated in list order, no edges between blocks.
    pub fn disjoint_union(graphs: &[Graph]) -> Self {
        let n = graphs.iter().map(Graph::n).sum();
        let mut out = Graph::empty(n);
        let mut offset = 0;
        for g in graphs {
            for (u, v) in g.edges() {
                out.set_edge(u + offset, v + offset);
            }
            offset += g.n;
        }
        out
    }

    pub fn degree_partition(&self) -> Result<DegreePartition> {
        require_vertices(self.n, "degree partition")?;
        Ok(DegreePartition::from_degrees(&self.degrees()))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Row mask with bits `0..n` set.
pub(crate) fn full_mask(n: usize, words: usize) -> Vec<u64> {
    let mut mask = vec![u64::MAX; words];
    if !n.is_multiple_of(64) {
        mask[words - 1] = (1u64 << (n % 64)) - 1;
    }
    mask
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut bits = w;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(idx: usize) -> (usize, usize) {
    let mut j = ((((8 * idx + 1) as f64).sqrt() + 1.0) / 2.0) as usize;
    while pair_index(0, j) > idx {
        j -= 1;
    }
    while pair_index(0, j + 1) <= idx {
        j += 1;
    }
    (idx - pair_index(0, j), j)
}

/// One degree class `V_r`: the vertices of degree `degree`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeClass {
    pub degree: usize,
    pub vertices: Vec<usize>,
}

/// Vertex classes by degree, ordered by strictly increasing degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePartition {
    pub classes: Vec<DegreeClass>,
}

impl DegreePartition {
    pub fn from_degrees(degrees: &[usize]) -> Self {
        let mut order: Vec<usize> = (0..degrees.len()).collect();
        order.sort_by_key(|&v| (degrees[v], v));
        let mut classes: Vec<DegreeClass> = Vec::new();
        for v in order {
            match classes.last_mut() {
                Some(c) if c.degree == degrees[v] => c.vertices.push(v),
                _ => classes.push(DegreeClass {
                    degree: degrees[v],
                    vertices: vec![v],
                }),
            }
        }
        DegreePartition { classes }
    }

    /// Number of distinct degrees, `m`.
    pub fn m(&self) -> usize {
        self.classes.len()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(|c| c.vertices.len()).max().unwrap_or(0)
    }

    /// Degree of every vertex, recovered from the classes.
    pub fn degrees(&self) -> Vec<usize> {
        let n = self.classes.iter().map(|c| c.vertices.len()).sum();
        let mut out = vec![0; n];
        for c in &self.classes {
            for &v in &c.vertices {
                out[v] = c.degree;
            }
        }
        out
    }
}
