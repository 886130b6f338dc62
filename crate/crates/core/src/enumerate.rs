//! Graph universes: every labeled graph, one graph per isomorphism class, and
//! seeded random graphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Graph, MAX_MASK_VERTICES};

pub const LABELED_MAX_N: usize = 7;
pub const NONISOMORPHIC_MAX_N: usize = 8;

/// Every labeled simple graph on `n` vertices, in increasing edge-mask order
/// (see [`Graph::from_mask`]).
pub fn labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > LABELED_MAX_N {
        return Err(Error::Unsupported(format!(
            "labeled enumeration is limited to n <= {LABELED_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("labeled enumeration needs n >= 1".into()));
    }
    Ok((0..labeled_count(n)).map(move |mask| Graph::from_mask(n, mask).expect("mask in range")))
}

pub fn labeled_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

/// Canonical edge mask of `g`: equal for two graphs iff they are isomorphic.
///
/// The search individualizes vertices of the first non-singleton cell of an
/// equitable ordered partition (seeded by degree) until the partition is
/// discrete, and keeps the labeling whose adjacency bitstring, read in
/// graph6 pair order, is lexicographically smallest. Interchangeable twins
/// in a cell are individualized only once.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > MAX_MASK_VERTICES {
        return Err(Error::Unsupported(format!(
            "canonical forms are limited to n <= {MAX_MASK_VERTICES}, got {n}"
        )));
    }
    if n <= 1 {
        return Ok(0);
    }
    let adj: Vec<u16> = (0..n).map(|v| g.row(v)[0] as u16).collect();
    let mut search = Canon {
        adj: &adj,
        pairs: pair_count(n),
        best: None,
    };
    search.explore(vec![(0..n).collect()]);
    let key = search.best.expect("at least one leaf");
    Ok(reverse_pairs(key, search.pairs))
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Graph::from_mask(g.n(), canonical_code(g)?)
}

/// Mirrors the low `pairs` bits so that pair `(0,1)` becomes the most
/// significant one; integer order then equals graph6 bitstring order.
fn reverse_pairs(mask: u64, pairs: usize) -> u64 {
    if pairs == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - pairs)
    }
}

struct Canon<'a> {
    adj: &'a [u16],
    pairs: usize,
    best: Option<u64>,
}

impl Canon<'_> {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let masks: Vec<u16> = cells
                .iter()
                .map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v))
                .collect();
            let mut next = Vec::with_capacity(cells.len());
            let mut split = false;
            for cell in cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.adj[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
                split |= keyed[0].0 != keyed[keyed.len() - 1].0;
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    fn explore(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut label = vec![0usize; cells.len()];
            for (pos, cell) in cells.iter().enumerate() {
                label[cell[0]] = pos;
            }
            let key = self.key(&label);
            if self.best.is_none_or(|b| key < b) {
                self.best = Some(key);
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.explore(child);
        }
    }

    /// Transposing `u` and `v` is an automorphism fixing every cell.
    fn twins(&self, u: usize, v: usize) -> bool {
        let (bu, bv) = (1u16 << u, 1u16 << v);
        self.adj[u] & !bv == self.adj[v] & !bu
    }

    /// Edge mask under `label`, bit-reversed so smaller means an earlier
    /// first edge-free pair in graph6 order.
    fn key(&self, label: &[usize]) -> u64 {
        let mut mask = 0u64;
        for (v, &row) in self.adj.iter().enumerate() {
            let mut nb = row & ((1u16 << v) - 1);
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
                mask |= 1 << pair_index(a, b);
            }
        }
        reverse_pairs(mask, self.pairs)
    }
}

/// One canonical representative per isomorphism class, sorted by canonical
/// code. Built by extending every class on `n - 1` vertices with a new vertex
/// in all possible ways and deduplicating by canonical form.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::Domain("non-isomorphic enumeration needs n >= 1".into()));
    }
    if n > NONISOMORPHIC_MAX_N {
        return Err(Error::Unsupported(format!(
            "non-isomorphic enumeration is limited to n <= {NONISOMORPHIC_MAX_N}, got {n}"
        )));
    }
    let mut codes: BTreeSet<u64> = BTreeSet::from([0]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &codes {
            // Pairs with the new vertex come last in mask order, so the
            // (m-1)-vertex mask is unchanged on m vertices.
            for nb in 0..1u64 << (m - 1) {
                next.insert(canonical_code(&Graph::from_mask(m, code | nb << pair_index(0, m - 1))?)?);
            }
        }
        codes = next;
    }
    codes.into_iter().map(|c| Graph::from_mask(n, c)).collect()
}

// ---------------------------------------------------------------------------
// Random graphs
// ---------------------------------------------------------------------------

/// An exact rational edge probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeProbability {
    pub num: u64,
    pub den: u64,
}

impl EdgeProbability {
    pub const HALF: EdgeProbability = EdgeProbability { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Input(format!("edge probability {num}/{den} is outside [0, 1]")));
        }
        Ok(EdgeProbability { num, den })
    }

    /// Decides one pair from a uniform 64-bit draw `x`: the pair is kept iff
    /// `floor(x * den / 2^64) < num`.
    #[inline]
    fn accepts(self, x: u64) -> bool {
        ((x as u128 * self.den as u128) >> 64) < self.num as u128
    }
}

impl fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `a/b`, an integer `0` or `1`, or a decimal such as `0.25`.
impl FromStr for EdgeProbability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("cannot parse edge probability {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse().map_err(|_| bad())?;
            let den = b.trim().parse().map_err(|_| bad())?;
            return EdgeProbability::new(num, den);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        EdgeProbability::new(num, den)
    }
}

/// G(n, p) with a ChaCha8 stream seeded by `seed` (`seed_from_u64`). Pairs
/// are decided in graph6 order, one `next_u64` draw each.
pub fn random_graph(n: usize, p: EdgeProbability, seed: u64) -> Result<Graph> {
    let p = EdgeProbability::new(p.num, p.den)?;
    if n == 0 {
        return Err(Error::Domain("random graphs need n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if p.accepts(rng.next_u64()) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Seed of sample `index` in a random universe: SplitMix64 finalizer over
/// the base seed, `n` and the index.
pub fn sample_seed(seed: u64, n: usize, index: u64) -> u64 {
    let mut z = seed
        ^ (n as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
        ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        assert_eq!(labeled_graphs(3).unwrap().count(), 8);
        assert_eq!(labeled_graphs(4).unwrap().count(), 64);
        assert_eq!(labeled_count(7), 2_097_152);
        assert!(matches!(labeled_graphs(8), Err(Error::Unsupported(_))));
        let masks: Vec<u64> = labeled_graphs(3).unwrap().map(|g| g.edge_mask().unwrap()).collect();
        assert_eq!(masks, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn class_counts_match_known_sequence() {
        let known = [1, 2, 4, 11, 34, 156, 1044];
        for (i, &count) in known.iter().enumerate() {
            assert_eq!(nonisomorphic_graphs(i + 1).unwrap().len(), count, "n = {}", i + 1);
        }
        assert!(matches!(nonisomorphic_graphs(9), Err(Error::Unsupported(_))));
    }

    #[test]
    fn canonical_form_is_a_class_invariant() {
        let c5 = Graph::cycle(5).unwrap();
        let shuffled = Graph::from_edge_list(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_code(&c5).unwrap(), canonical_code(&shuffled).unwrap());
        assert_ne!(
            canonical_code(&Graph::path(5)).unwrap(),
            canonical_code(&Graph::star(5)).unwrap()
        );
        assert_eq!(canonical_form(&Graph::complete(8)).unwrap(), Graph::complete(8));
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("1/2".parse::<EdgeProbability>().unwrap(), EdgeProbability::HALF);
        assert_eq!("0.25".parse::<EdgeProbability>().unwrap(), EdgeProbability { num: 25, den: 100 });
        assert_eq!("1".parse::<EdgeProbability>().unwrap(), EdgeProbability { num: 1, den: 1 });
        assert!("3/2".parse::<EdgeProbability>().is_err());
        assert!("1.5".parse::<EdgeProbability>().is_err());
        assert!("x".parse::<EdgeProbability>().is_err());
        assert!("1/0".parse::<EdgeProbability>().is_err());
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        let zero = EdgeProbability::new(0, 1).unwrap();
        let one = EdgeProbability::new(1, 1).unwrap();
        for seed in [0, 1, 99] {
            assert_eq!(random_graph(5, zero, seed).unwrap(), Graph::empty(5));
            assert_eq!(random_graph(5, one, seed).unwrap(), Graph::complete(5));
        }
        let a = random_graph(8, EdgeProbability::HALF, 42).unwrap();
        let b = random_graph(8, EdgeProbability::HALF, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_graph(8, EdgeProbability::HALF, 43).unwrap());
        assert!(random_graph(5, EdgeProbability { num: 3, den: 2 }, 0).is_err());
    }

    #[test]
    fn random_graph_edge_density() {
        let p = EdgeProbability::new(1, 4).unwrap();
        let edges: usize = (0..200).map(|s| random_graph(20, p, s).unwrap().edge_count()).sum();
        let expected = 200.0 * 190.0 / 4.0;
        assert!((edges as f64 - expected).abs() < 0.05 * expected, "{edges}");
    }
}
