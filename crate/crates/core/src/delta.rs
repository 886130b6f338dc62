//! The δ-complement: adjacency is flipped between vertices of equal degree
//! and kept between vertices of different degree, degrees taken in the input.

use crate::error::{require_vertices, Result};
use crate::graph::Graph;

pub fn delta_complement(g: &Graph) -> Result<Graph> {
    require_vertices(g.n(), "the delta-complement")?;
    let n = g.n();
    let words = g.words();
    // Degrees are read from `g` before any row is touched.
    let degrees = g.degrees();
    let mut class_masks = vec![0u64; n * words];
    for (v, &d) in degrees.iter().enumerate() {
        class_masks[d * words + v / 64] |= 1 << (v % 64);
    }
    let mut out = g.clone();
    for (v, &d) in degrees.iter().enumerate() {
        let class = &class_masks[d * words..(d + 1) * words];
        let row = out.row_mut(v);
        for (w, c) in row.iter_mut().zip(class) {
            *w ^= c;
        }
        row[v / 64] &= !(1u64 << (v % 64));
    }
    Ok(out)
}

/// Whether `complement(delta_complement(g))` and
/// `delta_complement(complement(g))` have identical edge sets.
pub fn complement_commutes(g: &Graph) -> Result<bool> {
    let left = delta_complement(g)?.complement();
    let right = delta_complement(&g.complement())?;
    Ok(left == right)
}
