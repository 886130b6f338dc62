//! graph6 and edge-list text encodings.
//!
//! graph6: a size prefix (one byte `n + 63` for `n <= 62`, otherwise `~`
//! followed by three 6-bit big-endian groups), then the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! six bits per byte, most significant bit first, zero padded, each group
//! offset by 63.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` (0-indexed).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_VERTICES: usize = 258_047;
const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::Unsupported(format!(
            "graph6 encoding supports at most {GRAPH6_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    // Every byte is in 63..=126, so this is ASCII.
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Format(format!(
            "byte {:#04x} at offset {pos} is outside the graph6 range 63..=126",
            bytes[pos]
        )));
    }
    let (n, payload) = match bytes {
        [] => return Err(Error::Format("empty graph6 string".into())),
        [126, 126, ..] => {
            return Err(Error::Unsupported(format!(
                "graph6 strings with more than {GRAPH6_MAX_VERTICES} vertices"
            )))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Format("truncated graph6 size prefix".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n < 63 {
                return Err(Error::Format(format!(
                    "extended graph6 size prefix used for n = {n} (< 63)"
                )));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() < expected {
        return Err(Error::Format(format!(
            "truncated graph6 payload: {} bytes for n = {n}, expected {expected}",
            payload.len()
        )));
    }
    if payload.len() > expected {
        return Err(Error::Format(format!(
            "graph6 payload too long: {} bytes for n = {n}, expected {expected}",
            payload.len()
        )));
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        let last = payload[expected - 1] - 63;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Format("non-zero graph6 padding bits".into()));
        }
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list_text(text: &str) -> Result<Graph> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| Error::Format(format!("edge list token {t:?} is not a non-negative integer")))
    });
    let mut next = |what: &str| {
        tokens
            .next()
            .unwrap_or_else(|| Err(Error::Format(format!("edge list ended before {what}"))))
    };
    let n = next("the vertex count")?;
    let m = next("the edge count")?;
    let mut edges = Vec::with_capacity(m);
    for e in 0..m {
        let u = next(&format!("edge {e}"))?;
        let v = next(&format!("edge {e}"))?;
        edges.push((u, v));
    }
    if tokens.next().is_some() {
        return Err(Error::Format(format!("edge list has data beyond the declared {m} edges")));
    }
    Graph::from_edge_list(n, &edges)
}
