//! Integer max-flow on small directed networks (Dinic's blocking flows over
//! BFS level graphs). Networks are reusable: [`FlowNetwork::reset`] restores
//! the original capacities so one network can serve many s-t queries.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    original: Vec<u64>,
    level: Vec<i32>,
    cursor: Vec<usize>,
    queue: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            level: vec![0; nodes],
            cursor: vec![0; nodes],
            queue: Vec::with_capacity(nodes),
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds the arc `u -> v` with capacity `cap` and returns its id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_pair(u, v, cap, 0)
    }

    /// Adds an undirected edge: capacity `cap` in each direction.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_pair(u, v, cap, cap)
    }

    fn add_pair(&mut self, u: usize, v: usize, forward: u64, backward: u64) -> usize {
        let id = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([forward, backward]);
        self.original.extend([forward, backward]);
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    /// Restores every arc to its original capacity.
    pub fn reset(&mut self) {
        self.cap.copy_from_slice(&self.original);
    }

    /// Flow currently routed through arc `id` (net of its reverse).
    pub fn flow_on(&self, id: usize) -> i64 {
        self.original[id] as i64 - self.cap[id] as i64
    }

    /// Maximum s-t flow, stopping early once `limit` units are routed.
    pub fn max_flow_limited(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        debug_assert_ne!(s, t);
        let mut total = 0;
        while total < limit && self.build_levels(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.augment(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn build_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        self.queue.clear();
        self.queue.push(s);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    self.queue.push(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn augment(&mut self, u: usize, t: usize, want: u64) -> u64 {
        if u == t {
            return want;
        }
        while self.cursor[u] < self.adj[u].len() {
            let e = self.adj[u][self.cursor[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.augment(v, t, want.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    /// Nodes reachable from `s` in the residual network. After a completed
    /// max-flow this is the source side of a minimum cut.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Value of a maximum s-t flow in `network`, starting from its original
/// capacities.
pub fn st_max_flow(network: &mut FlowNetwork, s: usize, t: usize) -> Result<u64> {
    if s == t {
        return Err(Error::Input(format!("source and sink coincide ({s})")));
    }
    if s >= network.nodes() || t >= network.nodes() {
        return Err(Error::Input(format!(
            "terminal outside the {}-node network",
            network.nodes()
        )));
    }
    network.reset();
    Ok(network.max_flow_limited(s, t, u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_path() {
        let mut net = FlowNetwork::new(3);
        net.add_arc(0, 1, 1);
        net.add_arc(1, 2, 1);
        assert_eq!(st_max_flow(&mut net, 0, 2).unwrap(), 1);
        // Re-running starts from the original capacities.
        assert_eq!(st_max_flow(&mut net, 0, 2).unwrap(), 1);
        assert_eq!(st_max_flow(&mut net, 2, 0).unwrap(), 0);
    }

    #[test]
    fn disconnected_terminals() {
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 5);
        net.add_arc(2, 3, 5);
        assert_eq!(st_max_flow(&mut net, 0, 3).unwrap(), 0);
    }

    #[test]
    fn rejects_equal_terminals() {
        let mut net = FlowNetwork::new(2);
        assert!(matches!(st_max_flow(&mut net, 1, 1), Err(Error::Input(_))));
        assert!(matches!(st_max_flow(&mut net, 0, 5), Err(Error::Input(_))));
    }

    #[test]
    fn k23_vertex_split_between_large_part() {
        // K_{2,3}, parts {0,1} and {2,3,4}; s = 2, t = 3. Two internally
        // disjoint paths: through 0 and through 1.
        let n = 5;
        let mut net = FlowNetwork::new(2 * n);
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for a in 0..2 {
            for b in 2..5 {
                net.add_arc(2 * a + 1, 2 * b, n as u64);
                net.add_arc(2 * b + 1, 2 * a, n as u64);
            }
        }
        assert_eq!(st_max_flow(&mut net, 2 * 2 + 1, 2 * 3).unwrap(), 2);
    }

    #[test]
    fn classic_network_and_cut() {
        // CLRS flow network, max flow 23.
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16), (0, 2, 13), (1, 3, 12), (2, 1, 4), (2, 4, 14),
            (3, 2, 9), (3, 5, 20), (4, 3, 7), (4, 5, 4),
        ] {
            net.add_arc(u, v, c);
        }
        assert_eq!(st_max_flow(&mut net, 0, 5).unwrap(), 23);
        let side = net.source_side(0);
        assert!(side[0] && !side[5]);
        net.reset();
        assert_eq!(net.max_flow_limited(0, 5, 10), 10);
    }

    #[test]
    fn undirected_edges_carry_flow_both_ways() {
        let mut net = FlowNetwork::new(4);
        net.add_undirected(0, 1, 1);
        net.add_undirected(1, 3, 1);
        net.add_undirected(0, 2, 1);
        net.add_undirected(2, 3, 1);
        assert_eq!(st_max_flow(&mut net, 3, 0).unwrap(), 2);
        assert_eq!(st_max_flow(&mut net, 0, 3).unwrap(), 2);
    }
}
