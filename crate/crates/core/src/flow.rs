//! Integer max-flow (Dinic) on small dense-ish networks.
//!
//! Arcs come in residual pairs. An undirected bundle of `c` parallel edges is a
//! pair with capacity `c` in both directions, a directed bundle is a pair with
//! capacity `(c, 0)`.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    original: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            original: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Adds a residual pair `u -> v` (capacity `cap_uv`) / `v -> u` (capacity `cap_vu`).
    /// Returns the index of the forward arc; the backward arc is `index ^ 1`.
    pub fn add_pair(&mut self, u: usize, v: usize, cap_uv: i64, cap_vu: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap: cap_uv });
        self.arcs.push(Arc { to: u, cap: cap_vu });
        self.original.push(cap_uv);
        self.original.push(cap_vu);
        self.out[u].push(id);
        self.out[v].push(id + 1);
        id
    }

    /// Net flow currently pushed along the forward arc of a pair.
    pub fn net_flow(&self, pair: usize) -> i64 {
        self.original[pair] - self.arcs[pair].cap
    }

    pub fn arc_head(&self, arc: usize) -> usize {
        self.arcs[arc].to
    }

    pub fn reset(&mut self) {
        for (a, &c) in self.arcs.iter_mut().zip(&self.original) {
            a.cap = c;
        }
    }

    /// Pushes flow from `s` to `t` until maximal or until `limit` units have been sent.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: Option<i64>) -> i64 {
        let limit = limit.unwrap_or(i64::MAX);
        let mut total = 0;
        let mut level = vec![-1i32; self.n];
        let mut it = vec![0usize; self.n];
        while total < limit && self.bfs(s, t, &mut level) {
            it.iter_mut().for_each(|x| *x = 0);
            loop {
                let pushed = self.dfs(s, t, limit - total, &level, &mut it);
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

    fn bfs(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.iter_mut().for_each(|l| *l = -1);
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to] < 0 {
                    level[arc.to] = level[x] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64, level: &[i32], it: &mut [usize]) -> i64 {
        if x == t {
            return f;
        }
        while it[x] < self.out[x].len() {
            let a = self.out[x][it[x]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[x] + 1 {
                let d = self.dfs(to, t, f.min(cap), level, it);
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            it[x] += 1;
        }
        0
    }

    /// Nodes reachable from `s` in the residual network (source side of a min cut).
    pub fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_pair_carries_flow_both_ways() {
        let mut net = FlowNetwork::new(3);
        net.add_pair(0, 1, 2, 2);
        net.add_pair(1, 2, 1, 1);
        assert_eq!(net.max_flow(0, 2, None), 1);
        net.reset();
        assert_eq!(net.max_flow(2, 0, None), 1);
    }

    #[test]
    fn directed_pair_blocks_reverse() {
        let mut net = FlowNetwork::new(2);
        net.add_pair(0, 1, 3, 0);
        assert_eq!(net.max_flow(1, 0, None), 0);
        net.reset();
        assert_eq!(net.max_flow(0, 1, Some(2)), 2);
    }

    #[test]
    fn residual_side_after_saturation() {
        let mut net = FlowNetwork::new(3);
        net.add_pair(0, 1, 5, 5);
        net.add_pair(1, 2, 1, 1);
        net.max_flow(0, 2, None);
        assert_eq!(net.residual_reach(0), vec![true, true, false]);
    }
}
