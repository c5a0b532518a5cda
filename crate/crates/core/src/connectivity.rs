//! Vertex connectivity by unit-capacity max-flow on the split-vertex network.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Minimum number of vertices whose removal disconnects `g`
/// (`n - 1` for complete graphs).
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut best = n - 1;
    // Every minimum cut separates some non-adjacent pair.
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let k = local_connectivity(g, s, t, best);
            best = best.min(k);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// True iff `g` is connected and no set of fewer than `k` vertices disconnects it.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    vertex_connectivity(g).map(|c| c >= k).unwrap_or(false)
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    if w == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

/// Maximum number of internally disjoint s-t paths, stopping once `limit` is reached.
fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    const INF: u32 = u32::MAX / 2;
    let n = g.n();
    // v_in = 2v, v_out = 2v + 1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { INF } else { 1 };
        net.arc(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        net.arc(2 * u + 1, 2 * v, INF);
        net.arc(2 * v + 1, 2 * u, INF);
    }
    let mut flow = 0;
    while flow < limit && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    flow
}
