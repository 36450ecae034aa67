//! Integer max-flow (Edmonds-Karp).
//!
//! Arcs are explored in insertion order and augmenting paths are found by
//! BFS, so for a fixed construction order the resulting flow is fully
//! deterministic.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    flow: i64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

/// Handle of a forward arc returned by [`FlowNetwork::add_arc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcId(usize);

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes], arcs: Vec::new() }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> ArcId {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        ArcId(id)
    }

    pub fn flow(&self, arc: ArcId) -> i64 {
        self.arcs[arc.0].flow
    }

    #[cfg(test)]
    pub fn capacity(&self, arc: ArcId) -> i64 {
        self.arcs[arc.0].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        let mut parent = vec![usize::MAX; self.nodes()];
        loop {
            parent.fill(usize::MAX);
            let mut queue = VecDeque::from([source]);
            let mut seen = vec![false; self.nodes()];
            seen[source] = true;
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &a in &self.adj[u] {
                    let arc = &self.arcs[a];
                    if !seen[arc.to] && arc.cap - arc.flow > 0 {
                        seen[arc.to] = true;
                        parent[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = sink;
            while v != source {
                let a = parent[v];
                push = push.min(self.arcs[a].cap - self.arcs[a].flow);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let a = parent[v];
                self.arcs[a].flow += push;
                self.arcs[a ^ 1].flow -= push;
                v = self.arcs[a ^ 1].to;
            }
            total += push;
        }
    }
}
