//! Small min-cost flow network with integer capacities and costs.
//!
//! Augmenting paths are found with Bellman–Ford (SPFA), so negative residual
//! costs are fine. Networks here have at most a few hundred arcs.

use std::collections::VecDeque;

use super::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
    rev: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            cost,
            rev: rev_from,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
            rev: rev_to,
        });
    }

    /// Sends up to `limit` units from `source` to `sink` along successive
    /// cheapest augmenting paths. Returns (flow, cost).
    pub fn min_cost_flow(&mut self, source: usize, sink: usize, limit: i64) -> (i64, i64) {
        let nodes = self.arcs.len();
        let mut flow = 0;
        let mut cost = 0;
        while flow < limit {
            let mut dist = vec![i64::MAX; nodes];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
            let mut in_queue = vec![false; nodes];
            let mut queue = VecDeque::new();
            dist[source] = 0;
            queue.push_back(source);
            in_queue[source] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for (i, a) in self.arcs[u].iter().enumerate() {
                    if a.cap > 0 && dist[u] + a.cost < dist[a.to] {
                        dist[a.to] = dist[u] + a.cost;
                        prev[a.to] = Some((u, i));
                        if !in_queue[a.to] {
                            in_queue[a.to] = true;
                            queue.push_back(a.to);
                        }
                    }
                }
            }
            if dist[sink] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                push = push.min(self.arcs[u][i].cap);
                v = u;
            }
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                self.arcs[u][i].cap -= push;
                let rev = self.arcs[u][i].rev;
                self.arcs[v][rev].cap += push;
                v = u;
            }
            flow += push;
            cost += push * dist[sink];
        }
        (flow, cost)
    }

    pub fn max_flow(&mut self, source: usize, sink: usize, limit: i64) -> i64 {
        self.min_cost_flow(source, sink, limit).0
    }
}

/// Vertex-split network for routing vertex-disjoint paths in `g`.
///
/// Each graph vertex `v` becomes `in(v) = 2v` and `out(v) = 2v + 1` joined by a
/// unit arc; `source = 2n`, `sink = 2n + 1`.
pub(crate) struct SplitNetwork {
    pub net: FlowNetwork,
    n: usize,
    forward: Vec<Vec<(usize, usize)>>,
}

impl SplitNetwork {
    /// Builds the network on the vertices of `usable`. Vertices in `stops` only
    /// connect onwards to the sink, so no path passes through them. Arcs of
    /// `g` cost 1 unless `free_edge(u, v)` says they are free.
    pub fn new(g: &Graph, usable: VertexSet, stops: VertexSet, free_edge: impl Fn(usize, usize) -> bool) -> Self {
        let n = g.n();
        let mut net = FlowNetwork::new(2 * n + 2);
        let mut forward = vec![Vec::new(); 2 * n + 2];
        for v in usable {
            forward[2 * v].push((2 * v + 1, net.arcs[2 * v].len()));
            net.add_arc(2 * v, 2 * v + 1, 1, 0);
            if stops.contains(v) {
                continue;
            }
            for w in g.neighbors(v).intersection(usable) {
                let cost = if free_edge(v, w) { 0 } else { 1 };
                forward[2 * v + 1].push((2 * w, net.arcs[2 * v + 1].len()));
                net.add_arc(2 * v + 1, 2 * w, 1, cost);
            }
        }
        SplitNetwork { net, n, forward }
    }

    pub fn source(&self) -> usize {
        2 * self.n
    }

    pub fn sink(&self) -> usize {
        2 * self.n + 1
    }

    pub fn add_source_vertex(&mut self, v: usize) {
        let s = self.source();
        self.forward[s].push((2 * v, self.net.arcs[s].len()));
        self.net.add_arc(s, 2 * v, 1, 0);
    }

    pub fn add_sink_vertex(&mut self, v: usize) {
        let t = self.sink();
        self.forward[2 * v + 1].push((t, self.net.arcs[2 * v + 1].len()));
        self.net.add_arc(2 * v + 1, t, 1, 0);
    }

    fn carried(&self, node: usize, idx: usize) -> i64 {
        let a = &self.net.arcs[node][idx];
        self.net.arcs[a.to][a.rev].cap
    }

    /// Decomposes the current flow into source-to-sink vertex paths, one per
    /// unit leaving the source, in source-arc order. Flow cycles are dropped.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut used: Vec<Vec<i64>> = self.forward.iter().map(|arcs| vec![0; arcs.len()]).collect();
        let mut out = Vec::new();
        let s = self.source();
        let t = self.sink();
        for (k, &(first, idx)) in self.forward[s].iter().enumerate() {
            if self.carried(s, idx) - used[s][k] <= 0 {
                continue;
            }
            used[s][k] += 1;
            let mut path = Vec::new();
            let mut node = first;
            let mut steps = 0;
            while node != t {
                if node % 2 == 0 {
                    path.push(node / 2);
                }
                let next = self.forward[node]
                    .iter()
                    .enumerate()
                    .find(|(j, &(_, idx))| self.carried(node, idx) - used[node][*j] > 0);
                let Some((j, &(to, _))) = next else { break };
                used[node][j] += 1;
                node = to;
                steps += 1;
                if steps > 4 * self.n + 4 {
                    break;
                }
            }
            // strip any flow cycle picked up on the way
            out.push(remove_cycles(path));
        }
        out
    }
}

fn remove_cycles(path: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(path.len());
    for v in path {
        if let Some(pos) = out.iter().position(|&x| x == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}
