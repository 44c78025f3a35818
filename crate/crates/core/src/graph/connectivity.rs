use super::flow::SplitNetwork;
use super::{Graph, GraphError};
use crate::vertex_set::VertexSet;

/// Maximum number of internally vertex-disjoint `u`–`v` paths, for non-adjacent `u`, `v`.
pub fn local_connectivity(g: &Graph, u: usize, v: usize) -> usize {
    debug_assert!(u != v && !g.has_edge(u, v));
    let mut net = SplitNetwork::new(g, g.vertices(), VertexSet::singleton(v), |_, _| false);
    // enter at out(u) and leave at in(v) so the endpoints are not capacity-limited
    let (s, t) = (net.source(), net.sink());
    let cap = g.n() as i64;
    net.net.add_arc(s, 2 * u + 1, cap, 0);
    net.net.add_arc(2 * v, t, cap, 0);
    net.net.max_flow(s, t, cap) as usize
}

/// Largest k such that the graph is k-connected: more than k vertices, and no
/// set of fewer than k vertices disconnects it.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooSmall { n, needed: 2 });
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = n - 2;
    for u in 0..n {
        // a minimum separator misses one of the first best + 1 vertices
        if u > best {
            break;
        }
        for v in (u + 1)..n {
            if g.has_edge(u, v) {
                continue;
            }
            best = best.min(local_connectivity(g, u, v));
        }
    }
    Ok(best)
}
