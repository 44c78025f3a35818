use super::Graph;
use crate::vertex_set::VertexSet;

/// A maximum clique, by branch and bound with a greedy-colouring bound.
/// Ties go to the clique found first when branching on vertices in increasing order.
pub fn max_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    expand(g, VertexSet::EMPTY, g.vertices(), &mut best);
    best
}

fn colour_bound(g: &Graph, candidates: VertexSet) -> usize {
    let mut rest = candidates;
    let mut colours = 0;
    while !rest.is_empty() {
        colours += 1;
        let mut class_pool = rest;
        while let Some(v) = class_pool.min() {
            rest.remove(v);
            class_pool = class_pool.difference(g.neighbors(v)).without(v);
        }
    }
    colours
}

fn expand(g: &Graph, current: VertexSet, mut candidates: VertexSet, best: &mut VertexSet) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    }
    if current.len() + colour_bound(g, candidates) <= best.len() {
        return;
    }
    while let Some(v) = candidates.min() {
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        expand(g, current.with(v), candidates.intersection(g.neighbors(v)), best);
        candidates.remove(v);
    }
}
