//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use polylink::expr::Expr;
use polylink::{CombinatorialPolytope, Graph};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Point),
        Just(Expr::Interval),
        Just(Expr::Square),
        Just(Expr::Prism3),
        (1usize..=4).prop_map(Expr::Simplex),
        (2usize..=3).prop_map(Expr::Cross),
    ]
}

/// Random construction expressions.
pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Join(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sum(vec![a, b])),
            (inner.clone(), 1usize..=2).prop_map(|(a, t)| Expr::Pyr(Box::new(a), t)),
            inner.clone().prop_map(|a| Expr::Bipyr(Box::new(a))),
            (inner, 1usize..=2).prop_map(|(a, t)| Expr::Stack(Box::new(a), t)),
        ]
    })
}

/// Random valid polytopes on at most `max_vertices` vertices.
pub fn polytope(max_vertices: usize) -> impl Strategy<Value = (String, CombinatorialPolytope)> {
    expr().prop_filter_map("evaluates within the vertex budget", move |e| {
        let p = e.eval().ok()?;
        (p.n_vertices() <= max_vertices && p.dim() >= 1).then(|| (e.to_string(), p))
    })
}

/// Random simple graphs on 2..=max_n vertices.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

/// A permutation of 0..n.
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n())
        .map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect())
        .collect()
}

fn connected_without(adj: &[Vec<bool>], removed: u64) -> bool {
    let n = adj.len();
    let alive: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 0).collect();
    if alive.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![alive[0]];
    seen[alive[0]] = true;
    while let Some(u) = stack.pop() {
        for &v in &alive {
            if adj[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Smallest cutset size by enumerating all vertex subsets; n − 1 for complete graphs.
pub fn brute_connectivity(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    let mut best = n - 1;
    for mask in 0u64..1 << n {
        let size = mask.count_ones() as usize;
        if size < best && n - size >= 2 && !connected_without(&adj, mask) {
            best = size;
        }
    }
    best
}

/// Whether disjoint paths exist for the pairs, by plain depth-first search.
pub fn brute_linkable(g: &Graph, pairs: &[(usize, usize)]) -> bool {
    fn route(adj: &[Vec<bool>], pairs: &[(usize, usize)], used: &mut [bool]) -> bool {
        let Some((&(s, t), rest)) = pairs.split_first() else {
            return true;
        };
        used[t] = false;
        let ok = walk(adj, s, t, rest, used);
        used[t] = true;
        ok
    }
    fn walk(adj: &[Vec<bool>], at: usize, t: usize, rest: &[(usize, usize)], used: &mut [bool]) -> bool {
        if at == t {
            used[t] = true;
            let ok = route(adj, rest, used);
            used[t] = false;
            return ok;
        }
        for v in 0..adj.len() {
            if adj[at][v] && !used[v] {
                used[v] = true;
                let ok = walk(adj, v, t, rest, used);
                used[v] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let adj = adjacency(g);
    let mut used = vec![false; g.n()];
    for &(s, t) in pairs {
        used[s] = true;
        used[t] = true;
    }
    route(&adj, pairs, &mut used)
}

/// All pairings of the given terminal list.
pub fn all_pairings(vertices: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let Some((&first, rest)) = vertices.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for i in 0..rest.len() {
        let mut others = rest.to_vec();
        let partner = others.remove(i);
        for mut tail in all_pairings(&others) {
            tail.insert(0, (first, partner));
            out.push(tail);
        }
    }
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// k-linkedness straight from the definition.
pub fn brute_is_k_linked(g: &Graph, k: usize) -> bool {
    if 2 * k > g.n() {
        return false;
    }
    subsets(g.n(), 2 * k)
        .iter()
        .all(|s| all_pairings(s).iter().all(|p| brute_linkable(g, p)))
}
