//! Exact vertex-disjoint path search and k-linkedness.
//!
//! The router only ever builds induced paths: if a linkage exists, shortcutting
//! every chord of every path gives another linkage, so nothing is lost. Pairs
//! whose endpoints are adjacent are routed along that edge up front, since a
//! single edge uses no vertex another path could want.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{vertex_connectivity, Graph};
use crate::vertex_set::{subsets_colex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkageError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is used by more than one terminal")]
    DuplicateEndpoint(usize),
    #[error("time limit reached")]
    TimedOut,
}

/// Terminal pairs `(s_i, t_i)` on 2k distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, LinkageError> {
        let mut seen = VertexSet::EMPTY;
        for &(s, t) in &pairs {
            for v in [s, t] {
                if v >= crate::vertex_set::MAX_VERTICES {
                    return Err(LinkageError::OutOfRange {
                        vertex: v,
                        n: crate::vertex_set::MAX_VERTICES,
                    });
                }
                if seen.contains(v) {
                    return Err(LinkageError::DuplicateEndpoint(v));
                }
                seen.insert(v);
            }
        }
        Ok(Pairing { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn terminals(&self) -> VertexSet {
        self.pairs.iter().flat_map(|&(s, t)| [s, t]).collect()
    }

    pub fn check_for(&self, g: &Graph) -> Result<(), LinkageError> {
        match self.terminals().iter().find(|&v| v >= g.n()) {
            Some(v) => Err(LinkageError::OutOfRange { vertex: v, n: g.n() }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}:{t}")?;
        }
        Ok(())
    }
}

/// One path per pair, listed from `s_i` to `t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
}

impl Linkage {
    /// Total number of interior (non-terminal) vertices used.
    pub fn interior_count(&self) -> usize {
        self.paths.iter().map(|p| p.len().saturating_sub(2)).sum()
    }
}

pub fn validate_linkage(g: &Graph, p: &Pairing, l: &Linkage) -> bool {
    if l.paths.len() != p.len() {
        return false;
    }
    let mut used = VertexSet::EMPTY;
    for (path, &(s, t)) in l.paths.iter().zip(p.pairs()) {
        if path.first() != Some(&s) || path.last() != Some(&t) || path.len() < 2 {
            return false;
        }
        for &v in path {
            if v >= g.n() || used.contains(v) {
                return false;
            }
            used.insert(v);
        }
        if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
    }
    true
}

/// Searches for internally disjoint paths joining each pair. Endpoints may be
/// shared between pairs; no path may pass through any vertex of `terminals`.
/// Returns paths in the order of `pairs`.
pub(crate) fn route(g: &Graph, pairs: &[(usize, usize)], terminals: VertexSet) -> Option<Vec<Vec<usize>>> {
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; pairs.len()];
    let mut hard: Vec<(usize, usize, usize)> = Vec::new();
    for (i, &(s, t)) in pairs.iter().enumerate() {
        if g.has_edge(s, t) {
            paths[i] = Some(vec![s, t]);
        } else {
            hard.push((i, s, t));
        }
    }
    let free = g.vertices().difference(terminals);
    if hard.len() > free.len() {
        return None;
    }
    let mut router = Router {
        g,
        pairs: hard.iter().map(|&(_, s, t)| (s, t)).collect(),
        failed: HashSet::new(),
        out: Vec::new(),
    };
    if !router.solve(0, free) {
        return None;
    }
    for ((i, _, _), path) in hard.iter().zip(router.out) {
        paths[*i] = Some(path);
    }
    Some(paths.into_iter().map(|p| p.expect("every pair routed")).collect())
}

struct Router<'a> {
    g: &'a Graph,
    pairs: Vec<(usize, usize)>,
    failed: HashSet<(usize, u64)>,
    out: Vec<Vec<usize>>,
}

impl Router<'_> {
    fn later_pairs_ok(&self, from: usize, free: VertexSet) -> bool {
        if self.pairs.len() - from > free.len() {
            return false;
        }
        self.pairs[from..]
            .iter()
            .all(|&(s, t)| self.g.reach(s, free.with(t)).contains(t))
    }

    fn solve(&mut self, i: usize, free: VertexSet) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        if self.failed.contains(&(i, free.bits())) {
            return false;
        }
        if self.later_pairs_ok(i, free) {
            let s = self.pairs[i].0;
            let mut path = vec![s];
            if self.extend(i, &mut path, VertexSet::EMPTY, free) {
                return true;
            }
        }
        self.failed.insert((i, free.bits()));
        false
    }

    /// `blocked` holds neighbours of every path vertex except the head.
    fn extend(&mut self, i: usize, path: &mut Vec<usize>, blocked: VertexSet, free: VertexSet) -> bool {
        let head = *path.last().expect("non-empty path");
        let t = self.pairs[i].1;
        let candidates = self.g.neighbors(head).intersection(free).difference(blocked);
        let blocked_next = blocked.union(self.g.neighbors(head));
        for x in candidates {
            let free_next = free.without(x);
            path.push(x);
            if self.g.has_edge(x, t) {
                path.push(t);
                self.out.push(path.clone());
                if self.solve(i + 1, free_next) {
                    return true;
                }
                self.out.pop();
                path.pop();
            } else {
                let corridor = free_next.difference(blocked_next).with(t);
                if self.g.reach(x, corridor).contains(t)
                    && self.later_pairs_ok(i + 1, free_next)
                    && self.extend(i, path, blocked_next, free_next)
                {
                    return true;
                }
            }
            path.pop();
        }
        false
    }
}

/// Vertex-disjoint paths joining every pair, or `None` if no linkage exists.
pub fn disjoint_paths(g: &Graph, p: &Pairing) -> Result<Option<Linkage>, LinkageError> {
    p.check_for(g)?;
    Ok(route(g, p.pairs(), p.terminals()).map(|paths| Linkage { paths }))
}

/// Calls `f` on every pairing of `vertices` (which must have even length),
/// pairing the smallest unmatched vertex first. Stops once `f` returns `true`.
pub fn for_each_pairing(vertices: &[usize], mut f: impl FnMut(&[(usize, usize)]) -> bool) -> bool {
    type Visit<'a> = dyn FnMut(&[(usize, usize)]) -> bool + 'a;
    fn rec(rest: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, f: &mut Visit<'_>) -> bool {
        if rest.is_empty() {
            return f(acc);
        }
        let first = rest.remove(0);
        for j in 0..rest.len() {
            let partner = rest.remove(j);
            acc.push((first, partner));
            let stop = rec(rest, acc, f);
            acc.pop();
            rest.insert(j, partner);
            if stop {
                rest.insert(0, first);
                return true;
            }
        }
        rest.insert(0, first);
        false
    }
    debug_assert!(vertices.len().is_multiple_of(2));
    let mut rest = vertices.to_vec();
    rec(&mut rest, &mut Vec::new(), &mut f)
}

/// Why a graph is not k-linked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    TooFewVertices { n: usize, needed: usize },
    Pairing { pairing: Pairing },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KLinked {
    Yes,
    No(Obstruction),
}

impl KLinked {
    pub fn is_yes(&self) -> bool {
        matches!(self, KLinked::Yes)
    }
}

/// Optional wall-clock limit for the exhaustive searches.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(pub Option<Instant>);

impl Deadline {
    pub const NONE: Deadline = Deadline(None);

    pub fn after(d: std::time::Duration) -> Self {
        Deadline(Some(Instant::now() + d))
    }

    pub fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

pub fn is_k_linked(g: &Graph, k: usize) -> KLinked {
    is_k_linked_until(g, k, Deadline::NONE).expect("no deadline")
}

/// Checks every pairing of every 2k-subset (subsets in colex order). Subsets
/// are examined in parallel, but the reported witness is always the first
/// failing pairing in enumeration order.
pub fn is_k_linked_until(g: &Graph, k: usize, deadline: Deadline) -> Result<KLinked, LinkageError> {
    let n = g.n();
    if k == 0 {
        return Ok(KLinked::Yes);
    }
    if n < 2 * k {
        return Ok(KLinked::No(Obstruction::TooFewVertices { n, needed: 2 * k }));
    }
    let pool: Vec<usize> = (0..n).collect();
    let subsets = subsets_colex(&pool, 2 * k);
    let found = subsets
        .par_iter()
        .map(|subset| {
            if deadline.expired() {
                return Err(LinkageError::TimedOut);
            }
            let terminals: VertexSet = subset.iter().collect();
            let mut failing = None;
            for_each_pairing(subset, |pairs| {
                if route(g, pairs, terminals).is_none() {
                    failing = Some(pairs.to_vec());
                    true
                } else {
                    false
                }
            });
            Ok(failing)
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match found {
        None => Ok(KLinked::Yes),
        Some(Err(e)) => Err(e),
        Some(Ok(Some(pairs))) => Ok(KLinked::No(Obstruction::Pairing {
            pairing: Pairing { pairs },
        })),
        Some(Ok(None)) => unreachable!(),
    }
}

/// Result of a linkedness computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Linkedness {
    /// Largest k for which the graph is k-linked (0 if disconnected or tiny).
    pub k: usize,
    /// A pairing of k + 1 pairs with no linkage, when the graph has at least
    /// 2(k + 1) vertices and the search was not capped.
    pub witness: Option<Pairing>,
    /// True when the search stopped at a caller-supplied maximum.
    pub capped: bool,
}

pub fn linkedness(g: &Graph) -> Linkedness {
    linkedness_capped(g, None, Deadline::NONE).expect("no deadline")
}

pub fn linkedness_capped(g: &Graph, max_k: Option<usize>, deadline: Deadline) -> Result<Linkedness, LinkageError> {
    let n = g.n();
    if n < 2 {
        return Ok(Linkedness {
            k: 0,
            witness: None,
            capped: false,
        });
    }
    let kappa = vertex_connectivity(g).expect("n >= 2");
    // k-linked implies (2k - 1)-connected
    let structural = (n / 2).min((kappa + 1) / 2);
    let top = match max_k {
        Some(m) => structural.min(m),
        None => structural,
    };
    let capped_search = top < structural;

    let witness_of = |k: usize| -> Result<Option<Pairing>, LinkageError> {
        match is_k_linked_until(g, k, deadline)? {
            KLinked::Yes => Ok(None),
            KLinked::No(Obstruction::Pairing { pairing }) => Ok(Some(pairing)),
            KLinked::No(Obstruction::TooFewVertices { .. }) => Ok(None),
        }
    };

    let mut failure: Option<Pairing> = None;
    for k in (1..=top).rev() {
        match is_k_linked_until(g, k, deadline)? {
            KLinked::Yes => {
                if k == top && capped_search {
                    return Ok(Linkedness {
                        k,
                        witness: None,
                        capped: true,
                    });
                }
                let witness = if k < top {
                    failure
                } else if n >= 2 * (k + 1) {
                    witness_of(k + 1)?
                } else {
                    None
                };
                return Ok(Linkedness {
                    k,
                    witness,
                    capped: false,
                });
            }
            KLinked::No(Obstruction::Pairing { pairing }) => failure = Some(pairing),
            KLinked::No(Obstruction::TooFewVertices { .. }) => unreachable!("k <= n / 2"),
        }
    }
    if top == 0 && capped_search {
        return Ok(Linkedness {
            k: 0,
            witness: None,
            capped: true,
        });
    }
    // not even 1-linked: disconnected
    let witness = match failure {
        Some(p) => Some(p),
        None => witness_of(1)?,
    };
    Ok(Linkedness {
        k: 0,
        witness,
        capped: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(p: &[(usize, usize)]) -> Pairing {
        Pairing::new(p.to_vec()).unwrap()
    }

    #[test]
    fn pairing_validation() {
        assert!(matches!(
            Pairing::new(vec![(0, 1), (1, 2)]),
            Err(LinkageError::DuplicateEndpoint(1))
        ));
        assert!(matches!(
            Pairing::new(vec![(3, 3)]),
            Err(LinkageError::DuplicateEndpoint(3))
        ));
        let g = Graph::complete(4);
        assert!(matches!(
            disjoint_paths(&g, &pairing(&[(0, 9)])),
            Err(LinkageError::OutOfRange { vertex: 9, n: 4 })
        ));
    }

    #[test]
    fn k4_two_edges() {
        let g = Graph::complete(4);
        let p = pairing(&[(0, 1), (2, 3)]);
        let l = disjoint_paths(&g, &p).unwrap().unwrap();
        assert_eq!(l.paths, vec![vec![0, 1], vec![2, 3]]);
        assert!(validate_linkage(&g, &p, &l));
    }

    #[test]
    fn crossing_square_has_no_linkage() {
        // 4-cycle s1 s2 t1 t2
        let g = Graph::cycle(4);
        assert_eq!(disjoint_paths(&g, &pairing(&[(0, 2), (1, 3)])).unwrap(), None);
    }

    #[test]
    fn octahedron_routes_through_third_axis() {
        let g = crate::polytope::cross(3).unwrap().graph();
        // antipodal pairs are {0,1}, {2,3}, {4,5}
        let p = pairing(&[(0, 1), (2, 3)]);
        let l = disjoint_paths(&g, &p).unwrap().unwrap();
        assert!(validate_linkage(&g, &p, &l));
        assert_eq!(l.paths.iter().map(|p| p.len()).collect::<Vec<_>>(), vec![3, 3]);
        assert_eq!(l.paths[0][1], 4);
        assert_eq!(l.paths[1][1], 5);
    }

    #[test]
    fn validate_linkage_rejects_bad_paths() {
        let g = Graph::complete(5);
        let p = pairing(&[(0, 1), (2, 3)]);
        let shared = Linkage {
            paths: vec![vec![0, 4, 1], vec![2, 4, 3]],
        };
        assert!(!validate_linkage(&g, &p, &shared));
        let reversed = Linkage {
            paths: vec![vec![1, 0], vec![2, 3]],
        };
        assert!(!validate_linkage(&g, &p, &reversed));
        let c = Graph::cycle(5);
        let jump = Linkage {
            paths: vec![vec![0, 1], vec![2, 4, 3]],
        };
        assert!(!validate_linkage(&c, &p, &jump));
        assert!(!validate_linkage(
            &g,
            &p,
            &Linkage {
                paths: vec![vec![0, 1]]
            }
        ));
    }

    #[test]
    fn pairings_enumeration() {
        let mut seen = Vec::new();
        for_each_pairing(&[0, 1, 2, 3], |p| {
            seen.push(p.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)], vec![(0, 3), (1, 2)]]
        );
        let mut count = 0;
        for_each_pairing(&[0, 1, 2, 3, 4, 5, 6, 7], |_| {
            count += 1;
            false
        });
        assert_eq!(count, 105);
    }

    #[test]
    fn complete_graph_linkedness() {
        for n in 2..=9 {
            let l = linkedness(&Graph::complete(n));
            assert_eq!(l.k, n / 2, "K_{n}");
            assert_eq!(l.witness, None);
        }
        assert!(is_k_linked(&Graph::complete(6), 3).is_yes());
    }

    #[test]
    fn small_graphs() {
        assert_eq!(linkedness(&Graph::empty(1)).k, 0);
        let l = linkedness(&Graph::empty(3));
        assert_eq!(l.k, 0);
        assert_eq!(l.witness, Some(pairing(&[(0, 1)])));
        let c = linkedness(&Graph::cycle(4));
        assert_eq!(c.k, 1);
        assert_eq!(c.witness, Some(pairing(&[(0, 2), (1, 3)])));
    }

    #[test]
    fn too_few_vertices() {
        assert_eq!(
            is_k_linked(&Graph::complete(5), 3),
            KLinked::No(Obstruction::TooFewVertices { n: 5, needed: 6 })
        );
    }

    #[test]
    fn capped_search() {
        let g = Graph::complete(8);
        let l = linkedness_capped(&g, Some(2), Deadline::NONE).unwrap();
        assert_eq!((l.k, l.capped, l.witness), (2, true, None));
    }

    #[test]
    fn expired_deadline() {
        let g = crate::polytope::cross(4).unwrap().graph();
        let past = Deadline(Some(Instant::now() - std::time::Duration::from_millis(1)));
        assert_eq!(is_k_linked_until(&g, 2, past), Err(LinkageError::TimedOut));
    }
}
