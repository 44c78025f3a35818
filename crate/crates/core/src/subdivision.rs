//! Subdivisions of complete graphs rooted at a vertex.

use serde::Serialize;

use crate::graph::{route, Graph};
use crate::vertex_set::{any_subset_colex, VertexSet};

/// A subdivision of K_m whose branch vertices are `root` and neighbours of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedSubdivision {
    pub root: usize,
    /// Branch vertices in increasing order, root included.
    pub branch: Vec<usize>,
    /// One path per unordered branch pair `(a, b)` with `a < b`, listed in
    /// lexicographic order of the pairs; each runs from `a` to `b`.
    pub paths: Vec<Vec<usize>>,
}

impl RootedSubdivision {
    pub fn m(&self) -> usize {
        self.branch.len()
    }

    /// Branch pairs in the order of `paths`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        branch_pairs(&self.branch)
    }

    /// The path joining two branch vertices, oriented from `a` to `b`.
    pub fn path_between(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let idx = self.pairs().iter().position(|&p| p == (lo, hi))?;
        let mut path = self.paths[idx].clone();
        if a > b {
            path.reverse();
        }
        Some(path)
    }

    /// Every edge used by some subdivision path.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks every structural requirement against `g` from scratch.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let branch: VertexSet = self.branch.iter().collect();
        if branch.len() != self.branch.len() || self.branch.windows(2).any(|w| w[0] >= w[1]) {
            return Err("branch vertices must be distinct and sorted".into());
        }
        if !branch.contains(self.root) {
            return Err(format!("root {} is not a branch vertex", self.root));
        }
        if let Some(&v) = self.branch.iter().find(|&&v| v >= g.n()) {
            return Err(format!("branch vertex {v} out of range"));
        }
        for &u in &self.branch {
            if u != self.root && !g.has_edge(self.root, u) {
                return Err(format!("branch vertex {u} is not adjacent to the root"));
            }
        }
        let pairs = self.pairs();
        if pairs.len() != self.paths.len() {
            return Err(format!("expected {} paths, found {}", pairs.len(), self.paths.len()));
        }
        let mut interiors = VertexSet::EMPTY;
        for (&(a, b), path) in pairs.iter().zip(&self.paths) {
            if path.first() != Some(&a) || path.last() != Some(&b) {
                return Err(format!("path for ({a}, {b}) has wrong endpoints"));
            }
            if path.windows(2).any(|w| w[1] >= g.n() || !g.has_edge(w[0], w[1])) {
                return Err(format!("path for ({a}, {b}) uses a non-edge"));
            }
            for &x in &path[1..path.len() - 1] {
                if branch.contains(x) || interiors.contains(x) {
                    return Err(format!("path for ({a}, {b}) reuses vertex {x}"));
                }
                interiors.insert(x);
            }
        }
        Ok(())
    }
}

fn branch_pairs(branch: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &a) in branch.iter().enumerate() {
        for &b in &branch[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// Searches for a subdivision of K_m rooted at `v`. Branch sets are tried as
/// subsets of N(v) in colexicographic order, so the result is reproducible;
/// `None` means no such subdivision exists.
pub fn find_rooted_subdivision(g: &Graph, v: usize, m: usize) -> Option<RootedSubdivision> {
    assert!(v < g.n(), "root {v} out of range");
    if m == 0 {
        return None;
    }
    let nbrs = g.neighbors(v).to_vec();
    if nbrs.len() < m - 1 {
        return None;
    }
    let mut found = None;
    any_subset_colex(&nbrs, m - 1, |chosen| {
        let mut branch = chosen.to_vec();
        branch.push(v);
        branch.sort_unstable();
        let set: VertexSet = branch.iter().collect();
        let pairs = branch_pairs(&branch);
        // every non-adjacent branch pair needs a vertex of its own
        let missing = pairs.iter().filter(|&&(a, b)| !g.has_edge(a, b)).count();
        if missing > g.n() - branch.len() {
            return false;
        }
        match route(g, &pairs, set) {
            Some(paths) => {
                found = Some(RootedSubdivision { root: v, branch, paths });
                true
            }
            None => false,
        }
    });
    found
}
