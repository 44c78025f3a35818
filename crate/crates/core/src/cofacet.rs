//! Facet complements, recognition of joins of sums of simplices, and the
//! classification of polytopes with minimal linkedness.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{linkedness, Graph};
use crate::polytope::{canonical_p, max_simplex_face_dim, CombinatorialPolytope, PolytopeError};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CofacetError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("two facets have the same complement {0}")]
    DuplicateCofacet(VertexSet),
    #[error("structural defect: {0}")]
    StructuralDefect(String),
    #[error("extremal polytope matches no case of the classification: {0}")]
    TheoremViolation(String),
}

/// Facet complements as a graph: singletons become loops, pairs become edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofacetGraph {
    pub n: usize,
    pub loops: VertexSet,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CofacetGraph {
    pub fn from_parts(n: usize, loops: VertexSet, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        CofacetGraph { n, loops, edges }
    }

    /// The loop-free part as a [`Graph`].
    pub fn simple(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }
}

pub fn cofacets(p: &CombinatorialPolytope) -> Vec<VertexSet> {
    p.cofacets()
}

/// `None` if some facet misses more than two vertices.
pub fn cofacet_graph(p: &CombinatorialPolytope) -> Result<Option<CofacetGraph>, CofacetError> {
    let cof = p.cofacets();
    if cof.iter().any(|c| c.len() > 2) {
        return Ok(None);
    }
    let mut sorted = cof.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CofacetError::DuplicateCofacet(w[0]));
    }
    let mut loops = VertexSet::EMPTY;
    let mut edges = Vec::new();
    for c in cof {
        let v = c.to_vec();
        match v.as_slice() {
            [a] => loops.insert(*a),
            [a, b] => edges.push((*a, *b)),
            _ => return Err(CofacetError::StructuralDefect("empty facet complement".into())),
        }
    }
    Ok(Some(CofacetGraph::from_parts(p.n_vertices(), loops, edges)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    LoopAtNonIsolated { vertex: usize },
    DegreeOne { vertex: usize },
    Uncovered { vertex: usize },
    OddCycle { cycle: Vec<usize> },
    PathNotClosed { path: [usize; 4] },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::LoopAtNonIsolated { vertex } => {
                write!(f, "vertex {vertex} carries a loop and an edge")
            }
            StructureViolation::DegreeOne { vertex } => write!(f, "vertex {vertex} has degree 1"),
            StructureViolation::Uncovered { vertex } => write!(f, "vertex {vertex} has degree 0"),
            StructureViolation::OddCycle { cycle } => write!(f, "odd cycle {cycle:?}"),
            StructureViolation::PathNotClosed { path } => {
                write!(f, "path {path:?} without closing edge {}-{}", path[0], path[3])
            }
        }
    }
}

/// Checks the shape every cofacet graph of a polytope has: loops only at
/// otherwise isolated vertices, no vertex of degree 0 or 1, no odd cycle,
/// and every path v1 v2 v3 v4 closed by the edge v1 v4.
pub fn check_structure(cg: &CofacetGraph) -> Vec<StructureViolation> {
    let g = cg.simple();
    let mut out = Vec::new();
    for v in 0..cg.n {
        let degree = g.degree(v);
        if cg.loops.contains(v) {
            if degree > 0 {
                out.push(StructureViolation::LoopAtNonIsolated { vertex: v });
            }
        } else if degree == 0 {
            out.push(StructureViolation::Uncovered { vertex: v });
        } else if degree == 1 {
            out.push(StructureViolation::DegreeOne { vertex: v });
        }
    }
    for comp in g.components(g.vertices()) {
        if let Some(cycle) = odd_cycle(&g, comp) {
            out.push(StructureViolation::OddCycle { cycle });
        }
    }
    for v2 in 0..cg.n {
        for v3 in g.neighbors(v2).iter().filter(|&v3| v3 > v2) {
            for v1 in g.neighbors(v2).without(v3) {
                for v4 in g.neighbors(v3).without(v2).without(v1) {
                    if !g.has_edge(v1, v4) {
                        out.push(StructureViolation::PathNotClosed { path: [v1, v2, v3, v4] });
                    }
                }
            }
        }
    }
    out
}

/// An odd cycle in the component `comp`, from a breadth-first 2-colouring.
fn odd_cycle(g: &Graph, comp: VertexSet) -> Option<Vec<usize>> {
    let root = comp.min()?;
    let mut parent = vec![usize::MAX; g.n()];
    let mut depth = vec![usize::MAX; g.n()];
    depth[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if depth[w] == depth[u] && u < w {
                // climb to the common ancestor
                let (mut a, mut b) = (u, w);
                let (mut left, mut right) = (vec![a], vec![b]);
                while a != b {
                    a = parent[a];
                    b = parent[b];
                    left.push(a);
                    right.push(b);
                }
                right.pop();
                right.reverse();
                left.extend(right);
                return Some(left);
            }
        }
    }
    None
}

/// Parameters `(n; (j_1, k_1), ..., (j_m, k_m))` of Δ_{n−1} * (Δ_{j_1} ⊕ Δ_{k_1}) * ...,
/// with each pair ordered `j ≤ k` and the list sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl CanonicalForm {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.iter().map(|&(j, k)| (j.min(k), j.max(k))).collect();
        pairs.sort_unstable();
        CanonicalForm { n, pairs }
    }

    pub fn pnm(n: usize, m: usize) -> Self {
        CanonicalForm::new(n, &vec![(1, 1); m])
    }

    pub fn dim(&self) -> usize {
        (self.n + self.pairs.iter().map(|(j, k)| j + k + 1).sum::<usize>()).saturating_sub(1)
    }

    pub fn build(&self) -> Result<CombinatorialPolytope, PolytopeError> {
        canonical_p(self.n, &self.pairs)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}", self.n)?;
        for (i, (j, k)) in self.pairs.iter().enumerate() {
            write!(f, "{} {j},{k}", if i == 0 { ";" } else { "," })?;
        }
        write!(f, ")")
    }
}

/// Recognizes Δ_{n−1} * (Δ_{j_1} ⊕ Δ_{k_1}) * ... from the cofacet graph and
/// confirms the answer by rebuilding the polytope and matching incidences.
pub fn recognize_canonical(p: &CombinatorialPolytope) -> Result<Option<CanonicalForm>, CofacetError> {
    if p.dim() == 0 {
        return Ok(Some(CanonicalForm::new(1, &[])));
    }
    let Some(cg) = cofacet_graph(p)? else {
        return Ok(None);
    };
    if !check_structure(&cg).is_empty() {
        return Ok(None);
    }
    let g = cg.simple();
    let loop_vertices: Vec<usize> = cg.loops.to_vec();
    // (j, k, part of size j + 1, part of size k + 1)
    let mut factors: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for comp in g.components(g.vertices().difference(cg.loops)) {
        let (a, b) = bipartition(&g, comp)
            .ok_or_else(|| CofacetError::StructuralDefect(format!("component {comp} is not bipartite")))?;
        let complete = a.iter().all(|&x| b.iter().all(|&y| g.has_edge(x, y)));
        if !complete || a.is_empty() || b.is_empty() {
            return Err(CofacetError::StructuralDefect(format!(
                "component {comp} is not complete bipartite"
            )));
        }
        let (a, b) = if b.len() < a.len() { (b, a) } else { (a, b) };
        factors.push((a.len() - 1, b.len() - 1, a, b));
    }
    factors.sort_by(|x, y| (x.0, x.1, x.2[0]).cmp(&(y.0, y.1, y.2[0])));
    let pairs: Vec<(usize, usize)> = factors.iter().map(|f| (f.0, f.1)).collect();
    let form = CanonicalForm::new(loop_vertices.len(), &pairs);
    if form.dim() != p.dim() {
        return Err(CofacetError::StructuralDefect(format!(
            "form {form} has dimension {}, polytope has {}",
            form.dim(),
            p.dim()
        )));
    }

    let mut perm = vec![0; p.n_vertices()];
    let order = loop_vertices
        .iter()
        .chain(factors.iter().flat_map(|f| f.2.iter().chain(f.3.iter())));
    for (new, &old) in order.enumerate() {
        perm[old] = new;
    }
    if p.relabeled(&perm)? != form.build()? {
        return Err(CofacetError::StructuralDefect(format!(
            "incidences do not match those of {form}"
        )));
    }
    Ok(Some(form))
}

fn bipartition(g: &Graph, comp: VertexSet) -> Option<(Vec<usize>, Vec<usize>)> {
    let root = comp.min()?;
    let mut side = vec![None; g.n()];
    side[root] = Some(false);
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        let su = side[u].expect("coloured");
        for w in g.neighbors(u) {
            match side[w] {
                None => {
                    side[w] = Some(!su);
                    stack.push(w);
                }
                Some(sw) if sw == su => return None,
                _ => {}
            }
        }
    }
    let a = comp.iter().filter(|&v| side[v] == Some(false)).collect();
    let b = comp.iter().filter(|&v| side[v] == Some(true)).collect();
    Some((a, b))
}

/// The three equivalent conditions: every facet misses at most two
/// vertices; the polytope is a join of sums of simplices; no simplex face
/// has dimension above d − γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub small_cofacets: bool,
    pub canonical: bool,
    pub no_big_simplex: bool,
}

impl Predicates {
    pub fn agree(&self) -> bool {
        self.small_cofacets == self.canonical && self.canonical == self.no_big_simplex
    }
}

pub fn characterization_predicates(p: &CombinatorialPolytope) -> Result<Predicates, CofacetError> {
    let small_cofacets = p.cofacets().iter().all(|c| c.len() <= 2);
    let canonical = recognize_canonical(p)?.is_some();
    let no_big_simplex = max_simplex_face_dim(p)? as i64 <= p.dim() as i64 - p.gamma();
    Ok(Predicates {
        small_cofacets,
        canonical,
        no_big_simplex,
    })
}

/// Which structure an extremal polytope has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum Case {
    /// Linkedness differs from ⌊(d − γ + 1)/2⌋.
    #[serde(rename = "not_extremal")]
    NotExtremal,
    /// P = P_{n,m} with n = d − 3γ + 1, m = γ.
    #[serde(rename = "i")]
    Pnm { form: CanonicalForm },
    /// P = P(n − 1; 1,1, ..., 1,1, 1,2).
    #[serde(rename = "ii")]
    OneWideSum { form: CanonicalForm },
    /// A facet missing three vertices is P_{n',m'} with the same linkedness.
    #[serde(rename = "iii")]
    PnmFacet {
        facet: usize,
        facet_vertices: Vec<usize>,
        facet_form: CanonicalForm,
        facet_linkedness: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub linkedness: usize,
    pub bound: i64,
    #[serde(flatten)]
    pub case: Case,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k = {}, bound = {}: ", self.linkedness, self.bound)?;
        match &self.case {
            Case::NotExtremal => write!(f, "not extremal"),
            Case::Pnm { form } => write!(f, "case (i), {form}"),
            Case::OneWideSum { form } => write!(f, "case (ii), {form}"),
            Case::PnmFacet {
                facet_vertices,
                facet_form,
                facet_linkedness,
                ..
            } => write!(
                f,
                "case (iii), facet {facet_vertices:?} is {facet_form} with k = {facet_linkedness}"
            ),
        }
    }
}

/// Classifies a polytope whose linkedness meets the few-vertices lower bound.
pub fn classify_extremal(p: &CombinatorialPolytope) -> Result<Classification, CofacetError> {
    let k = linkedness(&p.graph()).k;
    classify_extremal_with(p, k)
}

/// As [`classify_extremal`], with the linkedness of `p` already known.
pub fn classify_extremal_with(p: &CombinatorialPolytope, k: usize) -> Result<Classification, CofacetError> {
    let d = p.dim() as i64;
    let gamma = p.gamma();
    let bound = (d - gamma + 1).max(0) / 2;
    let done = |case| {
        Ok(Classification {
            linkedness: k,
            bound,
            case,
        })
    };
    if k as i64 != bound {
        return done(Case::NotExtremal);
    }
    let n = d - 3 * gamma + 1;
    let m = gamma as usize;
    let form = recognize_canonical(p)?;
    if n >= 0 && form.as_ref() == Some(&CanonicalForm::pnm(n as usize, m)) {
        return done(Case::Pnm { form: form.unwrap() });
    }
    if (d - gamma) % 2 == 0 {
        return Err(CofacetError::TheoremViolation(format!(
            "d − γ is even but the polytope is not P({n},{m})"
        )));
    }
    if n >= 1 && m >= 1 {
        let mut pairs = vec![(1, 1); m - 1];
        pairs.push((1, 2));
        let wide = CanonicalForm::new(n as usize - 1, &pairs);
        if form.as_ref() == Some(&wide) {
            return done(Case::OneWideSum { form: wide });
        }
    }
    let facet_n = d - 3 * gamma + 6;
    if facet_n >= 0 && gamma >= 2 {
        let target = CanonicalForm::pnm(facet_n as usize, m - 2);
        for (idx, c) in p.cofacets().iter().enumerate() {
            if c.len() != 3 {
                continue;
            }
            let (facet, labels) = p.facet_polytope(idx)?;
            if recognize_canonical(&facet)?.as_ref() != Some(&target) {
                continue;
            }
            let facet_linkedness = linkedness(&facet.graph()).k;
            if facet_linkedness != k {
                return Err(CofacetError::TheoremViolation(format!(
                    "facet {labels:?} has linkedness {facet_linkedness}, polytope has {k}"
                )));
            }
            return done(Case::PnmFacet {
                facet: idx,
                facet_vertices: labels,
                facet_form: target,
                facet_linkedness,
            });
        }
    }
    Err(CofacetError::TheoremViolation(format!(
        "no case applies (recognized form: {})",
        form.map_or("none".to_string(), |f| f.to_string())
    )))
}

/// Everything the analyzer knows about the facet complements of a polytope.
#[derive(Clone, Debug, Serialize)]
pub struct CofacetReport {
    pub predicates: Predicates,
    pub canonical_form: Option<CanonicalForm>,
    pub max_cofacet_size: usize,
    /// A facet complement with more than two vertices, if any.
    pub large_cofacet: Option<VertexSet>,
    pub cofacet_graph: Option<CofacetGraph>,
    pub structure_violations: Vec<StructureViolation>,
}

pub fn cofacet_report(p: &CombinatorialPolytope) -> Result<CofacetReport, CofacetError> {
    let cof = p.cofacets();
    let cg = cofacet_graph(p)?;
    let structure_violations = cg.as_ref().map(check_structure).unwrap_or_default();
    Ok(CofacetReport {
        predicates: characterization_predicates(p)?,
        canonical_form: recognize_canonical(p)?,
        max_cofacet_size: cof.iter().map(|c| c.len()).max().unwrap_or(0),
        large_cofacet: cof.iter().copied().find(|c| c.len() > 2),
        cofacet_graph: cg,
        structure_violations,
    })
}
