//! Polytopes as vertex–facet incidences, and the constructions built on them.
//!
//! A [`CombinatorialPolytope`] carries no coordinates. Its dimension, its
//! vertex count and the vertex sets of its facets determine everything else:
//! the face lattice, the graph, the cofacets.
//!
//! Vertex labels are dense indices. Binary constructions place the left
//! operand's vertices first and shift the right operand's vertices up.

mod io;
mod lattice;
mod validate;

pub use io::PolytopeFile;
pub use lattice::{Face, FaceLattice};
pub use validate::{ValidationReport, Violation};

use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("too many vertices: {0} (at most {max} supported)", max = MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("facet {facet} refers to vertex {vertex}, but there are only {n_vertices} vertices")]
    VertexOutOfRange {
        facet: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("a polytope needs at least one vertex")]
    NoVertices,
    #[error("direct sum needs summands of dimension at least 1 (got dimension {0})")]
    PointSummand(usize),
    #[error("stacking needs a polytope of dimension at least 2 (got dimension {0})")]
    StackDimension(usize),
    #[error("no simplex facet to stack onto (after {done} of {requested} steps)")]
    NoSimplexFacet { done: usize, requested: usize },
    #[error("empty construction: n = 0 and no (j, k) pairs")]
    EmptyConstruction,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("unknown builtin polytope `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid polytope: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialPolytope {
    dim: usize,
    n_vertices: usize,
    facets: Vec<VertexSet>,
}

impl CombinatorialPolytope {
    /// Builds a polytope from raw incidences. Facets are put into canonical
    /// (lexicographic) order; structural validity is left to [`validate`](Self::validate).
    pub fn new(
        dim: usize,
        n_vertices: usize,
        facets: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, PolytopeError> {
        if n_vertices == 0 {
            return Err(PolytopeError::NoVertices);
        }
        if n_vertices > MAX_VERTICES {
            return Err(PolytopeError::TooManyVertices(n_vertices));
        }
        let mut facets: Vec<VertexSet> = facets.into_iter().collect();
        let universe = VertexSet::full(n_vertices);
        for (i, f) in facets.iter().enumerate() {
            if let Some(v) = f.difference(universe).min() {
                return Err(PolytopeError::VertexOutOfRange {
                    facet: i,
                    vertex: v,
                    n_vertices,
                });
            }
        }
        facets.sort_by(|a, b| a.cmp_lex(*b));
        Ok(CombinatorialPolytope {
            dim,
            n_vertices,
            facets,
        })
    }

    /// Convenience constructor from facet index lists.
    pub fn from_lists(dim: usize, n_vertices: usize, facets: &[&[usize]]) -> Result<Self, PolytopeError> {
        if let Some(v) = facets.iter().flat_map(|f| f.iter()).find(|&&v| v >= MAX_VERTICES) {
            return Err(PolytopeError::TooManyVertices(v + 1));
        }
        Self::new(dim, n_vertices, facets.iter().map(|f| f.iter().collect()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// γ = f₀ − d − 1; negative only for invalid input.
    pub fn gamma(&self) -> i64 {
        self.n_vertices as i64 - self.dim as i64 - 1
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n_vertices)
    }

    /// Facets as seen by the join rule: a point has the empty face as its only facet.
    fn join_facets(&self) -> Vec<VertexSet> {
        if self.dim == 0 {
            vec![VertexSet::EMPTY]
        } else {
            self.facets.clone()
        }
    }

    fn check_size(total: usize) -> Result<(), PolytopeError> {
        if total > MAX_VERTICES {
            Err(PolytopeError::TooManyVertices(total))
        } else {
            Ok(())
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    pub fn faces(&self) -> Result<FaceLattice, PolytopeError> {
        FaceLattice::build(self)
    }

    /// The graph of the polytope. `{u, v}` is an edge iff the smallest face
    /// containing both vertices has exactly these two vertices.
    pub fn graph(&self) -> Graph {
        let n = self.n_vertices;
        let mut g = Graph::empty(n);
        let all = self.vertices();
        for u in 0..n {
            for v in (u + 1)..n {
                let pair = VertexSet::singleton(u).with(v);
                let closure = self
                    .facets
                    .iter()
                    .filter(|f| pair.is_subset(**f))
                    .fold(all, |acc, f| acc.intersection(*f));
                if closure == pair {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Vertex sets `V(P) \ V(F)`, one per facet, in facet order.
    pub fn cofacets(&self) -> Vec<VertexSet> {
        let all = self.vertices();
        self.facets.iter().map(|f| all.difference(*f)).collect()
    }

    /// The facet with index `index`, relabeled as a polytope of its own on
    /// vertices `0..|F|` (in increasing order of the original labels).
    /// Returns the polytope and the original label of each new vertex.
    pub fn facet_polytope(&self, index: usize) -> Result<(CombinatorialPolytope, Vec<usize>), PolytopeError> {
        let facet = *self
            .facets
            .get(index)
            .ok_or_else(|| PolytopeError::Parameter(format!("no facet with index {index}")))?;
        if self.dim == 0 {
            return Err(PolytopeError::Parameter("a point has no facet polytopes".into()));
        }
        let labels = facet.to_vec();
        let ridges = maximal_sets(
            self.facets
                .iter()
                .filter(|g| **g != facet)
                .map(|g| g.intersection(facet))
                .filter(|r| *r != facet),
        );
        let relabel = |s: VertexSet| -> VertexSet {
            s.iter()
                .map(|v| labels.binary_search(&v).expect("ridge inside facet"))
                .collect()
        };
        let sub_dim = self.dim - 1;
        let sub_facets: Vec<VertexSet> = if sub_dim == 0 {
            Vec::new()
        } else {
            ridges.into_iter().map(relabel).collect()
        };
        let p = CombinatorialPolytope::new(sub_dim, labels.len(), sub_facets)?;
        Ok((p, labels))
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<CombinatorialPolytope, PolytopeError> {
        if perm.len() != self.n_vertices {
            return Err(PolytopeError::Parameter(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n_vertices
            )));
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| perm[v]).collect::<VertexSet>());
        CombinatorialPolytope::new(self.dim, self.n_vertices, facets)
    }
}

/// Inclusion-maximal members of a family, deduplicated, in lexicographic order.
pub(crate) fn maximal_sets(family: impl IntoIterator<Item = VertexSet>) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> = family.into_iter().collect();
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(|a, b| a.cmp_lex(*b));
    kept
}

/// The d-simplex Δ_d.
pub fn simplex(d: usize) -> Result<CombinatorialPolytope, PolytopeError> {
    let n = d + 1;
    CombinatorialPolytope::check_size(n)?;
    let all = VertexSet::full(n);
    let facets: Vec<VertexSet> = if d == 0 {
        Vec::new()
    } else {
        (0..n).map(|v| all.without(v)).collect()
    };
    CombinatorialPolytope::new(d, n, facets)
}

/// The join P * Q.
pub fn join(p: &CombinatorialPolytope, q: &CombinatorialPolytope) -> Result<CombinatorialPolytope, PolytopeError> {
    let n = p.n_vertices + q.n_vertices;
    CombinatorialPolytope::check_size(n)?;
    let offset = p.n_vertices;
    let vp = p.vertices();
    let vq = q.vertices().shifted(offset);
    let mut facets = Vec::new();
    for f in p.join_facets() {
        facets.push(f.union(vq));
    }
    for g in q.join_facets() {
        facets.push(vp.union(g.shifted(offset)));
    }
    CombinatorialPolytope::new(p.dim + q.dim + 1, n, facets)
}

/// The direct sum P ⊕ Q. Both summands need dimension at least 1.
pub fn direct_sum(
    p: &CombinatorialPolytope,
    q: &CombinatorialPolytope,
) -> Result<CombinatorialPolytope, PolytopeError> {
    for s in [p, q] {
        if s.dim == 0 {
            return Err(PolytopeError::PointSummand(0));
        }
    }
    let n = p.n_vertices + q.n_vertices;
    CombinatorialPolytope::check_size(n)?;
    let offset = p.n_vertices;
    let mut facets = Vec::with_capacity(p.facets.len() * q.facets.len());
    for f in &p.facets {
        for g in &q.facets {
            facets.push(f.union(g.shifted(offset)));
        }
    }
    CombinatorialPolytope::new(p.dim + q.dim, n, facets)
}

/// The t-fold pyramid pyr^t(P).
pub fn pyramid(p: &CombinatorialPolytope, t: usize) -> Result<CombinatorialPolytope, PolytopeError> {
    let point = simplex(0)?;
    let mut out = p.clone();
    for _ in 0..t {
        out = join(&out, &point)?;
    }
    Ok(out)
}

/// The bipyramid P ⊕ I.
pub fn bipyramid(p: &CombinatorialPolytope) -> Result<CombinatorialPolytope, PolytopeError> {
    direct_sum(p, &simplex(1)?)
}

/// Stacks `t` times. Each step glues a new vertex onto the lexicographically
/// smallest simplex facet.
pub fn stack(p: &CombinatorialPolytope, t: usize) -> Result<CombinatorialPolytope, PolytopeError> {
    if t == 0 {
        return Ok(p.clone());
    }
    if p.dim < 2 {
        return Err(PolytopeError::StackDimension(p.dim));
    }
    CombinatorialPolytope::check_size(p.n_vertices + t)?;
    let mut facets = p.facets.clone();
    let mut n = p.n_vertices;
    for step in 0..t {
        // facets stay lexicographically sorted, so the first hit is the smallest
        let pos = facets
            .iter()
            .position(|f| f.len() == p.dim)
            .ok_or(PolytopeError::NoSimplexFacet {
                done: step,
                requested: t,
            })?;
        let target = facets.remove(pos);
        let apex = n;
        n += 1;
        for w in target.iter() {
            facets.push(target.without(w).with(apex));
        }
        facets.sort_by(|a, b| a.cmp_lex(*b));
    }
    CombinatorialPolytope::new(p.dim, n, facets)
}

/// P(n, j₁,k₁, …, j_m,k_m) = Δ_{n−1} * (Δ_{j₁} ⊕ Δ_{k₁}) * … * (Δ_{j_m} ⊕ Δ_{k_m}).
pub fn canonical_p(n: usize, pairs: &[(usize, usize)]) -> Result<CombinatorialPolytope, PolytopeError> {
    if let Some(&(j, k)) = pairs.iter().find(|(j, k)| *j == 0 || *k == 0) {
        return Err(PolytopeError::Parameter(format!(
            "sum factors need j, k >= 1 (got ({j}, {k}))"
        )));
    }
    let total = n + pairs.iter().map(|(j, k)| j + k + 2).sum::<usize>();
    if total == 0 {
        return Err(PolytopeError::EmptyConstruction);
    }
    CombinatorialPolytope::check_size(total)?;
    let mut acc: Option<CombinatorialPolytope> = if n > 0 { Some(simplex(n - 1)?) } else { None };
    for &(j, k) in pairs {
        let factor = direct_sum(&simplex(j)?, &simplex(k)?)?;
        acc = Some(match acc {
            None => factor,
            Some(a) => join(&a, &factor)?,
        });
    }
    Ok(acc.expect("non-empty construction"))
}

/// P_{n,m} = Δ_{n−1} * □^{*m}.
pub fn pnm(n: usize, m: usize) -> Result<CombinatorialPolytope, PolytopeError> {
    canonical_p(n, &vec![(1, 1); m])
}

/// The d-dimensional cross-polytope, as the d-fold sum of intervals.
pub fn cross(d: usize) -> Result<CombinatorialPolytope, PolytopeError> {
    if d == 0 {
        return Err(PolytopeError::Parameter("cross(d) needs d >= 1".into()));
    }
    CombinatorialPolytope::check_size(2 * d)?;
    let interval = simplex(1)?;
    let mut acc = interval.clone();
    for _ in 1..d {
        acc = direct_sum(&acc, &interval)?;
    }
    Ok(acc)
}

pub fn square() -> CombinatorialPolytope {
    cross(2).expect("square fits")
}

/// Triangular prism: triangles {0,1,2} and {3,4,5}, vertex i joined to i+3.
pub fn prism3() -> CombinatorialPolytope {
    CombinatorialPolytope::from_lists(
        3,
        6,
        &[&[0, 1, 2], &[3, 4, 5], &[0, 1, 3, 4], &[1, 2, 4, 5], &[0, 2, 3, 5]],
    )
    .expect("prism fits")
}

/// Named builtin polytopes: `point`, `interval`, `square`, `prism3`, and `cross(d)`.
pub fn builtin(name: &str) -> Result<CombinatorialPolytope, PolytopeError> {
    let name = name.trim();
    match name {
        "point" => simplex(0),
        "interval" => simplex(1),
        "square" => Ok(square()),
        "prism3" => Ok(prism3()),
        _ => {
            let arg = name
                .strip_prefix("cross(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse::<usize>().ok());
            match arg {
                Some(d) => cross(d),
                None => Err(PolytopeError::UnknownBuiltin(name.to_string())),
            }
        }
    }
}

/// Largest s such that the polytope has an s-dimensional simplex face.
pub fn max_simplex_face_dim(p: &CombinatorialPolytope) -> Result<usize, PolytopeError> {
    let lattice = p.faces()?;
    Ok(lattice
        .faces()
        .iter()
        .filter(|f| f.is_simplex() && !f.vertices.is_empty())
        .map(|f| f.dim as usize)
        .max()
        .unwrap_or(0))
}

/// Finds a simplex face of dimension at least d − γ by descending through
/// facets. When a facet misses a single vertex, the polytope is a pyramid
/// over that facet and the apex is joined back onto the face found below.
pub fn find_simplex_face(p: &CombinatorialPolytope) -> Result<Face, PolytopeError> {
    if p.dim <= 2 {
        let lattice = p.faces()?;
        return lattice
            .faces()
            .iter()
            .filter(|f| f.is_simplex() && !f.vertices.is_empty())
            .max_by(|a, b| a.dim.cmp(&b.dim).then_with(|| b.vertices.cmp_lex(a.vertices)))
            .cloned()
            .ok_or_else(|| PolytopeError::Invalid("no non-empty faces".into()));
    }
    let (facet, labels) = p.facet_polytope(0)?;
    let inner = find_simplex_face(&facet)?;
    let lifted: VertexSet = inner.vertices.iter().map(|v| labels[v]).collect();
    let missed = p.vertices().difference(p.facets[0]);
    if missed.len() == 1 {
        let apex = missed.min().expect("one vertex");
        Ok(Face {
            vertices: lifted.with(apex),
            dim: inner.dim + 1,
        })
    } else {
        Ok(Face {
            vertices: lifted,
            dim: inner.dim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn simplex_shapes() {
        let pt = simplex(0).unwrap();
        assert_eq!((pt.dim(), pt.n_vertices(), pt.facets().len()), (0, 1, 0));
        let tet = simplex(3).unwrap();
        assert_eq!(tet.n_vertices(), 4);
        assert_eq!(tet.facets().len(), 4);
        assert!(tet.facets().iter().all(|f| f.len() == 3));
        let g = simplex(5).unwrap().graph();
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn join_of_points_is_interval() {
        let pt = simplex(0).unwrap();
        let i = join(&pt, &pt).unwrap();
        assert_eq!(i, simplex(1).unwrap());
        assert_eq!(i.graph().edge_count(), 1);
    }

    #[test]
    fn join_counts() {
        let sq = square();
        let p = join(&simplex(2).unwrap(), &join(&sq, &sq).unwrap()).unwrap();
        assert_eq!((p.dim(), p.n_vertices(), p.gamma()), (8, 11, 2));
    }

    #[test]
    fn sum_of_intervals_is_square() {
        let sq = square();
        assert_eq!((sq.dim(), sq.n_vertices()), (2, 4));
        assert_eq!(sq.facets(), &[set(&[0, 2]), set(&[0, 3]), set(&[1, 2]), set(&[1, 3])]);
        let g = sq.graph();
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(2, 3));
        assert_eq!(g.edge_count(), 4);
        assert_eq!(builtin("cross(2)").unwrap(), sq);
    }

    #[test]
    fn sum_rejects_points() {
        let pt = simplex(0).unwrap();
        assert!(matches!(
            direct_sum(&pt, &square()),
            Err(PolytopeError::PointSummand(_))
        ));
    }

    #[test]
    fn pyramid_identity_and_counts() {
        let sq = square();
        assert_eq!(pyramid(&sq, 0).unwrap(), sq);
        let py = pyramid(&sq, 1).unwrap();
        assert_eq!((py.dim(), py.n_vertices(), py.facets().len()), (3, 5, 5));
        assert_eq!(
            pyramid(&sq, 3).unwrap(),
            pnm(3, 1).unwrap().relabeled(&[4, 5, 6, 0, 1, 2, 3]).unwrap()
        );
    }

    #[test]
    fn stacked_tetrahedron() {
        let st = stack(&simplex(3).unwrap(), 1).unwrap();
        assert_eq!(st.n_vertices(), 5);
        // the tetrahedron loses one facet and gains three
        assert_eq!(st.facets().len(), 6);
        assert!(st.validate().is_ok());
    }

    #[test]
    fn stacked_square_pyramid_keeps_square() {
        let st = stack(&pyramid(&square(), 1).unwrap(), 1).unwrap();
        assert_eq!((st.dim(), st.n_vertices()), (3, 6));
        assert!(st.facets().contains(&set(&[0, 1, 2, 3])));
        assert!(st.validate().is_ok());
    }

    #[test]
    fn stacked_square_is_pentagon() {
        let p = stack(&square(), 1).unwrap();
        assert_eq!((p.dim(), p.n_vertices(), p.facets().len()), (2, 5, 5));
        assert_eq!(p.graph().edge_count(), 5);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn stack_errors() {
        assert!(matches!(
            stack(&simplex(1).unwrap(), 1),
            Err(PolytopeError::StackDimension(1))
        ));
        assert!(stack(&cross(3).unwrap(), 0).is_ok());
        // 3-cube: no triangles
        let cube = CombinatorialPolytope::from_lists(
            3,
            8,
            &[
                &[0, 1, 2, 3],
                &[4, 5, 6, 7],
                &[0, 1, 4, 5],
                &[2, 3, 6, 7],
                &[0, 2, 4, 6],
                &[1, 3, 5, 7],
            ],
        )
        .unwrap();
        assert!(matches!(
            stack(&cube, 1),
            Err(PolytopeError::NoSimplexFacet { done: 0, .. })
        ));
    }

    #[test]
    fn canonical_constructor() {
        let p = canonical_p(3, &[(1, 1), (1, 1)]).unwrap();
        assert_eq!((p.dim(), p.n_vertices()), (8, 11));
        assert_eq!(canonical_p(4, &[]).unwrap(), simplex(3).unwrap());
        assert_eq!(canonical_p(0, &[(1, 1)]).unwrap(), square());
        assert!(matches!(canonical_p(0, &[]), Err(PolytopeError::EmptyConstruction)));
        assert!(canonical_p(1, &[(0, 1)]).is_err());
        let q = canonical_p(2, &[(2, 3), (1, 2)]).unwrap();
        assert_eq!(q.dim(), 2 - 1 + 2 + 3 + 1 + 2 + 2);
        assert_eq!(q.gamma(), 2);
    }

    #[test]
    fn builtins() {
        let c3 = builtin("cross(3)").unwrap();
        assert_eq!((c3.n_vertices(), c3.facets().len()), (6, 8));
        let pr = builtin("prism3").unwrap();
        assert_eq!(pr.facets().iter().filter(|f| f.len() == 3).count(), 2);
        assert_eq!(pr.facets().iter().filter(|f| f.len() == 4).count(), 3);
        assert!(pr.validate().is_ok());
        assert!(matches!(builtin("dodecahedron"), Err(PolytopeError::UnknownBuiltin(_))));
        assert_eq!(builtin("interval").unwrap().n_vertices(), 2);
        assert_eq!(builtin("point").unwrap().dim(), 0);
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(simplex(64), Err(PolytopeError::TooManyVertices(65))));
        assert!(cross(33).is_err());
    }

    #[test]
    fn facet_polytope_of_square_pyramid_base() {
        let py = pyramid(&square(), 1).unwrap();
        let idx = py.facets().iter().position(|f| f.len() == 4).unwrap();
        let (base, labels) = py.facet_polytope(idx).unwrap();
        assert_eq!(labels, vec![0, 1, 2, 3]);
        assert_eq!(base, square());
    }

    #[test]
    fn simplex_faces() {
        for d in 0..6 {
            assert_eq!(max_simplex_face_dim(&simplex(d).unwrap()).unwrap(), d);
        }
        let st = stack(&simplex(3).unwrap(), 1).unwrap();
        assert_eq!(max_simplex_face_dim(&st).unwrap(), 2);
        let p = canonical_p(3, &[(1, 1), (1, 1)]).unwrap();
        assert_eq!(max_simplex_face_dim(&p).unwrap(), 6);
    }

    #[test]
    fn find_simplex_face_meets_bound() {
        let cases = [
            simplex(4).unwrap(),
            square(),
            pyramid(&square(), 2).unwrap(),
            canonical_p(3, &[(1, 1), (1, 1)]).unwrap(),
            canonical_p(1, &[(2, 1), (1, 3)]).unwrap(),
            stack(&simplex(3).unwrap(), 2).unwrap(),
            prism3(),
            cross(4).unwrap(),
        ];
        for p in &cases {
            let face = find_simplex_face(p).unwrap();
            assert!(face.is_simplex());
            let bound = p.dim() as i64 - p.gamma();
            assert!(face.dim >= bound, "{p:?} gave {face:?}");
            let lattice = p.faces().unwrap();
            assert!(lattice
                .faces()
                .iter()
                .any(|f| f.vertices == face.vertices && f.dim == face.dim));
        }
    }
}
