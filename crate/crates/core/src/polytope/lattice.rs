use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{maximal_sets, CombinatorialPolytope, PolytopeError};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: VertexSet,
    /// −1 for the empty face.
    pub dim: i64,
}

impl Face {
    pub fn is_simplex(&self) -> bool {
        self.vertices.len() as i64 == self.dim + 1
    }
}

/// All faces of a polytope, ordered by rank and then lexicographically.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
}

impl FaceLattice {
    /// Closes the facet family under intersection, adds the empty face and
    /// the whole polytope, and ranks every face by the longest chain below it.
    /// Fails if the resulting poset is not graded of rank `dim + 1`.
    pub fn build(p: &CombinatorialPolytope) -> Result<Self, PolytopeError> {
        let all = p.vertices();
        let facets = p.facets();

        let mut members: Vec<VertexSet> = vec![all, VertexSet::EMPTY];
        let mut seen: HashSet<VertexSet> = members.iter().copied().collect();
        let mut queue: Vec<VertexSet> = Vec::new();
        for &f in facets {
            if seen.insert(f) {
                members.push(f);
                queue.push(f);
            }
        }
        while let Some(face) = queue.pop() {
            for &g in facets {
                let x = face.intersection(g);
                if seen.insert(x) {
                    members.push(x);
                    queue.push(x);
                }
            }
        }

        // children of a face: maximal proper intersections with facets not containing it
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp_lex(*b)));
        let mut rank: HashMap<VertexSet, i64> = HashMap::with_capacity(members.len());
        for &face in &members {
            if face.is_empty() {
                rank.insert(face, 0);
                continue;
            }
            let mut below = maximal_sets(
                facets
                    .iter()
                    .filter(|g| !face.is_subset(**g))
                    .map(|g| g.intersection(face)),
            );
            if below.is_empty() {
                below.push(VertexSet::EMPTY);
            }
            let ranks: Vec<i64> = below.iter().map(|b| rank[b]).collect();
            let top = *ranks.iter().max().expect("non-empty");
            if ranks.iter().any(|&r| r != top) {
                return Err(PolytopeError::Invalid(format!(
                    "face lattice is not graded: face {face} covers faces of ranks {ranks:?}"
                )));
            }
            rank.insert(face, top + 1);
        }

        let top = rank[&all];
        if top != p.dim() as i64 + 1 {
            return Err(PolytopeError::Invalid(format!(
                "face lattice has rank {top}, expected dim + 1 = {}",
                p.dim() + 1
            )));
        }

        let mut faces: Vec<Face> = members
            .into_iter()
            .map(|v| Face {
                vertices: v,
                dim: rank[&v] - 1,
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp_lex(b.vertices)));
        Ok(FaceLattice { faces })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Number of faces of each dimension −1, 0, …, d.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.last().map(|f| f.dim).unwrap_or(-1);
        let mut counts = vec![0usize; (top + 2) as usize];
        for f in &self.faces {
            counts[(f.dim + 1) as usize] += 1;
        }
        counts
    }

    pub fn of_dim(&self, dim: i64) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cross, pyramid, simplex, square};

    #[test]
    fn triangle_and_square() {
        let tri = simplex(2).unwrap().faces().unwrap();
        assert_eq!(tri.len(), 8);
        assert_eq!(tri.f_vector(), vec![1, 3, 3, 1]);
        let sq = square().faces().unwrap();
        assert_eq!(sq.len(), 10);
        assert_eq!(sq.f_vector(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn square_pyramid_by_hand() {
        // hand count: empty, 5 vertices, 8 edges, 4 triangles + base, whole
        let lat = pyramid(&square(), 1).unwrap().faces().unwrap();
        assert_eq!(lat.f_vector(), vec![1, 5, 8, 5, 1]);
        assert_eq!(lat.len(), 20);
    }

    #[test]
    fn point_and_interval() {
        assert_eq!(simplex(0).unwrap().faces().unwrap().f_vector(), vec![1, 1]);
        assert_eq!(simplex(1).unwrap().faces().unwrap().f_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn octahedron() {
        assert_eq!(cross(3).unwrap().faces().unwrap().f_vector(), vec![1, 6, 12, 8, 1]);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let sq = square();
        let lying = CombinatorialPolytope::new(3, 4, sq.facets().iter().copied()).unwrap();
        assert!(matches!(lying.faces(), Err(PolytopeError::Invalid(_))));
    }

    #[test]
    fn simplex_faces_are_subsets() {
        let lat = simplex(4).unwrap().faces().unwrap();
        assert_eq!(lat.len(), 32);
        assert!(lat.faces().iter().all(|f| f.is_simplex()));
    }
}
