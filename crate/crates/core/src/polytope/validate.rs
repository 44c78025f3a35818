use std::fmt;

use serde::Serialize;

use super::{CombinatorialPolytope, FaceLattice};
use crate::graph::vertex_connectivity;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A 0-polytope is a single vertex with no facets.
    PointShape {
        n_vertices: usize,
        n_facets: usize,
    },
    NoFacets,
    NegativeGamma {
        gamma: i64,
    },
    FullFacet {
        facet: usize,
    },
    DuplicateFacet {
        first: usize,
        second: usize,
    },
    NestedFacets {
        inner: usize,
        outer: usize,
    },
    VertexInNoFacet {
        vertex: usize,
    },
    VertexInEveryFacet {
        vertex: usize,
    },
    Lattice {
        message: String,
    },
    /// The graph is less than d-connected, so this cannot be a polytope.
    Balinski {
        connectivity: usize,
        dim: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PointShape { n_vertices, n_facets } => write!(
                f,
                "a 0-polytope must have 1 vertex and no facets (has {n_vertices} vertices, {n_facets} facets)"
            ),
            Violation::NoFacets => write!(f, "no facets"),
            Violation::NegativeGamma { gamma } => write!(f, "fewer than dim + 1 vertices (gamma = {gamma})"),
            Violation::FullFacet { facet } => write!(f, "facet {facet} contains every vertex"),
            Violation::DuplicateFacet { first, second } => write!(f, "facets {first} and {second} coincide"),
            Violation::NestedFacets { inner, outer } => write!(f, "facet {inner} is contained in facet {outer}"),
            Violation::VertexInNoFacet { vertex } => write!(f, "vertex {vertex} lies in no facet"),
            Violation::VertexInEveryFacet { vertex } => write!(f, "vertex {vertex} lies in every facet"),
            Violation::Lattice { message } => write!(f, "{message}"),
            Violation::Balinski { connectivity, dim } => write!(
                f,
                "graph is only {connectivity}-connected but a {dim}-polytope graph is {dim}-connected"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(super) fn validate(p: &CombinatorialPolytope) -> ValidationReport {
    let mut violations = Vec::new();
    let facets = p.facets();
    let all = p.vertices();

    if p.gamma() < 0 {
        violations.push(Violation::NegativeGamma { gamma: p.gamma() });
    }

    if p.dim() == 0 {
        if p.n_vertices() != 1 || !facets.is_empty() {
            violations.push(Violation::PointShape {
                n_vertices: p.n_vertices(),
                n_facets: facets.len(),
            });
        }
        return ValidationReport { violations };
    }

    if facets.is_empty() {
        violations.push(Violation::NoFacets);
        return ValidationReport { violations };
    }

    for (i, f) in facets.iter().enumerate() {
        if *f == all {
            violations.push(Violation::FullFacet { facet: i });
        }
        for (j, g) in facets.iter().enumerate().skip(i + 1) {
            if f == g {
                violations.push(Violation::DuplicateFacet { first: i, second: j });
            } else if f.is_subset(*g) {
                violations.push(Violation::NestedFacets { inner: i, outer: j });
            } else if g.is_subset(*f) {
                violations.push(Violation::NestedFacets { inner: j, outer: i });
            }
        }
    }

    let covered = facets.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f));
    for v in all.difference(covered) {
        violations.push(Violation::VertexInNoFacet { vertex: v });
    }
    let common = facets.iter().fold(all, |acc, f| acc.intersection(*f));
    for v in common {
        violations.push(Violation::VertexInEveryFacet { vertex: v });
    }

    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    if let Err(e) = FaceLattice::build(p) {
        violations.push(Violation::Lattice { message: e.to_string() });
        return ValidationReport { violations };
    }

    if p.n_vertices() >= 2 {
        let kappa = vertex_connectivity(&p.graph()).expect("at least two vertices");
        if kappa < p.dim() {
            violations.push(Violation::Balinski {
                connectivity: kappa,
                dim: p.dim(),
            });
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{simplex, square};

    #[test]
    fn simplex_is_valid() {
        for d in 0..7 {
            assert!(simplex(d).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn duplicate_facet() {
        let mut facets = square().facets().to_vec();
        facets.push(facets[0]);
        let p = CombinatorialPolytope::new(2, 4, facets).unwrap();
        let report = p.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicateFacet { .. })));
    }

    #[test]
    fn full_and_nested() {
        let p = CombinatorialPolytope::from_lists(2, 3, &[&[0, 1, 2], &[0, 1]]).unwrap();
        let r = p.validate();
        assert!(r.violations.contains(&Violation::FullFacet { facet: 1 }));
        assert!(r.violations.contains(&Violation::NestedFacets { inner: 0, outer: 1 }));
    }

    #[test]
    fn uncovered_vertex() {
        let p = CombinatorialPolytope::from_lists(2, 4, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        let r = p.validate();
        assert_eq!(r.violations, vec![Violation::VertexInNoFacet { vertex: 3 }]);
    }

    #[test]
    fn negative_gamma() {
        let p = CombinatorialPolytope::from_lists(3, 3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert!(p
            .validate()
            .violations
            .contains(&Violation::NegativeGamma { gamma: -1 }));
    }

    #[test]
    fn balinski_failure() {
        // a "pentagon" whose facet list describes two triangles glued at a vertex:
        // graded, but its graph has a cut vertex
        let p =
            CombinatorialPolytope::from_lists(2, 5, &[&[0, 1], &[1, 2], &[0, 2], &[2, 3], &[3, 4], &[2, 4]]).unwrap();
        let r = p.validate();
        assert!(
            r.violations.iter().any(|v| matches!(
                v,
                Violation::Balinski {
                    connectivity: 1,
                    dim: 2
                }
            )),
            "{r}"
        );
    }

    #[test]
    fn point_shape() {
        let p = CombinatorialPolytope::from_lists(0, 2, &[]).unwrap();
        assert_eq!(
            p.validate().violations,
            vec![Violation::PointShape {
                n_vertices: 2,
                n_facets: 0
            }]
        );
    }
}
