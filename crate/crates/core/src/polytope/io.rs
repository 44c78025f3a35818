use serde::{Deserialize, Serialize};

use super::{CombinatorialPolytope, PolytopeError};
use crate::vertex_set::VertexSet;

/// On-disk form of a polytope: `{"dim": d, "n_vertices": n, "facets": [[...], ...]}`.
///
/// Written canonically: each facet ascending, facets in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub n_vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&CombinatorialPolytope> for PolytopeFile {
    fn from(p: &CombinatorialPolytope) -> Self {
        PolytopeFile {
            dim: p.dim(),
            n_vertices: p.n_vertices(),
            facets: p.facets().iter().map(|f| f.to_vec()).collect(),
        }
    }
}

impl TryFrom<PolytopeFile> for CombinatorialPolytope {
    type Error = PolytopeError;

    fn try_from(file: PolytopeFile) -> Result<Self, PolytopeError> {
        for (i, f) in file.facets.iter().enumerate() {
            if let Some(&v) = f.iter().find(|&&v| v >= file.n_vertices) {
                return Err(PolytopeError::VertexOutOfRange {
                    facet: i,
                    vertex: v,
                    n_vertices: file.n_vertices,
                });
            }
        }
        if file.n_vertices > crate::vertex_set::MAX_VERTICES {
            return Err(PolytopeError::TooManyVertices(file.n_vertices));
        }
        let facets = file.facets.iter().map(|f| f.iter().collect::<VertexSet>());
        CombinatorialPolytope::new(file.dim, file.n_vertices, facets)
    }
}

impl CombinatorialPolytope {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolytopeFile::from(self)).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&PolytopeFile::from(self)).expect("plain data serializes")
    }

    /// Parses the JSON file format. The result is not validated.
    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| PolytopeError::Invalid(format!("bad polytope file: {e}")))?;
        CombinatorialPolytope::try_from(file)
    }
}
