//! Constructive linkage procedures.
//!
//! [`subdivision_linkage`] routes a pairing through a rooted subdivision of
//! K_{3k−1} in a 2k-connected graph. [`simplex_face_linkage`] routes the
//! terminals onto a large simplex face and links them there by single edges.
//! Both validate their output before returning it.

use thiserror::Error;

use crate::graph::flow::SplitNetwork;
use crate::graph::{validate_linkage, vertex_connectivity, Graph, Linkage, LinkageError, Pairing};
use crate::polytope::{find_simplex_face, CombinatorialPolytope, PolytopeError};
use crate::subdivision::{find_rooted_subdivision, RootedSubdivision};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkerError {
    #[error(transparent)]
    Pairing(#[from] LinkageError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

/// Builds a linkage for `p` following the subdivision argument.
///
/// Requires the graph to be 2k-connected and to contain a subdivision of
/// K_{3k−1} rooted at the last target `t_k`.
pub fn subdivision_linkage(g: &Graph, p: &Pairing) -> Result<Linkage, LinkerError> {
    p.check_for(g)?;
    let k = p.len();
    if k == 0 {
        return Ok(Linkage { paths: Vec::new() });
    }
    let connectivity = if g.n() < 2 {
        0
    } else {
        vertex_connectivity(g).unwrap_or(0)
    };
    if connectivity < 2 * k {
        return Err(LinkerError::PreconditionFailed(format!(
            "graph is {connectivity}-connected, {}-connectivity needed",
            2 * k
        )));
    }
    let pairs = p.pairs();
    let tk = pairs[k - 1].1;
    let sub = find_rooted_subdivision(g, tk, 3 * k - 1)
        .ok_or_else(|| LinkerError::PreconditionFailed(format!("no subdivision of K_{} rooted at {tk}", 3 * k - 1)))?;
    let linkage = assemble_through_subdivision(g, pairs, &sub)?;
    if !validate_linkage(g, p, &linkage) {
        return Err(LinkerError::Defect(format!("assembled paths do not link {p}")));
    }
    Ok(linkage)
}

fn assemble_through_subdivision(
    g: &Graph,
    pairs: &[(usize, usize)],
    sub: &RootedSubdivision,
) -> Result<Linkage, LinkerError> {
    let k = pairs.len();
    let tk = sub.root;
    let attach: VertexSet = sub.branch.iter().copied().filter(|&u| u != tk).collect();
    let k_edges = sub.edges();
    let in_k = |u: usize, v: usize| k_edges.binary_search(&(u.min(v), u.max(v))).is_ok();

    // S_1..S_k then T_1..T_{k−1}: disjoint paths into the branch set avoiding
    // t_k, with no interior branch vertex and fewest edges outside K
    let mut net = SplitNetwork::new(g, g.vertices().without(tk), attach, in_k);
    let sources: Vec<usize> = pairs
        .iter()
        .map(|&(s, _)| s)
        .chain(pairs[..k - 1].iter().map(|&(_, t)| t))
        .collect();
    for &v in &sources {
        net.add_source_vertex(v);
    }
    for u in attach {
        net.add_sink_vertex(u);
    }
    let needed = sources.len() as i64;
    let (flow, _) = net.net.min_cost_flow(net.source(), net.sink(), needed);
    if flow < needed {
        return Err(LinkerError::Defect(format!(
            "only {flow} of {needed} paths reach the subdivision"
        )));
    }
    let fans = net.paths();
    let ends: VertexSet = fans.iter().filter_map(|path| path.last().copied()).collect();
    let free: Vec<usize> = attach.difference(ends).to_vec();
    if free.len() != k - 1 {
        return Err(LinkerError::Defect(format!(
            "{} free branch vertices, expected {}",
            free.len(),
            k - 1
        )));
    }

    let mut paths = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let s_path = &fans[i];
        let t_path = &fans[k + i];
        let (vi, wi, ui) = (*s_path.last().unwrap(), *t_path.last().unwrap(), free[i]);
        let m = sub.path_between(vi, ui).expect("branch pair");
        let n = sub.path_between(ui, wi).expect("branch pair");
        let mut path = s_path.clone();
        path.extend_from_slice(&m[1..]);
        path.extend_from_slice(&n[1..]);
        path.extend(t_path.iter().rev().skip(1));
        paths.push(shortcut(path));
    }
    let mut last = fans[k - 1].clone();
    last.push(tk);
    paths.push(last);
    Ok(Linkage { paths })
}

/// Removes every closed detour from a walk, leaving a path with the same ends.
fn shortcut(walk: Vec<usize>) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(walk.len());
    for v in walk {
        if let Some(pos) = path.iter().position(|&u| u == v) {
            path.truncate(pos);
        }
        path.push(v);
    }
    path
}

/// Builds a linkage for `p` by routing every terminal onto a simplex face of
/// dimension at least d − γ and joining the landing points inside the face.
///
/// Requires k ≤ ⌊(d − γ + 1)/2⌋ and enough connectivity to fan the 2k
/// terminals onto the face.
pub fn simplex_face_linkage(poly: &CombinatorialPolytope, p: &Pairing) -> Result<Linkage, LinkerError> {
    let g = poly.graph();
    p.check_for(&g)?;
    let k = p.len();
    let d = poly.dim() as i64;
    let bound = (d - poly.gamma() + 1).max(0) / 2;
    if k as i64 > bound {
        return Err(LinkerError::PreconditionFailed(format!(
            "{k} pairs exceed the simplex-face bound {bound}"
        )));
    }
    if k == 0 {
        return Ok(Linkage { paths: Vec::new() });
    }
    let face = find_simplex_face(poly)?;
    if face.dim < d - poly.gamma() || face.vertices.len() < 2 * k {
        return Err(LinkerError::Defect(format!(
            "simplex face {} is too small",
            face.vertices
        )));
    }

    // each path meets the face only in its last vertex
    let mut net = SplitNetwork::new(&g, g.vertices(), face.vertices, |_, _| false);
    let terminals: Vec<usize> = p.pairs().iter().flat_map(|&(s, t)| [s, t]).collect();
    for &v in &terminals {
        net.add_source_vertex(v);
    }
    for u in face.vertices {
        net.add_sink_vertex(u);
    }
    let needed = terminals.len() as i64;
    let (flow, _) = net.net.min_cost_flow(net.source(), net.sink(), needed);
    if flow < needed {
        return Err(LinkerError::PreconditionFailed(format!(
            "only {flow} of {needed} terminals can be routed disjointly onto the face"
        )));
    }
    let fans = net.paths();
    let paths = (0..k)
        .map(|i| {
            let mut path = fans[2 * i].clone();
            path.extend(fans[2 * i + 1].iter().rev());
            path
        })
        .collect();
    let linkage = Linkage { paths };
    if !validate_linkage(&g, p, &linkage) {
        return Err(LinkerError::Defect(format!("assembled paths do not link {p}")));
    }
    Ok(linkage)
}
