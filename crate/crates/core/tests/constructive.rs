mod common;

use polylink::graph::{disjoint_paths, validate_linkage, vertex_connectivity};
use polylink::linker::{simplex_face_linkage, subdivision_linkage, LinkerError};
use polylink::subdivision::find_rooted_subdivision;
use polylink::witness::sample_pairings;
use proptest::prelude::*;

/// Checks the subdivision invariants directly: branch vertices in N(root),
/// one path per branch pair with matching ends, consecutive vertices adjacent,
/// interiors avoid the branch set and each other.
fn independent_check(g: &polylink::Graph, sub: &polylink::subdivision::RootedSubdivision) -> Result<(), String> {
    let m = sub.branch.len();
    if !sub.branch.contains(&sub.root) {
        return Err("root is not a branch vertex".into());
    }
    for &b in &sub.branch {
        if b != sub.root && !g.has_edge(b, sub.root) {
            return Err(format!("branch vertex {b} is not adjacent to the root"));
        }
    }
    if sub.paths.len() != m * (m - 1) / 2 {
        return Err("wrong number of paths".into());
    }
    let mut interiors = std::collections::HashSet::new();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (sub.branch[a], sub.branch[b]);
            let path = sub
                .paths
                .iter()
                .find(|p| {
                    let (s, t) = (p[0], *p.last().unwrap());
                    (s, t) == (x, y) || (s, t) == (y, x)
                })
                .ok_or(format!("no path between {x} and {y}"))?;
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("{}-{} is not an edge", w[0], w[1]));
                }
            }
            for &v in &path[1..path.len() - 1] {
                if sub.branch.contains(&v) || !interiors.insert(v) {
                    return Err(format!("interior vertex {v} reused"));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rooted_subdivisions_exist_and_check((name, p) in common::polytope(12)) {
        let g = p.graph();
        for v in 0..g.n() {
            let sub = find_rooted_subdivision(&g, v, p.dim() + 1);
            prop_assert!(sub.is_some(), "{}: none at {}", name, v);
            let sub = sub.unwrap();
            prop_assert_eq!(sub.root, v);
            prop_assert!(sub.check(&g).is_ok());
            prop_assert_eq!(independent_check(&g, &sub), Ok(()));
        }
    }

    #[test]
    fn subdivision_linkage_validates_and_agrees((name, p) in common::polytope(11), seed in any::<u64>()) {
        let g = p.graph();
        let k = p.dim().div_ceil(3);
        for pairing in sample_pairings(g.n(), k, 20, seed) {
            match subdivision_linkage(&g, &pairing) {
                Ok(l) => {
                    prop_assert!(validate_linkage(&g, &pairing, &l), "{}: {}", name, pairing);
                    prop_assert!(disjoint_paths(&g, &pairing).unwrap().is_some());
                }
                Err(LinkerError::PreconditionFailed(_)) => {}
                Err(e) => prop_assert!(false, "{}: {}: {}", name, pairing, e),
            }
        }
    }

    #[test]
    fn subdivision_linkage_on_random_graphs(g in common::graph(9), seed in any::<u64>()) {
        let kappa = vertex_connectivity(&g).unwrap();
        for k in 1..=(kappa / 2).min(g.n() / 2) {
            for pairing in sample_pairings(g.n(), k, 10, seed) {
                match subdivision_linkage(&g, &pairing) {
                    Ok(l) => prop_assert!(validate_linkage(&g, &pairing, &l)),
                    Err(LinkerError::PreconditionFailed(_)) => {}
                    Err(e) => prop_assert!(false, "{}: {}", pairing, e),
                }
            }
        }
    }

    #[test]
    fn simplex_face_linkage_validates((name, p) in common::polytope(11), seed in any::<u64>()) {
        let g = p.graph();
        let k = (p.dim() as i64 - p.gamma() + 1).max(0) as usize / 2;
        for pairing in sample_pairings(g.n(), k, 20, seed) {
            let l = simplex_face_linkage(&p, &pairing);
            prop_assert!(l.is_ok(), "{}: {}: {:?}", name, pairing, l);
            prop_assert!(validate_linkage(&g, &pairing, &l.unwrap()));
        }
    }
}
