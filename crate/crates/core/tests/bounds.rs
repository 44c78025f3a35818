use polylink::bounds::{k_few_lower, k_lower_general, k_pnm_formula, k_upper_gallivan};
use polylink::expr::parse;
use polylink::graph::{disjoint_paths, linkedness, Obstruction};
use polylink::polytope::pnm;
use polylink::witness::{failing_pairing_pnm, gallivan_parameters, gallivan_witness, join_family_witness};
use proptest::prelude::*;

proptest! {
    #[test]
    fn general_lower_bound_below_gallivan(d in 3usize..500) {
        prop_assert!(k_lower_general(d).unwrap() <= k_upper_gallivan(d).unwrap());
    }

    #[test]
    fn few_vertices_bound_matches_pnm_formula(n in 0usize..60, m in 0usize..20) {
        prop_assume!(n + 4 * m >= 2);
        let d = n + 3 * m - 1;
        let gamma = m;
        if d + 2 >= 5 * gamma {
            prop_assert_eq!(k_few_lower(d, gamma).unwrap(), k_pnm_formula(n, m).unwrap());
        }
    }
}

#[test]
fn failing_pairings_defeat_exact_search() {
    for total in 2..=12 {
        for m in 0..=total / 4 {
            let n = total - 4 * m;
            let k = k_pnm_formula(n, m).unwrap();
            let g = pnm(n, m).unwrap().graph();
            match failing_pairing_pnm(n, m).unwrap() {
                Obstruction::Pairing { pairing } => {
                    assert_eq!(pairing.len(), k + 1, "P({n},{m})");
                    assert!(disjoint_paths(&g, &pairing).unwrap().is_none(), "P({n},{m})");
                }
                Obstruction::TooFewVertices { n: v, needed } => {
                    assert_eq!(v, total);
                    assert_eq!(needed, 2 * (k + 1));
                    assert!(needed > total);
                }
            }
        }
    }
}

#[test]
fn gallivan_witnesses_meet_the_upper_bound() {
    for d in 1..=10 {
        let (n, m) = gallivan_parameters(d).unwrap();
        let p = gallivan_witness(d).unwrap();
        assert_eq!(p.dim(), d);
        if p.n_vertices() <= 12 {
            assert_eq!(linkedness(&p.graph()).k, k_pnm_formula(n, m).unwrap(), "d = {d}");
        }
    }
    for d in 3..=10 {
        let (n, m) = gallivan_parameters(d).unwrap();
        assert_eq!(k_pnm_formula(n, m).unwrap(), k_upper_gallivan(d).unwrap(), "d = {d}");
    }
}

#[test]
fn join_family_sizes() {
    for (d, f0) in [(8, 11), (12, 17), (13, 17), (16, 23)] {
        let p = join_family_witness(d).unwrap();
        assert_eq!((p.dim(), p.n_vertices()), (d, f0));
    }
    assert!(join_family_witness(9).is_err());
}

#[test]
fn expression_examples() {
    let a = parse("pyr(square,3)").unwrap().eval().unwrap();
    assert_eq!((a.dim(), a.n_vertices()), (5, 7));
    let b = parse("join(simplex(2),square,square)").unwrap().eval().unwrap();
    assert_eq!(b, pnm(3, 2).unwrap());
    let c = parse("P(1; 1,1, 1,1)").unwrap().eval().unwrap();
    assert_eq!(c, parse("Pnm(1,2)").unwrap().eval().unwrap());
    assert!(parse("simplex(").is_err());
    assert!(parse("join()").is_err());
}
