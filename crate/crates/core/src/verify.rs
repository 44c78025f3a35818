//! End-to-end verification suites. Each suite runs a family of cases (in
//! parallel where independent) and reports one result per case, in a fixed
//! order.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{k_lower_general, k_pnm_formula, kd_table};
use crate::cofacet::{characterization_predicates, classify_extremal_with, recognize_canonical, CanonicalForm, Case};
use crate::graph::{
    disjoint_paths, linkedness_capped, validate_linkage, vertex_connectivity, Deadline, LinkageError, Obstruction,
};
use crate::linker::{simplex_face_linkage, subdivision_linkage, LinkerError};
use crate::polytope::{canonical_p, pnm, simplex, stack, CombinatorialPolytope};
use crate::subdivision::find_rooted_subdivision;
use crate::witness::{
    complement_matching_pairing, corpus, failing_pairing_pnm, join_family_linkedness, join_family_witness,
    pnm_parameters, sample_pairings, stacked_pyramid_failing_pairing, stacked_pyramid_witness, CorpusEntry,
};

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            label: label.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub title: String,
    pub cases: Vec<CaseResult>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("time limit reached")]
    TimedOut,
}

/// Suite names with one-line descriptions, in acceptance order.
pub const SUITES: &[(&str, &str)] = &[
    (
        "pnm-linkedness",
        "exact linkedness of P_{n,m} matches the closed formula (4m + n ≤ 12)",
    ),
    ("balinski", "every corpus polytope graph is d-connected"),
    (
        "grunbaum",
        "rooted K_{d+1} subdivisions at every vertex (≤ 12 vertices)",
    ),
    (
        "subdivision-linkage",
        "subdivision linkage for k = ⌊(d+2)/3⌋ on sampled pairings (≤ 11 vertices)",
    ),
    (
        "simplex-face-linkage",
        "simplex-face linkage for k = ⌊(d−γ+1)/2⌋ on sampled pairings (≤ 11 vertices)",
    ),
    (
        "stacked-witnesses",
        "stacked pyramid witnesses are not (⌊d/2⌋+1)-linked",
    ),
    (
        "cofacet",
        "canonical forms round-trip and the three characterizations agree",
    ),
    (
        "classification",
        "classification of polytopes meeting the few-vertices bound",
    ),
    ("kd-table", "table of possible values of k(d) for d = 1..15"),
    (
        "complement",
        "complement of G(P_{n,m}) is n isolated vertices plus 2m disjoint edges",
    ),
    (
        "out-of-scope",
        "results beyond desk scale: only upper-bound witness pairings are checked",
    ),
];

pub fn run_suite(name: &str, deadline: Deadline) -> Result<SuiteReport, VerifyError> {
    let title = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let cases = match name {
        "pnm-linkedness" => pnm_linkedness(deadline)?,
        "balinski" => balinski(),
        "grunbaum" => grunbaum(),
        "subdivision-linkage" => subdivision_suite(),
        "simplex-face-linkage" => simplex_face_suite(),
        "stacked-witnesses" => stacked_witnesses(),
        "cofacet" => cofacet_suite(),
        "classification" => classification(deadline)?,
        "kd-table" => kd_table_suite(),
        "complement" => complement_suite(),
        "out-of-scope" => out_of_scope(),
        _ => unreachable!("name checked against SUITES"),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        title,
        cases,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn timed_out(e: LinkageError) -> VerifyError {
    match e {
        LinkageError::TimedOut => VerifyError::TimedOut,
        other => unreachable!("unexpected linkage error {other}"),
    }
}

fn small_corpus(max_vertices: usize) -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| e.polytope.n_vertices() <= max_vertices)
        .collect()
}

fn pnm_linkedness(deadline: Deadline) -> Result<Vec<CaseResult>, VerifyError> {
    pnm_parameters(12)
        .into_par_iter()
        .map(|(n, m)| {
            let label = format!("P({n},{m})");
            let g = pnm(n, m).expect("small parameters").graph();
            let expected = k_pnm_formula(n, m).expect("at least two vertices");
            let got = linkedness_capped(&g, None, deadline).map_err(timed_out)?;
            let witness_ok = match failing_pairing_pnm(n, m).expect("valid parameters") {
                Obstruction::Pairing { pairing } => disjoint_paths(&g, &pairing).expect("valid").is_none(),
                Obstruction::TooFewVertices { .. } => true,
            };
            Ok(CaseResult::new(
                label,
                got.k == expected && witness_ok,
                format!(
                    "k = {}, formula {expected}, witness pairing unlinkable: {witness_ok}",
                    got.k
                ),
            ))
        })
        .collect()
}

fn balinski() -> Vec<CaseResult> {
    corpus()
        .into_par_iter()
        .map(|e| {
            let d = e.polytope.dim();
            let kappa = vertex_connectivity(&e.polytope.graph()).expect("at least two vertices");
            CaseResult::new(e.name, kappa >= d, format!("connectivity {kappa}, dim {d}"))
        })
        .collect()
}

fn grunbaum() -> Vec<CaseResult> {
    small_corpus(12)
        .into_par_iter()
        .map(|e| {
            let g = e.polytope.graph();
            let m = e.polytope.dim() + 1;
            let missing: Vec<usize> = (0..g.n())
                .filter(|&v| match find_rooted_subdivision(&g, v, m) {
                    Some(s) => s.check(&g).is_err(),
                    None => true,
                })
                .collect();
            CaseResult::new(
                e.name,
                missing.is_empty(),
                if missing.is_empty() {
                    format!("K_{m} at all {} vertices", g.n())
                } else {
                    format!("no K_{m} rooted at {missing:?}")
                },
            )
        })
        .collect()
}

const SAMPLE: usize = 200;
const SEED: u64 = 0x5eed;

fn subdivision_suite() -> Vec<CaseResult> {
    small_corpus(11)
        .into_par_iter()
        .filter(|e| e.polytope.dim() >= 2)
        .map(|e| {
            let g = e.polytope.graph();
            let k = k_lower_general(e.polytope.dim()).expect("d ≥ 1");
            let pairings = sample_pairings(g.n(), k, SAMPLE, SEED);
            let mut problems = Vec::new();
            for p in &pairings {
                match subdivision_linkage(&g, p) {
                    Ok(l) if validate_linkage(&g, p, &l) => {}
                    Ok(_) => problems.push(format!("{p}: invalid linkage")),
                    Err(err) => problems.push(format!("{p}: {err}")),
                }
                if disjoint_paths(&g, p).expect("valid").is_none() {
                    problems.push(format!("{p}: exact search disagrees"));
                }
            }
            CaseResult::new(
                e.name,
                problems.is_empty(),
                if problems.is_empty() {
                    format!("k = {k}, {} pairings linked", pairings.len())
                } else {
                    problems.join("; ")
                },
            )
        })
        .collect()
}

fn simplex_face_suite() -> Vec<CaseResult> {
    small_corpus(11)
        .into_par_iter()
        .filter_map(|e| {
            let p = &e.polytope;
            let k = (p.dim() as i64 - p.gamma() + 1).max(0) as usize / 2;
            if k == 0 || 2 * k > p.n_vertices() {
                return None;
            }
            let g = p.graph();
            let pairings = sample_pairings(g.n(), k, SAMPLE, SEED);
            let problems: Vec<String> = pairings
                .iter()
                .filter_map(|pr| match simplex_face_linkage(p, pr) {
                    Ok(l) if validate_linkage(&g, pr, &l) => None,
                    Ok(_) => Some(format!("{pr}: invalid linkage")),
                    Err(err) => Some(format!("{pr}: {err}")),
                })
                .collect();
            Some(CaseResult::new(
                e.name,
                problems.is_empty(),
                if problems.is_empty() {
                    format!("k = {k}, {} pairings linked", pairings.len())
                } else {
                    problems.join("; ")
                },
            ))
        })
        .collect()
}

fn stacked_witnesses() -> Vec<CaseResult> {
    [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (6, 2)]
        .into_par_iter()
        .map(|(d, gamma)| {
            let p = stacked_pyramid_witness(d, gamma).expect("valid parameters");
            let pairing = stacked_pyramid_failing_pairing(d, gamma).expect("valid parameters");
            let shape_ok = p.dim() == d && p.n_vertices() == d + gamma + 1 && p.validate().is_ok();
            let size_ok = pairing.len() == d / 2 + 1;
            let blocked = disjoint_paths(&p.graph(), &pairing).expect("valid").is_none();
            CaseResult::new(
                format!("d={d} γ={gamma}"),
                shape_ok && size_ok && blocked,
                format!("pairing {pairing} unlinkable: {blocked}"),
            )
        })
        .collect()
}

/// Every parameter tuple (n; pairs) with j ≤ k, pairs sorted, at most
/// `max_vertices` vertices, and at least one vertex.
fn canonical_tuples(max_vertices: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    fn extend(budget: usize, min: (usize, usize), acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(acc.clone());
        for j in 1..budget {
            for k in j..budget {
                if j + k + 2 > budget || (j, k) < min {
                    continue;
                }
                acc.push((j, k));
                extend(budget - j - k - 2, (j, k), acc, out);
                acc.pop();
            }
        }
    }
    let mut lists = Vec::new();
    extend(max_vertices, (1, 1), &mut Vec::new(), &mut lists);
    let mut out = Vec::new();
    for pairs in lists {
        let used: usize = pairs.iter().map(|(j, k)| j + k + 2).sum();
        for n in 0..=max_vertices - used {
            if n + used > 0 {
                out.push((n, pairs.clone()));
            }
        }
    }
    out
}

fn cofacet_suite() -> Vec<CaseResult> {
    let mut cases: Vec<CaseResult> = canonical_tuples(12)
        .into_par_iter()
        .map(|(n, pairs)| {
            let form = CanonicalForm::new(n, &pairs);
            let p = canonical_p(n, &pairs).expect("small parameters");
            let got = recognize_canonical(&p);
            let pass = got.as_ref() == Ok(&Some(form.clone()));
            CaseResult::new(format!("round trip {form}"), pass, format!("{got:?}"))
        })
        .collect();

    let stacked: Vec<(String, CombinatorialPolytope)> = vec![
        (
            "stack(simplex(3),2)".into(),
            stack(&simplex(3).expect("simplex"), 2).expect("stackable"),
        ),
        (
            "stacked pyramid witness d=3 γ=2".into(),
            stacked_pyramid_witness(3, 2).expect("valid"),
        ),
        (
            "stacked pyramid witness d=5 γ=2".into(),
            stacked_pyramid_witness(5, 2).expect("valid"),
        ),
        (
            "stacked pyramid witness d=6 γ=2".into(),
            stacked_pyramid_witness(6, 2).expect("valid"),
        ),
    ];
    for (name, p) in stacked {
        let got = recognize_canonical(&p);
        cases.push(CaseResult::new(
            format!("not canonical: {name}"),
            got == Ok(None),
            format!("{got:?}"),
        ));
    }

    let agreement: Vec<CaseResult> = corpus()
        .into_par_iter()
        .map(|e| match characterization_predicates(&e.polytope) {
            Ok(t) => CaseResult::new(format!("predicates agree: {}", e.name), t.agree(), format!("{t:?}")),
            Err(err) => CaseResult::new(format!("predicates agree: {}", e.name), false, err.to_string()),
        })
        .collect();
    cases.extend(agreement);
    cases
}

fn classification(deadline: Deadline) -> Result<Vec<CaseResult>, VerifyError> {
    type Expected = fn(&Case) -> bool;
    let entries: [(&str, Expected, bool); 4] = [
        ("Pnm(3,2)", |c| matches!(c, Case::Pnm { .. }), true),
        ("join(interval,cross(3))", |c| matches!(c, Case::PnmFacet { .. }), true),
        ("pyr(prism3,2)", |c| matches!(c, Case::PnmFacet { .. }), true),
        (
            "pyr(stack(stack(simplex(3),1),1),2)",
            |c| matches!(c, Case::NotExtremal),
            false,
        ),
    ];
    entries
        .into_par_iter()
        .map(|(text, expect_case, extremal)| {
            let p = crate::expr::parse(text).expect("parses").eval().expect("evaluates");
            let k = linkedness_capped(&p.graph(), None, deadline).map_err(timed_out)?.k;
            let bound = (p.dim() as i64 - p.gamma() + 1) / 2;
            Ok(match classify_extremal_with(&p, k) {
                Ok(c) => {
                    let k_ok = if extremal {
                        k as i64 == bound
                    } else {
                        k >= 3 && k as i64 > bound
                    };
                    CaseResult::new(
                        text,
                        expect_case(&c.case) && k_ok,
                        format!("k = {k}, bound {bound}: {c}"),
                    )
                }
                Err(err) => CaseResult::new(text, false, err.to_string()),
            })
        })
        .collect()
}

/// Ranges of k(d) for d = 1..15 as usually tabulated.
pub const TABULATED_KD: [(usize, &[usize]); 15] = [
    (1, &[1]),
    (2, &[1]),
    (3, &[1]),
    (4, &[2]),
    (5, &[2]),
    (6, &[2, 3]),
    (7, &[3]),
    (8, &[3]),
    (9, &[3, 4]),
    (10, &[4]),
    (11, &[4, 5]),
    (12, &[4, 5]),
    (13, &[5]),
    (14, &[5, 6]),
    (15, &[5, 6, 7]),
];

fn kd_table_suite() -> Vec<CaseResult> {
    kd_table()
        .into_iter()
        .zip(TABULATED_KD)
        .map(|(row, (d, tabulated))| {
            let values = row.values();
            let pass = if d == 15 {
                values == [5, 6] && row.discrepancy.is_some()
            } else {
                values == tabulated && row.discrepancy.is_none() && row.exact.is_some() == (tabulated.len() == 1)
            };
            CaseResult::new(
                format!("d={d}"),
                pass,
                format!(
                    "{values:?} (tabulated {tabulated:?}){}",
                    row.discrepancy.map_or(String::new(), |s| format!(", {s}"))
                ),
            )
        })
        .collect()
}

fn complement_suite() -> Vec<CaseResult> {
    pnm_parameters(12)
        .into_par_iter()
        .map(|(n, m)| {
            let c = pnm(n, m).expect("small parameters").graph().complement();
            let isolated = (0..c.n()).filter(|&v| c.degree(v) == 0).count();
            let matched = (0..c.n()).filter(|&v| c.degree(v) == 1).count();
            let pass = isolated == n && matched == 4 * m && c.edge_count() == 2 * m;
            CaseResult::new(
                format!("P({n},{m})"),
                pass,
                format!("{isolated} isolated, {} edges", c.edge_count()),
            )
        })
        .collect()
}

fn out_of_scope() -> Vec<CaseResult> {
    let mut cases = vec![
        CaseResult::new("k(6)", true, "not attempted: open at full scale"),
        CaseResult::new(
            "k(6,3) = 3",
            true,
            "not attempted: needs all combinatorial types of 6-polytopes on 10 vertices",
        ),
    ];
    for d in [8, 12, 13] {
        let p = join_family_witness(d).expect("valid dimension");
        let claimed = join_family_linkedness(d).expect("valid dimension");
        let g = p.graph();
        let pairing = complement_matching_pairing(&g, claimed + 1);
        let blocked = pairing
            .as_ref()
            .is_some_and(|pr| 3 * pr.len() > g.n() && disjoint_paths(&g, pr).expect("valid").is_none());
        cases.push(CaseResult::new(
            format!("join family d={d} upper bound"),
            blocked && p.dim() == d,
            format!(
                "{} vertices, pairing {} unlinkable: {blocked}; lower bound {claimed} not attempted",
                g.n(),
                pairing.map_or("none".into(), |p| p.to_string())
            ),
        ));
    }
    cases
}

/// Runs a linker on a single case; used by the CLI `link` command.
pub fn link_all_methods(
    p: &CombinatorialPolytope,
    pairing: &crate::graph::Pairing,
) -> (
    Option<crate::graph::Linkage>,
    Result<crate::graph::Linkage, LinkerError>,
    Result<crate::graph::Linkage, LinkerError>,
) {
    let g = p.graph();
    let exact = disjoint_paths(&g, pairing).ok().flatten();
    (
        exact,
        subdivision_linkage(&g, pairing),
        simplex_face_linkage(p, pairing),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration() {
        let t = canonical_tuples(4);
        assert!(t.contains(&(0, vec![(1, 1)])));
        assert!(t.contains(&(4, vec![])));
        assert!(!t.contains(&(0, vec![])));
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("nope", Deadline::NONE).unwrap_err(),
            VerifyError::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["kd-table", "complement", "stacked-witnesses", "out-of-scope"] {
            let r = run_suite(name, Deadline::NONE).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
