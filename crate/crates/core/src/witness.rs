//! Polytopes with low linkedness, together with the pairings that defeat them,
//! and the named construction corpus used by the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{k_pnm_formula, BoundsError};
use crate::expr::{parse, Expr};
use crate::graph::{for_each_pairing, Graph, Obstruction, Pairing};
use crate::polytope::{canonical_p, cross, join, pnm, pyramid, square, stack, CombinatorialPolytope, PolytopeError};
use crate::vertex_set::subsets_colex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{0}")]
    Parameter(String),
}

/// A pairing of size k(P_{n,m}) + 1 on the standard labels of P_{n,m} that
/// cannot be linked: as many non-adjacent square diagonals as possible, then
/// pairs of pyramid vertices. When P_{n,m} has fewer than 2(k + 1) vertices
/// the obstruction is the vertex count itself.
///
/// Labels: the simplex vertices are `0..n`; square `i` occupies
/// `n + 4i .. n + 4i + 4` with diagonals `(n+4i, n+4i+1)` and `(n+4i+2, n+4i+3)`.
pub fn failing_pairing_pnm(n: usize, m: usize) -> Result<Obstruction, WitnessError> {
    let k = k_pnm_formula(n, m)?;
    let want = k + 1;
    let total = n + 4 * m;
    if 2 * want > total {
        return Ok(Obstruction::TooFewVertices {
            n: total,
            needed: 2 * want,
        });
    }
    let diagonals = (0..m).flat_map(|i| {
        let b = n + 4 * i;
        [(b, b + 1), (b + 2, b + 3)]
    });
    let mut pairs: Vec<(usize, usize)> = diagonals.take(want).collect();
    let mut apex = 0;
    while pairs.len() < want {
        pairs.push((apex, apex + 1));
        apex += 2;
    }
    Ok(Obstruction::Pairing {
        pairing: Pairing::new(pairs).expect("distinct labels"),
    })
}

/// pyr^{d−3}(Q) where Q is the square pyramid stacked γ − 1 times: a
/// d-polytope on d + γ + 1 vertices that is not (⌊d/2⌋ + 1)-linked.
///
/// The square base keeps labels `0..4` (cycle 0-2-1-3), the square pyramid's
/// apex is `4`, stacked vertices follow, and the d − 3 outer apexes come last.
pub fn stacked_pyramid_witness(d: usize, gamma: usize) -> Result<CombinatorialPolytope, WitnessError> {
    if d < 3 || gamma < 1 {
        return Err(WitnessError::Parameter("needs d ≥ 3 and γ ≥ 1".into()));
    }
    let q = stack(&pyramid(&square(), 1)?, gamma - 1)?;
    Ok(pyramid(&q, d - 3)?)
}

/// The pairing that defeats [`stacked_pyramid_witness`]: both diagonals of
/// the square facet, the outer apexes paired among themselves, and a last
/// outer apex (when d is even) paired with the square pyramid's apex.
pub fn stacked_pyramid_failing_pairing(d: usize, gamma: usize) -> Result<Pairing, WitnessError> {
    if d < 3 || gamma < 1 {
        return Err(WitnessError::Parameter("needs d ≥ 3 and γ ≥ 1".into()));
    }
    let first_outer = 4 + gamma;
    let outer: Vec<usize> = (first_outer..first_outer + d - 3).collect();
    let mut pairs = vec![(0, 1), (2, 3)];
    for c in outer.chunks(2) {
        match c {
            [a, b] => pairs.push((*a, *b)),
            [a] => pairs.push((*a, 4)),
            _ => unreachable!(),
        }
    }
    debug_assert_eq!(pairs.len(), d / 2 + 1);
    Ok(Pairing::new(pairs).expect("distinct labels"))
}

/// Δ_2 * □ * □ * (C_3^Δ)^{*m} for d = 4m + 8, and Δ_4 * □ * □ * □ * (C_3^Δ)^{*m}
/// for d = 4m + 13.
pub fn join_family_witness(d: usize) -> Result<CombinatorialPolytope, WitnessError> {
    let (base, m) = if d >= 8 && (d - 8).is_multiple_of(4) {
        (canonical_p(3, &[(1, 1), (1, 1)])?, (d - 8) / 4)
    } else if d >= 13 && (d - 13).is_multiple_of(4) {
        (canonical_p(5, &[(1, 1), (1, 1), (1, 1)])?, (d - 13) / 4)
    } else {
        return Err(WitnessError::Parameter(format!(
            "d = {d} is neither 4m + 8 nor 4m + 13"
        )));
    };
    let oct = cross(3)?;
    let mut p = base;
    for _ in 0..m {
        p = join(&p, &oct)?;
    }
    Ok(p)
}

/// Claimed linkedness of [`join_family_witness`]: 2m + 3 or 2m + 5.
pub fn join_family_linkedness(d: usize) -> Result<usize, WitnessError> {
    if d >= 8 && (d - 8).is_multiple_of(4) {
        Ok(2 * ((d - 8) / 4) + 3)
    } else if d >= 13 && (d - 13).is_multiple_of(4) {
        Ok(2 * ((d - 13) / 4) + 5)
    } else {
        Err(WitnessError::Parameter(format!(
            "d = {d} is neither 4m + 8 nor 4m + 13"
        )))
    }
}

/// `count` pairwise disjoint missing edges of `g`, chosen greedily in
/// lexicographic order. When every pair needs a detour vertex and
/// 3·count > n, no linkage exists for them.
pub fn complement_matching_pairing(g: &Graph, count: usize) -> Option<Pairing> {
    let mut used = crate::vertex_set::VertexSet::EMPTY;
    let mut pairs = Vec::new();
    for (u, v) in g.complement().edges() {
        if pairs.len() == count {
            break;
        }
        if !used.contains(u) && !used.contains(v) {
            used.insert(u);
            used.insert(v);
            pairs.push((u, v));
        }
    }
    (pairs.len() == count).then(|| Pairing::new(pairs).expect("disjoint pairs"))
}

/// P_{n,m} with m = γ = ⌊(d + 2)/5⌋ and n = d − 3γ + 1.
pub fn gallivan_witness(d: usize) -> Result<CombinatorialPolytope, WitnessError> {
    let (n, m) = gallivan_parameters(d)?;
    Ok(pnm(n, m)?)
}

pub fn gallivan_parameters(d: usize) -> Result<(usize, usize), WitnessError> {
    if d == 0 {
        return Err(WitnessError::Parameter("d must be at least 1".into()));
    }
    let gamma = (d + 2) / 5;
    Ok((d + 1 - 3 * gamma, gamma))
}

/// Up to `count` pairings of size `k` on `n` vertices. All of them, in
/// enumeration order, when there are at most `count`; otherwise a sample
/// drawn from a fixed-seed generator, so the result is reproducible.
pub fn sample_pairings(n: usize, k: usize, count: usize, seed: u64) -> Vec<Pairing> {
    if k == 0 || 2 * k > n {
        return Vec::new();
    }
    let pool: Vec<usize> = (0..n).collect();
    let total = binomial(n, 2 * k).saturating_mul(double_factorial(2 * k - 1));
    if total <= count as u128 {
        let mut out = Vec::new();
        for subset in subsets_colex(&pool, 2 * k) {
            for_each_pairing(&subset, |pairs| {
                out.push(Pairing::new(pairs.to_vec()).expect("distinct"));
                false
            });
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut chosen: Vec<usize> = pool.choose_multiple(&mut rng, 2 * k).copied().collect();
            chosen.shuffle(&mut rng);
            let pairs = chosen
                .chunks(2)
                .map(|c| if rng.gen_bool(0.5) { (c[0], c[1]) } else { (c[1], c[0]) })
                .collect();
            Pairing::new(pairs).expect("distinct")
        })
        .collect()
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn double_factorial(n: usize) -> u128 {
    (1..=n).rev().step_by(2).map(|x| x as u128).product()
}

/// A named construction of the corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub expr: Expr,
    pub polytope: CombinatorialPolytope,
}

const CORPUS_EXPRESSIONS: &[&str] = &[
    "interval",
    "simplex(2)",
    "simplex(3)",
    "simplex(4)",
    "simplex(5)",
    "square",
    "prism3",
    "cross(3)",
    "cross(4)",
    "sum(interval,interval,interval)",
    "sum(simplex(2),simplex(2))",
    "bipyr(simplex(2))",
    "pyr(square,1)",
    "pyr(square,3)",
    "stack(square,1)",
    "stack(simplex(3),1)",
    "stack(simplex(3),2)",
    "stack(pyr(square,1),1)",
    "pyr(stack(pyr(square,1),1),1)",
    "pyr(stack(pyr(square,1),1),3)",
    "pyr(stack(stack(simplex(3),1),1),2)",
    "join(interval,cross(3))",
    "join(square,square)",
    "join(simplex(2),square,square)",
    "pyr(prism3,2)",
    "P(0;2,1)",
    "P(1;1,2)",
    "P(2;1,1)",
    "P(1;1,1,1,1)",
    "P(3;1,1,1,1)",
    "P(1;2,2)",
    "P(0;1,3)",
    "Pnm(0,1)",
    "Pnm(1,1)",
    "Pnm(2,1)",
    "Pnm(3,1)",
    "Pnm(4,1)",
    "Pnm(0,2)",
    "Pnm(1,2)",
    "Pnm(2,2)",
    "Pnm(4,2)",
    "Pnm(0,3)",
    "Pnm(5,2)",
    "Pnm(5,3)",
    "join(simplex(4),square,square,square)",
    "join(simplex(2),square,square,cross(3))",
];

/// The named constructions: basic shapes, the extremal family and its
/// relatives, stacked examples, and the low-linkedness witnesses, all on at
/// most 17 vertices.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = CORPUS_EXPRESSIONS
        .iter()
        .map(|text| {
            let expr = parse(text).expect("corpus expression parses");
            let polytope = expr.eval().expect("corpus expression evaluates");
            CorpusEntry {
                name: text.to_string(),
                expr,
                polytope,
            }
        })
        .collect();
    for (d, gamma) in [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (6, 2)] {
        let q = Expr::Stack(Box::new(Expr::Pyr(Box::new(Expr::Square), 1)), gamma - 1);
        let expr = Expr::Pyr(Box::new(q), d - 3);
        let polytope = stacked_pyramid_witness(d, gamma).expect("valid parameters");
        debug_assert_eq!(expr.eval().as_ref(), Ok(&polytope));
        out.push(CorpusEntry {
            name: format!("stacked pyramid witness d={d} γ={gamma}"),
            expr,
            polytope,
        });
    }
    for d in 1..=13 {
        let (n, m) = gallivan_parameters(d).expect("d ≥ 1");
        let expr = Expr::Pnm(n, m);
        if out.iter().any(|e| e.expr == expr) {
            continue;
        }
        out.push(CorpusEntry {
            name: format!("gallivan witness d={d}"),
            polytope: expr.eval().expect("valid parameters"),
            expr,
        });
    }
    out
}

/// Every P_{n,m} with 2 ≤ 4m + n ≤ `max_vertices`, ordered by vertex count.
pub fn pnm_parameters(max_vertices: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for total in 2..=max_vertices {
        for m in 0..=total / 4 {
            out.push((total - 4 * m, m));
        }
    }
    out
}
