use std::path::Path;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polylink::bounds::{bounds_row, k_few_lower, k_lower_general, k_upper_gallivan, k_upper_general, kd_table};
use polylink::cofacet::{classify_extremal_with, cofacet_report, CofacetError};
use polylink::graph::{
    disjoint_paths, linkedness_capped, validate_linkage, vertex_connectivity, Deadline, LinkageError,
};
use polylink::linker::{simplex_face_linkage, subdivision_linkage, LinkerError};
use polylink::polytope::find_simplex_face;
use polylink::verify::{run_suite, VerifyError, SUITES};
use polylink::{CombinatorialPolytope, Linkage, Pairing};

#[derive(Parser)]
#[command(
    name = "polylink",
    version,
    about = "Linkedness of polytope graphs from vertex-facet incidences"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Wall-clock limit in seconds; exit code 3 when exceeded.
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a construction expression and print the polytope file.
    Build { expr: String },
    /// Dimension, vertex count, excess, connectivity, complement and cofacet structure.
    Analyze { input: String },
    /// Exact linkedness of the polytope graph.
    Linkedness {
        input: String,
        /// Stop searching above this k.
        #[arg(long)]
        max_k: Option<usize>,
        /// Include a pairing that cannot be linked.
        #[arg(long)]
        witness: bool,
    },
    /// Link the given pairs with the exact search and both constructive methods.
    Link {
        input: String,
        /// Pairs as s1:t1,s2:t2,...
        #[arg(long)]
        pairs: String,
    },
    /// Characterization predicates and extremal classification.
    Classify { input: String },
    /// Closed-form linkedness bounds.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        gamma: Option<usize>,
    },
    /// Possible values of k(d) for d = 1..15.
    KdTable,
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        /// Print every case, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

enum Failure {
    Invalid(String),
    TimedOut,
}

impl From<LinkageError> for Failure {
    fn from(e: LinkageError) -> Self {
        match e {
            LinkageError::TimedOut => Failure::TimedOut,
            other => Failure::Invalid(other.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    json: Value,
    violated: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            violated: false,
        }
    }
}

const EXIT_VIOLATED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let limit = match cli.time_limit {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            eprintln!("error: --time-limit must be a positive number of seconds");
            return ExitCode::from(EXIT_INVALID);
        }
        s => s.map(Duration::from_secs_f64),
    };
    let deadline = limit.map_or(Deadline::NONE, Deadline::after);

    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run(cli.command, deadline));
    });
    let result = match limit {
        Some(l) => match rx.recv_timeout(l + Duration::from_millis(200)) {
            Ok(r) => r,
            Err(_) => Err(Failure::TimedOut),
        },
        None => rx.recv().expect("worker sends a result"),
    };

    match result {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text.trim_end()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            ExitCode::from(if out.violated { EXIT_VIOLATED } else { 0 })
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::TimedOut) => {
            eprintln!("error: time limit reached");
            ExitCode::from(EXIT_TIMEOUT)
        }
    }
}

fn run(command: Command, deadline: Deadline) -> Result<Outcome, Failure> {
    match command {
        Command::Build { expr } => build(&expr),
        Command::Analyze { input } => analyze(&load(&input)?),
        Command::Linkedness { input, max_k, witness } => linkedness(&load(&input)?, max_k, witness, deadline),
        Command::Link { input, pairs } => link(&load(&input)?, &pairs),
        Command::Classify { input } => classify(&load(&input)?, deadline),
        Command::Bounds { d, gamma } => bounds(d, gamma),
        Command::KdTable => Ok(table()),
        Command::Verify { suite, verbose } => verify(&suite, verbose, deadline),
    }
}

/// Reads a polytope file if `input` names one, otherwise parses an expression.
fn load(input: &str) -> Result<CombinatorialPolytope, Failure> {
    let p = if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| Failure::Invalid(format!("{input}: {e}")))?;
        CombinatorialPolytope::from_json(&text).map_err(|e| Failure::Invalid(e.to_string()))?
    } else {
        let expr = polylink::expr::parse(input).map_err(|e| Failure::Invalid(e.to_string()))?;
        expr.eval().map_err(|e| Failure::Invalid(e.to_string()))?
    };
    let report = p.validate();
    if !report.is_ok() {
        let list: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Invalid(format!("not a valid polytope: {}", list.join("; "))));
    }
    Ok(p)
}

fn basics(p: &CombinatorialPolytope) -> Value {
    json!({ "dim": p.dim(), "f0": p.n_vertices(), "gamma": p.gamma() })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn build(text: &str) -> Result<Outcome, Failure> {
    let expr = polylink::expr::parse(text).map_err(|e| Failure::Invalid(e.to_string()))?;
    let p = expr.eval().map_err(|e| Failure::Invalid(e.to_string()))?;
    let file = serde_json::to_value(polylink::polytope::PolytopeFile::from(&p)).expect("json");
    Ok(Outcome::ok(p.to_json_pretty(), file))
}

fn analyze(p: &CombinatorialPolytope) -> Result<Outcome, Failure> {
    let g = p.graph();
    let connectivity = if g.n() >= 2 { vertex_connectivity(&g).ok() } else { None };
    let complement = g.complement();
    let isolated: Vec<usize> = (0..g.n()).filter(|&v| complement.degree(v) == 0).collect();
    let face = find_simplex_face(p).map_err(|e| Failure::Invalid(e.to_string()))?;
    let report = cofacet_report(p).map_err(cofacet_failure)?;
    let form = report.canonical_form.as_ref().map(|f| f.to_string());

    let mut text = format!(
        "dim {}\nf0 {}\ngamma {}\nedges {}\nconnectivity {}\n",
        p.dim(),
        p.n_vertices(),
        p.gamma(),
        g.edge_count(),
        connectivity.map_or("-".into(), |c| c.to_string()),
    );
    text += &format!(
        "complement: {} isolated vertices, edges {:?}\n",
        isolated.len(),
        complement.edges()
    );
    text += &format!("max simplex face: dim {} on {:?}\n", face.dim, face.vertices.to_vec());
    text += &format!(
        "max cofacet size {}; predicates: small cofacets {}, canonical {}, no big simplex face {}\n",
        report.max_cofacet_size,
        report.predicates.small_cofacets,
        report.predicates.canonical,
        report.predicates.no_big_simplex
    );
    text += &format!("canonical form {}\n", form.as_deref().unwrap_or("none"));
    for v in &report.structure_violations {
        text += &format!("cofacet structure: {v}\n");
    }

    let json = merge(
        basics(p),
        json!({
            "edges": g.edges(),
            "connectivity": connectivity,
            "complement": { "isolated": isolated, "edges": complement.edges() },
            "max_simplex_face": { "dim": face.dim, "vertices": face.vertices },
            "canonical_form": form,
            "cofacets": report,
        }),
    );
    Ok(Outcome {
        text,
        json,
        violated: !report.predicates.agree() || !report.structure_violations.is_empty(),
    })
}

fn linkedness(
    p: &CombinatorialPolytope,
    max_k: Option<usize>,
    witness: bool,
    deadline: Deadline,
) -> Result<Outcome, Failure> {
    let l = linkedness_capped(&p.graph(), max_k, deadline)?;
    let mut text = if l.capped {
        format!("linkedness >= {} (search capped)\n", l.k)
    } else {
        format!("linkedness {}\n", l.k)
    };
    let mut json = merge(basics(p), json!({ "linkedness": l.k, "capped": l.capped }));
    if witness {
        match &l.witness {
            Some(w) => text += &format!("unlinkable {}-pairing {w}\n", w.len()),
            None if !l.capped => text += &format!("fewer than {} vertices, no larger pairing exists\n", 2 * (l.k + 1)),
            None => {}
        }
        json = merge(
            json,
            json!({ "witness_pairing": l.witness.as_ref().map(|w| w.pairs()) }),
        );
    }
    Ok(Outcome::ok(text, json))
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(|item| {
            let (s, t) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Failure::Invalid(format!("pair `{item}` is not of the form s:t")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Invalid(format!("`{x}` is not a vertex index")))
            };
            Ok((num(s)?, num(t)?))
        })
        .collect()
}

fn linkage_json(g: &polylink::Graph, p: &Pairing, r: &Result<Linkage, LinkerError>) -> (String, Value, bool) {
    match r {
        Ok(l) => {
            let valid = validate_linkage(g, p, l);
            let text = l
                .paths
                .iter()
                .map(|path| format!("{path:?}"))
                .collect::<Vec<_>>()
                .join(" ");
            (
                text,
                json!({ "status": "linked", "valid": valid, "paths": l.paths }),
                valid,
            )
        }
        Err(LinkerError::PreconditionFailed(msg)) => (
            format!("not applicable ({msg})"),
            json!({ "status": "not_applicable", "reason": msg }),
            true,
        ),
        Err(e) => (
            format!("failed ({e})"),
            json!({ "status": "failed", "reason": e.to_string() }),
            false,
        ),
    }
}

fn link(p: &CombinatorialPolytope, pairs: &str) -> Result<Outcome, Failure> {
    let g = p.graph();
    let pairing = Pairing::new(parse_pairs(pairs)?)?;
    pairing.check_for(&g)?;
    let exact = disjoint_paths(&g, &pairing)?;
    let (sub_text, sub_json, sub_ok) = linkage_json(&g, &pairing, &subdivision_linkage(&g, &pairing));
    let (face_text, face_json, face_ok) = linkage_json(&g, &pairing, &simplex_face_linkage(p, &pairing));
    let constructive_found = sub_json["status"] == "linked" || face_json["status"] == "linked";
    let consistent = sub_ok && face_ok && (exact.is_some() || !constructive_found);

    let exact_text = match &exact {
        Some(l) => l
            .paths
            .iter()
            .map(|path| format!("{path:?}"))
            .collect::<Vec<_>>()
            .join(" "),
        None => "no linkage exists".to_string(),
    };
    let mut text =
        format!("pairing {pairing}\nexact: {exact_text}\nsubdivision: {sub_text}\nsimplex face: {face_text}\n");
    if !consistent {
        text += "methods disagree\n";
    }
    let json = json!({
        "pairing": pairing.pairs(),
        "linked": exact.is_some(),
        "exact": exact.as_ref().map(|l| &l.paths),
        "subdivision": sub_json,
        "simplex_face": face_json,
        "consistent": consistent,
    });
    Ok(Outcome {
        text,
        json,
        violated: exact.is_none() || !consistent,
    })
}

fn cofacet_failure(e: CofacetError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn classify(p: &CombinatorialPolytope, deadline: Deadline) -> Result<Outcome, Failure> {
    let report = cofacet_report(p).map_err(cofacet_failure)?;
    let k = linkedness_capped(&p.graph(), None, deadline)?.k;
    let form = report.canonical_form.as_ref().map(|f| f.to_string());
    let base = merge(
        basics(p),
        json!({ "linkedness": k, "canonical_form": form, "predicates": report.predicates }),
    );
    let mut text = format!(
        "dim {}, f0 {}, gamma {}, linkedness {}\ncanonical form {}\npredicates: small cofacets {}, canonical {}, no big simplex face {}\n",
        p.dim(),
        p.n_vertices(),
        p.gamma(),
        k,
        form.as_deref().unwrap_or("none"),
        report.predicates.small_cofacets,
        report.predicates.canonical,
        report.predicates.no_big_simplex,
    );
    match classify_extremal_with(p, k) {
        Ok(c) => {
            text += &format!("classification: {c}\n");
            let json = merge(base, json!({ "classification": c }));
            Ok(Outcome {
                text,
                json,
                violated: !report.predicates.agree(),
            })
        }
        Err(CofacetError::TheoremViolation(msg)) => {
            text += &format!("classification: extremal, {msg}\n");
            let json = merge(base, json!({ "classification": { "case": "none", "violation": msg } }));
            Ok(Outcome {
                text,
                json,
                violated: true,
            })
        }
        Err(e) => Err(cofacet_failure(e)),
    }
}

fn bounds(d: usize, gamma: Option<usize>) -> Result<Outcome, Failure> {
    let invalid = |e: polylink::bounds::BoundsError| Failure::Invalid(e.to_string());
    let row = bounds_row(d).map_err(invalid)?;
    let mut text = format!(
        "d {d}: every d-polytope is {}-linked; k(d) in {:?}",
        k_lower_general(d).map_err(invalid)?,
        row.values()
    );
    if let Some(e) = row.exact {
        text += &format!(", exact {e}");
    }
    text += "\n";
    if let Some(note) = &row.discrepancy {
        text += &format!("note: {note}\n");
    }
    let mut json = json!({
        "d": d,
        "k_lower_general": row.lower,
        "k_upper_gallivan": if d >= 3 { Some(k_upper_gallivan(d).map_err(invalid)?) } else { None },
        "lower": row.lower,
        "upper": row.upper,
        "exact": row.exact,
        "discrepancy": row.discrepancy,
    });
    if let Some(g) = gamma {
        let few = k_few_lower(d, g).map_err(invalid)?;
        let upper = if g >= 1 { k_upper_general(d, g).ok() } else { None };
        let exact = (5 * g <= d + 2).then_some(few);
        text += &format!("gamma {g}: k(d,gamma) >= {few}");
        if let Some(u) = upper {
            text += &format!(", <= {u}");
        }
        if let Some(e) = exact {
            text += &format!(", exact {e}");
        }
        text += "\n";
        json = merge(
            json,
            json!({ "gamma": g, "k_few_lower": few, "k_upper_general": upper, "k_d_gamma_exact": exact }),
        );
    }
    Ok(Outcome::ok(text, json))
}

fn table() -> Outcome {
    let rows = kd_table();
    let mut text = String::from(" d  k(d)\n");
    for r in &rows {
        let values: Vec<String> = r.values().iter().map(|v| v.to_string()).collect();
        text += &format!("{:>2}  {}", r.d, values.join(","));
        if let Some(note) = &r.discrepancy {
            text += &format!("   ({note})");
        }
        text += "\n";
    }
    Outcome::ok(text, serde_json::to_value(&rows).expect("json"))
}

fn verify(suite: &str, verbose: bool, deadline: Deadline) -> Result<Outcome, Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        vec![suite]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let report = run_suite(name, deadline).map_err(|e| match e {
            VerifyError::TimedOut => Failure::TimedOut,
            VerifyError::UnknownSuite(s) => Failure::Invalid(format!(
                "unknown suite `{s}`; available: all, {}",
                SUITES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
            )),
        })?;
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let index = SUITES.iter().position(|(n, _)| n == name).unwrap_or(i) + 1;
        text += &format!(
            "[{status}] {index:>2}. {}: {} ({} cases, {} ms)\n",
            report.suite,
            report.title,
            report.cases.len(),
            report.elapsed_ms
        );
        for case in &report.cases {
            if verbose || !case.pass {
                text += &format!(
                    "    {} {}: {}\n",
                    if case.pass { "ok  " } else { "FAIL" },
                    case.label,
                    case.detail
                );
            }
        }
        reports.push(report);
    }
    let violated = reports.iter().any(|r| !r.passed());
    Ok(Outcome {
        text,
        json: serde_json::to_value(&reports).expect("json"),
        violated,
    })
}
