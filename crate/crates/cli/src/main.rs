//! `arrowpencil`: reproduce the point-count, period and Hodge-theoretic
//! experiments for arrow pencils, one experiment per invocation.
//!
//! Every experiment writes its outputs to `--out` together with a manifest
//! recording parameters, code version, timings and output digests. Exit
//! status: 0 when the run is consistent (and matches the shipped
//! expectations under `--check`), 1 on errors, 2 on a mismatch against
//! expectations, 3 when specializations disagree.

mod fixtures;
mod manifest;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use arrowpencil::exact::{Field, Scalar};
use arrowpencil::grassmann::{build_pencil, PencilSpec, PluckerVars, Variant};
use arrowpencil::griffiths::{
    ci_bigraded_quotient, invariant_subspace, monomial_name, plucker_ci_context, specializations, specialize_t,
    GradedPieceReport, Grading, InvariantSubspace, Specialization,
};
use arrowpencil::periods::{hasse_witt, predicted_residue, series_truncation, truncation_scan, ScanEntry};
use arrowpencil::pointcount::{count_table, table_csv};
use arrowpencil::symmetry::{build_group, invariant_monomials, SymmetryGroup};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use manifest::Recorder;

/// Primes above 2^30 used for the default specializations.
const DEFAULT_PRIMES: [u64; 2] = [1_073_741_789, 2_147_483_647];

#[derive(Parser, Debug)]
#[command(name = "arrowpencil", version, about = "Experiments on arrow pencils of Calabi-Yau hypersurfaces in Grassmannians")]
struct Cli {
    /// Directory receiving output files and manifests.
    #[arg(long, global = true, default_value = "results")]
    out: PathBuf,

    /// Maximum number of worker threads.
    #[arg(long, global = true, env = "ARROWPENCIL_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count 𝔽_p-points of every member of a pencil and compare with Hasse-Witt.
    Tables {
        /// Odd prime.
        #[arg(long)]
        p: u64,
        /// Pencil variant: arrow, squares, quads or squares+quads.
        #[arg(long, default_value = "arrow")]
        variant: Variant,
        /// Grassmannian G(r,n), given as r,n.
        #[arg(long, default_value = "2,4", value_parser = parse_rn)]
        rn: [usize; 2],
        /// Compare against the shipped tables.
        #[arg(long)]
        check: bool,
        /// Lift the enumeration size guard.
        #[arg(long)]
        force: bool,
    },
    /// Scan every truncation relation `#X_t ≡ 1 − F(a·t^b)` against the counts.
    Search {
        /// Odd prime.
        #[arg(long)]
        p: u64,
        /// Compare the hit list against the shipped expectation.
        #[arg(long)]
        check: bool,
    },
    /// Graded pieces of the generalized Jacobian ring and their invariant parts.
    Hodge {
        /// Grassmannian G(r,n), given as r,n.
        #[arg(long, default_value = "2,4", value_parser = parse_rn)]
        rn: [usize; 2],
        /// Pencil variant: arrow, squares, quads or squares+quads.
        #[arg(long, default_value = "arrow")]
        variant: Variant,
        /// Parameter values (default 2,3,5 on G(2,4) and 2,3,7,13 otherwise).
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<i64>>,
        /// Primes to specialize over.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
        /// Graded degree (default n, the degree of the pencil).
        #[arg(long)]
        degree: Option<u32>,
        /// Also specialize over ℚ (the default on G(2,4)).
        #[arg(long, conflicts_with = "no_rational")]
        rational: bool,
        /// Never specialize over ℚ.
        #[arg(long)]
        no_rational: bool,
        /// Compare against the shipped dimensions.
        #[arg(long)]
        check: bool,
    },
    /// Print a pencil specification as JSON.
    Pencil {
        /// Grassmannian G(r,n), given as r,n.
        #[arg(long, default_value = "2,4", value_parser = parse_rn)]
        rn: [usize; 2],
        /// Pencil variant: arrow, squares, quads or squares+quads.
        #[arg(long, default_value = "arrow")]
        variant: Variant,
    },
    /// List the invariant monomials of a degree and the group they are invariant under.
    Invariants {
        /// Grassmannian G(r,n), given as r,n.
        #[arg(long, default_value = "2,4", value_parser = parse_rn)]
        rn: [usize; 2],
        /// Degree (default n).
        #[arg(long)]
        degree: Option<u32>,
    },
}

fn parse_rn(s: &str) -> std::result::Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [r, n] => {
            let r = r.parse().map_err(|e| format!("bad r in {s:?}: {e}"))?;
            let n = n.parse().map_err(|e| format!("bad n in {s:?}: {e}"))?;
            Ok([r, n])
        }
        _ => Err(format!("expected r,n, got {s:?}")),
    }
}

/// How an experiment ended, mapped onto the exit status.
enum Outcome {
    Reproduced,
    Mismatch(Vec<String>),
    Inconsistent(Vec<String>),
}

impl Outcome {
    fn from_mismatches(mismatches: Vec<String>) -> Outcome {
        if mismatches.is_empty() {
            Outcome::Reproduced
        } else {
            Outcome::Mismatch(mismatches)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct TableRow {
    t: u64,
    count: u64,
    residue: u64,
    /// `1 − HW_p(t) mod p`, defined for the arrow pencil on G(2,4).
    predicted_residue: Option<u64>,
    congruence_holds: Option<bool>,
}

fn cmd_tables(cli: &Cli, p: u64, variant: Variant, rn: [usize; 2], check: bool, force: bool) -> Result<Outcome> {
    let stem = format!("tables_g{}{}_{}_p{p}", rn[0], rn[1], variant.name().replace('+', "_"));
    let params = json!({ "p": p, "variant": variant, "rn": rn, "force": force });
    let mut rec = Recorder::new(&cli.out, "tables", stem, params);
    let spec = build_pencil(rn[0], rn[1], variant)?;
    let table = rec.time("count", || count_table(&spec, p, force))?;
    let hw_defined = rn == [2, 4] && variant == Variant::Arrow;
    let rows = rec.time("hasse_witt", || {
        table
            .iter()
            .map(|r| {
                let predicted = if hw_defined { Some(predicted_residue(p, r.t)?) } else { None };
                Ok(TableRow {
                    t: r.t,
                    count: r.count,
                    residue: r.residue,
                    predicted_residue: predicted,
                    congruence_holds: predicted.map(|v| v == r.residue),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let csv = table_csv(&table);
    let congruence = hw_defined.then(|| rows.iter().all(|r| r.congruence_holds == Some(true)));
    rec.write("csv", &csv)?;
    rec.write("json", &to_json(&json!({ "p": p, "rn": rn, "variant": variant, "rows": rows, "congruence_holds": congruence }))?)?;
    rec.finish()?;
    print!("{csv}");

    let mut mismatches = Vec::new();
    if congruence == Some(false) {
        mismatches.push("a count disagrees with 1 - HW_p(t) mod p".to_string());
    }
    if check {
        let expected = fixtures::table(rn, variant, p)
            .ok_or_else(|| anyhow!("no expected table for G({},{}) {variant} at p={p}", rn[0], rn[1]))?;
        if expected != csv {
            mismatches.push(format!("table differs from the expected one:\n{expected}"));
        }
    }
    Ok(Outcome::from_mismatches(mismatches))
}

fn cmd_search(cli: &Cli, p: u64, check: bool) -> Result<Outcome> {
    let params = json!({ "p": p });
    let mut rec = Recorder::new(&cli.out, "search", format!("search_p{p}"), params);
    let spec = build_pencil(2, 4, Variant::Arrow)?;
    let counts = rec.time("count", || count_table(&spec, p, false))?;
    let series = rec.time("series", || series_truncation(p))?;
    let hw = rec.time("hasse_witt", || {
        (1..p).map(|t| Ok((t.to_string(), hasse_witt(p, t)?))).collect::<Result<BTreeMap<String, u64>>>()
    })?;
    let scan: Vec<ScanEntry> = rec.time("scan", || truncation_scan(p, &counts))?;
    let hits: Vec<(u64, u64)> = scan.iter().filter(|e| e.first_mismatch.is_none()).map(|e| (e.a, e.b)).collect();
    let coefficients: Vec<String> = series.coefficients.iter().map(|c| c.to_string()).collect();
    let body = to_json(&json!({
        "p": p,
        "coefficients": coefficients,
        "hw": hw,
        "search_hits": hits,
        "scan": scan,
    }))?;
    rec.write("json", &body)?;
    rec.finish()?;
    println!("{}", to_json(&json!({ "p": p, "candidates": scan.len(), "search_hits": hits }))?.trim_end());

    if !check {
        return Ok(Outcome::Reproduced);
    }
    let expected = fixtures::search_hits(p).ok_or_else(|| anyhow!("no expected search result for p={p}"))?;
    Ok(Outcome::from_mismatches(if expected == hits {
        vec![]
    } else {
        vec![format!("expected hits {expected:?}, found {hits:?}")]
    }))
}

#[derive(Serialize)]
struct GroupSummary {
    n: usize,
    r: usize,
    order: u128,
    structure: String,
    lattice_order: u128,
    lattice_structure: String,
}

impl GroupSummary {
    fn of(group: &SymmetryGroup) -> GroupSummary {
        GroupSummary {
            n: group.n,
            r: group.r,
            order: group.order,
            structure: group.structure(),
            lattice_order: group.order_tilde,
            lattice_structure: group.tilde_structure(),
        }
    }
}

fn strip_timing(report: &mut GradedPieceReport, rec: &mut Recorder, step: String) {
    if let Some(ms) = report.elapsed_ms.take() {
        rec.record_time(&step, ms);
    }
}

fn field_label(field: Field) -> String {
    match field {
        Field::Rationals => "QQ".to_string(),
        Field::Prime(p) => p.to_string(),
    }
}

/// The pencil's ℙ⁵ complete-intersection model at each specialization.
fn ci_reports(spec: &PencilSpec, points: &[Specialization]) -> Result<Vec<GradedPieceReport>> {
    let per_point: Vec<Vec<GradedPieceReport>> = points
        .par_iter()
        .map(|at| {
            let t: Scalar = specialize_t(at.field, at.t)?;
            let ctx = plucker_ci_context(spec, at.field, &t)?;
            [[0, 0], [0, 1]]
                .into_iter()
                .map(|b| {
                    let mut report = ci_bigraded_quotient(&ctx, b)?;
                    report.t = Some(at.t);
                    Ok(report)
                })
                .collect::<arrowpencil::Result<Vec<_>>>()
        })
        .collect::<arrowpencil::Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn cmd_hodge(
    cli: &Cli,
    rn: [usize; 2],
    variant: Variant,
    t: Option<Vec<i64>>,
    primes: Vec<u64>,
    degree: Option<u32>,
    rational: bool,
    no_rational: bool,
    check: bool,
) -> Result<Outcome> {
    let [r, n] = rn;
    let degree = degree.unwrap_or(n as u32);
    let t_values = t.unwrap_or_else(|| if rn == [2, 4] { vec![2, 3, 5] } else { vec![2, 3, 7, 13] });
    let use_rationals = rational || (rn == [2, 4] && !no_rational);
    let mut fields = Vec::new();
    if use_rationals {
        fields.push(Field::Rationals);
    }
    for &p in &primes {
        fields.push(Field::prime(p)?);
    }
    let points = specializations(&t_values, &fields);

    let stem = format!("hodge_g{r}{n}_{}_d{degree}", variant.name().replace('+', "_"));
    let params = json!({
        "rn": rn,
        "variant": variant,
        "degree": degree,
        "t": t_values,
        "fields": fields.iter().map(|&f| field_label(f)).collect::<Vec<_>>(),
    });
    let mut rec = Recorder::new(&cli.out, "hodge", stem, params);
    let spec = build_pencil(r, n, variant)?;
    let group = build_group(n, r)?;

    let start = Instant::now();
    let subspace = invariant_subspace(&spec, &group, degree, &t_values, &fields);
    rec.record_time("invariant_subspace", start.elapsed().as_millis() as u64);
    let mut subspace: InvariantSubspace = match subspace {
        Ok(s) => s,
        Err(arrowpencil::Error::Inconsistent(msg)) => {
            rec.finish()?;
            return Ok(Outcome::Inconsistent(vec![msg]));
        }
        Err(e) => return Err(e.into()),
    };
    for (report, at) in subspace.reports.iter_mut().zip(&points) {
        strip_timing(report, &mut rec, format!("slice t={} over {}", at.t, field_label(at.field)));
    }

    let mut ci = if rn == [2, 4] { rec.time("ci", || ci_reports(&spec, &points))? } else { Vec::new() };
    for report in ci.iter_mut() {
        let Grading::Bidegree([a, b]) = report.degree else { unreachable!("ci pieces are bigraded") };
        let t = report.t.unwrap_or_default();
        strip_timing(report, &mut rec, format!("ci ({a},{b}) t={t} over {}", field_label(report.field)));
    }
    // as for the slices, rank can only drop at special parameters
    let mut ci_consensus: BTreeMap<String, usize> = BTreeMap::new();
    for report in &ci {
        let Grading::Bidegree([a, b]) = report.degree else { continue };
        let entry = ci_consensus.entry(format!("{a},{b}")).or_insert(report.quotient_dim);
        *entry = (*entry).min(report.quotient_dim);
    }
    let mut divergent = Vec::new();
    for report in &ci {
        let Grading::Bidegree([a, b]) = report.degree else { continue };
        let expected = ci_consensus[&format!("{a},{b}")];
        if expected != report.quotient_dim {
            divergent.push(format!(
                "ci ({a},{b}) at t={} over {}: {} (consensus {expected})",
                report.t.unwrap_or_default(),
                field_label(report.field),
                report.quotient_dim
            ));
        }
    }
    let bad: Vec<Specialization> = subspace.bad.iter().map(|&i| points[i]).collect();
    for at in &bad {
        let rep = &subspace.reports[points.iter().position(|p| p == at).expect("point listed")];
        divergent.push(format!(
            "t={} over {}: quotient {}, invariant {} (consensus {}, {})",
            at.t,
            field_label(at.field),
            rep.quotient_dim,
            rep.invariant_dim.unwrap_or_default(),
            subspace.quotient_dim,
            subspace.dimension
        ));
    }

    let mut notes = Vec::new();
    if rn == [2, 5] {
        notes.push(
            "H(2,5) is taken to be the diagonal group H_{5,2}; invariance is tested on its full lift to the torus"
                .to_string(),
        );
    }
    let body = to_json(&json!({
        "rn": rn,
        "variant": variant,
        "degree": degree,
        "group": GroupSummary::of(&group),
        "specializations": points,
        "reports": subspace.reports,
        "ci": ci,
        "consensus": {
            "quotient_dim": subspace.quotient_dim,
            "invariant_dim": subspace.dimension,
            "invariant_candidates": subspace.candidates,
            "survivors": subspace.survivor_names,
            "ci": ci_consensus,
            "unanimous": divergent.is_empty(),
            "bad": bad,
        },
        "notes": notes,
    }))?;
    rec.write("json", &body)?;
    rec.finish()?;
    println!(
        "{}",
        to_json(&json!({
            "rn": rn,
            "variant": variant,
            "degree": degree,
            "quotient_dim": subspace.quotient_dim,
            "invariant_dim": subspace.dimension,
            "survivors": subspace.survivor_names,
            "ci": ci_consensus,
            "specializations": points.len(),
            "unanimous": divergent.is_empty(),
        }))?
        .trim_end()
    );

    if !divergent.is_empty() {
        return Ok(Outcome::Inconsistent(divergent));
    }
    if !check {
        return Ok(Outcome::Reproduced);
    }
    let expected = fixtures::hodge(rn, variant, degree)
        .ok_or_else(|| anyhow!("no expected dimensions for G({r},{n}) {variant} in degree {degree}"))?;
    let mut mismatches = Vec::new();
    if let Some(q) = expected.quotient_dim.filter(|&q| q != subspace.quotient_dim) {
        mismatches.push(format!("quotient dimension {} (expected {q})", subspace.quotient_dim));
    }
    if let Some(d) = expected.invariant_dim.filter(|&d| d != subspace.dimension) {
        mismatches.push(format!("invariant dimension {} (expected {d})", subspace.dimension));
    }
    for (key, &want) in &expected.ci {
        match ci_consensus.get(key) {
            Some(&got) if got == want => {}
            got => mismatches.push(format!("ci ({key}) dimension {got:?} (expected {want})")),
        }
    }
    Ok(Outcome::from_mismatches(mismatches))
}

fn cmd_pencil(rn: [usize; 2], variant: Variant) -> Result<Outcome> {
    let spec = build_pencil(rn[0], rn[1], variant)?;
    let names = spec.vars()?.names();
    let deforming: Vec<String> = spec.monomials.iter().map(|m| monomial_name(m, &names)).collect();
    let polynomial = format!("t*({}) + {}", deforming.join(" + "), monomial_name(&spec.frozen, &names));
    let mut value = serde_json::to_value(&spec)?;
    value["polynomial"] = json!(polynomial);
    println!("{}", to_json(&value)?.trim_end());
    Ok(Outcome::Reproduced)
}

fn cmd_invariants(rn: [usize; 2], degree: Option<u32>) -> Result<Outcome> {
    let [r, n] = rn;
    let degree = degree.unwrap_or(n as u32);
    let group = build_group(n, r)?;
    let names = PluckerVars::new(r, n)?.names();
    let monomials: Vec<String> =
        invariant_monomials(r, n, degree, &group)?.iter().map(|m| monomial_name(m, &names)).collect();
    println!(
        "{}",
        to_json(&json!({
            "rn": rn,
            "degree": degree,
            "group": GroupSummary::of(&group),
            "count": monomials.len(),
            "monomials": monomials,
        }))?
        .trim_end()
    );
    Ok(Outcome::Reproduced)
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            bail!("the worker cap must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match &cli.command {
        Command::Tables { p, variant, rn, check, force } => cmd_tables(&cli, *p, *variant, *rn, *check, *force),
        Command::Search { p, check } => cmd_search(&cli, *p, *check),
        Command::Hodge { rn, variant, t, primes, degree, rational, no_rational, check } => cmd_hodge(
            &cli,
            *rn,
            *variant,
            t.clone(),
            primes.clone(),
            *degree,
            *rational,
            *no_rational,
            *check,
        ),
        Command::Pencil { rn, variant } => cmd_pencil(*rn, *variant),
        Command::Invariants { rn, degree } => cmd_invariants(*rn, *degree),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Reproduced) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch(lines)) => {
            for line in lines {
                eprintln!("mismatch: {line}");
            }
            ExitCode::from(2)
        }
        Ok(Outcome::Inconsistent(lines)) => {
            for line in lines {
                eprintln!("inconsistent: {line}");
            }
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
