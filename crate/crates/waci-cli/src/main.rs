//! Command-line front-end: parses presentation files, runs the analysis
//! pipelines and prints deterministic JSON reports.
//!
//! Exit codes: 0 = computed, 1 = negative verdict on a yes/no gate,
//! 2 = input error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use waci::derivations::{derivation_space, euler_derivation, space_contains};
use waci::duality;
use waci::families::{self, SplitParams};
use waci::geodesic;
use waci::homotopy;
use waci::linalg::QMatrix;
use waci::poly::{parse, Polynomial, Presentation, Rat, WeightedRing};
use waci::quadform;
use waci::quotient::{AlgRef, QuotientAlgebra};
use waci::smoothing;

#[derive(Parser)]
#[command(name = "waci", about = "exact invariants of weighted artinian complete intersections")]
struct Cli {
    /// include wall-clock timing in the report (off by default so that
    /// identical inputs give byte-identical output)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// presentation file with [ring] and [relations] sections
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// full report: Hilbert data, homotopy invariants, duality and signature
    Analyze(FileArg),
    /// the simplicity verdict (exit 1 when not simple)
    Simple(FileArg),
    /// basis of the derivation space in a fixed degree
    Derive {
        #[command(flatten)]
        file: FileArg,
        /// degree shift of the derivations
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// graded pseudo-homotopy groups and the invariant k
    Homotopy(FileArg),
    /// Poincare duality check (exit 1 when the pairing degenerates)
    Pda(FileArg),
    /// middle quadratic form: diagonalization, signature, integrality
    Signature(FileArg),
    /// smoothability verdict (exit 1 when obstructed)
    Smooth(FileArg),
    /// the invariant-geodesic obstruction over one or more simple factors
    Geodesic {
        files: Vec<PathBuf>,
    },
    /// generate a family presentation
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// independent brute-force cross-checks
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// the split family x_i^{a_i} - x_{i+1}^{a_{i+1}}, x_n^{2k a_n}
    Split {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        /// comma-separated even weights
        #[arg(long)]
        weights: String,
        /// comma-separated exponents with w_i * a_i constant
        #[arg(long)]
        exponents: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// the family x_i^2 - x_n^2, x_1...x_n (n >= 3)
    El {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Q[x]/(x^power) with the given even weight
    Truncated {
        #[arg(long)]
        power: u64,
        #[arg(long)]
        weight: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Borel presentation of the type-A flag variety of the given rank
    Flag {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// sweep for a unimodular value pair |P(0)| = |P(1)| = 1
    MonomialSearch {
        #[arg(long)]
        cycles: usize,
        #[arg(long)]
        bound: i64,
    },
    /// verify the Leibniz rule for every computed basis derivation
    Derivation {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// compare the residue-based integrality test of the middle form with
    /// the bounded congruence search
    Congruence {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = 16)]
        bound: i64,
    },
}

/// error carrying the exit code
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<waci::Error> for Failure {
    fn from(e: waci::Error) -> Self {
        input_error(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// input files
// ---------------------------------------------------------------------------

fn fnv1a64(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

struct InputFile {
    presentation: Presentation,
    label: Option<String>,
    digest: String,
    name: String,
}

fn load_presentation(path: &Path) -> Result<InputFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let digest = fnv1a64(text.as_bytes());
    let mut variables: Option<Vec<String>> = None;
    let mut weights: Option<Vec<u64>> = None;
    let mut label = None;
    let mut relation_lines: Vec<(usize, String)> = Vec::new();
    let mut section = "";
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = match &line[1..line.len() - 1] {
                "ring" => "ring",
                "relations" => "relations",
                other => {
                    return Err(input_error(format!(
                        "{}:{}: unknown section `{other}`",
                        path.display(),
                        lineno + 1
                    )))
                }
            };
            continue;
        }
        match section {
            "ring" => {
                let Some((key, value)) = line.split_once('=') else {
                    return Err(input_error(format!(
                        "{}:{}: expected `key = value`",
                        path.display(),
                        lineno + 1
                    )));
                };
                match key.trim() {
                    "variables" => {
                        variables =
                            Some(value.split(',').map(|v| v.trim().to_string()).collect());
                    }
                    "weights" => {
                        let parsed: Result<Vec<u64>, _> =
                            value.split(',').map(|v| v.trim().parse()).collect();
                        weights = Some(parsed.map_err(|e| {
                            input_error(format!("{}:{}: bad weight: {e}", path.display(), lineno + 1))
                        })?);
                    }
                    "label" => label = Some(value.trim().to_string()),
                    other => {
                        return Err(input_error(format!(
                            "{}:{}: unknown ring key `{other}`",
                            path.display(),
                            lineno + 1
                        )))
                    }
                }
            }
            "relations" => relation_lines.push((lineno + 1, line.to_string())),
            _ => {
                return Err(input_error(format!(
                    "{}:{}: content outside a section",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    let variables = variables
        .ok_or_else(|| input_error(format!("{}: missing `variables`", path.display())))?;
    let weights =
        weights.ok_or_else(|| input_error(format!("{}: missing `weights`", path.display())))?;
    let ring = WeightedRing::new(variables, weights)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let mut relations = Vec::new();
    for (lineno, line) in relation_lines {
        relations.push(
            parse(&line, &ring)
                .map_err(|e| input_error(format!("{}:{lineno}: {e}", path.display())))?,
        );
    }
    let presentation = Presentation::new(ring, relations)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(InputFile {
        presentation,
        label,
        digest,
        name: path.display().to_string(),
    })
}

fn presentation_file_text(p: &Presentation, label: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str("[ring]\n");
    if let Some(l) = label {
        out.push_str(&format!("label = {l}\n"));
    }
    out.push_str(&format!("variables = {}\n", p.ring().var_names().join(", ")));
    out.push_str(&format!(
        "weights = {}\n",
        p.ring()
            .weights()
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    out.push_str("\n[relations]\n");
    for r in p.relations() {
        out.push_str(&format!("{r}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// report helpers
// ---------------------------------------------------------------------------

fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn poly_value(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

fn degree_map(m: &BTreeMap<u64, usize>) -> Value {
    let mut out = Map::new();
    for (d, dim) in m {
        out.insert(d.to_string(), json!(dim));
    }
    Value::Object(out)
}

fn matrix_value(m: &QMatrix) -> Value {
    Value::Array(
        m.data
            .iter()
            .map(|row| Value::Array(row.iter().map(rat_value).collect()))
            .collect(),
    )
}

fn input_value(input: &InputFile) -> Value {
    let mut v = json!({
        "file": input.name,
        "digest": input.digest,
    });
    if let Some(label) = &input.label {
        v["label"] = json!(label);
    }
    v
}

fn simplicity_value(r: &homotopy::SimplicityReport) -> Value {
    json!({
        "is_waci": r.is_waci,
        "negative_derivations_vanish": r.der_neg_zero,
        "degree_zero_derivations": r.der0_dim,
        "k": r.k,
        "top_pi1_dimension": r.top_pi1_dim,
        "simple": r.is_simple(),
        "verdict": format!("{:?}", r.verdict),
    })
}

fn algebra_of(p: &Presentation) -> Result<AlgRef, Failure> {
    Ok(QuotientAlgebra::new(p)?)
}

fn print_report(report: &Value, timing: bool, started: std::time::Instant) {
    let mut report = report.clone();
    if timing {
        report["timing_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn cmd_analyze(input: &InputFile) -> Result<(Value, u8), Failure> {
    let p = &input.presentation;
    let mut report = Map::new();
    report.insert("command".into(), json!("analyze"));
    report.insert("input".into(), input_value(input));
    report.insert(
        "ring".into(),
        json!({
            "variables": p.ring().var_names(),
            "weights": p.ring().weights(),
        }),
    );
    report.insert(
        "relations".into(),
        Value::Array(p.relations().iter().map(poly_value).collect()),
    );
    let waci = waci::quotient::is_waci(p);
    report.insert("is_waci".into(), json!(waci));
    if !waci {
        report.insert("note".into(), json!("not a weighted artinian complete intersection; no further invariants"));
        return Ok((Value::Object(report), 0));
    }
    let algebra = algebra_of(p)?;
    report.insert("hilbert".into(), json!(algebra.hilbert_polynomial()));
    report.insert("total_dimension".into(), json!(algebra.total_dim()));
    let m = duality::formal_dimension(&algebra)?;
    report.insert("formal_dimension".into(), json!(m));
    let ph = homotopy::pseudo_homotopy(p)?;
    report.insert("pi1".into(), degree_map(&ph.pi1));
    report.insert("pi0".into(), degree_map(&ph.pi0));
    report.insert("k".into(), json!(ph.k));
    report.insert("simplicity".into(), simplicity_value(&homotopy::is_simple(p)));
    let pda = duality::is_pda(&algebra);
    report.insert("poincare_duality".into(), json!(pda));
    if pda && m % 4 == 0 {
        let omega = duality::orientation(&algebra)?;
        let g = duality::middle_form(&algebra, &omega)?;
        let sigma = quadform::signature(&g.matrix)?;
        report.insert("middle_signature".into(), json!(sigma));
        report.insert(
            "integrality".into(),
            json!(quadform::is_sum_of_signed_squares(&g.matrix)?),
        );
    }
    Ok((Value::Object(report), 0))
}

fn cmd_simple(input: &InputFile) -> Result<(Value, u8), Failure> {
    let r = homotopy::is_simple(&input.presentation);
    let code = if r.is_simple() { 0 } else { 1 };
    Ok((
        json!({
            "command": "simple",
            "input": input_value(input),
            "result": simplicity_value(&r),
        }),
        code,
    ))
}

fn cmd_derive(input: &InputFile, degree: i64) -> Result<(Value, u8), Failure> {
    let algebra = algebra_of(&input.presentation)?;
    let space = derivation_space(&algebra, degree);
    let basis: Vec<Value> = space
        .basis
        .iter()
        .map(|d| Value::Array(d.images().iter().map(poly_value).collect()))
        .collect();
    let mut report = json!({
        "command": "derive",
        "input": input_value(input),
        "degree": degree,
        "dimension": space.dim(),
        "basis_images": basis,
    });
    if degree == 0 {
        report["contains_euler"] = json!(space_contains(&space, &euler_derivation(&algebra)));
    }
    Ok((report, 0))
}

fn cmd_homotopy(input: &InputFile) -> Result<(Value, u8), Failure> {
    let ph = homotopy::pseudo_homotopy(&input.presentation)?;
    Ok((
        json!({
            "command": "homotopy",
            "input": input_value(input),
            "pi1": degree_map(&ph.pi1),
            "pi0": degree_map(&ph.pi0),
            "k": ph.k,
        }),
        0,
    ))
}

fn cmd_pda(input: &InputFile) -> Result<(Value, u8), Failure> {
    let algebra = algebra_of(&input.presentation)?;
    let pda = duality::is_pda(&algebra);
    Ok((
        json!({
            "command": "pda",
            "input": input_value(input),
            "formal_dimension": algebra.top_degree(),
            "poincare_duality": pda,
        }),
        if pda { 0 } else { 1 },
    ))
}

fn cmd_signature(input: &InputFile) -> Result<(Value, u8), Failure> {
    let algebra = algebra_of(&input.presentation)?;
    let m = duality::formal_dimension(&algebra)?;
    if m % 4 != 0 {
        return Err(input_error(format!(
            "middle form undefined: formal dimension {m} is not a multiple of 4"
        )));
    }
    let omega = duality::orientation(&algebra)?;
    let g = duality::middle_form(&algebra, &omega)?;
    let d = quadform::diagonalize(&g.matrix)?;
    Ok((
        json!({
            "command": "signature",
            "input": input_value(input),
            "formal_dimension": m,
            "orientation": poly_value(&omega.class),
            "middle_basis": duality::middle_basis(&algebra)
                .iter()
                .map(|mono| poly_value(&Polynomial::monomial(algebra.ring(), mono.clone(), waci::poly::rat(1))))
                .collect::<Vec<_>>(),
            "gram": matrix_value(&g.matrix),
            "diagonal": d.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "signature": quadform::signature(&g.matrix)?,
            "integrality": quadform::is_sum_of_signed_squares(&g.matrix)?,
        }),
        0,
    ))
}

fn smoothing_value(r: &smoothing::SmoothingReport) -> Value {
    let verdict = match &r.verdict {
        smoothing::Verdict::Smoothable => json!("smoothable"),
        smoothing::Verdict::Obstructed(reason) => json!({"obstructed": reason}),
        smoothing::Verdict::Unknown => json!("unknown"),
    };
    let mut v = json!({
        "formal_dimension": r.formal_dimension,
        "verdict": verdict,
    });
    if let Some(c) = &r.certificate {
        v["certificate"] = json!({
            "orientation": poly_value(&c.orientation_class),
            "pontrjagin_class": poly_value(&c.pontrjagin_class),
            "signature": c.signature,
            "l_genus_value": rat_value(&c.l_value),
        });
    }
    v
}

fn cmd_smooth(input: &InputFile) -> Result<(Value, u8), Failure> {
    let algebra = algebra_of(&input.presentation)?;
    let r = smoothing::smoothability_report(&algebra)?;
    let code = if matches!(r.verdict, smoothing::Verdict::Obstructed(_)) {
        1
    } else {
        0
    };
    Ok((
        json!({
            "command": "smooth",
            "input": input_value(input),
            "result": smoothing_value(&r),
        }),
        code,
    ))
}

fn cmd_geodesic(files: &[PathBuf]) -> Result<(Value, u8), Failure> {
    if files.is_empty() {
        return Err(input_error("at least one factor file is required"));
    }
    let inputs: Vec<InputFile> = files
        .iter()
        .map(|f| load_presentation(f))
        .collect::<Result<_, _>>()?;
    let factors: Vec<Presentation> = inputs.iter().map(|i| i.presentation.clone()).collect();
    let r = geodesic::geodesic_report(&factors)?;
    let code = if r.obstruction_applies() { 0 } else { 1 };
    Ok((
        json!({
            "command": "geodesic",
            "inputs": inputs.iter().map(input_value).collect::<Vec<_>>(),
            "factors": r.factors.iter().map(simplicity_value).collect::<Vec<_>>(),
            "k": r.k,
            "critical_factors": r.critical_factors,
            "conclusion": r.conclusion,
        }),
        code,
    ))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|v| v.trim().parse().map_err(|e| input_error(format!("bad list entry `{v}`: {e}"))))
        .collect()
}

fn cmd_family(family: &FamilyCommand) -> Result<(Value, u8), Failure> {
    let (presentation, label, out) = match family {
        FamilyCommand::Split {
            n,
            k,
            weights,
            exponents,
            out,
        } => {
            let params = SplitParams::new(*n, *k, parse_u64_list(weights)?, parse_u64_list(exponents)?)?;
            (
                families::split_family(&params)?,
                format!("split n={n} k={k}"),
                out,
            )
        }
        FamilyCommand::El { n, out } => {
            (families::eisenbud_levine(*n)?, format!("el n={n}"), out)
        }
        FamilyCommand::Truncated { power, weight, out } => (
            families::truncated(*power, *weight)?,
            format!("truncated power={power} weight={weight}"),
            out,
        ),
        FamilyCommand::Flag { rank, out } => {
            (families::flag_presentation(*rank)?, format!("flag rank={rank}"), out)
        }
    };
    let text = presentation_file_text(&presentation, Some(&label));
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    Ok((
        json!({
            "command": "family",
            "label": label,
            "ring": {
                "variables": presentation.ring().var_names(),
                "weights": presentation.ring().weights(),
            },
            "relations": presentation.relations().iter().map(poly_value).collect::<Vec<_>>(),
            "written_to": out.as_ref().map(|p| p.display().to_string()),
        }),
        0,
    ))
}

fn cmd_oracle(oracle: &OracleCommand) -> Result<(Value, u8), Failure> {
    match oracle {
        OracleCommand::MonomialSearch { cycles, bound } => {
            let found = geodesic::unimodular_pair_exists(*cycles, *bound)?;
            Ok((
                json!({
                    "command": "oracle monomial-search",
                    "max_cycles": cycles,
                    "gamma_bound": bound,
                    "unimodular_pair_found": found,
                    "conclusion": if found {
                        "unimodular pair found: the impossibility argument is contradicted"
                    } else {
                        "no unimodular pair found"
                    },
                }),
                if found { 1 } else { 0 },
            ))
        }
        OracleCommand::Derivation { file, degree } => {
            let input = load_presentation(&file.file)?;
            let algebra = algebra_of(&input.presentation)?;
            let space = derivation_space(&algebra, *degree);
            // Leibniz on all pairs of standard monomials
            let mut checked = 0usize;
            for d in &space.basis {
                for deg_a in (0..=algebra.top_degree()).step_by(2) {
                    for ma in algebra.monomial_basis(deg_a) {
                        let pa = Polynomial::monomial(algebra.ring(), ma.clone(), waci::poly::rat(1));
                        for deg_b in (0..=algebra.top_degree()).step_by(2) {
                            for mb in algebra.monomial_basis(deg_b) {
                                let pb = Polynomial::monomial(
                                    algebra.ring(),
                                    mb.clone(),
                                    waci::poly::rat(1),
                                );
                                let prod = algebra.normal_form(&pa.mul(&pb)?)?;
                                let lhs = d.apply(&prod)?;
                                let rhs = algebra.normal_form(
                                    &d.apply(&pa)?.mul(&pb)?.add(&pa.mul(&d.apply(&pb)?)?)?,
                                )?;
                                if lhs != rhs {
                                    return Ok((
                                        json!({
                                            "command": "oracle derivation",
                                            "input": input_value(&input),
                                            "degree": degree,
                                            "dimension": space.dim(),
                                            "leibniz_verified": false,
                                            "counterexample": {
                                                "a": poly_value(&pa),
                                                "b": poly_value(&pb),
                                            },
                                        }),
                                        1,
                                    ));
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
            Ok((
                json!({
                    "command": "oracle derivation",
                    "input": input_value(&input),
                    "degree": degree,
                    "dimension": space.dim(),
                    "leibniz_verified": true,
                    "pairs_checked": checked,
                }),
                0,
            ))
        }
        OracleCommand::Congruence { file, bound } => {
            let input = load_presentation(&file.file)?;
            let algebra = algebra_of(&input.presentation)?;
            let m = duality::formal_dimension(&algebra)?;
            if m % 4 != 0 {
                return Err(input_error(format!(
                    "middle form undefined: formal dimension {m} is not a multiple of 4"
                )));
            }
            let omega = duality::orientation(&algebra)?;
            let g = duality::middle_form(&algebra, &omega)?;
            let residue_verdict = quadform::is_sum_of_signed_squares(&g.matrix)?;
            let search_verdict = quadform::signed_squares_oracle(&g.matrix, *bound);
            // the bounded search can only under-approximate
            let consistent = residue_verdict || !search_verdict;
            Ok((
                json!({
                    "command": "oracle congruence",
                    "input": input_value(&input),
                    "bound": bound,
                    "residue_test": residue_verdict,
                    "bounded_search": search_verdict,
                    "consistent": consistent,
                }),
                if consistent { 0 } else { 1 },
            ))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, u8), Failure> {
    match &cli.command {
        Command::Analyze(f) => cmd_analyze(&load_presentation(&f.file)?),
        Command::Simple(f) => cmd_simple(&load_presentation(&f.file)?),
        Command::Derive { file, degree } => cmd_derive(&load_presentation(&file.file)?, *degree),
        Command::Homotopy(f) => cmd_homotopy(&load_presentation(&f.file)?),
        Command::Pda(f) => cmd_pda(&load_presentation(&f.file)?),
        Command::Signature(f) => cmd_signature(&load_presentation(&f.file)?),
        Command::Smooth(f) => cmd_smooth(&load_presentation(&f.file)?),
        Command::Geodesic { files } => cmd_geodesic(files),
        Command::Family { family } => cmd_family(family),
        Command::Oracle { oracle } => cmd_oracle(oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    match dispatch(&cli) {
        Ok((report, code)) => {
            print_report(&report, cli.timing, started);
            ExitCode::from(code)
        }
        Err(f) => {
            let report = json!({
                "error": f.message,
            });
            print_report(&report, cli.timing, started);
            ExitCode::from(f.code)
        }
    }
}
