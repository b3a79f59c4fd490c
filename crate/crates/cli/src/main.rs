//! `rowcomp`: structure extraction, completion decisions, region scans, completion
//! search, certificate verification and the exhaustive differential oracle, all as
//! JSON in and JSON out.
//!
//! Exit codes: 0 when the computation ran, 2 when it ran and the verdict is negative
//! (infeasible, obstructed, mismatch, counterexample), 1 on usage, input or IO errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rowcomp::construct::{complete_rows, verify_completion, Outcome, SearchConfig};
use rowcomp::json::{field_of, matrix_from_json, prescription_from_json, structural_data_to_json};
use rowcomp::matstruct::structural_data;
use rowcomp::oracle::{differential_check, poly_matrices, DiffOptions, EnumerationSpace, Status};
use rowcomp::{decide, scan_infinite, with_field, Case, Error, Field, FieldDescriptor, Verdict};

#[derive(Parser)]
#[command(name = "rowcomp", version, about = "Row completion of polynomial and rational matrices")]
struct Cli {
    /// Field of the input matrices (q, qi or fp:<p>). Defaults to the matrix document's
    /// "field" key, then to q.
    #[arg(long, global = true)]
    field: Option<FieldDescriptor>,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural data of a matrix.
    Structure { matrix: PathBuf },
    /// Decide whether rows can be appended to a matrix to attain a prescription.
    Decide {
        matrix: PathBuf,
        prescription: PathBuf,
        /// Defaults to the case matching the targets the prescription sets.
        #[arg(long)]
        case: Option<Case>,
    },
    /// List the target sequences in a range for which the decision passes.
    Scan {
        matrix: PathBuf,
        prescription: PathBuf,
        #[arg(long)]
        case: Option<Case>,
        #[arg(long, value_enum, default_value = "infinite")]
        vary: Vary,
        /// Inclusive range `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
    },
    /// Search for a completion attaining a prescription.
    Search {
        matrix: PathBuf,
        prescription: PathBuf,
        /// Entry-degree bound of the polynomial search.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        max_candidates: Option<u64>,
        /// Search configuration JSON; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Stack a completion under a matrix and compare its structure with a prescription.
    Verify {
        matrix: PathBuf,
        completion: PathBuf,
        prescription: PathBuf,
    },
    /// Run the enumeration oracle on a space. The space document may carry a matrix
    /// under "p"; otherwise every `m × n` matrix of degree `≤ p_max_deg` is checked.
    Oracle {
        #[arg(long)]
        space: PathBuf,
        /// Entry-degree bound of the enumerated completions, overriding the space's.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Also print agreeing records.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Vary {
    Infinite,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Output text and whether the verdict was negative.
struct Report {
    text: String,
    negative: bool,
}

impl Report {
    fn json(v: Value, negative: bool) -> Self {
        Report {
            text: v.to_string(),
            negative,
        }
    }
}

fn read_json(path: &Path) -> Run<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: invalid JSON: {e}", path.display())))
}

fn parse_range(s: &str) -> Run<(i64, i64)> {
    let bad = || Failure::Usage(format!("--range expects lo..hi, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// The field named on the command line, checked against the documents that name one.
fn resolve_field(flag: Option<FieldDescriptor>, docs: &[&Value]) -> Run<FieldDescriptor> {
    let mut named = None;
    for d in docs {
        if d.get("field").is_some() {
            let f = field_of(d)?;
            if named.is_some_and(|g| g != f) {
                return Err(Failure::Usage(format!("input documents disagree on the field ({} and {f})", named.unwrap())));
            }
            named = Some(f);
        }
    }
    match (flag, named) {
        (Some(f), Some(g)) if f != g => Err(Failure::Usage(format!("--field {f} conflicts with the input field {g}"))),
        (Some(f), _) | (None, Some(f)) => Ok(f),
        (None, None) => Ok(FieldDescriptor::Rationals),
    }
}

fn structure<F: Field>(m: &Value) -> Run<Report> {
    let r = matrix_from_json::<F>(m)?;
    let mut out = structural_data_to_json(&structural_data(&r));
    out["field"] = json!(F::descriptor().to_string());
    Ok(Report::json(out, false))
}

fn decide_cmd<F: Field>(m: &Value, p: &Value, case: Option<Case>) -> Run<Report> {
    let r = matrix_from_json::<F>(m)?;
    let pre = prescription_from_json::<F>(p)?;
    let case = match case {
        Some(c) => c,
        None => Case::of_prescription(&pre)?,
    };
    let rep = decide(case, &structural_data(&r), &pre)?;
    Ok(Report::json(rep.to_json(), rep.verdict == Verdict::No))
}

fn scan_cmd<F: Field>(m: &Value, p: &Value, case: Option<Case>, (lo, hi): (i64, i64)) -> Run<Report> {
    let r = matrix_from_json::<F>(m)?;
    let pre = prescription_from_json::<F>(p)?;
    let case = match case {
        Some(c) => c,
        None => Case::of_prescription(&pre)?,
    };
    let region = scan_infinite(case, &structural_data(&r), &pre, lo, hi)?;
    let negative = region.is_empty();
    let out = json!({"case": case.id(), "vary": "infinite", "range": [lo, hi], "region": region});
    Ok(Report::json(out, negative))
}

fn search_cmd<F: Field>(m: &Value, p: &Value, cfg: &SearchConfig) -> Run<Report> {
    let r = matrix_from_json::<F>(m)?;
    let pre = prescription_from_json::<F>(p)?;
    let out = complete_rows(&r, &pre, cfg)?;
    let negative = matches!(out, Outcome::Infeasible(_) | Outcome::Obstructed { .. });
    Ok(Report::json(out.to_json(), negative))
}

fn verify_cmd<F: Field>(m: &Value, w: &Value, p: &Value) -> Run<Report> {
    let r = matrix_from_json::<F>(m)?;
    let w = matrix_from_json::<F>(w)?;
    let pre = prescription_from_json::<F>(p)?;
    let v = verify_completion(&r, &w, &pre)?;
    let out = json!({
        "ok": v.ok(),
        "mismatches": v.mismatches,
        "data": structural_data_to_json(&v.data),
    });
    Ok(Report::json(out, !v.ok()))
}

fn oracle_cmd<F: Field>(doc: &Value, space: &EnumerationSpace, verbose: bool) -> Run<Report> {
    let opts = DiffOptions::default();
    let matrices: Vec<_> = match doc.get("p") {
        Some(pm) => {
            let r = matrix_from_json::<F>(pm)?;
            if !r.is_polynomial() {
                return Err(Failure::Usage("space.p must be a polynomial matrix".into()));
            }
            vec![r.scale_to_poly(&rowcomp::Poly::one())]
        }
        None => {
            let deg = match doc.get("p_max_deg") {
                None => space.max_deg,
                Some(v) => v.as_u64().ok_or_else(|| Error::Parse {
                    path: "space.p_max_deg".into(),
                    msg: "expected a nonnegative integer".into(),
                })? as usize,
            };
            poly_matrices::<F>(space.m, space.n, deg)?.collect()
        }
    };
    let mut text = String::new();
    let mut totals = serde_json::Map::new();
    let statuses = [Status::Agree, Status::BeyondBound, Status::Caveat, Status::Unresolved, Status::Counterexample];
    let mut counts = [0usize; 5];
    for pm in &matrices {
        let rep = differential_check(pm, space, &opts)?;
        text.push_str(&rep.to_json_lines(verbose));
        for (c, s) in counts.iter_mut().zip(statuses) {
            *c += rep.count(s);
        }
    }
    for (c, s) in counts.iter().zip(statuses) {
        totals.insert(s.id().into(), json!(c));
    }
    text.push_str(&json!({"matrices": matrices.len(), "totals": totals}).to_string());
    Ok(Report {
        text,
        negative: counts[4] > 0,
    })
}

fn run(cli: Cli) -> Run<Report> {
    match cli.cmd {
        Command::Structure { matrix } => {
            let m = read_json(&matrix)?;
            with_field!(resolve_field(cli.field, &[&m])?, F => structure::<F>(&m))?
        }
        Command::Decide { matrix, prescription, case } => {
            let (m, p) = (read_json(&matrix)?, read_json(&prescription)?);
            with_field!(resolve_field(cli.field, &[&m])?, F => decide_cmd::<F>(&m, &p, case))?
        }
        Command::Scan {
            matrix,
            prescription,
            case,
            vary: Vary::Infinite,
            range,
        } => {
            let range = parse_range(&range)?;
            let (m, p) = (read_json(&matrix)?, read_json(&prescription)?);
            with_field!(resolve_field(cli.field, &[&m])?, F => scan_cmd::<F>(&m, &p, case, range))?
        }
        Command::Search {
            matrix,
            prescription,
            max_degree,
            max_candidates,
            config,
        } => {
            let mut cfg = match config {
                Some(path) => SearchConfig::from_json(&read_json(&path)?)?,
                None => SearchConfig::default(),
            };
            if max_degree.is_some() {
                cfg.max_entry_degree = max_degree;
            }
            if let Some(c) = max_candidates {
                cfg.max_candidates = c;
            }
            let (m, p) = (read_json(&matrix)?, read_json(&prescription)?);
            with_field!(resolve_field(cli.field, &[&m])?, F => search_cmd::<F>(&m, &p, &cfg))?
        }
        Command::Verify {
            matrix,
            completion,
            prescription,
        } => {
            let (m, w, p) = (read_json(&matrix)?, read_json(&completion)?, read_json(&prescription)?);
            with_field!(resolve_field(cli.field, &[&m, &w])?, F => verify_cmd::<F>(&m, &w, &p))?
        }
        Command::Oracle {
            space,
            max_degree,
            verbose,
        } => {
            let doc = read_json(&space)?;
            let mut sp = EnumerationSpace::from_json(&doc)?;
            if let Some(d) = max_degree {
                sp.max_deg = d;
            }
            if cli.field.is_some_and(|f| f != sp.field) {
                return Err(Failure::Usage(format!("--field conflicts with space.field {}", sp.field)));
            }
            with_field!(sp.field, F => oracle_cmd::<F>(&doc, &sp, verbose))?
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out_path = cli.json.clone();
    match run(cli) {
        Ok(rep) => {
            let mut text = rep.text;
            text.push('\n');
            match out_path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(if rep.negative { 2 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
