//! `kahlerfam` command-line tool.
//!
//! Payloads (JSON or CSV) go to stdout, diagnostics to stderr. Exit codes:
//! 0 success, 2 invalid input, 3 computation error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kahlerfam::classification::DEFAULT_CLASSIFY_TOL;
use kahlerfam::curvature::{DEFAULT_CONSTANCY_TOL, DEFAULT_GRID_POINTS};
use kahlerfam::equivalence::DEFAULT_EQUIV_TOL;
use kahlerfam::io::{curvature_csv, family_to_json, parse_family, to_json};
use kahlerfam::{
    binomial_family, classify_constant_curvature, curvature_profile,
    make_constant_curvature_family, reduce, reduced_equivalent_to_binomial,
    sphere_isometry_defect, ClassificationResult, CurvatureReport, FiniteExpFamily, GroupElement,
    Grid, TangentPoint,
};
use serde::Serialize;

const SPHERE_TOL: f64 = 1e-6;
const SPHERE_STEP: f64 = 1e-5;

#[derive(Parser)]
#[command(name = "kahlerfam", version, about = "Geometry of finite one-parameter exponential families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a family file: size, F range, level count and ψ, η, h at θ = 0.
    Info { family: PathBuf },
    /// Hessian scalar curvature on a uniform θ-grid.
    Curvature {
        family: PathBuf,
        /// Lower grid bound [default: -30 / (F_max - F_min)]
        #[arg(long, allow_negative_numbers = true)]
        lo: Option<f64>,
        /// Upper grid bound [default: 30 / (F_max - F_min)]
        #[arg(long, allow_negative_numbers = true)]
        hi: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        points: usize,
        /// Absolute constancy tolerance
        #[arg(long, default_value_t = DEFAULT_CONSTANCY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Exact constant-curvature test, with the binomial-equivalence check.
    Classify {
        family: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
    },
    /// Look for g with g · family2 = family1.
    Equiv {
        family1: PathBuf,
        family2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EQUIV_TOL)]
        tol: f64,
    },
    /// Write the constant-curvature family with the given parameters.
    Gen {
        #[arg(long)]
        p: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha0: f64,
        #[arg(long, allow_negative_numbers = true)]
        alphap: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        r: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        s: f64,
        /// Output file [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the binomial family B(n).
    Binomial {
        #[arg(long)]
        n: usize,
        /// Output file [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the sphere covering of T B(n) is a local isometry on a
    /// grid over [-2, 2] x [0, 4π). Exits 3 if the defect exceeds 1e-6.
    SphereCheck {
        #[arg(long)]
        n: usize,
        /// Points per axis
        #[arg(long, default_value_t = 5)]
        grid: usize,
    },
}

enum Failure {
    Invalid(String),
    Compute(String),
}

impl From<kahlerfam::Error> for Failure {
    fn from(e: kahlerfam::Error) -> Self {
        if e.is_validation() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Compute(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(path: &Path) -> Result<FiniteExpFamily, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_family(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit(text: String, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text + "\n")
                .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

#[derive(Serialize)]
struct Info {
    m: usize,
    #[serde(rename = "F_min")]
    f_min: f64,
    #[serde(rename = "F_max")]
    f_max: f64,
    levels: usize,
    psi0: f64,
    eta0: f64,
    fisher0: f64,
}

fn info(path: &Path) -> Outcome {
    let fam = load(path)?;
    let range = fam.f_range();
    let levels = reduce(&fam, kahlerfam::classification::DEFAULT_LEVEL_TOL)?.p() + 1;
    Ok(to_json(&Info {
        m: fam.size_m(),
        f_min: range.f_min,
        f_max: range.f_max,
        levels,
        psi0: fam.log_partition(0.0)?,
        eta0: fam.expectation_parameter(0.0)?,
        fisher0: fam.fisher_metric(0.0)?,
    }))
}

#[derive(Serialize)]
struct CurvatureJson<'a> {
    #[serde(flatten)]
    report: &'a CurvatureReport,
    certified_constant: bool,
}

fn curvature(
    path: &Path,
    lo: Option<f64>,
    hi: Option<f64>,
    points: usize,
    tol: f64,
    format: Format,
) -> Outcome {
    let fam = load(path)?;
    let default = Grid::default_for(&fam);
    let report = curvature_profile(
        &fam,
        lo.unwrap_or(default.lo),
        hi.unwrap_or(default.hi),
        points,
        tol,
    )?;
    let certified = classify_constant_curvature(&fam, DEFAULT_CLASSIFY_TOL)?.is_constant;
    if certified != report.is_constant {
        eprintln!(
            "note: grid verdict is_constant={} (max deviation {:e}) disagrees with the exact criterion ({}); the exact criterion is authoritative",
            report.is_constant, report.max_deviation, certified
        );
    }
    Ok(match format {
        Format::Csv => curvature_csv(&report).trim_end().to_string(),
        Format::Json => to_json(&CurvatureJson {
            report: &report,
            certified_constant: certified,
        }),
    })
}

#[derive(Serialize)]
struct Classification {
    #[serde(flatten)]
    result: ClassificationResult,
    binomial_equivalent: bool,
}

fn classify(path: &Path, tol: f64) -> Outcome {
    let fam = load(path)?;
    let result = classify_constant_curvature(&fam, tol)?;
    let binomial_equivalent = reduced_equivalent_to_binomial(&fam, tol)?;
    if binomial_equivalent != result.is_constant {
        eprintln!("note: binomial equivalence and the exact criterion disagree at tol {tol:e}");
    }
    Ok(to_json(&Classification {
        result,
        binomial_equivalent,
    }))
}

#[derive(Serialize)]
struct Equivalence {
    equivalent: bool,
    witness: Option<GroupElement>,
}

fn equiv(first: &Path, second: &Path, tol: f64) -> Outcome {
    let (a, b) = (load(first)?, load(second)?);
    let witness = kahlerfam::are_equivalent(&a, &b, tol)?;
    Ok(to_json(&Equivalence {
        equivalent: witness.is_some(),
        witness,
    }))
}

#[derive(Serialize)]
struct SphereReport {
    n: usize,
    grid: usize,
    max_defect: f64,
    tolerance: f64,
    ok: bool,
}

fn sphere_check(n: usize, grid: usize) -> Result<(String, bool), Failure> {
    if n < 1 {
        return Err(Failure::Invalid("--n must be at least 1".into()));
    }
    if grid < 2 {
        return Err(Failure::Invalid("--grid must be at least 2".into()));
    }
    let last = (grid - 1) as f64;
    let mut max_defect: f64 = 0.0;
    for i in 0..grid {
        let q = -2.0 + 4.0 * i as f64 / last;
        for j in 0..grid {
            let r = 4.0 * std::f64::consts::PI * j as f64 / grid as f64;
            let pt = TangentPoint::new(q, r)?;
            max_defect = max_defect.max(sphere_isometry_defect(n, pt, SPHERE_STEP)?);
        }
    }
    let ok = max_defect <= SPHERE_TOL;
    let text = to_json(&SphereReport {
        n,
        grid,
        max_defect,
        tolerance: SPHERE_TOL,
        ok,
    });
    Ok((text, ok))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Info { family } => info(&family),
        Command::Curvature {
            family,
            lo,
            hi,
            points,
            tol,
            format,
        } => curvature(&family, lo, hi, points, tol, format),
        Command::Classify { family, tol } => classify(&family, tol),
        Command::Equiv {
            family1,
            family2,
            tol,
        } => equiv(&family1, &family2, tol),
        Command::Gen {
            p,
            alpha0,
            alphap,
            r,
            s,
            out,
        } => {
            let fam = make_constant_curvature_family(p, alpha0, alphap, r, s)?;
            emit(family_to_json(&fam), out.as_deref())
        }
        Command::Binomial { n, out } => {
            let fam = binomial_family(n)
                .map_err(|_| Failure::Invalid("--n must be at least 1".into()))?;
            emit(family_to_json(&fam), out.as_deref())
        }
        Command::SphereCheck { n, grid } => {
            let (text, ok) = sphere_check(n, grid)?;
            if ok {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::Compute(format!(
                    "isometry defect exceeds {SPHERE_TOL:e}"
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
