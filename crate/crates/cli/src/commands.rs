//! Subcommand definitions and their implementations.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use diagasym::asym::Analysis;
use diagasym::fan::{build_fan, build_polygon, ConeKind, DirVector};
use diagasym::harness::{check_convergence, convergence_table, horn_table, DEFAULT_K_LADDER};
use diagasym::model::{parse_rational, validate};
use diagasym::parfrac::{decompose, verify_decomposition};
use diagasym::series::{coeff, expand};
use diagasym::{GFModel, Rational};

use crate::error::{exit, CliError};
use crate::format::{self, sig12};
use crate::model_file::read_model;
use crate::svg;

#[derive(Parser, Debug)]
#[command(name = "diagasym", version, about = "Diagonal asymptotics of bivariate rational generating functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validation report, polygon, fan, partial fractions and one main term per cone.
    Analyze {
        model: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Exact Taylor coefficients as CSV.
    Expand {
        model: PathBuf,
        #[arg(long, default_value_t = 10)]
        xmax: usize,
        #[arg(long, default_value_t = 10)]
        ymax: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        force: bool,
    },
    /// A single exact coefficient f(x, y).
    Coeff {
        model: PathBuf,
        x: usize,
        y: usize,
        #[arg(long)]
        force: bool,
    },
    /// Partial-fraction constants A_ij as CSV.
    Decompose {
        model: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        force: bool,
    },
    /// Polygon and cone fan as text, CSV or SVG.
    Fan {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        force: bool,
    },
    /// Leading asymptotic term along a direction.
    Asymptotic {
        model: PathBuf,
        #[command(flatten)]
        dir: DirectionArgs,
        /// Accepted for symmetry with the other subcommands, but refused.
        #[arg(long)]
        force: bool,
    },
    /// Exact coefficients against the main term.
    Verify {
        model: PathBuf,
        #[command(flatten)]
        dir: DirectionArgs,
        #[command(flatten)]
        ks: KArgs,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Empirical Horn vectors against their limit.
    Horn {
        model: PathBuf,
        #[command(flatten)]
        dir: DirectionArgs,
        #[command(flatten)]
        ks: KArgs,
        #[arg(long, default_value_t = 0.02)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DirectionArgs {
    #[arg(short, value_parser = rational_arg, allow_hyphen_values = true)]
    pub p: Rational,
    #[arg(short, value_parser = rational_arg, allow_hyphen_values = true)]
    pub q: Rational,
}

#[derive(Args, Debug)]
pub struct KArgs {
    /// Largest k; the ladder is kmax/10, kmax/5, kmax/2, kmax.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "k")]
    pub kmax: Option<u64>,
    /// Explicit comma-separated k values.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Vec<u64>,
}

impl KArgs {
    fn ladder(&self) -> Vec<u64> {
        if !self.k.is_empty() {
            return self.k.clone();
        }
        match self.kmax {
            None => DEFAULT_K_LADDER.to_vec(),
            Some(kmax) => {
                let mut ks: Vec<u64> = [kmax / 10, kmax / 5, kmax / 2, kmax].into_iter().filter(|&k| k > 0).collect();
                ks.dedup();
                ks
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Csv,
    Svg,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Runs one subcommand, writing its primary output to `stdout`. Returns the
/// exit code for completed runs; `Err` for everything else.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze { model, force } => analyze(&model, force, stdout),
        Command::Expand { model, xmax, ymax, out, force } => {
            let m = load(&model, force)?;
            emit(&out, stdout, &format::expansion_csv(&expand(&m, xmax, ymax)))
        }
        Command::Coeff { model, x, y, force } => {
            let m = load(&model, force)?;
            writeln!(stdout, "{}", coeff(&m, x, y))?;
            Ok(exit::OK)
        }
        Command::Decompose { model, out, force } => {
            let m = load(&model, force)?;
            let constants = decompose(&m)?;
            let exact = verify_decomposition(&m, &constants);
            emit(&out, stdout, &format::constants_csv(&constants))?;
            eprintln!("verification: {}", if exact { "exact identity holds" } else { "FAILED" });
            Ok(if exact { exit::OK } else { exit::VERIFICATION })
        }
        Command::Fan { model, emit: kind, out, force } => {
            let m = load(&model, force)?;
            let polygon = build_polygon(&m)?;
            let fan = build_fan(&m)?;
            let text = match kind {
                Emit::Text => format!("polygon M\n{}\nfan\n{}", format::polygon_text(&polygon), format::fan_text(&fan)),
                Emit::Csv => format::fan_csv(&fan),
                Emit::Svg => svg::render(&polygon, &fan),
            };
            emit(&out, stdout, &text)
        }
        Command::Asymptotic { model, dir, force } => asymptotic(&model, &dir, force, stdout),
        Command::Verify { model, dir, ks, tol, csv, force } => {
            let m = load(&model, force)?;
            let d = direction(&dir)?;
            let table = convergence_table(&m, &d, &ks.ladder())?;
            writeln!(stdout, "{}", table.term)?;
            write!(stdout, "{}", format::convergence_text(&table.rows))?;
            if let Some(path) = csv {
                std::fs::write(path, format::convergence_csv(&table.rows))?;
            }
            if table.rows.len() < 3 {
                eprintln!("note: fewer than 3 rows, no pass/fail judgement");
                return Ok(exit::OK);
            }
            let report = check_convergence(&table, tol)?;
            writeln!(
                stdout,
                "regime {}: final |ratio-1| = {:.3e}, tolerance {}, trend {}: {}",
                report.regime,
                report.final_error,
                tol,
                if report.trend_monotone { "decreasing" } else { "not decreasing" },
                if report.pass { "PASS" } else { "FAIL" }
            )?;
            Ok(if report.pass { exit::OK } else { exit::VERIFICATION })
        }
        Command::Horn { model, dir, ks, tol, csv, force } => {
            let m = load(&model, force)?;
            let d = direction(&dir)?;
            let rows = horn_table(&m, &d, &ks.ladder())?;
            if let Some(r) = rows.first() {
                writeln!(stdout, "limit (1/z^, 1/w^) = ({}, {})", r.limit.0, r.limit.1)?;
            }
            write!(stdout, "{}", format::horn_text(&rows))?;
            if let Some(path) = csv {
                std::fs::write(path, format::horn_csv(&rows))?;
            }
            let pass = rows.last().is_some_and(|r| r.error <= tol);
            writeln!(stdout, "tolerance {tol}: {}", if pass { "PASS" } else { "FAIL" })?;
            Ok(if pass { exit::OK } else { exit::VERIFICATION })
        }
    }
}

fn emit(out: &OutputArgs, stdout: &mut dyn Write, text: &str) -> Result<u8, CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(exit::OK)
}

fn direction(args: &DirectionArgs) -> Result<DirVector, CliError> {
    Ok(DirVector::from_rationals(&args.p, &args.q)?)
}

/// Reads a model and enforces validation unless `force` is set.
fn load(path: &Path, force: bool) -> Result<GFModel, CliError> {
    let model = read_model(path)?;
    let report = validate(&model);
    if !report.all_pass() {
        if !force {
            return Err(CliError::Validation(Box::new(report)));
        }
        eprintln!("warning: model fails validation, continuing because of --force\n{report}");
    }
    Ok(model)
}

fn analyze(path: &Path, force: bool, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let model = read_model(path)?;
    let report = validate(&model);
    let mut out = String::new();
    match model.m() {
        1 => out.push_str("F = P / Q_1\n"),
        m => {
            let _ = writeln!(out, "F = P / (Q_1 ... Q_{m})");
        }
    }
    let _ = writeln!(out, "P = {}", model.numerator());
    for (i, f) in model.factors().iter().enumerate() {
        let _ = writeln!(out, "Q_{} = {}", i + 1, f.as_poly());
    }
    let _ = write!(out, "\nvalidation\n{report}");
    stdout.write_all(out.as_bytes())?;
    if !report.all_pass() && !force {
        eprintln!("error[ValidationFailed]: model fails validation (use --force to see the geometry anyway)");
        return Ok(exit::VALIDATION);
    }

    let analysis = Analysis::new(model)?;
    let mut out = String::new();
    let _ = write!(out, "\npolygon M\n{}", format::polygon_text(&analysis.polygon));
    let _ = write!(out, "\nfan\n{}", format::fan_text(&analysis.fan));
    if analysis.model.m() >= 2 {
        let _ = writeln!(out, "\npartial fractions");
        for ((i, j), a) in analysis.constants.iter() {
            let _ = writeln!(out, "A_{},{} = {a}", i + 1, j + 1);
        }
    }
    let _ = writeln!(out, "\nmain terms (one interior direction per cone)");
    for cone in &analysis.fan.cones {
        let [g1, g2] = &cone.generators;
        let d = DirVector::new(g1.p() + g2.p(), g1.q() + g2.q())?;
        match analysis.main_term(&d) {
            Ok(t) => {
                let _ = writeln!(out, "(p,q) = {d}: C = {}, {t}", constant_text(&t));
            }
            Err(e) => {
                let _ = writeln!(out, "(p,q) = {d}: {} [{}]", e, e.code());
            }
        }
    }
    stdout.write_all(out.as_bytes())?;
    Ok(exit::OK)
}

fn constant_text(t: &diagasym::asym::AsymptoticTerm) -> String {
    match &t.exact_constant {
        Some(c) => c.to_string(),
        None => sig12(t.constant),
    }
}

fn asymptotic(path: &Path, args: &DirectionArgs, force: bool, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let model = read_model(path)?;
    let report = validate(&model);
    if !report.all_pass() {
        let report = Box::new(report);
        return Err(if force { CliError::ForceRefused(report) } else { CliError::Validation(report) });
    }
    let d = direction(args)?;
    let t = Analysis::new(model)?.main_term(&d)?;
    let regime = match t.kind {
        ConeKind::Saddle(_) => "saddle",
        ConeKind::Vertex(..) => "vertex",
    };
    let mut out = String::new();
    let _ = writeln!(out, "direction: {}", t.direction);
    let _ = writeln!(out, "kind: {} ({regime})", t.kind);
    let _ = writeln!(out, "base: z^ = {}, w^ = {}", t.base.z, t.base.w);
    let _ = writeln!(out, "constant C: {}", constant_text(&t));
    if t.exact_constant.is_some() {
        let _ = writeln!(out, "constant C (decimal): {}", sig12(t.constant));
    }
    let _ = writeln!(out, "P(z^, w^): {}", t.numerator_value);
    let _ = writeln!(out, "term: {t}");
    stdout.write_all(out.as_bytes())?;
    Ok(exit::OK)
}
