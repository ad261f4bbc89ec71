//! Command-line front end: worked examples, transforms, verification, positivity,
//! plot sampling, seed sweeps and the 1D chain.
//!
//! Exit statuses: 0 success, 1 verified-false or refuted, 2 usage or input error,
//! 3 inconclusive.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use moutard_core::analysis::{
    certify_sign_definite, global_positivity, numeric_residual, BranchAndBound, Positivity,
    DEFAULT_MAX_BOXES, DEFAULT_MAX_DEPTH,
};
use moutard_core::construct::{double_transform, SeedPair};
use moutard_core::darboux1d::rational_chain;
use moutard_core::moutard::verify_solution;
use moutard_core::polyalg::{parse_rational, to_sci_string, BigRational, BivariatePoly, RationalFn};
use moutard_core::search::{example_report, sweep_with, to_json_lines, SeedFamily, SweepConfig};
use moutard_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "moutard", version, about = "Exact Moutard-transform constructions of 2D Schrödinger operators")]
pub struct Cli {
    /// Branch-and-bound depth limit.
    #[arg(long, global = true, env = "MOUTARD_MAX_DEPTH", default_value_t = DEFAULT_MAX_DEPTH)]
    pub max_depth: u32,
    /// Branch-and-bound box budget.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BOXES)]
    pub max_boxes: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Mixed,
    Conjugate,
    Independent,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce a worked example (1 or 2) and print the full report.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the double construction on a seed file for a given constant C.
    Transform {
        /// JSON seed pair: {"omega1": poly, "omega2": poly, "u0": rationalfn?}.
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check (−Δ + u)ψ = 0 symbolically, optionally with a finite-difference residual.
    Verify {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Points per side of the residual grid.
        #[arg(long)]
        grid: Option<usize>,
        /// Finite-difference step.
        #[arg(long, default_value = "1/100")]
        h: String,
        #[arg(long, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
        bounds: String,
    },
    /// Certify that a polynomial W has no real zeros.
    Positivity {
        #[arg(long)]
        w: PathBuf,
        /// Also accept W < 0 everywhere.
        #[arg(long)]
        either_sign: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a rational function on a uniform grid as CSV.
    Sample {
        #[arg(long)]
        function: PathBuf,
        /// xmin,xmax,ymin,ymax
        #[arg(long, default_value = "-5,5,-5,5", allow_hyphen_values = true)]
        bounds: String,
        /// Points per side.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep random seed pairs and print JSON-lines records.
    Search {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Mixed)]
        family: FamilyArg,
        #[arg(long, default_value_t = 5)]
        coefficient_bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the first n potentials of the 1D rational chain.
    Darboux1d {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed command with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            Error::InvariantViolated(_) | Error::NonPositiveLeadingForm => EXIT_FALSE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Byte offset of a 1-based line/column position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!(
            "{}: {e} (byte offset {})",
            path.display(),
            byte_offset(&text, e.line(), e.column())
        ))
    })
}

/// A rational function file, or a bare polynomial file.
fn read_function(path: &Path) -> Result<RationalFn, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if let Ok(f) = serde_json::from_str::<RationalFn>(&text) {
        return Ok(f);
    }
    match serde_json::from_str::<BivariatePoly>(&text) {
        Ok(p) => Ok(RationalFn::from(p)),
        Err(e) => Err(Failure::usage(format!(
            "{}: not a rational function or polynomial: {e} (byte offset {})",
            path.display(),
            byte_offset(&text, e.line(), e.column())
        ))),
    }
}

fn check_input(path: &Path) -> Result<(), Failure> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::usage(format!("{}: no such file", path.display())))
    }
}

fn check_output(path: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty());
        if let Some(dir) = parent {
            if !dir.is_dir() {
                return Err(Failure::usage(format!("{}: no such directory", dir.display())));
            }
        }
    }
    Ok(())
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(e.to_string())),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_q(s: &str, what: &str) -> Result<BigRational, Failure> {
    parse_rational(s.trim()).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

fn parse_bounds(s: &str) -> Result<[BigRational; 4], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::usage("bounds must be xmin,xmax,ymin,ymax"));
    }
    let q = [
        parse_q(parts[0], "xmin")?,
        parse_q(parts[1], "xmax")?,
        parse_q(parts[2], "ymin")?,
        parse_q(parts[3], "ymax")?,
    ];
    if q[0] >= q[1] || q[2] >= q[3] {
        return Err(Failure::usage("bounds must satisfy xmin < xmax and ymin < ymax"));
    }
    Ok(q)
}

/// `n` equally spaced rationals from `lo` to `hi` inclusive.
fn linspace(lo: &BigRational, hi: &BigRational, n: usize) -> Vec<BigRational> {
    let step = (hi - lo) / BigRational::from_integer(((n - 1) as i64).into());
    (0..n)
        .map(|i| lo + &step * BigRational::from_integer((i as i64).into()))
        .collect()
}

fn cmd_example(id: u8, out_path: &Option<PathBuf>, limits: BranchAndBound, out: &mut dyn Write) -> CmdResult {
    check_output(out_path)?;
    let report = example_report(id, limits)?;
    emit(out, out_path, &to_json(&report))?;
    Ok(EXIT_OK)
}

fn cmd_transform(seeds: &Path, c: &str, out_path: &Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    check_input(seeds)?;
    check_output(out_path)?;
    let c = parse_q(c, "C")?;
    let pair: SeedPair = read_json(seeds)?;
    let result = double_transform(&pair, &c)?;
    emit(out, out_path, &to_json(&result.bundle(true)))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyReport {
    symbolic: bool,
    numeric_residual: Option<f64>,
}

fn cmd_verify(
    u: &Path,
    psi: &Path,
    grid: Option<usize>,
    h: &str,
    bounds: &str,
    out: &mut dyn Write,
) -> CmdResult {
    check_input(u)?;
    check_input(psi)?;
    let h = parse_q(h, "h")?;
    let b = parse_bounds(bounds)?;
    if grid == Some(0) || grid == Some(1) {
        return Err(Failure::usage("grid must have at least 2 points per side"));
    }
    let u = read_function(u)?;
    let psi = read_function(psi)?;
    let symbolic = verify_solution(&u, &psi);
    let numeric = match grid {
        Some(n) => {
            let xs = linspace(&b[0], &b[1], n);
            let ys = linspace(&b[2], &b[3], n);
            let points: Vec<_> = xs
                .iter()
                .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
                .collect();
            Some(numeric_residual(&u, &psi, &points, &h)?)
        }
        None => None,
    };
    emit(
        out,
        &None,
        &to_json(&VerifyReport {
            symbolic,
            numeric_residual: numeric,
        }),
    )?;
    Ok(if symbolic { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_positivity(
    w: &Path,
    either_sign: bool,
    out_path: &Option<PathBuf>,
    limits: BranchAndBound,
    out: &mut dyn Write,
) -> CmdResult {
    check_input(w)?;
    check_output(out_path)?;
    let w: BivariatePoly = read_json(w)?;
    if w.is_zero() {
        return Err(Failure::usage("W is the zero polynomial"));
    }
    let outcome = if either_sign {
        certify_sign_definite(&w, limits).map(|(_, p)| p)
    } else {
        global_positivity(&w, limits)
    };
    let p = match outcome {
        Ok(p) => p,
        Err(Error::NonPositiveLeadingForm) => {
            emit(out, out_path, "{\"outcome\":\"refuted\",\"reason\":\"leading form is not positive definite\"}\n")?;
            return Ok(EXIT_FALSE);
        }
        Err(e) => return Err(e.into()),
    };
    emit(out, out_path, &to_json(&p))?;
    Ok(match p {
        Positivity::Certified(_) => EXIT_OK,
        Positivity::Refuted { .. } => EXIT_FALSE,
    })
}

fn cmd_sample(
    function: &Path,
    bounds: &str,
    resolution: usize,
    out_path: &Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    check_input(function)?;
    check_output(out_path)?;
    if resolution < 2 {
        return Err(Failure::usage("resolution must be at least 2"));
    }
    let b = parse_bounds(bounds)?;
    let f = read_function(function)?;
    let xs = linspace(&b[0], &b[1], resolution);
    let ys = linspace(&b[2], &b[3], resolution);
    let mut csv = String::from("x,y,value\n");
    let mut poles = 0usize;
    for x in &xs {
        for y in &ys {
            let value = match f.evaluate(x, y) {
                Some(v) => to_sci_string(&v, 17),
                None => {
                    poles += 1;
                    "nan".to_string()
                }
            };
            csv.push_str(&format!("{},{},{}\n", to_sci_string(x, 17), to_sci_string(y, 17), value));
        }
    }
    emit(out, out_path, &csv)?;
    if poles > 0 {
        let _ = writeln!(err, "warning: {poles} grid points lie on a pole");
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    degree: u32,
    trials: u64,
    seed: u64,
    family: FamilyArg,
    coefficient_bound: u32,
    out_path: &Option<PathBuf>,
    limits: BranchAndBound,
    out: &mut dyn Write,
) -> CmdResult {
    check_output(out_path)?;
    if coefficient_bound == 0 {
        return Err(Failure::usage("coefficient bound must be positive"));
    }
    let config = SweepConfig {
        family: match family {
            FamilyArg::Mixed => SeedFamily::Mixed,
            FamilyArg::Conjugate => SeedFamily::Conjugate,
            FamilyArg::Independent => SeedFamily::Independent,
        },
        coefficient_bound,
        limits,
        ..SweepConfig::default()
    };
    let records = sweep_with(degree, seed, trials, &config)?;
    emit(out, out_path, &to_json_lines(&records))?;
    Ok(EXIT_OK)
}

fn cmd_darboux1d(n: usize, out_path: &Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    check_output(out_path)?;
    let chain = rational_chain(n)?;
    emit(out, out_path, &to_json(&chain))?;
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let limits = BranchAndBound {
        max_depth: cli.max_depth,
        max_boxes: cli.max_boxes,
    };
    let result = match &cli.command {
        Command::Example { id, out: o } => cmd_example(*id, o, limits, out),
        Command::Transform { seeds, c, out: o } => cmd_transform(seeds, c, o, out),
        Command::Verify {
            u,
            psi,
            grid,
            h,
            bounds,
        } => cmd_verify(u, psi, *grid, h, bounds, out),
        Command::Positivity {
            w,
            either_sign,
            out: o,
        } => cmd_positivity(w, *either_sign, o, limits, out),
        Command::Sample {
            function,
            bounds,
            resolution,
            out: o,
        } => cmd_sample(function, bounds, *resolution, o, out, err),
        Command::Search {
            degree,
            trials,
            seed,
            family,
            coefficient_bound,
            out: o,
        } => cmd_search(*degree, *trials, *seed, *family, *coefficient_bound, o, limits, out),
        Command::Darboux1d { n, out: o } => cmd_darboux1d(*n, o, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            }
        }
    }
}
