//! Command-line front end.
//!
//! Exit codes: 0 success (including an unstable limit), 2 input error,
//! 3 I/O error, 4 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::angle::{Angle, TorusPoint};
use crate::clink::{parse_link, ColoredLink, LinkError};
use crate::conway_slope::{classify_slope, link_slope};
use crate::corrections::Side;
use crate::families::{FamilyName, FamilySpec};
use crate::hermitian::DEFAULT_TOL;
use crate::limits_verify::{directional_limit, predict_torres, run_suite, Schedule, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

pub const TOL_ENV: &str = "SIGTORUS_TOL";

#[derive(Debug, Parser)]
#[command(name = "sigtorus", version, about = "Multivariable signatures of colored links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signature and nullity at one point of the open torus.
    Eval {
        #[arg(long)]
        link: PathBuf,
        /// Comma-separated angles, "p/q" or decimal, one per color.
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Signature and nullity on an N×N grid of the open torus.
    Grid {
        #[arg(long)]
        link: PathBuf,
        #[arg(long)]
        resolution: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        heatmap: Option<PathBuf>,
        /// The two swept colors (1-based), for links with more than two colors.
        #[arg(long, default_value = "1,2")]
        axes: String,
        /// Angles of the colors that are not swept, in color order.
        #[arg(long, default_value = "")]
        fixed: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// One-sided limit of the signature as the first coordinate tends to 1.
    Limit {
        #[arg(long)]
        link: PathBuf,
        #[arg(long)]
        side: Side,
        #[arg(long = "omega-rest", default_value = "")]
        omega_rest: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Slope of the first color from the Conway data.
    Slope {
        #[arg(long)]
        link: PathBuf,
        #[arg(long = "omega-rest")]
        omega_rest: String,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long)]
        link: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write a built-in family member as a link file.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        param: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Torres-formula predictions at (1, ω′).
    Torres {
        #[arg(long)]
        link: PathBuf,
        #[arg(long = "omega-rest", default_value = "")]
        omega_rest: String,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(m: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: m.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        match e {
            LinkError::BoundaryPoint(j) => CliError::input(format!(
                "coordinate {j} equals 1, where the signature is not defined; use `sigtorus torres` for the predicted value"
            )),
            other => CliError::input(other.to_string()),
        }
    }
}

type CliResult = Result<i32, CliError>;

fn tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return check_tol(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(v) => {
            let t: f64 = v.trim().parse().map_err(|_| CliError::input(format!("{TOL_ENV}='{v}' is not a number")))?;
            check_tol(t)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn check_tol(t: f64) -> Result<f64, CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::input(format!("tolerance must be positive, got {t}")))
    }
}

fn load(path: &Path) -> Result<ColoredLink, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_link(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_point(s: &str, err: &mut dyn Write) -> Result<TorusPoint, CliError> {
    let p = TorusPoint::parse_list(s).map_err(|e| CliError::input(e.to_string()))?;
    if !p.is_exact() {
        let _ = writeln!(err, "warning: decimal angles disable exact degeneracy predicates");
    }
    Ok(p)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn cmd_eval(link: &Path, omega: &str, tol: Option<f64>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let tol = tolerance(tol)?;
    let link = load(link)?;
    let w = parse_point(omega, err)?;
    let dim = link.seifert().dim();
    let (s, e) = link.signature_nullity(&w, tol)?;
    let _ = writeln!(out, "sigma={s} eta={e} dim={dim}");
    Ok(EXIT_OK)
}

struct GridSpec<'a> {
    resolution: u32,
    out: &'a Path,
    heatmap: Option<&'a Path>,
    axes: &'a str,
    fixed: &'a str,
}

fn cmd_grid(link: &Path, spec: GridSpec<'_>, tol: Option<f64>, err: &mut dyn Write) -> CliResult {
    let tol = tolerance(tol)?;
    let link = load(link)?;
    let n = spec.resolution;
    if n < 2 {
        return Err(CliError::input("resolution must be at least 2"));
    }
    let mu = link.mu();
    if mu < 2 {
        return Err(CliError::input("grid needs a link with at least two colors"));
    }
    let axes: Vec<usize> = spec
        .axes
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::input(format!("invalid axes '{}'", spec.axes)))?;
    if axes.len() != 2 || axes[0] == axes[1] || axes.iter().any(|&a| a == 0 || a > mu) {
        return Err(CliError::input(format!("axes must name two distinct colors in 1..={mu}")));
    }
    let fixed = parse_point(spec.fixed, err)?;
    if fixed.len() != mu - 2 {
        return Err(CliError::input(format!("--fixed needs {} angle(s)", mu - 2)));
    }

    let point = |i: u32, j: u32| -> TorusPoint {
        let mut rest = fixed.angles().iter().copied();
        let angles = (1..=mu)
            .map(|c| {
                if c == axes[0] {
                    Angle::exact(i as i64, n as i64).expect("interior grid angle")
                } else if c == axes[1] {
                    Angle::exact(j as i64, n as i64).expect("interior grid angle")
                } else {
                    rest.next().expect("fixed angle count checked")
                }
            })
            .collect();
        TorusPoint::new(angles)
    };
    let cells: Vec<(u32, u32)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let values: Vec<(i64, i64)> =
        cells.par_iter().map(|&(i, j)| link.signature_nullity(&point(i, j), tol)).collect::<Result<_, _>>()?;

    let mut csv = String::from("theta1,theta2,sigma,eta\n");
    for (&(i, j), &(s, e)) in cells.iter().zip(&values) {
        csv.push_str(&format!("{},{},{s},{e}\n", f64::from(i) / f64::from(n), f64::from(j) / f64::from(n)));
    }
    write_file(spec.out, csv.as_bytes())?;

    if let Some(path) = spec.heatmap {
        let lo = values.iter().map(|v| v.0).min().unwrap_or(0);
        let hi = values.iter().map(|v| v.0).max().unwrap_or(0);
        let side = (n - 1) as usize;
        let mut pgm = format!("P2\n{side} {side}\n255\n");
        for row in 0..side {
            let j = side - row;
            let line: Vec<String> = (1..=side)
                .map(|i| {
                    let s = values[(i - 1) * side + (j - 1)].0;
                    let g = if hi == lo { 0 } else { ((s - lo) * 255 + (hi - lo) / 2) / (hi - lo) };
                    g.to_string()
                })
                .collect();
            pgm.push_str(&line.join(" "));
            pgm.push('\n');
        }
        write_file(path, pgm.as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn cmd_limit(
    link: &Path,
    side: Side,
    rest: &str,
    tol: Option<f64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    let tol = tolerance(tol)?;
    let link = load(link)?;
    let w = parse_point(rest, err)?;
    if w.len() + 1 != link.mu() {
        return Err(CliError::input(format!("--omega-rest needs {} angle(s)", link.mu() - 1)));
    }
    let r = directional_limit(&link, &w, side, &Schedule::default(), tol)?;
    match r.value {
        Some(v) => {
            let _ = writeln!(out, "limit={v} side={side}");
        }
        None => {
            let _ = writeln!(out, "status=unstable side={side}");
            for s in &r.samples {
                let _ = writeln!(out, "  theta1={} sigma={} eta={}", s.angle, s.sigma, s.eta);
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_slope(link: &Path, rest: &str, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let link = load(link)?;
    let w = parse_point(rest, err)?;
    let v = link_slope(&link, &w).map_err(|e| CliError::input(e.to_string()))?;
    let (s, eps) = classify_slope(v);
    let _ = writeln!(out, "slope={v} s={s} epsilon={eps}");
    Ok(EXIT_OK)
}

fn cmd_verify(
    link: &Path,
    suite: Suite,
    samples: usize,
    seed: u64,
    report: Option<&Path>,
    tol: Option<f64>,
    out: &mut dyn Write,
) -> CliResult {
    let cfg = VerifyConfig { tol: tolerance(tol)?, schedule: Schedule::default() };
    let link = load(link)?;
    let reports = run_suite(&link, suite, samples, seed, &cfg).map_err(|e| CliError::input(e.to_string()))?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    if let Some(path) = report {
        let json = serde_json::to_string_pretty(&reports).map_err(|e| CliError::input(e.to_string()))?;
        write_file(path, json.as_bytes())?;
    }
    let _ = writeln!(out, "suite={suite} checks={} failed={}", reports.len(), failed.len());
    for f in &failed {
        let _ = writeln!(out, "FAIL {} lhs={} rhs={} notes={:?}", f.check, f.lhs, f.rhs, f.notes);
    }
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_family(name: &str, param: i64, path: &Path, force: bool, out: &mut dyn Write) -> CliResult {
    let name: FamilyName = name.parse().map_err(|e: crate::families::FamilyError| CliError::input(e.to_string()))?;
    let spec = FamilySpec::new(name, param).map_err(|e| CliError::input(e.to_string()))?;
    if path.exists() && !force {
        return Err(CliError::input(format!("{} exists; pass --force to overwrite", path.display())));
    }
    let json = spec.build().to_json()?;
    write_file(path, json.as_bytes())?;
    let _ = writeln!(out, "wrote {name} {param} to {}", path.display());
    Ok(EXIT_OK)
}

fn cmd_torres(link: &Path, rest: &str, tol: Option<f64>, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let cfg = VerifyConfig { tol: tolerance(tol)?, schedule: Schedule::default() };
    let link = load(link)?;
    let w = parse_point(rest, err)?;
    let p = predict_torres(&link, &w, &cfg).map_err(|e| CliError::input(e.to_string()))?;
    let json = serde_json::to_string_pretty(&p).map_err(|e| CliError::input(e.to_string()))?;
    let _ = writeln!(out, "{json}");
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval { link, omega, tol } => cmd_eval(&link, &omega, tol, out, err),
        Command::Grid { link, resolution, out: csv, heatmap, axes, fixed, tol } => cmd_grid(
            &link,
            GridSpec { resolution, out: &csv, heatmap: heatmap.as_deref(), axes: &axes, fixed: &fixed },
            tol,
            err,
        ),
        Command::Limit { link, side, omega_rest, tol } => cmd_limit(&link, side, &omega_rest, tol, out, err),
        Command::Slope { link, omega_rest } => cmd_slope(&link, &omega_rest, out, err),
        Command::Verify { link, suite, samples, seed, report, tol } => {
            cmd_verify(&link, suite, samples, seed, report.as_deref(), tol, out)
        }
        Command::Family { name, param, out: path, force } => cmd_family(&name, param, &path, force, out),
        Command::Torres { link, omega_rest, tol } => cmd_torres(&link, &omega_rest, tol, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("sigtorus").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn family_then_eval() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("t.json");
        let fs = f.to_str().unwrap();
        assert_eq!(run_capture(&["family", "--name", "torus", "--param", "3", "--out", fs]).0, 0);
        let (code, out, _) = run_capture(&["eval", "--link", fs, "--omega", "1/6,1/6"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("sigma=1 eta=1"), "{out}");
        let (code, _, err) = run_capture(&["eval", "--link", fs, "--omega", "0,1/2"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("torres"), "{err}");
        assert_eq!(run_capture(&["family", "--name", "torus", "--param", "3", "--out", fs]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["family", "--name", "torus", "--param", "3", "--out", fs, "--force"]).0, 0);
    }

    #[test]
    fn missing_file_is_io_error() {
        let (code, _, _) = run_capture(&["eval", "--link", "/nonexistent/x.json", "--omega", "1/2,1/2"]);
        assert_eq!(code, EXIT_IO);
    }

    #[test]
    fn bad_arguments() {
        assert_eq!(run_capture(&["eval"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn negative_family_parameter() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("t.json");
        let fs = f.to_str().unwrap();
        assert_eq!(run_capture(&["family", "--name", "torus", "--param", "-3", "--out", fs]).0, 0);
        let (_, out, _) = run_capture(&["eval", "--link", fs, "--omega", "1/10,1/10"]);
        assert!(out.starts_with("sigma=-2 eta=0"), "{out}");
    }
}
