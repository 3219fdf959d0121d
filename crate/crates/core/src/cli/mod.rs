//! Command-line front end.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verification
//! fails, 2 on usage, domain or I/O errors. Negative positional numbers may
//! be given directly or after a `--` separator (`classify -- -1 -1`).

mod raster;
mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::holder_means::holder_mean;
use crate::hpq_theory::{classify, HpqParams};
use crate::lambert_w::lambert_w0;
use crate::verifier::{
    find_counterexamples, verify_region, ComparisonRecord, DEFAULT_BUDGET, DEFAULT_SAMPLES,
};

pub use raster::{
    RasterCell, RegionRaster, BOUNDARY_STROKE, CONCAVE_FILL, CONVEX_FILL, NEITHER_FILL, SVG_SIZE,
};
pub use selftest::{
    chain_failures, run_selftest, SelftestOptions, CHAIN_MARGIN, G_LEMMA_PAIRS, H_LEMMA_ORDERS,
    LEMMA_GRID, NEITHER_FIXTURES, REGION_AXIS, STRICT_SPREAD,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_WINDOW: [f64; 4] = [-3.0, 3.0, -3.0, 3.0];
pub const DEFAULT_STEP: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(
    name = "lambert-hpq",
    version,
    about = "Lambert W, Hölder means and the H_{p,q}-convexity classification of W"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate W or a Hölder mean
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
    /// Print convex, concave or neither for (p, q)
    #[command(allow_negative_numbers = true)]
    Classify { p: f64, q: f64 },
    /// Randomized check of the classification at (p, q)
    #[command(allow_negative_numbers = true)]
    Verify {
        p: f64,
        q: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the full report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Find witnesses of both failed inequality directions
    #[command(allow_negative_numbers = true)]
    Counterexample {
        p: f64,
        q: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Classify a grid of (p, q) and write CSV (and optionally SVG)
    #[command(allow_negative_numbers = true)]
    Raster {
        #[arg(long, num_args = 4, value_names = ["PMIN", "PMAX", "QMIN", "QMAX"], allow_negative_numbers = true)]
        window: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run every lemma, region, counterexample and chain check
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Deliberately expect (1, 1) to be convex, to exercise the failure path
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Subcommand)]
enum EvalCommand {
    /// W(z) for z >= 0
    W { z: f64 },
    /// H_p(r, s)
    #[command(allow_negative_numbers = true)]
    Mean { p: f64, r: f64, s: f64 },
}

/// Formats with at most 15 significant digits, shortest form.
fn display(x: f64) -> String {
    let rounded: f64 = format!("{x:.14e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn describe(rec: &ComparisonRecord) -> String {
    format!(
        "x={} y={} lhs={} rhs={} gap={:e}",
        rec.x, rec.y, rec.lhs, rec.rhs, rec.gap
    )
}

/// Parses `argv` (program name first) and runs the command, writing to the
/// process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(path.clone(), e))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { what } => {
            let value = match what {
                EvalCommand::W { z } => lambert_w0(z)?,
                EvalCommand::Mean { p, r, s } => holder_mean(p, r, s)?,
            };
            let _ = writeln!(out, "{}", display(value));
            Ok(EXIT_OK)
        }
        Command::Classify { p, q } => {
            let class = classify(HpqParams::new(p, q)?)?;
            let _ = writeln!(out, "{class}");
            Ok(EXIT_OK)
        }
        Command::Verify {
            p,
            q,
            samples,
            seed,
            json,
        } => {
            let report = verify_region(HpqParams::new(p, q)?, samples, seed)?;
            if let Some(path) = json {
                write_file(&path, &report.to_json())?;
            }
            let _ = writeln!(
                out,
                "{}: expected {}, {} significant positive / {} significant negative gaps of {} samples (seed {}), max |gap| {:e}",
                report.verdict,
                report.expected,
                report.n_gap_positive,
                report.n_gap_negative,
                report.n_samples,
                report.seed,
                report.max_abs_gap
            );
            Ok(if report.verdict.passed() {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
        Command::Counterexample { p, q, budget, seed } => {
            match find_counterexamples(HpqParams::new(p, q)?, budget, seed) {
                Ok(pair) => {
                    let _ = writeln!(
                        out,
                        "violates convexity: {}",
                        describe(&pair.violates_convexity)
                    );
                    let _ = writeln!(
                        out,
                        "violates concavity: {}",
                        describe(&pair.violates_concavity)
                    );
                    Ok(EXIT_OK)
                }
                Err(e @ Error::SearchExhausted { .. }) => {
                    let _ = writeln!(out, "{e}");
                    Ok(EXIT_FAIL)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Raster {
            window,
            step,
            out: csv_path,
            svg,
        } => {
            let w = window.unwrap_or_else(|| DEFAULT_WINDOW.to_vec());
            let raster = RegionRaster::build(w[0], w[1], w[2], w[3], step)?;
            write_file(&csv_path, &raster.to_csv())?;
            if let Some(svg_path) = svg {
                write_file(&svg_path, &raster.to_svg())?;
            }
            let _ = writeln!(
                out,
                "wrote {} cells to {}",
                raster.cells.len(),
                csv_path.display()
            );
            Ok(EXIT_OK)
        }
        Command::Selftest {
            samples,
            seed,
            inject_fault,
        } => {
            let opts = SelftestOptions {
                n_samples: samples,
                seed,
                inject_fault,
            };
            let ok = run_selftest(opts, out)?;
            let _ = writeln!(
                out,
                "{}",
                if ok {
                    "selftest passed"
                } else {
                    "selftest FAILED"
                }
            );
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}
