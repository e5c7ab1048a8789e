use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gfn::io::write_records;
use gfn::number::fmt_g17;
use gfn::selftest::run_selftest;
use gfn::{exit, resolve_config, run_sweep, Error, Result, SweepSpec, TOL_ENV};
use gfn_core::rotor::{ResponseParams, RotorSpec};
use gfn_core::{g, Complex64, GOrder, QuadratureConfig};

/// Evaluate the g-function g_m(z), sweep it, and compute rotor susceptibility spectra.
#[derive(Parser)]
#[command(name = "gfn", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `re im err` for g_m(re + i im)
    Eval {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, allow_negative_numbers = true)]
        im: f64,
        #[command(flatten)]
        tol: Tol,
        /// Print a JSON object instead
        #[arg(long)]
        json: bool,
    },
    /// g_m(r e^{-iθ}) on a uniform grid in r
    SweepR {
        #[arg(long)]
        m: u32,
        /// Fixed phase θ in radians
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[command(flatten)]
        grid: Grid,
    },
    /// g_m(r e^{-iθ}) on a uniform grid in θ
    SweepTheta {
        #[arg(long)]
        m: u32,
        /// Fixed modulus r
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[command(flatten)]
        grid: Grid,
    },
    /// Susceptibility ratio χ(ω + i/τ)/χ(0) on a uniform grid in ω
    Chi {
        #[arg(long, allow_negative_numbers = true)]
        i1: f64,
        #[arg(long, allow_negative_numbers = true)]
        i3: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long, allow_negative_numbers = true)]
        omega_lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        omega_hi: f64,
        #[arg(long)]
        steps: usize,
        /// Output file (.json for JSON, CSV otherwise)
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tol: Tol,
    },
    /// Run the identity suite; exit 1 on any failure
    Selftest {
        #[command(flatten)]
        tol: Tol,
    },
}

#[derive(Args)]
struct Tol {
    /// Absolute tolerance (relative is 100x); overrides GFN_TOL
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct Grid {
    #[arg(long, allow_negative_numbers = true)]
    lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    hi: f64,
    /// Number of grid points, at least 2
    #[arg(long)]
    steps: usize,
    /// Output file (.json for JSON, CSV otherwise)
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    tol: Tol,
}

fn config(tol: &Tol) -> Result<QuadratureConfig> {
    let env = std::env::var(TOL_ENV).ok();
    resolve_config(tol.tol, env.as_deref())
}

fn finite(name: &str, values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(Error::invalid(format!("--{name} must be finite (got {v})"))),
        None => Ok(()),
    }
}

fn sweep(spec: SweepSpec, out: &Path, cfg: &QuadratureConfig) -> Result<i32> {
    let records = run_sweep(&spec, cfg)?;
    write_records(&records, out)?;
    println!("{} {}", out.display(), records.len());
    Ok(exit::OK)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Eval {
            m,
            re,
            im,
            tol,
            json,
        } => {
            finite("re/--im", &[re, im])?;
            let cfg = config(&tol)?;
            let r = g(GOrder::new(m)?, Complex64::new(re, im), &cfg)?;
            let (re, im, err) = (r.value.re, r.value.im, r.abs_error_estimate);
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "m": m, "re": re, "im": im, "err": err })
                );
            } else {
                println!("{} {} {}", fmt_g17(re), fmt_g17(im), fmt_g17(err));
            }
            Ok(exit::OK)
        }
        Command::SweepR { m, theta, grid } => {
            finite("theta", &[theta])?;
            let cfg = config(&grid.tol)?;
            sweep(
                SweepSpec::radial(GOrder::new(m)?, theta, grid.lo, grid.hi, grid.steps),
                &grid.out,
                &cfg,
            )
        }
        Command::SweepTheta { m, r, grid } => {
            finite("r", &[r])?;
            let cfg = config(&grid.tol)?;
            sweep(
                SweepSpec::phase(GOrder::new(m)?, r, grid.lo, grid.hi, grid.steps),
                &grid.out,
                &cfg,
            )
        }
        Command::Chi {
            i1,
            i3,
            beta,
            tau,
            omega_lo,
            omega_hi,
            steps,
            out,
            tol,
        } => {
            let cfg = config(&tol)?;
            let rotor = RotorSpec::new(i1, i3, 1.0)?;
            let params = ResponseParams::new(beta, tau, 0.0)?;
            sweep(
                SweepSpec::chi(rotor, params, omega_lo, omega_hi, steps),
                &out,
                &cfg,
            )
        }
        Command::Selftest { tol } => {
            let cfg = config(&tol)?;
            let report = run_selftest(&cfg);
            print!("{}", report.render());
            if report.passed() {
                return Ok(exit::OK);
            }
            for family in report.families.iter().filter(|f| !f.failures.is_empty()) {
                for line in &family.failures {
                    eprintln!("gfn: {} failed at {line}", family.name);
                }
            }
            Ok(exit::SELFTEST_FAILED)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gfn: {e}");
            e.exit_code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
