//! `landau-cyl`: spectra, holonomies and symmetry checks for a charged
//! particle on a cylinder.

mod commands;
mod report;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use landau_cylinder::{Config, ConfigFile};

use report::{write_csv, RunReport, Tolerances};

#[derive(Parser)]
#[command(name = "landau-cyl", version, about)]
struct Cli {
    /// JSON configuration (keys B, R, q, rho, hbar, e, m).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the command's table (levels, profiles) as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Seed for randomized test states.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comma-separated `name=value` tolerance overrides.
    #[arg(long, global = true)]
    tolerance_overrides: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-mode Landau levels and their degeneracy over a mode window.
    Spectrum {
        #[arg(long, default_value = "-3,3", value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
    /// Holonomies of a potential along loops, by quadrature and in closed form.
    Holonomy {
        /// JSON `{ "zeta": …, "lambda": [...] }`; defaults to ζ = BRρ, Λ = 0.
        #[arg(long)]
        potential: Option<PathBuf>,
        /// JSON loop `{ "vertices": [[θ, y], …] }` or a list of them.
        #[arg(long = "loop")]
        loop_spec: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Gauge class labels; with two potentials, compares their holonomies.
    Classify {
        #[arg(long)]
        potential: Vec<PathBuf>,
        /// Pure `ζ dθ − BRy dθ` potentials to classify.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Vec<f64>,
    },
    /// Projective phase law and Hamiltonian commutation of U(φ) and V(k).
    SymmetryCheck {
        #[arg(long, default_value_t = PI, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        /// Axial length to test for admissibility.
        #[arg(long, allow_hyphen_values = true)]
        shift_length: Option<f64>,
        #[arg(long, default_value = "-2,2", value_parser = parse_window, allow_hyphen_values = true)]
        window: (i64, i64),
    },
    /// Cocycle laws, the cylinder obstruction, flux quantization and truncated representations.
    RepCheck {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long, default_value_t = 16)]
        cutoff: i64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Numeric vs analytic ground state of one angular mode.
    Groundstate {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 2001)]
        points: usize,
    },
    /// Smallest admissible axial translation in centimeters.
    StepSize {
        #[arg(long = "b-gauss")]
        b_gauss: f64,
        #[arg(long = "r-cm")]
        r_cm: f64,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected \"a,b\", got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty window {a},{b}"));
    }
    Ok((a, b))
}

fn load_config(path: Option<&PathBuf>) -> Result<(ConfigFile, Config)> {
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            serde_json::from_str::<ConfigFile>(&text).with_context(|| format!("malformed config {}", p.display()))?
        }
        None => ConfigFile::default(),
    };
    let config: Config = file.clone().into_config()?;
    Ok((ConfigFile::from(&config), config))
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let tol = Tolerances::default().with_overrides(cli.tolerance_overrides.as_deref())?;
    let (echo, cfg) = load_config(cli.config.as_ref())?;
    let csv = cli.csv.as_deref();
    let (name, echo, outcome) = match cli.command {
        Command::Spectrum { window, levels, points } => {
            let (outcome, rows) = commands::spectrum_cmd(&cfg, &tol, window, levels, points)?;
            if let Some(p) = csv {
                write_csv(p, rows)?;
            }
            ("spectrum", Some(echo), outcome)
        }
        Command::Holonomy { potential, loop_spec, samples } => {
            let a = commands::load_potential(&cfg, potential.as_deref())?;
            let loops = commands::load_loops(loop_spec.as_deref())?;
            ("holonomy", Some(echo), commands::holonomy_cmd(&cfg, &tol, &a, &loops, samples)?)
        }
        Command::Classify { potential, zeta } => {
            let mut pots = potential
                .iter()
                .map(|p| commands::load_potential(&cfg, Some(p)))
                .collect::<Result<Vec<_>>>()?;
            for z in zeta {
                pots.push(landau_cylinder::make_potential(&cfg, z, vec![])?);
            }
            if pots.is_empty() {
                pots.push(commands::load_potential(&cfg, None)?);
            }
            ("classify", Some(echo), commands::classify_cmd(&pots)?)
        }
        Command::SymmetryCheck { phi, k, shift_length, window } => (
            "symmetry-check",
            Some(echo),
            commands::symmetry_cmd(&cfg, &tol, cli.seed, phi, k, shift_length, window)?,
        ),
        Command::RepCheck { nu, cutoff, lambda } => {
            if cutoff < 1 {
                bail!("cutoff must be positive");
            }
            ("rep-check", None, commands::rep_check_cmd(&tol, cli.seed, nu, cutoff, lambda)?)
        }
        Command::Groundstate { n, points } => {
            let (outcome, rows) = commands::groundstate_cmd(&cfg, &tol, n, points)?;
            if let Some(p) = csv {
                write_csv(p, rows)?;
            }
            ("groundstate", Some(echo), outcome)
        }
        Command::StepSize { b_gauss, r_cm } => ("step-size", None, commands::step_size_cmd(b_gauss, r_cm)?),
    };
    let report = RunReport::new(name, echo, cli.seed, &tol, outcome.results, outcome.checks, started);
    report.write(cli.out.as_deref())?;
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} = {:e} (tolerance {:e})", c.name, c.value, c.tolerance);
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
