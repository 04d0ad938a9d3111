//! Thin scenario-runner binary over the `clx` library.
//!
//! The exit code reflects tool health only: refuted convergence cells and
//! failed stability trials are data and land in the report files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use clx::bornology::ProbeBudget;
use clx::geoset::GeoSet;
use clx::scenario::{self, Scenario};
use clx::space::Space;

#[derive(Parser)]
#[command(name = "clx", about = "Geometric set functionals and hyperspace convergence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a scenario's sequence against every convergence mode.
    Classify {
        #[arg(long)]
        scenario: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the scenario horizon.
        #[arg(long)]
        horizon: Option<usize>,
        /// Override the epsilon grid (comma separated, strictly decreasing).
        #[arg(long)]
        eps: Option<String>,
        /// Override the probe count.
        #[arg(long)]
        probes: Option<usize>,
        /// Override the output directory for the report files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print gap/excess/hausdorff (and uniform gap on a probe) for two sets.
    Functionals {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        probe: Option<PathBuf>,
    },
    /// Run the four bornology stability checkers.
    Stability {
        /// finite | bounded | all | strip(<axis>) | anchor(<path>) | custom(...)
        #[arg(long)]
        bornology: String,
        #[arg(long, default_value_t = 8)]
        probes: usize,
        #[arg(long, default_value_t = 20.0)]
        extent: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Euclidean dimension of the probe space.
        #[arg(long, default_value_t = 2)]
        dimension: usize,
    },
    /// Write a fixture's geosets plus a scenario config referencing them.
    Fixture {
        /// strip_lines | quadrant_bend
        name: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        extent: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run() -> clx::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            scenario,
            seed,
            horizon,
            eps,
            probes,
            out,
        } => {
            let mut sc = Scenario::from_path(&scenario)?;
            if let Some(s) = seed {
                sc.seed = s;
            }
            if let Some(h) = horizon {
                sc.horizon = Some(h);
            }
            if let Some(e) = eps {
                let grid: Result<Vec<f64>, _> =
                    e.split(',').map(|t| t.trim().parse::<f64>()).collect();
                sc.eps_grid = grid.map_err(|_| {
                    clx::Error::InvalidInput(format!("bad eps grid `{e}`"))
                })?;
            }
            if let Some(p) = probes {
                sc.probe_count = p;
            }
            sc.validate()?;
            let input_dir = scenario
                .parent()
                .map(|p| p.to_path_buf())
                .unwrap_or_else(|| PathBuf::from("."));
            let out_dir = out.unwrap_or_else(|| input_dir.clone());
            std::fs::create_dir_all(&out_dir).map_err(|source| clx::Error::Io {
                path: out_dir.display().to_string(),
                source,
            })?;
            let report = scenario::run_classify(&sc, &input_dir, &out_dir)?;
            for (mode, status) in &report.mode_summary {
                println!("{mode}: {status:?}");
            }
            println!("report: {}", out_dir.join(&sc.out_report).display());
        }
        Command::Functionals { a, b, probe } => {
            let a = GeoSet::read_file(&a)?;
            let b = GeoSet::read_file(&b)?;
            let probe = match probe {
                Some(p) => Some(GeoSet::read_file(&p)?),
                None => None,
            };
            print!("{}", scenario::run_functionals(&a, &b, probe.as_ref())?);
        }
        Command::Stability {
            bornology,
            probes,
            extent,
            seed,
            out,
            dimension,
        } => {
            let base = std::env::current_dir().map_err(|source| clx::Error::Io {
                path: ".".into(),
                source,
            })?;
            let b = scenario::parse_bornology(&bornology, &base)?;
            let space = Space::euclidean(dimension)?;
            let budget = ProbeBudget {
                count: probes,
                extent,
                density: 1.0,
            };
            let suite = scenario::run_stability(&b, &space, budget, seed, &out)?;
            for r in &suite.reports {
                println!(
                    "{}: {}/{} passed{}",
                    r.property,
                    r.passed,
                    r.trials,
                    r.counterexample
                        .as_ref()
                        .map(|c| format!(" (counterexample on {})", c.probe_id))
                        .unwrap_or_default()
                );
            }
        }
        Command::Fixture {
            name,
            n_max,
            extent,
            out,
        } => {
            let path = scenario::run_fixture_export(&name, n_max, extent, &out)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
