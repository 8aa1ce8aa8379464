//! Command-line front end: single runs, sweeps, bound queries, and the
//! sparse-floor calculator.
//!
//! Exit codes: 0 on success, 1 for domain errors (including bad flags),
//! 2 for i/o failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use prga::bounds;
use prga::dictionary::{make_coherent_pair, CoherentPairSpec};
use prga::error::Error;
use prga::greedy::{run_prga, PowerSchedule};
use prga::harness::{
    self, grid_range, sweep_alpha, sweep_mu, SweepConfig, SweepMode,
};

#[derive(Parser)]
#[command(
    name = "prga",
    version,
    about = "Relaxed greedy sparse approximation with certified stagnation floors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single power-relaxed greedy trace and emit it as CSV.
    Run {
        /// Step-size exponent (alpha = 1 is the classical schedule).
        #[arg(long)]
        alpha: f64,
        /// Coherence of the two constructed atoms, in [0, 1).
        #[arg(long)]
        mu: f64,
        /// Mixture weight of the target, in (0, 1/2).
        #[arg(long, default_value_t = 0.25)]
        b: f64,
        /// Ambient dimension.
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Number of iterations.
        #[arg(long, default_value_t = 800)]
        iters: usize,
        /// Trace CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the coherence grid at fixed exponents (minimum residual per cell).
    SweepMu {
        /// Comma-separated exponents, one empirical series each.
        #[arg(long, value_delimiter = ',', default_value = "1.1,1.5")]
        alphas: Vec<f64>,
        /// Coherence grid as start:stop:step, endpoints included.
        #[arg(long, default_value = "0:0.95:0.05")]
        mu_grid: String,
        #[arg(long, default_value_t = 0.25)]
        b: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 800)]
        iters: usize,
        /// Sweep table destination.
        #[arg(long)]
        out_csv: PathBuf,
        /// Optional chart destination.
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Sweep the exponent grid at fixed coherence (final residual per cell).
    SweepAlpha {
        /// Coherence of the constructed pair.
        #[arg(long, default_value_t = 0.2)]
        mu: f64,
        /// Exponent grid as start:stop:step, endpoints included.
        #[arg(long, default_value = "1.1:2.0:0.1")]
        alpha_grid: String,
        #[arg(long, default_value_t = 0.25)]
        b: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 800)]
        iters: usize,
        /// Sweep table destination.
        #[arg(long)]
        out_csv: PathBuf,
        /// Optional chart destination.
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Print the certified product value and the closed-form floors.
    Bound {
        /// Step-size exponent; must exceed 1.
        #[arg(long)]
        alpha: f64,
        /// Coherence, in [0, 1).
        #[arg(long)]
        mu: f64,
        /// Mixture weight, in (0, 1/2).
        #[arg(long)]
        b: f64,
        /// Certification target for the log-domain truncation error.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Print the s-sparse Euclidean residual floor.
    SparseFloor {
        /// Number of atoms in the span.
        #[arg(long)]
        s: usize,
        /// Pairwise coherence of the span; must stay below 1/(s-1).
        #[arg(long)]
        mu_s: f64,
        /// Atomic norm of the target.
        #[arg(long)]
        y_atomic: f64,
        /// Atomic norm of the iterate.
        #[arg(long)]
        f_atomic: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version are successes; anything else is a usage or
            // domain error.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run {
            alpha,
            mu,
            b,
            n,
            iters,
            out,
        } => {
            let spec = CoherentPairSpec::new(mu, n, b)?;
            let schedule = PowerSchedule::new(alpha)?;
            let (dict, target) = make_coherent_pair(&spec)?;
            let trace = run_prga(&dict, &target, &schedule, iters)?;
            match out {
                Some(path) => harness::write_trace_csv(&trace, &path)?,
                None => print!("{}", harness::trace_csv(&trace)),
            }
            Ok(())
        }
        Command::SweepMu {
            alphas,
            mu_grid,
            b,
            n,
            iters,
            out_csv,
            out_svg,
        } => {
            let config = SweepConfig {
                mode: SweepMode::Mu,
                mu_grid: parse_grid(&mu_grid)?,
                alpha_grid: alphas,
                b,
                ambient_dim: n,
                iterations: iters,
                csv_path: Some(out_csv),
                svg_path: out_svg,
            };
            let cells = sweep_mu(&config)?;
            write_outputs(&config, &cells)
        }
        Command::SweepAlpha {
            mu,
            alpha_grid,
            b,
            n,
            iters,
            out_csv,
            out_svg,
        } => {
            let config = SweepConfig {
                mode: SweepMode::Alpha,
                mu_grid: vec![mu],
                alpha_grid: parse_grid(&alpha_grid)?,
                b,
                ambient_dim: n,
                iterations: iters,
                csv_path: Some(out_csv),
                svg_path: out_svg,
            };
            let cells = sweep_alpha(&config)?;
            write_outputs(&config, &cells)
        }
        Command::Bound { alpha, mu, b, tol } => {
            let report = bounds::theorem_floor_with_tol(mu, b, alpha, tol)?;
            println!("p_alpha={:.16e}", report.p_alpha.value);
            println!("tail_bound={:.3e}", report.p_alpha.tail_bound);
            println!("K={}", report.p_alpha.truncation);
            println!("theorem_floor={:.16e}", report.theorem_floor);
            if let Some(linear) = report.linear_floor {
                println!("linear_floor={linear:.16e}");
            }
            Ok(())
        }
        Command::SparseFloor {
            s,
            mu_s,
            y_atomic,
            f_atomic,
        } => {
            let floor = bounds::sparse_floor(s, mu_s, y_atomic, f_atomic)?;
            println!("sparse_floor={floor:.16e}");
            Ok(())
        }
    }
}

fn write_outputs(config: &SweepConfig, cells: &[harness::SweepCell]) -> Result<(), Error> {
    if let Some(path) = &config.csv_path {
        harness::write_csv(cells, path)?;
        println!("wrote {} ({} cells)", path.display(), cells.len());
    }
    if let Some(path) = &config.svg_path {
        harness::render_svg(cells, path)?;
        println!("wrote {}", path.display());
    }
    print_tightness_summary(config, cells);
    Ok(())
}

/// How closely the empirical curves track the floors, per series; the bound
/// is an inequality, so this is informational only.
fn print_tightness_summary(config: &SweepConfig, cells: &[harness::SweepCell]) {
    let keys: &[f64] = match config.mode {
        SweepMode::Mu => &config.alpha_grid,
        SweepMode::Alpha => &config.mu_grid,
    };
    for &key in keys {
        let ratios: Vec<f64> = cells
            .iter()
            .filter(|cell| {
                let cell_key = match config.mode {
                    SweepMode::Mu => cell.alpha,
                    SweepMode::Alpha => cell.mu,
                };
                cell_key == key
            })
            .filter_map(|cell| cell.empirical_over_bound())
            .collect();
        if ratios.is_empty() {
            continue;
        }
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let label = match config.mode {
            SweepMode::Mu => "alpha",
            SweepMode::Alpha => "mu",
        };
        println!("{label}={key}: empirical/bound ratio in [{min:.4}, {max:.4}]");
    }
}

/// Parses `start:stop:step` into an inclusive grid.
fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidGrid {
            reason: format!("expected start:stop:step, got {text:?}"),
        });
    }
    let parse = |part: &str| {
        part.trim().parse::<f64>().map_err(|_| Error::InvalidGrid {
            reason: format!("{part:?} is not a number"),
        })
    };
    grid_range(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
}
