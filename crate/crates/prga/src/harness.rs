//! Sweep harness: runs the greedy iteration across coherence and exponent
//! grids and serializes the results as deterministic CSV tables and
//! self-contained SVG charts.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::bounds::theorem_floor;
use crate::dictionary::{make_coherent_pair, CoherentPairSpec};
use crate::error::{Error, Result};
use crate::greedy::{run_prga, PowerSchedule, RunTrace};
use crate::svg;

/// Which quantity the sweep varies (and which column headlines its chart).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Coherence sweep: minimum residual versus `mu`, one series per `alpha`.
    Mu,
    /// Exponent sweep: final residual versus `alpha`, one series per `mu`.
    Alpha,
}

impl SweepMode {
    pub fn label(self) -> &'static str {
        match self {
            SweepMode::Mu => "mu-sweep",
            SweepMode::Alpha => "alpha-sweep",
        }
    }
}

/// Full description of a sweep. The output paths are carried along for the
/// CLI's benefit; the compute entry points ignore them.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub mu_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub b: f64,
    pub ambient_dim: usize,
    pub iterations: usize,
    pub csv_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
}

impl SweepConfig {
    /// Coherence sweep defaults: `alpha` in {1.1, 1.5}, `mu` on a 0.05 grid
    /// over [0, 0.95], b = 0.25, n = 200, M = 800.
    pub fn default_mu_sweep() -> Self {
        Self {
            mode: SweepMode::Mu,
            mu_grid: grid_range(0.0, 0.95, 0.05).expect("static grid"),
            alpha_grid: vec![1.1, 1.5],
            b: 0.25,
            ambient_dim: 200,
            iterations: 800,
            csv_path: None,
            svg_path: None,
        }
    }

    /// Exponent sweep defaults: `mu` = 0.2, `alpha` on a 0.1 grid over
    /// [1.1, 2.0], b = 0.25, n = 200, M = 800.
    pub fn default_alpha_sweep() -> Self {
        Self {
            mode: SweepMode::Alpha,
            mu_grid: vec![0.2],
            alpha_grid: grid_range(1.1, 2.0, 0.1).expect("static grid"),
            b: 0.25,
            ambient_dim: 200,
            iterations: 800,
            csv_path: None,
            svg_path: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.mu_grid.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "mu grid is empty".into(),
            });
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::InvalidGrid {
                reason: "alpha grid is empty".into(),
            });
        }
        for &mu in &self.mu_grid {
            if !(0.0..1.0).contains(&mu) || !mu.is_finite() {
                return Err(Error::InvalidCoherence { mu });
            }
        }
        for &alpha in &self.alpha_grid {
            if !alpha.is_finite() || alpha <= 0.0 {
                return Err(Error::InvalidAlpha { alpha });
            }
        }
        Ok(())
    }
}

/// Result of one (alpha, mu) sweep cell.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub mode: SweepMode,
    pub alpha: f64,
    pub mu: f64,
    pub b: f64,
    pub ambient_dim: usize,
    pub iterations: usize,
    /// `min_{1 <= m <= M} ||r_m||_2`.
    pub min_residual: f64,
    /// `||r_M||_2`.
    pub final_residual: f64,
    /// Theoretical stagnation floor; present only for `alpha > 1`.
    pub lower_bound: Option<f64>,
}

impl SweepCell {
    /// How tightly the empirical curve hugs the floor: headline residual
    /// divided by the lower bound. Only the inequality `>= 1` is guaranteed;
    /// the ratio itself is reported for inspection.
    pub fn empirical_over_bound(&self) -> Option<f64> {
        let empirical = match self.mode {
            SweepMode::Mu => self.min_residual,
            SweepMode::Alpha => self.final_residual,
        };
        self.lower_bound.map(|bound| empirical / bound)
    }
}

/// Inclusive grid `start, start + step, ...` up to `stop` within a half-step
/// tolerance; the endpoint snaps to `stop` exactly when it lands within
/// rounding distance.
pub fn grid_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
        return Err(Error::InvalidGrid {
            reason: "grid bounds must be finite".into(),
        });
    }
    if step <= 0.0 {
        return Err(Error::InvalidGrid {
            reason: format!("step {step} must be positive"),
        });
    }
    if stop < start {
        return Err(Error::InvalidGrid {
            reason: format!("stop {stop} is below start {start}"),
        });
    }
    let mut values = Vec::new();
    for i in 0.. {
        let value = step.mul_add(i as f64, start);
        if value > stop + step / 2.0 {
            break;
        }
        values.push(if (value - stop).abs() <= step * 1e-9 {
            stop
        } else {
            value
        });
        if values.len() > 1_000_000 {
            return Err(Error::InvalidGrid {
                reason: "grid exceeds 1e6 points".into(),
            });
        }
    }
    if values.is_empty() {
        return Err(Error::InvalidGrid {
            reason: "grid produced no points".into(),
        });
    }
    Ok(values)
}

/// Runs the coherence sweep: every `(alpha, mu)` cell of the config.
pub fn sweep_mu(config: &SweepConfig) -> Result<Vec<SweepCell>> {
    if config.mode != SweepMode::Mu {
        return Err(Error::SweepModeMismatch {
            expected: SweepMode::Mu.label(),
            got: config.mode.label(),
        });
    }
    run_cells(config)
}

/// Runs the exponent sweep: every `(alpha, mu)` cell of the config.
pub fn sweep_alpha(config: &SweepConfig) -> Result<Vec<SweepCell>> {
    if config.mode != SweepMode::Alpha {
        return Err(Error::SweepModeMismatch {
            expected: SweepMode::Alpha.label(),
            got: config.mode.label(),
        });
    }
    run_cells(config)
}

/// Evaluates all cells in parallel and collects them in configuration order
/// (alpha outer, mu inner). Each cell is a pure function of its parameters,
/// so the output is bitwise independent of the thread count.
fn run_cells(config: &SweepConfig) -> Result<Vec<SweepCell>> {
    config.validate()?;
    let jobs: Vec<(f64, f64)> = config
        .alpha_grid
        .iter()
        .flat_map(|&alpha| config.mu_grid.iter().map(move |&mu| (alpha, mu)))
        .collect();
    let results: Vec<Result<SweepCell>> = jobs
        .par_iter()
        .map(|&(alpha, mu)| evaluate_cell(config, alpha, mu))
        .collect();
    results.into_iter().collect()
}

fn evaluate_cell(config: &SweepConfig, alpha: f64, mu: f64) -> Result<SweepCell> {
    let trace = run_cell_trace(config, alpha, mu)?;
    let lower_bound = if alpha > 1.0 {
        Some(theorem_floor(mu, config.b, alpha)?.theorem_floor)
    } else {
        None
    };
    Ok(SweepCell {
        mode: config.mode,
        alpha,
        mu,
        b: config.b,
        ambient_dim: config.ambient_dim,
        iterations: config.iterations,
        min_residual: trace.min_residual(),
        final_residual: trace.final_residual(),
        lower_bound,
    })
}

/// The greedy trace backing one sweep cell; exposed so tests can check the
/// per-iteration inequalities behind the aggregated cells.
pub fn run_cell_trace(config: &SweepConfig, alpha: f64, mu: f64) -> Result<RunTrace> {
    let spec = CoherentPairSpec::new(mu, config.ambient_dim, config.b)?;
    let (dict, target) = make_coherent_pair(&spec)?;
    let schedule = PowerSchedule::new(alpha)?;
    run_prga(&dict, &target, &schedule, config.iterations)
}

/// 17 significant digits, the shortest width that round-trips every f64.
pub(crate) fn fmt_g17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Sweep table as CSV: UTF-8, `\n` line endings, reals at 17 significant
/// digits, one row per cell, newline-terminated.
pub fn csv_string(cells: &[SweepCell]) -> String {
    let mut out = String::from("mode,alpha,mu,b,n,M,min_residual,final_residual,lower_bound\n");
    for cell in cells {
        out.push_str(cell.mode.label());
        out.push(',');
        out.push_str(&fmt_g17(cell.alpha));
        out.push(',');
        out.push_str(&fmt_g17(cell.mu));
        out.push(',');
        out.push_str(&fmt_g17(cell.b));
        out.push(',');
        out.push_str(&cell.ambient_dim.to_string());
        out.push(',');
        out.push_str(&cell.iterations.to_string());
        out.push(',');
        out.push_str(&fmt_g17(cell.min_residual));
        out.push(',');
        out.push_str(&fmt_g17(cell.final_residual));
        out.push(',');
        if let Some(bound) = cell.lower_bound {
            out.push_str(&fmt_g17(bound));
        }
        out.push('\n');
    }
    out
}

/// Per-iteration trace as CSV with header
/// `m,lambda,atom,sign,residual_l2,f_atomic,deficit_floor`.
pub fn trace_csv(trace: &RunTrace) -> String {
    let mut out = String::from("m,lambda,atom,sign,residual_l2,f_atomic,deficit_floor\n");
    for row in &trace.rows {
        out.push_str(&row.m.to_string());
        out.push(',');
        out.push_str(&fmt_g17(row.lambda));
        out.push(',');
        out.push_str(&row.selected.index.to_string());
        out.push(',');
        out.push_str(&row.selected.sign.as_i8().to_string());
        out.push(',');
        out.push_str(&fmt_g17(row.residual_l2));
        out.push(',');
        if let Some(value) = row.f_atomic {
            out.push_str(&fmt_g17(value));
        }
        out.push(',');
        if let Some(value) = row.deficit_floor {
            out.push_str(&fmt_g17(value));
        }
        out.push('\n');
    }
    out
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the sweep CSV; byte output is a pure function of the cells.
pub fn write_csv(cells: &[SweepCell], path: &Path) -> Result<()> {
    write_bytes(path, csv_string(cells).as_bytes())
}

/// Writes a per-iteration trace CSV.
pub fn write_trace_csv(trace: &RunTrace, path: &Path) -> Result<()> {
    write_bytes(path, trace_csv(trace).as_bytes())
}

/// Renders the sweep chart (solid empirical polylines, dashed bound
/// polylines) as a self-contained 800x600 SVG.
pub fn render_svg(cells: &[SweepCell], path: &Path) -> Result<()> {
    write_bytes(path, svg::svg_string(cells)?.as_bytes())
}

/// The SVG document as a string, for deterministic-output tests.
pub fn svg_string(cells: &[SweepCell]) -> Result<String> {
    svg::svg_string(cells)
}
