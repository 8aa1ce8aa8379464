//! The relaxed greedy iterations: greedy atom selection followed by a convex
//! relaxation step.
//!
//! Step 1 is special for both variants: it projects, setting
//! `f_1 = <r_0, g_1> g_1`, and the recorded `lambda` for that row is the
//! projection coefficient rather than a schedule value. From step 2 onwards
//! the update is `f_m = (1 - lambda_m) f_{m-1} + lambda_m g_m` with
//! `lambda_m = m^(-alpha)`; the classical variant is exactly `alpha = 1`.

use crate::bounds::PartialProduct;
use crate::dictionary::{Dictionary, Sign, SignedAtomRef};
use crate::error::{Error, Result};
use crate::geometry::SpanBasis;
use crate::vector::DenseVector;

/// Residual level treated as an exact hit; beyond it the trace is padded
/// with constant rows so row counts stay uniform across sweep cells.
pub const ZERO_RESIDUAL_EPS: f64 = 1e-15;

/// The step-size rule `lambda_m = m^(-alpha)` for `m >= 2`. The value at
/// `m = 1` is never consumed because step 1 uses the projection rule.
#[derive(Debug, Clone, Copy)]
pub struct PowerSchedule {
    alpha: f64,
}

impl PowerSchedule {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidAlpha { alpha });
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn step_size(&self, m: usize) -> f64 {
        debug_assert!(m >= 2, "step 1 uses the projection rule");
        (m as f64).powf(-self.alpha)
    }
}

/// One iteration of a greedy run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub m: usize,
    /// Step size actually applied; at `m = 1` this is the projection
    /// coefficient `<r_0, g_1>`.
    pub lambda: f64,
    pub selected: SignedAtomRef,
    pub residual_l2: f64,
    /// Atomic norm of the iterate; tracked for two-atom runs only, where the
    /// span coefficients are maintained exactly alongside the dense iterate.
    pub f_atomic: Option<f64>,
    /// Right side of the deficit-product inequality,
    /// `u_1 prod_{k=2}^m (1 - lambda_k)`; two-atom runs only.
    pub deficit_floor: Option<f64>,
}

/// Full per-iteration record of a greedy run.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub alpha: f64,
    /// Coherence `|<x_1, x_2>|`, echoed for two-atom dictionaries.
    pub mu: Option<f64>,
    /// Second span coefficient of the target, echoed when the target lies in
    /// a two-atom span (the mixture weight of the coherent-pair target).
    pub b: Option<f64>,
    pub ambient_dim: usize,
    pub iterations: usize,
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn min_residual(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.residual_l2)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn final_residual(&self) -> f64 {
        self.rows.last().map(|r| r.residual_l2).unwrap_or(0.0)
    }
}

/// Selects the element of the symmetric closure maximizing `<residual, g>`,
/// returning it with the attained inner product (non-negative by symmetry).
/// Ties break to the lowest atom index, then to the positive sign.
pub fn greedy_select(
    residual: &DenseVector,
    dict: &Dictionary,
) -> Result<(SignedAtomRef, f64)> {
    if residual.dim() != dict.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: dict.ambient_dim(),
            got: residual.dim(),
        });
    }
    let mut best_value = f64::NEG_INFINITY;
    let mut best = SignedAtomRef {
        index: 0,
        sign: Sign::Plus,
    };
    for (index, atom) in dict.atoms().iter().enumerate() {
        let ip = residual.dot(atom);
        let value = ip.abs();
        let sign = if ip < 0.0 { Sign::Minus } else { Sign::Plus };
        if value > best_value {
            best_value = value;
            best = SignedAtomRef { index, sign };
        }
    }
    Ok((best, best_value))
}

/// Exact span bookkeeping for two-atom runs: the iterate's coefficients in
/// the atom basis, from which the atomic norm is an l1 sum.
struct PairTracker {
    coeffs: [f64; 2],
    deficit_start: f64,
    product: PartialProduct,
}

/// Runs the power-relaxed iteration for `iterations` steps and records the
/// full trace.
pub fn run_prga(
    dict: &Dictionary,
    target: &DenseVector,
    schedule: &PowerSchedule,
    iterations: usize,
) -> Result<RunTrace> {
    if iterations < 1 {
        return Err(Error::InvalidIterations);
    }
    if target.dim() != dict.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: dict.ambient_dim(),
            got: target.dim(),
        });
    }

    let (mu, b) = pair_echo(dict, target);
    let track_pair = dict.len() == 2 && mu.map(|m| m < 1.0).unwrap_or(false);

    let mut rows = Vec::with_capacity(iterations);
    let mut iterate = DenseVector::zeros(dict.ambient_dim())?;
    let mut tracker: Option<PairTracker> = None;

    for m in 1..=iterations {
        let residual = target.sub(&iterate);
        let (selected, correlation) = greedy_select(&residual, dict)?;
        let atom = dict.atom(selected)?;

        let lambda = if m == 1 {
            // `atom` already carries the selected sign, so the projection
            // scales it by the plain correlation coefficient.
            let coefficient = correlation;
            iterate = atom.scale(coefficient);
            if track_pair {
                let mut coeffs = [0.0; 2];
                coeffs[selected.index] = coefficient * selected.sign.as_f64();
                let f_atomic: f64 = coeffs.iter().map(|c| c.abs()).sum();
                tracker = Some(PairTracker {
                    coeffs,
                    deficit_start: 1.0 - f_atomic,
                    product: PartialProduct::new(schedule.alpha())?,
                });
            }
            coefficient
        } else {
            let lambda = schedule.step_size(m);
            iterate = iterate.scale(1.0 - lambda).axpy(lambda, &atom);
            if let Some(t) = tracker.as_mut() {
                t.coeffs[0] *= 1.0 - lambda;
                t.coeffs[1] *= 1.0 - lambda;
                t.coeffs[selected.index] += lambda * selected.sign.as_f64();
                t.product.push_next();
            }
            lambda
        };

        let residual_l2 = target.sub(&iterate).norm_l2();
        let (f_atomic, deficit_floor) = match tracker.as_ref() {
            Some(t) => (
                Some(t.coeffs.iter().map(|c| c.abs()).sum()),
                Some(t.deficit_start * t.product.value()),
            ),
            None => (None, None),
        };
        rows.push(TraceRow {
            m,
            lambda,
            selected,
            residual_l2,
            f_atomic,
            deficit_floor,
        });

        if residual_l2 < ZERO_RESIDUAL_EPS && m < iterations {
            let last = rows.last().expect("row just pushed").clone();
            for pad_m in (m + 1)..=iterations {
                rows.push(TraceRow { m: pad_m, ..last.clone() });
            }
            break;
        }
    }

    Ok(RunTrace {
        alpha: schedule.alpha(),
        mu,
        b,
        ambient_dim: dict.ambient_dim(),
        iterations,
        rows,
    })
}

/// The classical relaxed iteration with step `1/m`: exactly the power
/// schedule at `alpha = 1`, so the trace is bit-identical to that run.
pub fn run_rga(dict: &Dictionary, target: &DenseVector, iterations: usize) -> Result<RunTrace> {
    let schedule = PowerSchedule::new(1.0)?;
    run_prga(dict, target, &schedule, iterations)
}

/// Coherence and mixture echoes for two-atom configurations.
fn pair_echo(dict: &Dictionary, target: &DenseVector) -> (Option<f64>, Option<f64>) {
    if dict.len() != 2 {
        return (None, None);
    }
    let mu = dict.atoms()[0].dot(&dict.atoms()[1]).abs();
    let b = SpanBasis::from_dictionary(dict)
        .ok()
        .and_then(|basis| basis.span_coefficients(target).ok())
        .map(|coeffs| coeffs[1]);
    (Some(mu), b)
}
