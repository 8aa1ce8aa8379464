//! Tiny dense symmetric solvers for Gram systems (s is at most a few dozen).

/// Cholesky factor (lower triangular, row-major) of a symmetric
/// positive-definite matrix. Returns `None` when a pivot is not
/// strictly positive.
pub(crate) fn cholesky(s: usize, matrix: &[f64]) -> Option<Vec<f64>> {
    debug_assert_eq!(matrix.len(), s * s);
    let mut lower = vec![0.0; s * s];
    for i in 0..s {
        for j in 0..=i {
            let mut sum = matrix[i * s + j];
            for k in 0..j {
                sum -= lower[i * s + k] * lower[j * s + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                lower[i * s + i] = sum.sqrt();
            } else {
                lower[i * s + j] = sum / lower[j * s + j];
            }
        }
    }
    Some(lower)
}

/// Solves `A x = rhs` for symmetric positive-definite `A` via Cholesky.
pub(crate) fn solve_spd(s: usize, matrix: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    debug_assert_eq!(rhs.len(), s);
    let lower = cholesky(s, matrix)?;
    // Forward substitution: L y = rhs.
    let mut y = vec![0.0; s];
    for i in 0..s {
        let mut sum = rhs[i];
        for k in 0..i {
            sum -= lower[i * s + k] * y[k];
        }
        y[i] = sum / lower[i * s + i];
    }
    // Back substitution: L^T x = y.
    let mut x = vec![0.0; s];
    for i in (0..s).rev() {
        let mut sum = y[i];
        for k in (i + 1)..s {
            sum -= lower[k * s + i] * x[k];
        }
        x[i] = sum / lower[i * s + i];
    }
    Some(x)
}

/// Minimum eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
/// Intended for the small Gram matrices that show up here; convergence to
/// machine precision takes a handful of sweeps.
pub(crate) fn min_symmetric_eigenvalue(s: usize, matrix: &[f64]) -> f64 {
    debug_assert_eq!(matrix.len(), s * s);
    if s == 1 {
        return matrix[0];
    }
    let mut a = matrix.to_vec();
    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..s {
            for q in (p + 1)..s {
                off += a[p * s + q].abs();
            }
        }
        if off < 1e-14 {
            break;
        }
        for p in 0..s {
            for q in (p + 1)..s {
                let apq = a[p * s + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * s + p];
                let aqq = a[q * s + q];
                // Classical Jacobi angle: tan(2 theta) = 2 a_pq / (a_pp - a_qq).
                let theta = if (app - aqq).abs() < 1e-300 {
                    std::f64::consts::FRAC_PI_4 * apq.signum()
                } else {
                    0.5 * (2.0 * apq / (app - aqq)).atan()
                };
                let (sin, cos) = theta.sin_cos();
                for k in 0..s {
                    let akp = a[k * s + p];
                    let akq = a[k * s + q];
                    a[k * s + p] = cos * akp + sin * akq;
                    a[k * s + q] = -sin * akp + cos * akq;
                }
                for k in 0..s {
                    let apk = a[p * s + k];
                    let aqk = a[q * s + k];
                    a[p * s + k] = cos * apk + sin * aqk;
                    a[q * s + k] = -sin * apk + cos * aqk;
                }
            }
        }
    }
    (0..s)
        .map(|i| a[i * s + i])
        .fold(f64::INFINITY, f64::min)
}
