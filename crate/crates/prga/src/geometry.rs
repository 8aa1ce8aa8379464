//! Atomic (Minkowski) norm and dual norm on spans of linearly independent
//! atoms, plus the Gershgorin eigenvalue floor for their Gram matrices.
//!
//! The atomic norm is computed only on spans of linearly independent unit
//! atoms, where the coefficient representation is unique and the Minkowski
//! functional of the symmetric hull reduces to the l1 norm of those
//! coefficients. The general redundant-dictionary case would require a linear
//! program and is out of scope.

use crate::dictionary::{gram_matrix, mutual_coherence, Dictionary, UNIT_NORM_TOL};
use crate::error::{Error, Result};
use crate::linalg::{min_symmetric_eigenvalue, solve_spd};
use crate::vector::DenseVector;

/// Relative tolerance for the span-membership check in [`atomic_norm`].
pub const SPAN_TOL: f64 = 1e-9;

/// A set of `s` linearly independent unit atoms together with its Gram matrix
/// and the Gershgorin floor `1 - (s-1) mu_S` on the Gram spectrum.
///
/// Construction rejects sets whose pairwise coherence reaches `1/(s-1)`,
/// which is exactly the admissibility condition making the floor positive.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    atoms: Vec<DenseVector>,
    gram: Vec<f64>,
    min_eig_floor: f64,
}

impl SpanBasis {
    pub fn new(atoms: Vec<DenseVector>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let s = atoms.len();
        for (index, atom) in atoms.iter().enumerate() {
            let norm = atom.norm_l2();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NotUnitNorm { index, norm });
            }
        }
        let gram_rows = gram_matrix(&atoms)?;
        let mut gram = Vec::with_capacity(s * s);
        for row in &gram_rows {
            gram.extend_from_slice(row);
        }

        let mu_s = if s >= 2 {
            mutual_coherence(&atoms)?
        } else {
            0.0
        };
        let min_eig_floor = 1.0 - (s as f64 - 1.0) * mu_s;
        if min_eig_floor <= 0.0 {
            return Err(Error::CoherenceViolation {
                s,
                mu_s,
                limit: 1.0 / (s as f64 - 1.0),
            });
        }
        debug_assert!(
            min_symmetric_eigenvalue(s, &gram) >= min_eig_floor - 1e-10,
            "Gershgorin floor exceeds the true minimum Gram eigenvalue"
        );
        Ok(Self {
            atoms,
            gram,
            min_eig_floor,
        })
    }

    pub fn from_dictionary(dict: &Dictionary) -> Result<Self> {
        Self::new(dict.atoms().to_vec())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[DenseVector] {
        &self.atoms
    }

    /// Row-major `s x s` Gram matrix.
    pub fn gram(&self) -> &[f64] {
        &self.gram
    }

    pub fn min_eig_floor(&self) -> f64 {
        self.min_eig_floor
    }

    /// Unique coefficients `a` with `u = sum a_j x_j`, obtained from the Gram
    /// system. Rejects vectors that are detectably outside the span.
    pub fn span_coefficients(&self, u: &DenseVector) -> Result<Vec<f64>> {
        let s = self.atoms.len();
        let dim = self.atoms[0].dim();
        if u.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: u.dim(),
            });
        }
        let rhs: Vec<f64> = self.atoms.iter().map(|x| x.dot(u)).collect();
        let coeffs = solve_spd(s, &self.gram, &rhs).ok_or(Error::SingularGram)?;

        let mut projection = DenseVector::zeros(dim)?;
        for (a, x) in coeffs.iter().zip(&self.atoms) {
            projection = projection.axpy(*a, x);
        }
        let residual = u.sub(&projection).norm_l2();
        let scale = u.norm_l2();
        if residual > SPAN_TOL * scale {
            return Err(Error::OutOfSpan {
                relative_error: if scale > 0.0 { residual / scale } else { residual },
            });
        }
        Ok(coeffs)
    }
}

/// Atomic norm of `u` relative to the symmetric hull of `basis`: the l1 norm
/// of the unique span coefficients.
pub fn atomic_norm(u: &DenseVector, basis: &SpanBasis) -> Result<f64> {
    let coeffs = basis.span_coefficients(u)?;
    Ok(coeffs.iter().map(|a| a.abs()).sum())
}

/// Dual atomic norm: the maximum inner product of `v` against the symmetric
/// closure, i.e. `max_i |<v, x_i>|`.
pub fn dual_atomic_norm(v: &DenseVector, dict: &Dictionary) -> Result<f64> {
    if v.dim() != dict.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: dict.ambient_dim(),
            got: v.dim(),
        });
    }
    Ok(dict
        .atoms()
        .iter()
        .map(|x| v.dot(x).abs())
        .fold(0.0, f64::max))
}

/// The unit vector `(x_1 + x_2) / ||x_1 + x_2||` that pairs equally with both
/// atoms of a two-atom dictionary: `<v, x_i> = sqrt((1+mu)/2)`.
pub fn witness_vector(dict: &Dictionary) -> Result<DenseVector> {
    if dict.len() != 2 {
        return Err(Error::NotTwoAtoms { len: dict.len() });
    }
    let x1 = &dict.atoms()[0];
    let x2 = &dict.atoms()[1];
    let ip = x1.dot(x2);
    if ip < 0.0 {
        return Err(Error::NegativePairCoherence { ip });
    }
    let sum = x1.add(x2);
    // ||x_1 + x_2||^2 = 2(1 + mu) >= 2 once the coherence is non-negative.
    Ok(sum.scale(1.0 / sum.norm_l2()))
}

/// Gershgorin lower bound `1 - (s-1) mu_S` on the minimum eigenvalue of the
/// basis Gram matrix. Positive by construction of [`SpanBasis`].
pub fn gershgorin_floor(basis: &SpanBasis) -> f64 {
    basis.min_eig_floor()
}

/// True minimum eigenvalue of the basis Gram matrix, for cross-checking the
/// Gershgorin floor.
pub fn gram_min_eigenvalue(basis: &SpanBasis) -> f64 {
    min_symmetric_eigenvalue(basis.len(), basis.gram())
}
