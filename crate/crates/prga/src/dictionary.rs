//! Symmetric unit-norm dictionaries and the coherent two-atom construction.
//!
//! A dictionary stores only the positive generators `x_1, ..., x_p`; the
//! negated atoms of the symmetric closure `{±x_i}` are addressed through a
//! sign flag and never duplicated.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vector::DenseVector;

/// Unit-norm tolerance applied to every stored atom.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Sign flag selecting an atom or its negation from the symmetric closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Address of one element of the symmetric closure `{±x_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedAtomRef {
    pub index: usize,
    pub sign: Sign,
}

/// A finite symmetric dictionary of unit-norm atoms.
#[derive(Debug, Clone)]
pub struct Dictionary {
    atoms: Vec<DenseVector>,
    ambient_dim: usize,
}

impl Dictionary {
    /// Validates and stores the positive generators: non-empty, equal
    /// dimensions, Euclidean norm within [`UNIT_NORM_TOL`] of 1.
    pub fn new(atoms: Vec<DenseVector>) -> Result<Self> {
        let first = atoms.first().ok_or(Error::EmptyDictionary)?;
        let ambient_dim = first.dim();
        for (index, atom) in atoms.iter().enumerate() {
            if atom.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: atom.dim(),
                });
            }
            let norm = atom.norm_l2();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::NotUnitNorm { index, norm });
            }
        }
        Ok(Self { atoms, ambient_dim })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[DenseVector] {
        &self.atoms
    }

    /// Returns `sign * atoms[index]` as a fresh vector.
    pub fn atom(&self, atom_ref: SignedAtomRef) -> Result<DenseVector> {
        let stored = self
            .atoms
            .get(atom_ref.index)
            .ok_or(Error::AtomIndexOutOfRange {
                index: atom_ref.index,
                len: self.atoms.len(),
            })?;
        Ok(match atom_ref.sign {
            Sign::Plus => stored.clone(),
            Sign::Minus => stored.scale(-1.0),
        })
    }
}

/// Parameters of the coherent two-atom construction: two unit vectors with
/// prescribed coherence `mu` and the realizable target `y = (1-b)x_1 + b x_2`.
#[derive(Debug, Clone, Copy)]
pub struct CoherentPairSpec {
    pub mu: f64,
    pub ambient_dim: usize,
    pub b: f64,
}

impl CoherentPairSpec {
    pub fn new(mu: f64, ambient_dim: usize, b: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&mu) || !mu.is_finite() {
            return Err(Error::InvalidCoherence { mu });
        }
        if !(b > 0.0 && b < 0.5) || !b.is_finite() {
            return Err(Error::InvalidMixture { b });
        }
        if ambient_dim < 2 {
            return Err(Error::AmbientDimTooSmall { n: ambient_dim });
        }
        Ok(Self { mu, ambient_dim, b })
    }
}

/// Builds the two-atom dictionary `x_1 = e_1`, `x_2 = mu e_1 + sqrt(1-mu^2) e_2`
/// embedded in the first two canonical coordinates, together with the target
/// `y = (1-b) x_1 + b x_2`.
///
/// The embedding is deterministic so that every trace and CSV downstream is
/// reproducible bit for bit; coordinates beyond the first two are zero.
pub fn make_coherent_pair(spec: &CoherentPairSpec) -> Result<(Dictionary, DenseVector)> {
    let n = spec.ambient_dim;
    let mut x1 = vec![0.0; n];
    x1[0] = 1.0;
    let mut x2 = vec![0.0; n];
    x2[0] = spec.mu;
    x2[1] = (1.0 - spec.mu * spec.mu).sqrt();

    let x1 = DenseVector::new(x1)?;
    let x2 = DenseVector::new(x2)?;
    let target = x1.scale(1.0 - spec.b).add(&x2.scale(spec.b));
    let dict = Dictionary::new(vec![x1, x2])?;
    Ok((dict, target))
}

/// Same construction followed by a seeded random orthogonal rotation of the
/// whole configuration. Inner products are preserved, so this only exercises
/// ambient-dimension invariance; the default deterministic embedding is
/// [`make_coherent_pair`].
pub fn make_coherent_pair_rotated(
    spec: &CoherentPairSpec,
    seed: u64,
) -> Result<(Dictionary, DenseVector)> {
    let (dict, target) = make_coherent_pair(spec)?;
    let n = spec.ambient_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut vectors: Vec<Vec<f64>> = dict
        .atoms()
        .iter()
        .map(|a| a.as_slice().to_vec())
        .collect();
    vectors.push(target.as_slice().to_vec());

    // A product of random Givens rotations is orthogonal by construction and
    // cheap to apply without materializing an n x n matrix.
    for _ in 0..4 * n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (sin, cos) = theta.sin_cos();
        for v in vectors.iter_mut() {
            let (vi, vj) = (v[i], v[j]);
            v[i] = cos * vi - sin * vj;
            v[j] = sin * vi + cos * vj;
        }
    }

    let rotated_target = DenseVector::new(vectors.pop().expect("target present"))?;
    let atoms = vectors
        .into_iter()
        .map(DenseVector::new)
        .collect::<Result<Vec<_>>>()?;
    Ok((Dictionary::new(atoms)?, rotated_target))
}

/// Gram matrix `G[p][q] = <x_p, x_q>`, computed once for `p <= q` and
/// mirrored, so it is symmetric to machine equality.
pub fn gram_matrix(atoms: &[DenseVector]) -> Result<Vec<Vec<f64>>> {
    let first = atoms.first().ok_or(Error::EmptyDictionary)?;
    let dim = first.dim();
    for atom in atoms {
        if atom.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: atom.dim(),
            });
        }
    }
    let s = atoms.len();
    let mut gram = vec![vec![0.0; s]; s];
    for p in 0..s {
        for q in p..s {
            let ip = atoms[p].dot(&atoms[q]);
            gram[p][q] = ip;
            gram[q][p] = ip;
        }
    }
    Ok(gram)
}

/// Maximum absolute off-diagonal Gram entry over all atom pairs.
pub fn mutual_coherence(atoms: &[DenseVector]) -> Result<f64> {
    if atoms.len() < 2 {
        return Err(Error::TooFewAtoms { got: atoms.len() });
    }
    let gram = gram_matrix(atoms)?;
    let mut max = 0.0f64;
    for (p, row) in gram.iter().enumerate() {
        for entry in &row[p + 1..] {
            max = max.max(entry.abs());
        }
    }
    Ok(max)
}
