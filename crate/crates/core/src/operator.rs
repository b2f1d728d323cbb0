//! Dense complex-matrix arithmetic sized for multi-shot measurement spaces.
//!
//! Everything here works on small Hermitian matrices: effects live on a
//! d-dimensional system (d ≤ 3 in practice) and n-shot constraint operators
//! on its n-fold tensor power, which caps realistic sizes at 81×81. Storage
//! is dense row-major; the eigensolver is nalgebra's Hermitian decomposition
//! wrapped so that eigenvalues come back ascending and eigenvectors carry a
//! fixed global phase.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Unit-norm tolerance for [`StateVector`].
pub const NORM_TOL: f64 = 1e-12;

/// Per-unit-scale budget for eigendecomposition residuals (reconstruction
/// and orthonormality checks multiply this by `dim × max|entry|`).
pub const EIG_TOL: f64 = 1e-10;

/// A component must exceed this modulus to anchor the eigenvector phase.
const PHASE_CUTOFF: f64 = 1e-6;

/// Dense square complex matrix in row-major order.
///
/// The tensor-product basis convention everywhere in this crate: the first
/// factor is the slow index, so `a.tensor(&b)` places entry `a[i1,j1] *
/// b[i2,j2]` at row `i1 * b.dim + i2`, column `j1 * b.dim + j2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    /// The zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Operator::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Builds a matrix entry by entry from a closure over (row, column).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Operator { dim, entries }
    }

    /// Builds a matrix from nested rows; every row must have the same length
    /// as the number of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
        }
        Ok(Operator::from_fn(dim, |i, j| rows[i][j]))
    }

    /// Rank-1 projector |v⟩⟨v| onto a (not necessarily normalized) vector.
    pub fn projector(v: &[Complex64]) -> Self {
        Operator::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    /// Row-major view of all entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Adds `other` into `self` in place.
    pub fn add_in_place(&mut self, other: &Operator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot add a {}×{0} matrix to a {}×{1} one",
                other.dim, self.dim
            )));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(())
    }

    /// Returns `self + other`.
    pub fn add(&self, other: &Operator) -> Result<Operator> {
        let mut out = self.clone();
        out.add_in_place(other)?;
        Ok(out)
    }

    /// Returns `factor · self`.
    pub fn scale(&self, factor: f64) -> Operator {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Operator {
        Operator::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus; used as the scale for all tolerances.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |m[i][j] − conj(m[j][i])| over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Scale-aware threshold separating genuine zeros from numerical noise:
    /// `1e-9 × dim × max|entry|`.
    pub fn default_zero_tol(&self) -> f64 {
        1e-9 * self.dim as f64 * self.max_abs_entry()
    }

    fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        // Hermiticity budget: same scale-aware form as `default_zero_tol`,
        // floored so that near-zero matrices still accept roundoff dust.
        let tol = self.default_zero_tol().max(1e-12);
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Kronecker product; `self` is the slow (first) factor.
    pub fn tensor(&self, other: &Operator) -> Operator {
        let (da, db) = (self.dim, other.dim);
        Operator::from_fn(da * db, |i, j| {
            self.get(i / db, j / db) * other.get(i % db, j % db)
        })
    }

    /// Matrix-vector product `M v`.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "matvec dimension mismatch");
        let mut out = vec![Complex64::ZERO; self.dim];
        for i in 0..self.dim {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            out[i] = row.iter().zip(v).map(|(m, x)| m * x).sum();
        }
        out
    }

    /// ⟨ψ|M|ψ⟩ for Hermitian `M`; the (tiny) imaginary part is dropped.
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        let mv = self.matvec(psi.amplitudes());
        psi.amplitudes()
            .iter()
            .zip(&mv)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Full spectral decomposition of a Hermitian matrix, eigenvalues
    /// ascending, eigenvectors phase-fixed.
    pub fn eig_hermitian(&self) -> Result<EigenResult> {
        self.ensure_hermitian()?;
        // Symmetrize before handing off so roundoff in accumulated sums
        // cannot push the decomposition off the Hermitian manifold.
        let m = DMatrix::from_fn(self.dim, self.dim, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        });
        let eig = SymmetricEigen::new(m);

        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut eigenvalues = Vec::with_capacity(self.dim);
        let mut eigenvectors = Vec::with_capacity(self.dim);
        for &idx in &order {
            eigenvalues.push(eig.eigenvalues[idx]);
            let amplitudes: Vec<Complex64> = eig.eigenvectors.column(idx).iter().copied().collect();
            eigenvectors.push(StateVector::normalized(amplitudes)?.with_phase_convention());
        }
        Ok(EigenResult {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Orthonormal basis of the span of eigenvectors with eigenvalue
    /// ≤ `zero_tol`; empty when the matrix is strictly positive.
    ///
    /// The matrix must be positive semidefinite up to the same tolerance.
    pub fn kernel(&self, zero_tol: f64) -> Result<Vec<StateVector>> {
        let eig = self.eig_hermitian()?;
        if let Some(&min) = eig.eigenvalues.first() {
            if min < -zero_tol {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                });
            }
        }
        Ok(eig
            .eigenvalues
            .iter()
            .zip(eig.eigenvectors)
            .filter(|(value, _)| **value <= zero_tol)
            .map(|(_, vector)| vector)
            .collect())
    }

    /// True iff the smallest eigenvalue is ≥ −`tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        let eig = self.eig_hermitian()?;
        Ok(eig.min_eigenvalue() >= -tol)
    }
}

/// Unit vector in a finite-dimensional complex Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized (within [`NORM_TOL`]).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm_of(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm_of(&amplitudes);
        if norm < 1e-150 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// The computational basis vector |index⟩.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩| — global-phase-insensitive overlap.
    pub fn overlap_abs(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// Tensor product; `self` is the slow (first) factor.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector { amplitudes }
    }

    /// Multiplies by a global phase making the first component of modulus
    /// > 1e-6 real and positive, so equal states compare equal entrywise.
    pub fn with_phase_convention(mut self) -> Self {
        if let Some(anchor) = self.amplitudes.iter().find(|z| z.norm() > PHASE_CUTOFF) {
            let phase = anchor.conj() / anchor.norm();
            for z in &mut self.amplitudes {
                *z *= phase;
            }
        }
        self
    }
}

fn norm_of(amplitudes: &[Complex64]) -> f64 {
    amplitudes
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Spectral decomposition with ascending eigenvalues and orthonormal,
/// phase-fixed eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<StateVector>,
}

impl EigenResult {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}
