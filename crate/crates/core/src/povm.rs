//! Finite-outcome observables (POVMs) and their equivalence up to outcome
//! relabeling.
//!
//! An observable with k outcomes on a d-dimensional system is a list of k
//! positive semidefinite effects summing to the identity; the probability
//! of outcome j in state ρ is Tr[ρ·effect_j]. Outcome labels are opaque —
//! an apparatus whose lights are permuted implements the *same* observable —
//! so comparison is up to a permutation of effects.
//!
//! Qubit two-outcome observables are parametrized by a Bloch vector `a`
//! with ‖a‖ ≤ 1 via effects ½(I ± a·σ); the observable is sharp (projective)
//! exactly when ‖a‖ = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::outcomes::Permutation;

/// Deviation allowed between Σ effects and the identity.
pub const POVM_NORM_TOL: f64 = 1e-9;

/// Entrywise tolerance for the relabeling-equivalence comparison.
pub const EQUIV_TOL: f64 = 1e-9;

/// Cap on the outcome count for the brute-force permutation search.
pub const MAX_EQUIV_OUTCOMES: usize = 8;

/// A finite-outcome observable: k labeled effects on a d-dimensional system.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    outcomes: Vec<String>,
    effects: Vec<Operator>,
}

impl Povm {
    /// Builds an observable from effects, labeling outcomes "w1", "w2", ….
    ///
    /// Only structure is checked here (nonempty, equal dimensions);
    /// positivity and normalization are the business of [`Povm::validate`],
    /// so that malformed observables can still be constructed and reported.
    pub fn new(effects: Vec<Operator>) -> Result<Self> {
        let labels = (1..=effects.len()).map(|j| format!("w{j}")).collect();
        Povm::with_labels(effects, labels)
    }

    /// Builds an observable with explicit outcome labels.
    pub fn with_labels(effects: Vec<Operator>, outcomes: Vec<String>) -> Result<Self> {
        let dim = match effects.first() {
            Some(e) => e.dim(),
            None => return Err(Error::InvalidInput("observable with no effects".into())),
        };
        if let Some(bad) = effects.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "effect of dimension {} in a dimension-{dim} observable",
                bad.dim()
            )));
        }
        if outcomes.len() != effects.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} effects",
                outcomes.len(),
                effects.len()
            )));
        }
        Ok(Povm {
            dim,
            outcomes,
            effects,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of outcomes k.
    pub fn outcome_count(&self) -> usize {
        self.effects.len()
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[Operator] {
        &self.effects
    }

    pub fn effect(&self, j: usize) -> &Operator {
        &self.effects[j]
    }

    /// Checks positivity of every effect and normalization of their sum,
    /// reporting the worst violation found.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut worst = 0.0f64;
        let mut detail = String::from("all checks passed");
        let note = |violation: f64, text: String, worst: &mut f64, detail: &mut String| {
            if violation > *worst {
                *worst = violation;
                *detail = text;
            }
        };

        let mut sum = Operator::zeros(self.dim);
        for (j, effect) in self.effects.iter().enumerate() {
            sum.add_in_place(effect)?;
            let herm = effect.hermiticity_deviation();
            let herm_tol = effect.default_zero_tol().max(1e-12);
            if herm > herm_tol {
                note(
                    herm,
                    format!("effect {} is not Hermitian (deviation {herm:.3e})", j + 1),
                    &mut worst,
                    &mut detail,
                );
                continue; // an eigendecomposition would be meaningless
            }
            let min = effect.eig_hermitian()?.min_eigenvalue();
            let zero_tol = effect.default_zero_tol();
            if min < -zero_tol {
                note(
                    -min,
                    format!("effect {} has negative eigenvalue {min:.3e}", j + 1),
                    &mut worst,
                    &mut detail,
                );
            }
        }

        let mut deviation = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
                deviation = deviation.max((sum.get(i, j) - expected).norm());
            }
        }
        if deviation > POVM_NORM_TOL {
            note(
                deviation,
                format!("effects sum deviates from identity by {deviation:.3e}"),
                &mut worst,
                &mut detail,
            );
        }

        Ok(ValidationReport {
            passed: worst == 0.0,
            worst_violation: worst,
            detail,
        })
    }

    /// Applies an outcome relabeling: outcome j of the result is outcome
    /// π(j) of `self`, labels included.
    pub fn permuted(&self, p: &Permutation) -> Povm {
        let effects = (0..self.effects.len())
            .map(|j| self.effects[p.apply(j)].clone())
            .collect();
        let outcomes = (0..self.outcomes.len())
            .map(|j| self.outcomes[p.apply(j)].clone())
            .collect();
        Povm {
            dim: self.dim,
            outcomes,
            effects,
        }
    }
}

/// Outcome of [`Povm::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub passed: bool,
    /// Magnitude of the largest violation (0 when fully valid).
    pub worst_violation: f64,
    /// Which check produced the worst violation.
    pub detail: String,
}

/// A two-outcome qubit observable in Bloch form, with an optional prior
/// weight for identification tasks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochObservable {
    pub vector: [f64; 3],
    pub prior: f64,
}

impl BlochObservable {
    pub fn new(vector: [f64; 3], prior: f64) -> Result<Self> {
        let norm = vector_norm(vector);
        if norm > 1.0 + 1e-12 {
            return Err(Error::InvalidBloch(format!(
                "Bloch vector has length {norm:.6} > 1"
            )));
        }
        if !(0.0..=1.0).contains(&prior) {
            return Err(Error::InvalidBloch(format!("prior {prior} outside [0, 1]")));
        }
        Ok(BlochObservable { vector, prior })
    }

    /// Length of the Bloch vector; 1 for sharp observables.
    pub fn sharpness(&self) -> f64 {
        vector_norm(self.vector)
    }
}

/// The three Pauli matrices (σx, σy, σz).
pub fn pauli_matrices() -> [Operator; 3] {
    let c = Complex64::new;
    [
        Operator::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap(),
        Operator::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap(),
        Operator::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
            .unwrap(),
    ]
}

/// Linear combination a·σ of the Pauli matrices.
pub fn bloch_operator(a: [f64; 3]) -> Operator {
    let paulis = pauli_matrices();
    let mut out = Operator::zeros(2);
    for (coeff, sigma) in a.iter().zip(&paulis) {
        out.add_in_place(&sigma.scale(*coeff)).unwrap();
    }
    out
}

/// The two-outcome qubit observable {½(I + a·σ), ½(I − a·σ)}.
pub fn from_bloch(b: &BlochObservable) -> Result<Povm> {
    if b.sharpness() > 1.0 + 1e-12 {
        return Err(Error::InvalidBloch(format!(
            "Bloch vector has length {:.6} > 1",
            b.sharpness()
        )));
    }
    let half_sigma = bloch_operator(b.vector).scale(0.5);
    let half_identity = Operator::identity(2).scale(0.5);
    let plus = half_identity.add(&half_sigma)?;
    let minus = half_identity.add(&half_sigma.scale(-1.0))?;
    Povm::with_labels(vec![plus, minus], vec!["up".into(), "down".into()])
}

/// Angle between two Bloch directions, in [0, π].
pub fn bloch_angle(a: [f64; 3], b: [f64; 3]) -> Result<f64> {
    let (na, nb) = (vector_norm(a), vector_norm(b));
    if na < 1e-12 || nb < 1e-12 {
        return Err(Error::ZeroVector);
    }
    let cos = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / (na * nb);
    Ok(cos.clamp(-1.0, 1.0).acos())
}

/// Searches all k! outcome relabelings for one making `q` equal to `p`:
/// returns π with `q.effect(j) = p.effect(π(j))` entrywise within
/// [`EQUIV_TOL`], or `None` when the observables are genuinely different.
pub fn equivalent(p: &Povm, q: &Povm) -> Result<Option<Permutation>> {
    if p.dim() != q.dim() || p.outcome_count() != q.outcome_count() {
        return Err(Error::DimensionMismatch(
            "equivalence needs equal dimension and outcome count".into(),
        ));
    }
    let k = p.outcome_count();
    if k > MAX_EQUIV_OUTCOMES {
        return Err(Error::TooManyOutcomes(k));
    }
    'perms: for candidate in Permutation::all(k) {
        for j in 0..k {
            if !operators_close(q.effect(j), p.effect(candidate.apply(j))) {
                continue 'perms;
            }
        }
        return Ok(Some(candidate));
    }
    Ok(None)
}

fn operators_close(a: &Operator, b: &Operator) -> bool {
    a.entries()
        .iter()
        .zip(b.entries())
        .all(|(x, y)| (x - y).norm() <= EQUIV_TOL)
}

fn vector_norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
