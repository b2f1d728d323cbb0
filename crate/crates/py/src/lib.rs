//! Python bindings for the observable-discrimination library. Exposes the
//! POVM type and the main decision/optimization entry points; complex
//! amplitudes cross the boundary as Python `complex` values, conclusion
//! tables as dicts keyed by pattern name. Exercised by
//! `python/smoke_test.py` rather than a Rust test harness, since an
//! extension module only links inside a Python process.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use obsdisc::discrimination::{
    check_perfect_discrimination as core_check, simulate as core_simulate, SearchOptions,
};
use obsdisc::outcomes::{
    canonicalize as core_canonicalize, enumerate_patterns as core_enumerate, OutcomeSequence,
};
use obsdisc::povm::{
    bloch_angle as core_bloch_angle, from_bloch, BlochObservable, Povm as CorePovm,
};
use obsdisc::unambiguous::{
    closed_form_identification as core_closed_form,
    four_shot_discrimination as core_four_shot, optimize_with, Mode, TaskSpec,
};
use obsdisc::{Operator, StateVector};

fn value_error(e: obsdisc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(text: &str) -> PyResult<Mode> {
    match text.to_ascii_lowercase().as_str() {
        "pd" => Ok(Mode::Pd),
        "ud" => Ok(Mode::Ud),
        "pi" => Ok(Mode::Pi),
        "ui" => Ok(Mode::Ui),
        other => Err(PyValueError::new_err(format!(
            "unknown mode {other:?}; expected pd, ud, pi, or ui"
        ))),
    }
}

fn operator_from_rows(rows: &[Vec<Complex64>]) -> PyResult<Operator> {
    Operator::from_rows(rows).map_err(value_error)
}

fn state_from_amplitudes(amplitudes: Vec<Complex64>) -> PyResult<StateVector> {
    StateVector::normalized(amplitudes).map_err(value_error)
}

/// A discrete quantum observable: a list of positive effect matrices that
/// sum to the identity.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Povm {
    inner: CorePovm,
}

#[pymethods]
impl Povm {
    /// Builds an observable from its effects.
    ///
    /// Args:
    ///     effects: List of square matrices, each a list of rows of complex
    ///         entries. All matrices must share one dimension.
    ///
    /// Raises:
    ///     ValueError: If the matrices are empty or their shapes disagree.
    ///         Positivity and normalization are checked by `validate`, not
    ///         here, so defective observables can still be inspected.
    #[new]
    fn new(effects: Vec<Vec<Vec<Complex64>>>) -> PyResult<Self> {
        let operators = effects
            .iter()
            .map(|m| operator_from_rows(m))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Povm {
            inner: CorePovm::new(operators).map_err(value_error)?,
        })
    }

    /// Hilbert-space dimension the effects act on.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Number of outcomes.
    #[getter]
    fn outcome_count(&self) -> usize {
        self.inner.outcome_count()
    }

    /// Effects as nested lists of complex entries, row-major.
    fn effects(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner
            .effects()
            .iter()
            .map(|e| {
                (0..e.dim())
                    .map(|i| (0..e.dim()).map(|j| e.get(i, j)).collect())
                    .collect()
            })
            .collect()
    }

    /// Checks positivity of every effect and normalization of their sum.
    ///
    /// Returns:
    ///     Tuple `(passed, worst_violation, detail)`.
    fn validate(&self) -> PyResult<(bool, f64, String)> {
        let report = self.inner.validate().map_err(value_error)?;
        Ok((report.passed, report.worst_violation, report.detail))
    }

    fn __repr__(&self) -> String {
        format!(
            "Povm(dim={}, outcomes={})",
            self.inner.dim(),
            self.inner.outcome_count()
        )
    }
}

/// Result of a perfect-discrimination search.
#[pyclass(frozen, get_all)]
struct DiscriminationOutcome {
    /// Whether some assignment of outcome patterns to observables works.
    feasible: bool,
    /// Optimal probe amplitudes (None when infeasible).
    probe: Option<Vec<Complex64>>,
    /// Pattern name → index of the concluded observable.
    table: Option<BTreeMap<String, usize>>,
    /// Dimension of the constraint-operator kernel at the winning assignment.
    kernel_dimension: usize,
    /// Smallest constraint eigenvalue seen (the margin when infeasible).
    min_eigenvalue: f64,
    /// How many assignments the search examined.
    assignments_searched: u64,
}

#[pymethods]
impl DiscriminationOutcome {
    fn __repr__(&self) -> String {
        format!(
            "DiscriminationOutcome(feasible={}, min_eigenvalue={:.3e})",
            self.feasible, self.min_eigenvalue
        )
    }
}

/// Result of an unambiguous discrimination/identification optimization.
#[pyclass(frozen, get_all)]
struct IdentificationOutcome {
    /// Whether any conclusive region map admits a working probe.
    feasible: bool,
    /// Prior-weighted success probability of the best scheme.
    success_probability: f64,
    /// Optimal probe amplitudes (None when infeasible).
    probe: Option<Vec<Complex64>>,
    /// Pattern name → concluded observable index, or None if inconclusive.
    table: Option<BTreeMap<String, Option<usize>>>,
    /// Conditional conclusive probability per target index.
    per_target: BTreeMap<usize, f64>,
    /// How many region maps the search examined.
    maps_searched: u64,
}

#[pymethods]
impl IdentificationOutcome {
    fn __repr__(&self) -> String {
        format!(
            "IdentificationOutcome(feasible={}, success_probability={:.6})",
            self.feasible, self.success_probability
        )
    }
}

fn amplitudes(probe: &StateVector) -> Vec<Complex64> {
    probe.amplitudes().to_vec()
}

/// The two-outcome qubit observable along a Bloch vector.
///
/// Args:
///     vector: Bloch vector of length at most 1 (shorter vectors give an
///         unsharp observable).
///
/// Returns:
///     The observable with effects (1 ± vector·σ)/2.
#[pyfunction]
fn povm_from_bloch(vector: [f64; 3]) -> PyResult<Povm> {
    let observable = BlochObservable::new(vector, 0.5).map_err(value_error)?;
    Ok(Povm {
        inner: from_bloch(&observable).map_err(value_error)?,
    })
}

/// Angle between two Bloch vectors, in radians.
#[pyfunction]
fn bloch_angle(a: [f64; 3], b: [f64; 3]) -> PyResult<f64> {
    core_bloch_angle(a, b).map_err(value_error)
}

/// Lists the relabeling orbits of outcome sequences.
///
/// Args:
///     uses: Number of apparatus uses n.
///     outcomes: Number of outcomes k per use.
///
/// Returns:
///     List of `(name, canonical_indices)` pairs, e.g. `("xxy", [0, 0, 1])`.
#[pyfunction]
fn enumerate_patterns(uses: usize, outcomes: usize) -> PyResult<Vec<(String, Vec<usize>)>> {
    let patterns = core_enumerate(uses, outcomes).map_err(value_error)?;
    Ok(patterns
        .iter()
        .map(|p| (p.name(), p.canonical().to_vec()))
        .collect())
}

/// Canonical form of an outcome sequence under relabeling.
///
/// Args:
///     sequence: Outcome indices in temporal order.
///     alphabet_size: Number of outcomes the apparatus has; defaults to
///         `max(sequence) + 1`.
///
/// Returns:
///     Pair `(name, canonical_indices)`.
#[pyfunction]
#[pyo3(signature = (sequence, alphabet_size=None))]
fn canonicalize(
    sequence: Vec<usize>,
    alphabet_size: Option<usize>,
) -> PyResult<(String, Vec<usize>)> {
    let k = alphabet_size.unwrap_or_else(|| sequence.iter().max().map_or(1, |&m| m + 1));
    let seq = OutcomeSequence::new(sequence, k).map_err(value_error)?;
    let pattern = core_canonicalize(&seq);
    Ok((pattern.name(), pattern.canonical().to_vec()))
}

/// Searches for a probe state and conclusion table that discriminate the
/// observables perfectly in `shots` apparatus uses.
#[pyfunction]
fn check_perfect_discrimination(
    observables: Vec<Povm>,
    shots: usize,
) -> PyResult<DiscriminationOutcome> {
    let core: Vec<CorePovm> = observables.into_iter().map(|p| p.inner).collect();
    let result = core_check(&core, shots).map_err(value_error)?;
    Ok(DiscriminationOutcome {
        feasible: result.feasible,
        probe: result.probe.as_ref().map(amplitudes),
        table: result.assignment.as_ref().map(|a| {
            a.patterns()
                .iter()
                .zip(a.mapping())
                .map(|(p, &x)| (p.name(), x))
                .collect()
        }),
        kernel_dimension: result.kernel_dim,
        min_eigenvalue: result.min_eigenvalue,
        assignments_searched: result.assignments_searched,
    })
}

fn identification_outcome(result: &obsdisc::unambiguous::IdentificationResult) -> IdentificationOutcome {
    IdentificationOutcome {
        feasible: result.feasible,
        success_probability: result.success_probability,
        probe: result.probe.as_ref().map(amplitudes),
        table: result.region_map.as_ref().map(|m| {
            m.patterns()
                .iter()
                .zip(m.conclusions())
                .map(|(p, &c)| (p.name(), c))
                .collect()
        }),
        per_target: result.per_target_probability.iter().copied().collect(),
        maps_searched: result.maps_searched,
    }
}

/// Optimizes unambiguous discrimination or identification.
///
/// Args:
///     observables: The candidate observables.
///     priors: Prior weights (default uniform).
///     targets: Indices to identify (default all; `ud`/`pd` require all).
///     shots: Number of apparatus uses (default 2).
///     mode: One of `"pd"`, `"ud"`, `"pi"`, `"ui"` (default `"ud"`).
///
/// Returns:
///     The optimal scheme; `feasible=False` with zero success probability
///     when no conclusive region map admits a probe.
#[pyfunction]
#[pyo3(signature = (observables, *, priors=None, targets=None, shots=2, mode="ud"))]
fn optimize(
    observables: Vec<Povm>,
    priors: Option<Vec<f64>>,
    targets: Option<Vec<usize>>,
    shots: usize,
    mode: &str,
) -> PyResult<IdentificationOutcome> {
    let core: Vec<CorePovm> = observables.into_iter().map(|p| p.inner).collect();
    let task = TaskSpec::new(core, priors, targets, shots, parse_mode(mode)?)
        .map_err(value_error)?;
    let result = optimize_with(&task, &SearchOptions::default()).map_err(value_error)?;
    Ok(identification_outcome(&result))
}

/// Best achievable two-shot probability of unambiguously identifying the
/// possibly-unsharp observable `a` against a sharp alternative along `b`.
///
/// Args:
///     a: Bloch vector of the target observable (length ≤ 1).
///     prior: Prior weight η of the target.
///     b: Unit Bloch vector of the alternative.
#[pyfunction]
fn closed_form_identification(a: [f64; 3], prior: f64, b: [f64; 3]) -> PyResult<f64> {
    let observable = BlochObservable::new(a, prior).map_err(value_error)?;
    core_closed_form(&observable, b).map_err(value_error)
}

/// Unambiguously discriminates two sharp qubit observables in four shots.
///
/// Args:
///     a: Unit Bloch vector of the first observable.
///     b: Unit Bloch vector of the second (not collinear with `a`).
///     priors: Prior weights (default `(0.5, 0.5)`).
///
/// Returns:
///     The four-shot scheme; its success probability is sin²θ of the angle
///     between the vectors, independent of the priors.
#[pyfunction]
#[pyo3(signature = (a, b, priors=(0.5, 0.5)))]
fn four_shot_discrimination(
    a: [f64; 3],
    b: [f64; 3],
    priors: (f64, f64),
) -> PyResult<IdentificationOutcome> {
    let result = core_four_shot(a, b, [priors.0, priors.1]).map_err(value_error)?;
    Ok(identification_outcome(&result))
}

/// Samples outcome patterns of repeated measurements on a probe state.
///
/// Args:
///     observable: The measured observable.
///     probe: Probe amplitudes on the n-fold tensor space (normalized
///         automatically).
///     shots: Number of apparatus uses n.
///     trials: Number of independent runs to sample.
///     seed: RNG seed; equal seeds give equal histograms.
///
/// Returns:
///     Dict mapping pattern names to observed counts (unseen patterns are
///     omitted).
#[pyfunction]
fn simulate(
    observable: &Povm,
    probe: Vec<Complex64>,
    shots: usize,
    trials: u64,
    seed: u64,
) -> PyResult<BTreeMap<String, u64>> {
    let state = state_from_amplitudes(probe)?;
    let histogram =
        core_simulate(&observable.inner, &state, shots, trials, seed).map_err(value_error)?;
    Ok(histogram
        .into_iter()
        .map(|(pattern, count)| (pattern.name(), count))
        .collect())
}

#[pymodule]
fn obsdisc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Povm>()?;
    m.add_class::<DiscriminationOutcome>()?;
    m.add_class::<IdentificationOutcome>()?;
    m.add_function(wrap_pyfunction!(povm_from_bloch, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_angle, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_patterns, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(check_perfect_discrimination, m)?)?;
    m.add_function(wrap_pyfunction!(optimize, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_identification, m)?)?;
    m.add_function(wrap_pyfunction!(four_shot_discrimination, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
