//! Unambiguous discrimination and identification of observables.
//!
//! Relaxes perfect discrimination in two directions: outcome patterns may be
//! declared *inconclusive* (no conclusion is drawn there), and only a subset
//! of the observables — the targets — needs a conclusive region of its own.
//! Conclusions must still be error-free: a pattern concluding observable X
//! must have zero probability under every other candidate. The figure of
//! merit is the success probability Σ_X η_X · P_X(conclude X) for prior
//! weights η, maximized over probe states.
//!
//! [`optimize`] solves the general problem exactly by enumerating region
//! maps and, for each, maximizing the success operator over the kernel of
//! the zero-probability constraint operator. The qubit-specific entry points
//! ([`closed_form_identification`], [`optimal_two_shot_probe`],
//! [`four_shot_discrimination`]) provide independent closed-form values the
//! optimizer can be checked against.

use num_complex::Complex64;

use crate::discrimination::{checked_power, orbit_effect, simulate, SearchOptions};
use crate::error::{Error, Result};
use crate::operator::{Operator, StateVector};
use crate::outcomes::{enumerate_patterns, OutcomePattern};
use crate::povm::{bloch_angle, bloch_operator, from_bloch, BlochObservable, Povm};

/// Conclusive probabilities must exceed this multiple of the kernel
/// tolerance before a target counts as identifiable (separates structural
/// zeros from numerical dust).
const CONCLUSIVE_FACTOR: f64 = 10.0;

/// How strictly priors must sum to one.
const PRIOR_SUM_TOL: f64 = 1e-12;

/// A later region map must beat the incumbent by more than this to replace
/// it; numerically tied maps keep the lexicographically first one.
const SUCCESS_TIE_TOL: f64 = 1e-12;

/// Task family, ordered from most to least demanding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Perfect discrimination: every pattern concludes some observable.
    Pd,
    /// Unambiguous discrimination: inconclusive patterns allowed, but every
    /// observable must have nonzero conclusive probability.
    Ud,
    /// Perfect identification of the targets: every pattern decides target
    /// membership — inconclusive patterns must be impossible under every
    /// target.
    Pi,
    /// Unambiguous identification: each target must have nonzero conclusive
    /// probability; non-target patterns carry no requirement.
    Ui,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Pd => "PD",
            Mode::Ud => "UD",
            Mode::Pi => "PI",
            Mode::Ui => "UI",
        }
    }

    /// PD and UD conclude among all observables, so the target set must be
    /// the full index range.
    pub fn requires_all_targets(&self) -> bool {
        matches!(self, Mode::Pd | Mode::Ud)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully validated identification task.
#[derive(Debug, Clone)]
pub struct TaskSpec {
    observables: Vec<Povm>,
    priors: Vec<f64>,
    targets: Vec<usize>,
    shots: usize,
    mode: Mode,
}

impl TaskSpec {
    /// Builds a task. `priors` defaults to uniform, `targets` to all
    /// observables; targets are sorted and deduplicated.
    pub fn new(
        observables: Vec<Povm>,
        priors: Option<Vec<f64>>,
        targets: Option<Vec<usize>>,
        shots: usize,
        mode: Mode,
    ) -> Result<Self> {
        let m = observables.len();
        if m == 0 {
            return Err(Error::InvalidInput("no observables in task".into()));
        }
        let (dim, k) = (observables[0].dim(), observables[0].outcome_count());
        if observables
            .iter()
            .any(|o| o.dim() != dim || o.outcome_count() != k)
        {
            return Err(Error::DimensionMismatch(
                "observables must share dimension and outcome count".into(),
            ));
        }
        if shots == 0 {
            return Err(Error::InvalidInput("at least one shot required".into()));
        }

        let priors = priors.unwrap_or_else(|| vec![1.0 / m as f64; m]);
        if priors.len() != m {
            return Err(Error::InvalidInput(format!(
                "{} priors for {m} observables",
                priors.len()
            )));
        }
        if let Some(bad) = priors.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::InvalidInput(format!("negative prior {bad}")));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(Error::InvalidInput(format!("priors sum to {total}, not 1")));
        }

        let mut targets = targets.unwrap_or_else(|| (0..m).collect());
        targets.sort_unstable();
        targets.dedup();
        if targets.is_empty() {
            return Err(Error::InvalidInput("empty target set".into()));
        }
        if let Some(&bad) = targets.iter().find(|&&t| t >= m) {
            return Err(Error::InvalidInput(format!(
                "target index {bad} out of range for {m} observables"
            )));
        }
        if mode.requires_all_targets() && targets.len() != m {
            return Err(Error::InvalidInput(format!(
                "{mode} concludes among all observables; the target set cannot be restricted"
            )));
        }

        Ok(TaskSpec {
            observables,
            priors,
            targets,
            shots,
            mode,
        })
    }

    pub fn observables(&self) -> &[Povm] {
        &self.observables
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn shots(&self) -> usize {
        self.shots
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
}

/// A total map from outcome patterns to a conclusion: `Some(x)` concludes
/// observable `x`, `None` is the inconclusive result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMap {
    patterns: Vec<OutcomePattern>,
    conclusions: Vec<Option<usize>>,
}

impl RegionMap {
    /// Patterns in enumeration (lexicographic) order.
    pub fn patterns(&self) -> &[OutcomePattern] {
        &self.patterns
    }

    /// Conclusion per pattern, aligned with [`RegionMap::patterns`].
    pub fn conclusions(&self) -> &[Option<usize>] {
        &self.conclusions
    }

    /// Renders (pattern name, conclusion) rows; inconclusive patterns get
    /// `inconclusive_label`.
    pub fn table<S: AsRef<str>>(
        &self,
        names: &[S],
        inconclusive_label: &str,
    ) -> Vec<(String, String)> {
        self.patterns
            .iter()
            .zip(&self.conclusions)
            .map(|(p, c)| {
                let label = match c {
                    Some(x) => names[*x].as_ref().to_string(),
                    None => inconclusive_label.to_string(),
                };
                (p.name(), label)
            })
            .collect()
    }
}

/// Outcome of an identification/discrimination optimization.
#[derive(Debug, Clone)]
pub struct IdentificationResult {
    /// Whether any region map satisfied the mode's requirements.
    pub feasible: bool,
    /// Best average success probability Σ_X η_X · P_X(conclude X); zero when
    /// infeasible.
    pub success_probability: f64,
    /// The maximizing probe state.
    pub probe: Option<StateVector>,
    /// The winning region map (lexicographically first among maximizers).
    pub region_map: Option<RegionMap>,
    /// Conclusive probability P_X(conclude X) per target, conditional on the
    /// apparatus being X — no prior weighting.
    pub per_target_probability: Vec<(usize, f64)>,
    /// Number of region maps whose constraint operator was diagonalized.
    pub maps_searched: u64,
}

impl IdentificationResult {
    fn infeasible(maps_searched: u64) -> Self {
        IdentificationResult {
            feasible: false,
            success_probability: 0.0,
            probe: None,
            region_map: None,
            per_target_probability: Vec::new(),
            maps_searched,
        }
    }
}

/// Exhaustively maximizes the success probability of `task` over region maps
/// and probe states, with default [`SearchOptions`].
pub fn optimize(task: &TaskSpec) -> Result<IdentificationResult> {
    optimize_with(task, &SearchOptions::default())
}

/// As [`optimize`], with explicit search options.
///
/// Every map from patterns to (targets ∪ inconclusive) is tried. A map's
/// constraint operator C sums, over each conclusive pattern, the orbit
/// effects of all *other* observables (error-free requirement); in PI mode
/// inconclusive patterns additionally contribute every target's orbit effect
/// (an inconclusive outcome must prove the apparatus is not a target). Any
/// admissible probe lies in ker C, so the success operator is projected onto
/// that kernel and its top eigenvector is the exact constrained maximizer.
/// UD/UI maps are discarded unless every target's conclusive probability on
/// that maximizer clears 10× the kernel tolerance. Numerically tied maps
/// (within 1e-12) keep the lexicographically first one; an infeasible task
/// yields `success_probability = 0`, not an error.
pub fn optimize_with(task: &TaskSpec, opts: &SearchOptions) -> Result<IdentificationResult> {
    let m = task.observables.len();
    let dim = task.observables[0].dim();
    let k = task.observables[0].outcome_count();
    let total_dim = checked_power(dim, task.shots)? as usize;
    let patterns = enumerate_patterns(task.shots, k)?;
    let p_count = patterns.len();
    let t_count = task.targets.len();
    let alphabet = t_count + 1; // one digit per target, last digit = inconclusive

    let candidates = (alphabet as u128)
        .checked_pow(p_count as u32)
        .unwrap_or(u128::MAX);
    if candidates > opts.search_cap as u128 {
        return Err(Error::SearchCapExceeded {
            candidates,
            cap: opts.search_cap,
        });
    }

    let mut effects = Vec::with_capacity(m);
    for obs in &task.observables {
        let row: Vec<Operator> = patterns
            .iter()
            .map(|p| orbit_effect(obs, p, task.shots))
            .collect::<Result<_>>()?;
        effects.push(row);
    }

    let mut digits = vec![0usize; p_count];
    let mut conclusions: Vec<Option<usize>> = vec![None; p_count];
    let mut searched: u64 = 0;
    let mut best: Option<(f64, RegionMap, StateVector, Vec<(usize, f64)>)> = None;

    for count in 0..candidates {
        let mut rest = count;
        for slot in (0..p_count).rev() {
            digits[slot] = (rest % alphabet as u128) as usize;
            rest /= alphabet as u128;
        }
        for (slot, &d) in digits.iter().enumerate() {
            conclusions[slot] = (d < t_count).then(|| task.targets[d]);
        }

        if conclusions.iter().all(|c| c.is_none()) {
            continue; // nothing is ever concluded
        }
        if task.mode == Mode::Pd && conclusions.iter().any(|c| c.is_none()) {
            continue;
        }
        // Each target needs at least one pattern of its own: in UD/UI that is
        // necessary for nonzero conclusive probability, in PD/PI a target
        // without patterns makes the constraints unsatisfiable anyway.
        if !task
            .targets
            .iter()
            .all(|&t| conclusions.contains(&Some(t)))
        {
            continue;
        }

        let mut constraint = Operator::zeros(total_dim);
        for (pi, c) in conclusions.iter().enumerate() {
            match c {
                Some(t) => {
                    for x in 0..m {
                        if x != *t {
                            constraint.add_in_place(&effects[x][pi])?;
                        }
                    }
                }
                None if task.mode == Mode::Pi => {
                    for &t in &task.targets {
                        constraint.add_in_place(&effects[t][pi])?;
                    }
                }
                None => {}
            }
        }

        searched += 1;
        let zero_tol = opts.zero_tol.unwrap_or(constraint.default_zero_tol());
        let eig = constraint.eig_hermitian()?;
        let kernel_dim = eig
            .eigenvalues
            .iter()
            .take_while(|&&lambda| lambda <= zero_tol)
            .count();
        if kernel_dim == 0 {
            continue;
        }
        let kernel = &eig.eigenvectors[..kernel_dim];

        // Success operator S = Σ_X η_X Σ_{p concluding X} effect, projected
        // onto ker C; its top eigenvector lifts back to the optimal probe.
        let mut success_op = Operator::zeros(total_dim);
        for (pi, c) in conclusions.iter().enumerate() {
            if let Some(t) = c {
                success_op.add_in_place(&effects[*t][pi].scale(task.priors[*t]))?;
            }
        }
        let images: Vec<Vec<Complex64>> = kernel
            .iter()
            .map(|v| success_op.matvec(v.amplitudes()))
            .collect();
        let projected = Operator::from_fn(kernel_dim, |i, j| {
            kernel[i]
                .amplitudes()
                .iter()
                .zip(&images[j])
                .map(|(a, b)| a.conj() * b)
                .sum()
        });
        let projected_eig = projected.eig_hermitian()?;
        let weights = &projected_eig.eigenvectors[kernel_dim - 1];

        let mut amplitudes = vec![Complex64::ZERO; total_dim];
        for (wi, w) in weights.amplitudes().iter().enumerate() {
            for (l, v) in kernel[wi].amplitudes().iter().enumerate() {
                amplitudes[l] += w * v;
            }
        }
        let probe = StateVector::normalized(amplitudes)?.with_phase_convention();

        let per_target: Vec<(usize, f64)> = task
            .targets
            .iter()
            .map(|&t| {
                let p: f64 = conclusions
                    .iter()
                    .enumerate()
                    .filter(|&(_, c)| *c == Some(t))
                    .map(|(pi, _)| effects[t][pi].expectation(&probe))
                    .sum();
                (t, p.clamp(0.0, 1.0))
            })
            .collect();

        if matches!(task.mode, Mode::Ud | Mode::Ui) {
            let threshold = CONCLUSIVE_FACTOR * zero_tol;
            if per_target.iter().any(|&(_, p)| p <= threshold) {
                continue;
            }
        }

        let success: f64 = per_target
            .iter()
            .map(|&(t, p)| task.priors[t] * p)
            .sum();
        if best.as_ref().is_none_or(|b| success > b.0 + SUCCESS_TIE_TOL) {
            let region_map = RegionMap {
                patterns: patterns.clone(),
                conclusions: conclusions.clone(),
            };
            best = Some((success, region_map, probe, per_target));
        }
    }

    Ok(match best {
        Some((success, region_map, probe, per_target)) => IdentificationResult {
            feasible: true,
            success_probability: success,
            probe: Some(probe),
            region_map: Some(region_map),
            per_target_probability: per_target,
            maps_searched: searched,
        },
        None => IdentificationResult::infeasible(searched),
    })
}

/// Best two-shot success probability for unambiguously identifying a qubit
/// observable with Bloch vector `a` (prior weight `a.prior`) against a sharp
/// observable in direction `b`:
///
/// ```text
/// P = η (‖a‖² sin²θ + ½(1 − ‖a‖²))
/// ```
///
/// where θ is the angle between the directions. Reduces to η sin²θ for sharp
/// `a`, and to η/2 for the trivial observable `a = 0`.
pub fn closed_form_identification(a: &BlochObservable, b: [f64; 3]) -> Result<f64> {
    let b_norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    if (b_norm - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidBloch(format!(
            "reference direction must be a unit vector, got length {b_norm:.6}"
        )));
    }
    let eta = a.prior;
    let len = a.sharpness();
    if len < 1e-12 {
        return Ok(eta * 0.5);
    }
    // Snap exactly sharp inputs so the sharp case reduces algebraically.
    let len_sq = if (len - 1.0).abs() <= 1e-12 {
        1.0
    } else {
        len * len
    };
    let theta = bloch_angle(a.vector, b)?;
    Ok(eta * (len_sq * theta.sin().powi(2) + 0.5 * (1.0 - len_sq)))
}

/// The optimal two-shot identification probe (φ⊗φ⊥ + φ⊥⊗φ)/√2, built from
/// the eigenbasis {φ, φ⊥} of b·σ. Its defining property: the observable in
/// direction `b` never repeats an outcome on it.
pub fn optimal_two_shot_probe(b_direction: [f64; 3]) -> Result<StateVector> {
    let norm = (b_direction[0] * b_direction[0]
        + b_direction[1] * b_direction[1]
        + b_direction[2] * b_direction[2])
        .sqrt();
    if norm < 1e-12 {
        return Err(Error::ZeroVector);
    }
    let unit = [
        b_direction[0] / norm,
        b_direction[1] / norm,
        b_direction[2] / norm,
    ];
    let eig = bloch_operator(unit).eig_hermitian()?;
    let minus = &eig.eigenvectors[0]; // eigenvalue −1
    let plus = &eig.eigenvectors[1]; // eigenvalue +1
    let mut amplitudes = vec![Complex64::ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            amplitudes[2 * i + j] = plus.amplitudes()[i] * minus.amplitudes()[j]
                + minus.amplitudes()[i] * plus.amplitudes()[j];
        }
    }
    Ok(StateVector::normalized(amplitudes)?.with_phase_convention())
}

/// The unitary swap between same-outcome and different-outcome statistics:
/// returns (I⊗U)ψ with U = n̂·σ, n̂ = (a×b)/‖a×b‖. For qubit observables in
/// directions `a` and `b`, conjugation by U exchanges each one's two effects,
/// so the transformed probe turns a "same outcomes ⇒ conclude X" strategy
/// into an equally good "different outcomes ⇒ conclude X" strategy.
pub fn same_diff_symmetry_transform(
    a: [f64; 3],
    b: [f64; 3],
    psi: &StateVector,
) -> Result<StateVector> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit probe expected, got dimension {}",
            psi.dim()
        )));
    }
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    if norm <= 1e-12 {
        return Err(Error::CollinearDirections);
    }
    let axis = [cross[0] / norm, cross[1] / norm, cross[2] / norm];
    let u = bloch_operator(axis);
    let transformed = Operator::identity(2).tensor(&u);
    StateVector::normalized(transformed.matvec(psi.amplitudes()))
}

/// Unambiguous discrimination of two sharp qubit observables (directions `a`
/// and `b`) in four shots with the explicit product-of-entangled-pairs probe:
/// the first pair of shots is prepared in the symmetric state of `b`'s
/// eigenbasis (so equal outcomes there rule out B and conclude A), the second
/// pair in the symmetric state of `a`'s eigenbasis (equal outcomes conclude
/// B). Each conclusion fires with probability sin²θ, so the average success
/// probability is sin²θ regardless of the priors. Patterns where both pairs
/// repeat cannot occur; they are checked to carry no probability and filed as
/// inconclusive alongside the both-pairs-differ patterns.
pub fn four_shot_discrimination(
    a: [f64; 3],
    b: [f64; 3],
    priors: [f64; 2],
) -> Result<IdentificationResult> {
    for v in [a, b] {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidBloch(format!(
                "sharp observable needs a unit direction, got length {norm:.6}"
            )));
        }
    }
    let cross_norm_sq = {
        let c = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        c[0] * c[0] + c[1] * c[1] + c[2] * c[2]
    };
    if cross_norm_sq.sqrt() <= 1e-12 {
        return Err(Error::CollinearDirections);
    }
    if priors.iter().any(|&p| p < 0.0) || (priors[0] + priors[1] - 1.0).abs() > PRIOR_SUM_TOL {
        return Err(Error::InvalidInput(format!(
            "priors {priors:?} are not a probability pair"
        )));
    }

    let obs_a = from_bloch(&BlochObservable::new(a, 1.0)?)?;
    let obs_b = from_bloch(&BlochObservable::new(b, 1.0)?)?;
    let probe = optimal_two_shot_probe(b)?
        .tensor(&optimal_two_shot_probe(a)?)
        .with_phase_convention();

    let patterns = enumerate_patterns(4, 2)?;
    let conclusions: Vec<Option<usize>> = patterns
        .iter()
        .map(|p| {
            let c = p.canonical();
            match (c[0] == c[1], c[2] == c[3]) {
                (true, true) => None, // impossible: would conclude both
                (true, false) => Some(0),
                (false, true) => Some(1),
                (false, false) => None,
            }
        })
        .collect();

    let mut per_target = vec![(0usize, 0.0f64), (1usize, 0.0f64)];
    for (p, c) in patterns.iter().zip(&conclusions) {
        let prob_a = orbit_effect(&obs_a, p, 4)?.expectation(&probe);
        let prob_b = orbit_effect(&obs_b, p, 4)?.expectation(&probe);
        match c {
            Some(0) => per_target[0].1 += prob_a,
            Some(1) => per_target[1].1 += prob_b,
            _ => {
                let both_repeat = p.canonical()[0] == p.canonical()[1]
                    && p.canonical()[2] == p.canonical()[3];
                assert!(
                    !both_repeat || (prob_a.abs() <= 1e-9 && prob_b.abs() <= 1e-9),
                    "a pattern repeating both pairs must have zero probability"
                );
            }
        }
    }
    per_target[0].1 = per_target[0].1.clamp(0.0, 1.0);
    per_target[1].1 = per_target[1].1.clamp(0.0, 1.0);

    let success = priors[0] * per_target[0].1 + priors[1] * per_target[1].1;
    Ok(IdentificationResult {
        feasible: true,
        success_probability: success,
        probe: Some(probe),
        region_map: Some(RegionMap {
            patterns,
            conclusions,
        }),
        per_target_probability: per_target,
        maps_searched: 1,
    })
}

/// Necessary condition for ever discriminating `obs` unambiguously: true iff
/// some effect has a zero eigenvalue (within its scale-aware tolerance).
/// When false, no probe in any number of shots yields an error-free "this is
/// it" conclusion for this observable — though identification against a
/// second observable may still succeed.
pub fn check_no_unambiguous_discrimination(obs: &Povm) -> Result<bool> {
    for effect in obs.effects() {
        if effect.eig_hermitian()?.min_eigenvalue() <= effect.default_zero_tol() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exploratory three-shot search report; see [`explore_three_shot`].
#[derive(Debug, Clone)]
pub struct ThreeShotReport {
    /// Whether any three-shot UD region map passed the kernel and
    /// conclusive-probability tests at the configured tolerances.
    pub feasible: bool,
    pub success_probability: f64,
    /// Full optimizer output, including the best probe and region map found.
    pub result: IdentificationResult,
    /// Monte Carlo samples drawn per observable for the error-free check
    /// (0 when infeasible or disabled).
    pub samples_per_observable: u64,
    /// Sampled outcome sequences that landed in a wrong-conclusion region.
    pub wrong_conclusions: u64,
    /// Reminder that this is numerical evidence at fixed tolerances, not a
    /// structural result.
    pub note: String,
}

/// Searches all three-shot UD region maps for two sharp qubit observables
/// and reports the best success probability found, cross-checked by Monte
/// Carlo sampling (no sampled sequence may land in a wrong-conclusion
/// region). The verdict is numerical evidence at fixed tolerances — not a
/// structural statement about three-shot discriminability.
pub fn explore_three_shot(
    a: [f64; 3],
    b: [f64; 3],
    priors: [f64; 2],
    samples: u64,
    seed: u64,
) -> Result<ThreeShotReport> {
    for v in [a, b] {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidBloch(format!(
                "sharp observable needs a unit direction, got length {norm:.6}"
            )));
        }
    }
    let obs_a = from_bloch(&BlochObservable::new(a, 1.0)?)?;
    let obs_b = from_bloch(&BlochObservable::new(b, 1.0)?)?;
    let task = TaskSpec::new(
        vec![obs_a.clone(), obs_b.clone()],
        Some(priors.to_vec()),
        None,
        3,
        Mode::Ud,
    )?;
    let result = optimize(&task)?;

    let mut wrong = 0u64;
    let mut drawn = 0u64;
    if result.feasible && samples > 0 {
        let probe = result.probe.as_ref().expect("feasible result has a probe");
        let region_map = result
            .region_map
            .as_ref()
            .expect("feasible result has a region map");
        for (index, obs) in [&obs_a, &obs_b].into_iter().enumerate() {
            let histogram = simulate(obs, probe, 3, samples, seed.wrapping_add(index as u64))?;
            drawn = samples;
            for (p, c) in region_map.patterns().iter().zip(region_map.conclusions()) {
                if let Some(x) = c {
                    if *x != index {
                        wrong += histogram.get(p).copied().unwrap_or(0);
                    }
                }
            }
        }
    }

    Ok(ThreeShotReport {
        feasible: result.feasible,
        success_probability: result.success_probability,
        result,
        samples_per_observable: drawn,
        wrong_conclusions: wrong,
        note: "exploratory numerical search at fixed tolerances; feasibility of this probe \
               family is evidence, not a structural result"
            .into(),
    })
}
