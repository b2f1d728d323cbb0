//! Perfect discrimination of a set of observables in n shots.
//!
//! The scheme: prepare an n-partite probe state, measure each subsystem once
//! with the unknown apparatus, and conclude from the relabeling class of the
//! outcome sequence. A candidate strategy is an *assignment* of every outcome
//! pattern to one of the M observables; it works with probe ψ exactly when
//! every sequence whose pattern is assigned to some other observable has zero
//! probability, i.e. when ψ lies in the kernel of a positive constraint
//! operator built from orbit effects. The search enumerates assignments in a
//! fixed lexicographic order, so results are deterministic.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator::{Operator, StateVector};
use crate::outcomes::{
    canonicalize, enumerate_patterns, expand_pattern, OutcomePattern, OutcomeSequence,
    PATTERN_LIMIT,
};
use crate::povm::Povm;

/// Default cap on the number of candidate assignments examined.
pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

/// Cap on the total Hilbert-space dimension d^n of the probe register.
pub const DIMENSION_LIMIT: u64 = 10_000;

/// Knobs for [`check_perfect_discrimination_with`].
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Abort with an error when M^(#patterns) exceeds this.
    pub search_cap: u64,
    /// Eigenvalue threshold below which a constraint-operator eigenvector
    /// counts as kernel; `None` picks a scale-aware default per operator.
    pub zero_tol: Option<f64>,
    /// Keep scanning after the first feasible assignment and report them all.
    pub collect_all: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            search_cap: DEFAULT_SEARCH_CAP,
            zero_tol: None,
            collect_all: false,
        }
    }
}

/// A total map from outcome patterns to observable indices: "if the outcome
/// sequence has this shape, conclude that observable".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    patterns: Vec<OutcomePattern>,
    mapping: Vec<usize>,
}

impl Assignment {
    /// Patterns in enumeration (lexicographic) order.
    pub fn patterns(&self) -> &[OutcomePattern] {
        &self.patterns
    }

    /// Observable index concluded for each pattern, aligned with
    /// [`Assignment::patterns`].
    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Observable index concluded for a specific pattern.
    pub fn observable_for(&self, p: &OutcomePattern) -> Option<usize> {
        self.patterns
            .iter()
            .position(|q| q == p)
            .map(|i| self.mapping[i])
    }

    /// Renders the map as (pattern name, observable name) rows in pattern
    /// order. `names` must have one entry per observable.
    pub fn conclusion_table<S: AsRef<str>>(&self, names: &[S]) -> Vec<(String, String)> {
        self.patterns
            .iter()
            .zip(&self.mapping)
            .map(|(p, &x)| (p.name(), names[x].as_ref().to_string()))
            .collect()
    }
}

/// Outcome of a perfect-discrimination search.
#[derive(Debug, Clone)]
pub struct DiscriminationResult {
    pub feasible: bool,
    /// First feasible assignment in lexicographic order, if any.
    pub assignment: Option<Assignment>,
    /// A unit probe vector drawn from the constraint-operator kernel.
    pub probe: Option<StateVector>,
    /// Full orthonormal basis of the kernel when feasible (the probe may be
    /// replaced by any unit vector in its span).
    pub kernel_basis: Vec<StateVector>,
    pub kernel_dim: usize,
    /// Constraint-operator spectrum floor: for a feasible result, the
    /// smallest eigenvalue of the winning operator (≈ 0); for an infeasible
    /// one, the smallest eigenvalue over every assignment tried — how close
    /// the best candidate came to having a kernel.
    pub min_eigenvalue: f64,
    /// Patterns for (n, k) in enumeration order.
    pub patterns: Vec<OutcomePattern>,
    /// Every feasible assignment encountered; the search stops at the first
    /// unless `collect_all` is set.
    pub all_feasible: Vec<Assignment>,
    /// Number of surjective assignments whose constraint operator was
    /// actually diagonalized.
    pub assignments_searched: u64,
}

/// The orbit effect of pattern `p` for observable `obs`: the sum of
/// `effects[s₁] ⊗ … ⊗ effects[s_n]` over every outcome sequence `s` in the
/// relabeling orbit described by `p`. Hermitian and PSD; the expectation in a
/// probe state is the total probability of seeing an outcome sequence of that
/// shape.
pub fn orbit_effect(obs: &Povm, p: &OutcomePattern, n: usize) -> Result<Operator> {
    if p.len() != n {
        return Err(Error::InvalidInput(format!(
            "pattern of length {} in a {n}-shot computation",
            p.len()
        )));
    }
    let total = checked_power(obs.dim(), n)?;
    let mut sum = Operator::zeros(total as usize);
    for seq in expand_pattern(p, obs.outcome_count())? {
        let mut factor = Operator::identity(1);
        for &j in seq.indices() {
            factor = factor.tensor(obs.effect(j));
        }
        sum.add_in_place(&factor)?;
    }
    Ok(sum)
}

/// Probability of observing the exact outcome sequence `s` when each of the
/// n subsystems of `probe` is measured once with `obs`. Clamped to [0, 1].
pub fn sequence_probability(obs: &Povm, probe: &StateVector, s: &OutcomeSequence) -> Result<f64> {
    if s.alphabet_size() != obs.outcome_count() {
        return Err(Error::DimensionMismatch(format!(
            "sequence over {} outcomes for an observable with {}",
            s.alphabet_size(),
            obs.outcome_count()
        )));
    }
    let total = checked_power(obs.dim(), s.len())?;
    if probe.dim() as u64 != total {
        return Err(Error::DimensionMismatch(format!(
            "probe dimension {} but {} shots on dimension {} need {total}",
            probe.dim(),
            s.len(),
            obs.dim()
        )));
    }
    let effects: Vec<&Operator> = s.indices().iter().map(|&j| obs.effect(j)).collect();
    let image = apply_tensor_factors(&effects, obs.dim(), probe.amplitudes());
    let p: f64 = probe
        .amplitudes()
        .iter()
        .zip(&image)
        .map(|(a, b)| (a.conj() * b).re)
        .sum();
    Ok(p.clamp(0.0, 1.0))
}

/// Searches all surjective pattern→observable assignments for one admitting
/// a probe state that discriminates the observables perfectly in `n` shots.
/// Uses default [`SearchOptions`].
pub fn check_perfect_discrimination(
    observables: &[Povm],
    n: usize,
) -> Result<DiscriminationResult> {
    check_perfect_discrimination_with(observables, n, &SearchOptions::default())
}

/// As [`check_perfect_discrimination`], with explicit search options.
///
/// Assignments are enumerated lexicographically (the first pattern is the
/// most significant digit, observable indices ascend) and the first feasible
/// one wins, so the result is deterministic. Non-surjective assignments are
/// skipped: an observable with no pattern of its own would need total
/// probability zero, which contradicts normalization.
pub fn check_perfect_discrimination_with(
    observables: &[Povm],
    n: usize,
    opts: &SearchOptions,
) -> Result<DiscriminationResult> {
    let m = observables.len();
    if m == 0 {
        return Err(Error::InvalidInput("no observables to discriminate".into()));
    }
    let dim = observables[0].dim();
    let k = observables[0].outcome_count();
    for obs in observables {
        if obs.dim() != dim || obs.outcome_count() != k {
            return Err(Error::DimensionMismatch(
                "observables must share dimension and outcome count".into(),
            ));
        }
    }
    let total_dim = checked_power(dim, n)? as usize;
    let patterns = enumerate_patterns(n, k)?;
    let p_count = patterns.len();

    let candidates = (m as u128)
        .checked_pow(p_count as u32)
        .unwrap_or(u128::MAX);
    if candidates > opts.search_cap as u128 {
        return Err(Error::SearchCapExceeded {
            candidates,
            cap: opts.search_cap,
        });
    }

    // Orbit effects, indexed [observable][pattern]. For each observable the
    // row sums to the identity on the n-fold space, so the constraint
    // operator of an assignment is C = M·I − Σ_p effect[map(p)][p].
    let mut effects = Vec::with_capacity(m);
    for obs in observables {
        let row: Vec<Operator> = patterns
            .iter()
            .map(|p| orbit_effect(obs, p, n))
            .collect::<Result<_>>()?;
        effects.push(row);
    }

    let mut digits = vec![0usize; p_count];
    let mut seen = vec![false; m];
    let mut searched: u64 = 0;
    let mut spectrum_floor = f64::INFINITY;
    let mut all_feasible: Vec<Assignment> = Vec::new();
    let mut winner: Option<(Assignment, Vec<StateVector>, usize, f64)> = None;

    'search: for count in 0..candidates {
        let mut rest = count;
        for slot in (0..p_count).rev() {
            digits[slot] = (rest % m as u128) as usize;
            rest /= m as u128;
        }

        seen.iter_mut().for_each(|s| *s = false);
        let mut covered = 0;
        for &x in &digits {
            if !seen[x] {
                seen[x] = true;
                covered += 1;
            }
        }
        if covered < m {
            continue;
        }

        let mut assigned_sum = Operator::zeros(total_dim);
        for (pi, &x) in digits.iter().enumerate() {
            assigned_sum.add_in_place(&effects[x][pi])?;
        }
        let constraint = Operator::from_fn(total_dim, |i, j| {
            let id = if i == j {
                Complex64::new(m as f64, 0.0)
            } else {
                Complex64::ZERO
            };
            id - assigned_sum.get(i, j)
        });

        searched += 1;
        let zero_tol = opts.zero_tol.unwrap_or(constraint.default_zero_tol());
        let eig = constraint.eig_hermitian()?;
        spectrum_floor = spectrum_floor.min(eig.eigenvalues[0]);

        let kernel_dim = eig
            .eigenvalues
            .iter()
            .take_while(|&&lambda| lambda <= zero_tol)
            .count();
        if kernel_dim == 0 {
            continue;
        }

        let assignment = Assignment {
            patterns: patterns.clone(),
            mapping: digits.clone(),
        };
        if winner.is_none() {
            let kernel_basis: Vec<StateVector> = eig.eigenvectors[..kernel_dim]
                .iter()
                .map(|v| v.clone().with_phase_convention())
                .collect();
            let probe_index = (0..kernel_dim)
                .min_by(|&a, &b| {
                    eig.eigenvalues[a]
                        .abs()
                        .total_cmp(&eig.eigenvalues[b].abs())
                })
                .expect("kernel is nonempty");
            winner = Some((
                assignment.clone(),
                kernel_basis,
                probe_index,
                eig.eigenvalues[0],
            ));
        }
        all_feasible.push(assignment);
        if !opts.collect_all {
            break 'search;
        }
    }

    Ok(match winner {
        Some((assignment, kernel_basis, probe_index, min_eigenvalue)) => DiscriminationResult {
            feasible: true,
            assignment: Some(assignment),
            probe: Some(kernel_basis[probe_index].clone()),
            kernel_dim: kernel_basis.len(),
            kernel_basis,
            min_eigenvalue,
            patterns,
            all_feasible,
            assignments_searched: searched,
        },
        None => DiscriminationResult {
            feasible: false,
            assignment: None,
            probe: None,
            kernel_basis: Vec::new(),
            kernel_dim: 0,
            min_eigenvalue: spectrum_floor,
            patterns,
            all_feasible,
            assignments_searched: searched,
        },
    })
}

/// Necessary condition for two-shot discriminability: true iff at most one
/// effect, across all the given observables, lacks a zero eigenvalue (within
/// each effect's scale-aware tolerance). Cheap prefilter — never a proof of
/// feasibility.
pub fn verify_zero_eigenvalue_condition(observables: &[Povm]) -> Result<bool> {
    let mut lacking = 0usize;
    for obs in observables {
        for effect in obs.effects() {
            let min = effect.eig_hermitian()?.min_eigenvalue();
            if min > effect.default_zero_tol() {
                lacking += 1;
                if lacking > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Samples `trials` outcome sequences of an n-shot measurement of `true_obs`
/// on `probe` from the exact joint distribution, canonicalizes each to its
/// pattern, and returns the pattern counts. Deterministic for a given seed;
/// only patterns that actually occurred appear in the histogram.
pub fn simulate(
    true_obs: &Povm,
    probe: &StateVector,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<BTreeMap<OutcomePattern, u64>> {
    let k = true_obs.outcome_count();
    let total = checked_power(true_obs.dim(), n)?;
    if probe.dim() as u64 != total {
        return Err(Error::DimensionMismatch(format!(
            "probe dimension {} but {n} shots on dimension {} need {total}",
            probe.dim(),
            true_obs.dim()
        )));
    }
    let sequence_count = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if sequence_count > PATTERN_LIMIT as u128 {
        return Err(Error::Overflow {
            n,
            k,
            limit: PATTERN_LIMIT,
        });
    }

    // Exact distribution over all k^n sequences, plus each one's pattern.
    let mut cumulative = Vec::with_capacity(sequence_count as usize);
    let mut pattern_of = Vec::with_capacity(sequence_count as usize);
    let mut running = 0.0f64;
    let mut indices = vec![0usize; n];
    loop {
        let seq = OutcomeSequence::new(indices.clone(), k)?;
        running += sequence_probability(true_obs, probe, &seq)?;
        cumulative.push(running);
        pattern_of.push(canonicalize(&seq));

        let mut slot = n;
        loop {
            if slot == 0 {
                break;
            }
            slot -= 1;
            indices[slot] += 1;
            if indices[slot] < k {
                break;
            }
            indices[slot] = 0;
            if slot == 0 {
                slot = usize::MAX; // odometer wrapped: all sequences visited
                break;
            }
        }
        if slot == usize::MAX {
            break;
        }
    }

    let total_mass = running;
    let mut histogram: BTreeMap<OutcomePattern, u64> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let u: f64 = rng.random::<f64>() * total_mass;
        let idx = cumulative.partition_point(|&c| c <= u);
        let idx = idx.min(pattern_of.len() - 1);
        *histogram.entry(pattern_of[idx].clone()).or_insert(0) += 1;
    }
    Ok(histogram)
}

/// Applies `effects[0] ⊗ … ⊗ effects[n−1]` to a vector without materializing
/// the product operator, contracting one tensor factor at a time.
fn apply_tensor_factors(
    effects: &[&Operator],
    dim: usize,
    amplitudes: &[Complex64],
) -> Vec<Complex64> {
    let n = effects.len();
    let mut current = amplitudes.to_vec();
    let mut next = vec![Complex64::ZERO; current.len()];
    for (mode, effect) in effects.iter().enumerate() {
        let stride = dim.pow((n - 1 - mode) as u32);
        let block = dim * stride;
        for outer in 0..current.len() / block {
            for inner in 0..stride {
                let base = outer * block + inner;
                for i in 0..dim {
                    let mut acc = Complex64::ZERO;
                    for j in 0..dim {
                        acc += effect.get(i, j) * current[base + j * stride];
                    }
                    next[base + i * stride] = acc;
                }
            }
        }
        std::mem::swap(&mut current, &mut next);
    }
    current
}

pub(crate) fn checked_power(dim: usize, n: usize) -> Result<u64> {
    let total = (dim as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > DIMENSION_LIMIT as u128 {
        return Err(Error::DimensionOverflow {
            total,
            limit: DIMENSION_LIMIT,
        });
    }
    Ok(total as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::{from_bloch, BlochObservable};

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sharp(direction: [f64; 3]) -> Povm {
        from_bloch(&BlochObservable::new(direction, 1.0).unwrap()).unwrap()
    }

    /// (|↑↑⟩ − |↓↓⟩)/√2, the two-qubit probe that tells σz from σx.
    fn anticorrelated_probe() -> StateVector {
        let s = 1.0 / 2.0f64.sqrt();
        StateVector::new(vec![r(s), r(0.0), r(0.0), r(-s)]).unwrap()
    }

    fn basis_projector(dim: usize, index: usize) -> Operator {
        Operator::projector(StateVector::basis_state(dim, index).amplitudes())
    }

    /// Five three-outcome qutrit observables built from coarse-grainings of
    /// one orthonormal basis; jointly discriminable in three shots.
    fn qutrit_family() -> Vec<Povm> {
        let p: Vec<Operator> = (0..3).map(|i| basis_projector(3, i)).collect();
        let zero = Operator::zeros(3);
        let a = Povm::new(vec![p[0].clone(), p[1].clone(), p[2].clone()]).unwrap();
        let b = Povm::new(vec![p[0].clone(), p[1].add(&p[2]).unwrap(), zero.clone()]).unwrap();
        let c = Povm::new(vec![p[0].add(&p[2]).unwrap(), p[1].clone(), zero.clone()]).unwrap();
        let d = Povm::new(vec![p[0].add(&p[1]).unwrap(), p[2].clone(), zero.clone()]).unwrap();
        let e = Povm::new(vec![
            Operator::identity(3),
            zero.clone(),
            zero,
        ])
        .unwrap();
        vec![a, b, c, d, e]
    }

    /// The two-outcome qutrit pair discriminable in two shots even though
    /// one effect has full rank: A = {P₁, P₂+P₃}, B = {P₁+P₂+tP₃, (1−t)P₃}.
    fn qutrit_pair(t: f64) -> (Povm, Povm) {
        let p: Vec<Operator> = (0..3).map(|i| basis_projector(3, i)).collect();
        let a = Povm::new(vec![p[0].clone(), p[1].add(&p[2]).unwrap()]).unwrap();
        let b1 = p[0].add(&p[1]).unwrap().add(&p[2].scale(t)).unwrap();
        let b2 = p[2].scale(1.0 - t);
        let b = Povm::new(vec![b1, b2]).unwrap();
        (a, b)
    }

    fn pattern(indices: &[usize]) -> OutcomePattern {
        canonicalize(&OutcomeSequence::new(indices.to_vec(), indices.len().max(2)).unwrap())
    }

    #[test]
    fn same_outcome_orbit_effect_of_sharp_z() {
        let z = sharp([0.0, 0.0, 1.0]);
        let effect = orbit_effect(&z, &pattern(&[0, 0]), 2).unwrap();
        // |↑↑⟩⟨↑↑| + |↓↓⟩⟨↓↓| = diag(1, 0, 0, 1).
        let mut expected = Operator::zeros(4);
        expected.set(0, 0, r(1.0));
        expected.set(3, 3, r(1.0));
        assert_eq!(effect, expected);
    }

    #[test]
    fn orbit_effects_partition_the_identity() {
        let obs = from_bloch(&BlochObservable::new([0.48, 0.0, 0.36], 1.0).unwrap()).unwrap();
        let n = 3;
        let mut sum = Operator::zeros(8);
        for p in enumerate_patterns(n, 2).unwrap() {
            sum.add_in_place(&orbit_effect(&obs, &p, n).unwrap()).unwrap();
        }
        let identity = Operator::identity(8);
        for i in 0..8 {
            for j in 0..8 {
                assert!((sum.get(i, j) - identity.get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn anticorrelated_probe_never_repeats_an_x_outcome() {
        let x = sharp([1.0, 0.0, 0.0]);
        let effect = orbit_effect(&x, &pattern(&[0, 0]), 2).unwrap();
        assert!(effect.expectation(&anticorrelated_probe()).abs() < 1e-12);
    }

    #[test]
    fn sequence_probabilities_match_hand_computation() {
        let z = sharp([0.0, 0.0, 1.0]);
        let x = sharp([1.0, 0.0, 0.0]);
        let up_up = StateVector::basis_state(4, 0);
        let seq = |a, b| OutcomeSequence::new(vec![a, b], 2).unwrap();

        assert!((sequence_probability(&z, &up_up, &seq(0, 0)).unwrap() - 1.0).abs() < 1e-12);
        assert!(sequence_probability(&z, &anticorrelated_probe(), &seq(0, 1)).unwrap() < 1e-12);
        // In the x basis the probe reads (|+−⟩ + |−+⟩)/√2: half the mass on
        // each of the two mixed sequences.
        assert!(
            (sequence_probability(&x, &anticorrelated_probe(), &seq(0, 1)).unwrap() - 0.5).abs()
                < 1e-12
        );
    }

    #[test]
    fn sequence_probability_rejects_mismatched_probe() {
        let z = sharp([0.0, 0.0, 1.0]);
        let seq = OutcomeSequence::new(vec![0, 1], 2).unwrap();
        let too_small = StateVector::basis_state(2, 0);
        assert!(matches!(
            sequence_probability(&z, &too_small, &seq),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn two_shots_tell_sharp_z_from_sharp_x() {
        let z = sharp([0.0, 0.0, 1.0]);
        let x = sharp([1.0, 0.0, 0.0]);
        let result = check_perfect_discrimination(&[z, x], 2).unwrap();
        assert!(result.feasible);
        assert_eq!(result.kernel_dim, 1);

        let assignment = result.assignment.unwrap();
        // Repeated outcomes point to the first observable, mixed to the second.
        assert_eq!(assignment.mapping(), &[0, 1]);
        let table = assignment.conclusion_table(&["sz", "sx"]);
        assert_eq!(
            table,
            vec![
                ("xx".to_string(), "sz".to_string()),
                ("xy".to_string(), "sx".to_string()),
            ]
        );

        let probe = result.probe.unwrap();
        assert!(probe.overlap_abs(&anticorrelated_probe()) > 1.0 - 1e-9);
    }

    #[test]
    fn three_shots_tell_five_qutrit_observables_apart() {
        let family = qutrit_family();
        let names = ["A", "B", "C", "D", "E"];
        let opts = SearchOptions {
            collect_all: true,
            ..SearchOptions::default()
        };
        let result = check_perfect_discrimination_with(&family, 3, &opts).unwrap();
        assert!(result.feasible);

        // The all-same pattern must conclude the observable whose first
        // effect is the identity, and the all-distinct pattern the fully
        // sharp one; the middle three coarse-grainings can be matched to the
        // three mixed patterns in any of the 3! ways.
        assert_eq!(result.all_feasible.len(), 6);
        for assignment in &result.all_feasible {
            let map = assignment.mapping();
            assert_eq!(map[0], 4, "all-same pattern must conclude E");
            assert_eq!(map[4], 0, "all-distinct pattern must conclude A");
        }
        let published = result
            .all_feasible
            .iter()
            .find(|a| a.mapping() == [4, 3, 2, 1, 0])
            .expect("descending table is feasible");
        assert_eq!(
            published.conclusion_table(&names),
            vec![
                ("xxx".to_string(), "E".to_string()),
                ("xxy".to_string(), "D".to_string()),
                ("xyx".to_string(), "C".to_string()),
                ("xyy".to_string(), "B".to_string()),
                ("xyz".to_string(), "A".to_string()),
            ]
        );

        // φ₁⊗φ₂⊗φ₃ works for that table: every sequence whose pattern is
        // assigned elsewhere has zero probability.
        let probe = StateVector::basis_state(3, 0)
            .tensor(&StateVector::basis_state(3, 1))
            .tensor(&StateVector::basis_state(3, 2));
        for (pi, p) in result.patterns.iter().enumerate() {
            let target = published.mapping()[pi];
            for (xi, obs) in family.iter().enumerate() {
                if xi == target {
                    continue;
                }
                for seq in expand_pattern(p, 3).unwrap() {
                    assert!(
                        sequence_probability(obs, &probe, &seq).unwrap() < 1e-12,
                        "nonzero probability for a sequence assigned elsewhere"
                    );
                }
            }
        }
    }

    #[test]
    fn qutrit_pair_with_full_rank_effect_is_discriminable() {
        let (a, b) = qutrit_pair(0.5);
        let opts = SearchOptions {
            collect_all: true,
            ..SearchOptions::default()
        };
        let result = check_perfect_discrimination_with(&[a.clone(), b.clone()], 2, &opts).unwrap();
        assert!(result.feasible);

        // Only one assignment works: repeated outcomes conclude B, mixed
        // conclude A (the swap fails because B's first effect has full rank).
        assert_eq!(result.all_feasible.len(), 1);
        assert_eq!(result.assignment.as_ref().unwrap().mapping(), &[1, 0]);

        // The kernel is spanned by φ₁⊗φ₂ and φ₂⊗φ₁ (indices 1 and 3 in the
        // row-major product basis).
        assert_eq!(result.kernel_dim, 2);
        for v in &result.kernel_basis {
            for (idx, amp) in v.amplitudes().iter().enumerate() {
                if idx != 1 && idx != 3 {
                    assert!(amp.norm() < 1e-9, "kernel leaks outside span at {idx}");
                }
            }
        }

        // The explicit product probe φ₁⊗φ₂ satisfies every zero-probability
        // constraint of that assignment.
        let probe = StateVector::basis_state(3, 0).tensor(&StateVector::basis_state(3, 1));
        let seq = |i, j| OutcomeSequence::new(vec![i, j], 2).unwrap();
        for i in 0..2 {
            assert!(sequence_probability(&a, &probe, &seq(i, i)).unwrap() < 1e-12);
        }
        for (i, j) in [(0, 1), (1, 0)] {
            assert!(sequence_probability(&b, &probe, &seq(i, j)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn oblique_sharp_pair_is_not_two_shot_discriminable() {
        let z = sharp([0.0, 0.0, 1.0]);
        let tilted = {
            let t = std::f64::consts::FRAC_PI_4;
            sharp([t.sin(), 0.0, t.cos()])
        };
        let result = check_perfect_discrimination(&[z, tilted], 2).unwrap();
        assert!(!result.feasible);
        assert!(result.probe.is_none());
        assert!(
            result.min_eigenvalue > 1e-6,
            "infeasibility margin too thin: {}",
            result.min_eigenvalue
        );
    }

    #[test]
    fn search_cap_is_enforced() {
        let z = sharp([0.0, 0.0, 1.0]);
        let x = sharp([1.0, 0.0, 0.0]);
        let opts = SearchOptions {
            search_cap: 3,
            ..SearchOptions::default()
        };
        assert!(matches!(
            check_perfect_discrimination_with(&[z, x], 2, &opts),
            Err(Error::SearchCapExceeded { candidates: 4, cap: 3 })
        ));
    }

    #[test]
    fn dimension_guard_rejects_huge_registers() {
        let z = sharp([0.0, 0.0, 1.0]);
        let x = sharp([1.0, 0.0, 0.0]);
        assert!(matches!(
            check_perfect_discrimination(&[z, x], 20),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn zero_eigenvalue_condition_examples() {
        let z = sharp([0.0, 0.0, 1.0]);
        let x = sharp([1.0, 0.0, 0.0]);
        assert!(verify_zero_eigenvalue_condition(&[z, x]).unwrap());

        let (a, b) = qutrit_pair(0.5);
        assert!(verify_zero_eigenvalue_condition(&[a, b]).unwrap());

        let trivial = from_bloch(&BlochObservable::new([0.0, 0.0, 0.0], 1.0).unwrap()).unwrap();
        assert!(!verify_zero_eigenvalue_condition(&[trivial.clone(), trivial]).unwrap());
    }

    #[test]
    fn simulation_respects_zero_probability_patterns() {
        let z = sharp([0.0, 0.0, 1.0]);
        let hist = simulate(&z, &anticorrelated_probe(), 2, 10_000, 7).unwrap();
        assert_eq!(hist.get(&pattern(&[0, 1])), None);
        assert_eq!(hist.values().sum::<u64>(), 10_000);

        let x = sharp([1.0, 0.0, 0.0]);
        let hist = simulate(&x, &anticorrelated_probe(), 2, 100_000, 11).unwrap();
        assert_eq!(hist.get(&pattern(&[0, 0])), None);
        assert_eq!(hist.get(&pattern(&[0, 1])).copied(), Some(100_000));
    }

    #[test]
    fn simulation_tracks_the_exact_distribution() {
        // Unsharp z-observable: P(first outcome) = 0.8 on |↑⟩. On |↑↑⟩ the
        // mixed pattern has probability 2·0.8·0.2 = 0.32.
        let obs = from_bloch(&BlochObservable::new([0.0, 0.0, 0.6], 1.0).unwrap()).unwrap();
        let probe = StateVector::basis_state(4, 0);
        let trials = 100_000;
        let hist = simulate(&obs, &probe, 2, trials, 42).unwrap();
        let mixed = *hist.get(&pattern(&[0, 1])).unwrap() as f64 / trials as f64;
        assert!((mixed - 0.32).abs() < 0.015, "mixed frequency {mixed}");
    }

    #[test]
    fn simulation_is_deterministic_and_empty_for_zero_trials() {
        let z = sharp([0.0, 0.0, 1.0]);
        let probe = anticorrelated_probe();
        let a = simulate(&z, &probe, 2, 500, 123).unwrap();
        let b = simulate(&z, &probe, 2, 500, 123).unwrap();
        assert_eq!(a, b);
        assert!(simulate(&z, &probe, 2, 0, 123).unwrap().is_empty());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
            ([-1.0f64..1.0, -1.0f64..1.0, 0.05f64..1.0]).prop_map(|v| {
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                [v[0] / norm, v[1] / norm, v[2] / norm]
            })
        }

        /// A unit vector plus another one orthogonal to it.
        fn orthogonal_directions() -> impl Strategy<Value = ([f64; 3], [f64; 3])> {
            (unit_vector(), 0.0f64..std::f64::consts::TAU).prop_map(|(a, gamma)| {
                // Any vector not collinear with a (z-component ≥ 0.05 keeps
                // the x-axis safe) seeds a perpendicular frame.
                let e1 = normalize(cross(a, [1.0, 0.0, 0.0]));
                let e2 = cross(a, e1);
                let b = [
                    gamma.cos() * e1[0] + gamma.sin() * e2[0],
                    gamma.cos() * e1[1] + gamma.sin() * e2[1],
                    gamma.cos() * e1[2] + gamma.sin() * e2[2],
                ];
                (a, b)
            })
        }

        fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        }

        fn normalize(v: [f64; 3]) -> [f64; 3] {
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            [v[0] / n, v[1] / n, v[2] / n]
        }

        fn probe_amplitudes(dim: usize) -> impl Strategy<Value = StateVector> {
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
                "nonzero amplitude vector",
                |parts| {
                    let amps: Vec<Complex64> =
                        parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                    StateVector::normalized(amps).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn sequence_probabilities_sum_to_one(
                v in unit_vector(),
                probe in probe_amplitudes(4),
            ) {
                let obs = from_bloch(&BlochObservable::new(v, 1.0).unwrap()).unwrap();
                let mut total = 0.0;
                for i in 0..2 {
                    for j in 0..2 {
                        let seq = OutcomeSequence::new(vec![i, j], 2).unwrap();
                        total += sequence_probability(&obs, &probe, &seq).unwrap();
                    }
                }
                prop_assert!((total - 1.0).abs() < 1e-9);
            }

            #[test]
            fn orbit_effects_partition_identity_for_unsharp_observables(
                v in unit_vector(),
                scale in 0.1f64..1.0,
                n in 1usize..=3,
            ) {
                let a = [v[0] * scale, v[1] * scale, v[2] * scale];
                let obs = from_bloch(&BlochObservable::new(a, 1.0).unwrap()).unwrap();
                let dim = 1usize << n;
                let mut sum = Operator::zeros(dim);
                for p in enumerate_patterns(n, 2).unwrap() {
                    sum.add_in_place(&orbit_effect(&obs, &p, n).unwrap()).unwrap();
                }
                for i in 0..dim {
                    for j in 0..dim {
                        let expected = if i == j { 1.0 } else { 0.0 };
                        prop_assert!((sum.get(i, j) - r(expected)).norm() < 1e-12);
                    }
                }
            }

            #[test]
            fn orthogonal_sharp_pairs_are_feasible_and_error_free(
                (a, b) in orthogonal_directions(),
            ) {
                let obs = [sharp(a), sharp(b)];
                let result = check_perfect_discrimination(&obs, 2).unwrap();
                prop_assert!(result.feasible);
                prop_assert!(verify_zero_eigenvalue_condition(&obs).unwrap());

                // The recovered probe satisfies the defining zero-probability
                // constraints of the assignment it came with.
                let probe = result.probe.as_ref().unwrap();
                let assignment = result.assignment.as_ref().unwrap();
                let zero_tol = 1e-9;
                for (pi, p) in assignment.patterns().iter().enumerate() {
                    let target = assignment.mapping()[pi];
                    for (xi, o) in obs.iter().enumerate() {
                        if xi == target { continue; }
                        for seq in expand_pattern(p, 2).unwrap() {
                            prop_assert!(
                                sequence_probability(o, probe, &seq).unwrap() <= zero_tol
                            );
                        }
                    }
                }
            }
        }
    }
}
