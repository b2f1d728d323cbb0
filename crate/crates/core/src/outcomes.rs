//! Orbits of outcome sequences under relabeling of the measurement device.
//!
//! An n-shot run of a k-outcome device yields a sequence in {0,…,k−1}ⁿ, but
//! the device's outcome labels carry no meaning: relabeling outcomes by any
//! permutation π ∈ S_k maps a sequence to an operationally identical one.
//! The informative object is therefore the orbit of a sequence under S_k,
//! canonically encoded as a *restricted-growth string*: relabel each value
//! by the order of its first appearance, e.g. (5, 2, 5) → [0, 1, 0]. Two
//! sequences share a restricted-growth string iff they lie in one orbit.
//!
//! Orbits of length-n strings with at most k distinct values are in
//! bijection with set partitions of n positions into ≤ k blocks, so their
//! number is Σ_{m=1}^{min(n,k)} S(n, m) with S the Stirling numbers of the
//! second kind.

use crate::error::{Error, Result};

/// Hard cap on the number of patterns a single enumeration may produce.
pub const PATTERN_LIMIT: u64 = 1_000_000;

/// Letters used to render patterns for reports: [0,0,1] → "xxy".
const BLOCK_LETTERS: &[u8] = b"xyzuvwabcdefghijklmnopqrst";

/// A raw n-shot outcome sequence over a k-letter outcome alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeSequence {
    indices: Vec<usize>,
    k: usize,
}

impl OutcomeSequence {
    /// Wraps raw outcome indices; every index must be < `k`.
    pub fn new(indices: Vec<usize>, k: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidInput("empty outcome sequence".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= k) {
            return Err(Error::InvalidInput(format!(
                "outcome index {bad} out of range for alphabet size {k}"
            )));
        }
        Ok(OutcomeSequence { indices, k })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Canonical representative of an S_k-orbit: a restricted-growth string
/// (`canonical[0] = 0`, each later entry at most one above the running max).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomePattern {
    canonical: Vec<usize>,
    block_count: usize,
}

impl OutcomePattern {
    pub fn canonical(&self) -> &[usize] {
        &self.canonical
    }

    /// Number of distinct values (blocks of the underlying set partition).
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Letter rendering used in tables: [0,0,1] → "xxy", [0,1,2] → "xyz".
    pub fn name(&self) -> String {
        self.canonical
            .iter()
            .map(|&b| {
                BLOCK_LETTERS
                    .get(b)
                    .map(|&c| c as char)
                    .unwrap_or('?')
            })
            .collect()
    }

    /// Orbit size for a k-letter alphabet: k·(k−1)···(k−blocks+1).
    pub fn orbit_size(&self, k: usize) -> u128 {
        (0..self.block_count).map(|i| (k - i) as u128).product()
    }
}

/// Replaces each value by the order of its first appearance, producing the
/// orbit's canonical pattern.
pub fn canonicalize(s: &OutcomeSequence) -> OutcomePattern {
    let mut relabel: Vec<Option<usize>> = vec![None; s.k];
    let mut next = 0;
    let canonical = s
        .indices
        .iter()
        .map(|&value| {
            *relabel[value].get_or_insert_with(|| {
                let block = next;
                next += 1;
                block
            })
        })
        .collect();
    OutcomePattern {
        canonical,
        block_count: next,
    }
}

/// Number of patterns `enumerate_patterns(n, k)` would produce, or an
/// `Overflow` error when it exceeds [`PATTERN_LIMIT`].
pub fn count_patterns(n: usize, k: usize) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("n and k must be at least 1".into()));
    }
    if k == 1 {
        return Ok(1);
    }
    // With k ≥ 2 the count is at least S(n,2) = 2^{n−1} − 1, so any large n
    // overflows without needing the table.
    let overflow = Error::Overflow {
        n,
        k,
        limit: PATTERN_LIMIT,
    };
    if n > 64 {
        return Err(overflow);
    }
    // Stirling numbers of the second kind: S(n,m) = m·S(n−1,m) + S(n−1,m−1).
    let cols = n.min(k);
    let mut row: Vec<u128> = vec![0; cols + 1];
    row[0] = 1; // S(0,0)
    for _ in 1..=n {
        let mut next = vec![0u128; cols + 1];
        for m in 1..=cols {
            next[m] = (m as u128)
                .checked_mul(row[m])
                .and_then(|v| v.checked_add(row[m - 1]))
                .ok_or(overflow.clone())?;
        }
        row = next;
    }
    let total: u128 = row[1..=cols].iter().sum();
    if total > PATTERN_LIMIT as u128 {
        return Err(overflow);
    }
    Ok(total as u64)
}

/// All restricted-growth strings of length `n` with at most `k` blocks, in
/// lexicographic order.
pub fn enumerate_patterns(n: usize, k: usize) -> Result<Vec<OutcomePattern>> {
    let count = count_patterns(n, k)? as usize;
    let mut out = Vec::with_capacity(count);
    let mut prefix = vec![0usize; n];
    // Depth-first extension by the smallest admissible value first keeps the
    // output lexicographic: position i may hold any existing block or open
    // block number `blocks` (if still below k).
    fn extend(
        prefix: &mut Vec<usize>,
        pos: usize,
        blocks: usize,
        n: usize,
        k: usize,
        out: &mut Vec<OutcomePattern>,
    ) {
        if pos == n {
            out.push(OutcomePattern {
                canonical: prefix.clone(),
                block_count: blocks,
            });
            return;
        }
        let top = if blocks < k { blocks } else { blocks - 1 };
        for value in 0..=top {
            prefix[pos] = value;
            extend(prefix, pos + 1, blocks.max(value + 1), n, k, out);
        }
    }
    prefix[0] = 0;
    extend(&mut prefix, 1, 1, n, k, &mut out);
    debug_assert_eq!(out.len(), count);
    Ok(out)
}

/// All sequences in the orbit of `p` over a `k`-letter alphabet: every
/// injective assignment of the pattern's blocks to outcome indices, in
/// lexicographic order of the assignment tuples.
pub fn expand_pattern(p: &OutcomePattern, k: usize) -> Result<Vec<OutcomeSequence>> {
    if p.block_count > k {
        return Err(Error::InvalidInput(format!(
            "pattern with {} blocks cannot be realized with {k} outcomes",
            p.block_count
        )));
    }
    let mut out = Vec::with_capacity(p.orbit_size(k) as usize);
    let mut image = vec![usize::MAX; p.block_count];
    let mut used = vec![false; k];
    fn assign(
        block: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        p: &OutcomePattern,
        k: usize,
        out: &mut Vec<OutcomeSequence>,
    ) {
        if block == image.len() {
            let indices = p.canonical.iter().map(|&b| image[b]).collect();
            out.push(OutcomeSequence { indices, k });
            return;
        }
        for candidate in 0..k {
            if !used[candidate] {
                used[candidate] = true;
                image[block] = candidate;
                assign(block + 1, image, used, p, k, out);
                used[candidate] = false;
            }
        }
    }
    assign(0, &mut image, &mut used, p, k, &mut out);
    Ok(out)
}

/// A relabeling of the k outcome indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            mapping: (0..k).collect(),
        }
    }

    /// Validates bijectivity of the supplied images.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let k = mapping.len();
        let mut seen = vec![false; k];
        for &image in &mapping {
            if image >= k || seen[image] {
                return Err(Error::InvalidInput(format!(
                    "mapping {mapping:?} is not a bijection on 0..{k}"
                )));
            }
            seen[image] = true;
        }
        Ok(Permutation { mapping })
    }

    /// Image of a single outcome index.
    pub fn apply(&self, index: usize) -> usize {
        self.mapping[index]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.mapping.len()];
        for (src, &dst) in self.mapping.iter().enumerate() {
            mapping[dst] = src;
        }
        Permutation { mapping }
    }

    /// Composition acting as `self` after `other`: (self∘other)(i).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            mapping: other.mapping.iter().map(|&i| self.mapping[i]).collect(),
        }
    }

    /// Relabels every outcome of a sequence.
    pub fn apply_to_sequence(&self, s: &OutcomeSequence) -> OutcomeSequence {
        OutcomeSequence {
            indices: s.indices.iter().map(|&i| self.mapping[i]).collect(),
            k: s.k,
        }
    }

    /// All k! permutations in lexicographic order of their mapping vectors.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut image = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn build(k: usize, image: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if image.len() == k {
                out.push(Permutation {
                    mapping: image.clone(),
                });
                return;
            }
            for candidate in 0..k {
                if !used[candidate] {
                    used[candidate] = true;
                    image.push(candidate);
                    build(k, image, used, out);
                    image.pop();
                    used[candidate] = false;
                }
            }
        }
        build(k, &mut image, &mut used, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(indices: &[usize], k: usize) -> OutcomeSequence {
        OutcomeSequence::new(indices.to_vec(), k).unwrap()
    }

    /// Independent Stirling-number-of-the-second-kind oracle (two-row DP),
    /// kept separate from the production recurrence on purpose.
    fn stirling2(n: usize, m: usize) -> u64 {
        if m == 0 {
            return u64::from(n == 0);
        }
        let mut prev = vec![0u64; m + 1];
        prev[0] = 1;
        for _ in 1..=n {
            let mut curr = vec![0u64; m + 1];
            for j in 1..=m {
                curr[j] = (j as u64) * prev[j] + prev[j - 1];
            }
            prev = curr;
        }
        prev[m]
    }

    #[test]
    fn canonicalize_merges_same_and_different() {
        assert_eq!(canonicalize(&seq(&[0, 0], 2)).canonical(), &[0, 0]);
        assert_eq!(canonicalize(&seq(&[1, 1], 2)).canonical(), &[0, 0]);
        assert_eq!(canonicalize(&seq(&[1, 4, 1], 6)).canonical(), &[0, 1, 0]);
    }

    #[test]
    fn three_shot_three_outcome_sequences_partition_into_five_orbits() {
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    seen.insert(canonicalize(&seq(&[a, b, c], 3)));
                }
            }
        }
        let names: Vec<String> = seen.iter().map(OutcomePattern::name).collect();
        assert_eq!(names, ["xxx", "xxy", "xyx", "xyy", "xyz"]);
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_patterns(2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_patterns(2, 5).unwrap().len(), 2);
        assert_eq!(enumerate_patterns(3, 3).unwrap().len(), 5);
        assert_eq!(enumerate_patterns(3, 7).unwrap().len(), 5);
        assert_eq!(enumerate_patterns(4, 2).unwrap().len(), 8);
        assert_eq!(enumerate_patterns(1, 5).unwrap().len(), 1);
    }

    #[test]
    fn enumerate_matches_brute_force_canonicalization() {
        for n in 1..=4 {
            for k in 1..=4 {
                let mut brute = std::collections::BTreeSet::new();
                let mut counter = vec![0usize; n];
                loop {
                    brute.insert(canonicalize(&seq(&counter, k)));
                    // Odometer over all k^n sequences.
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        counter[pos] += 1;
                        if counter[pos] < k {
                            break;
                        }
                        counter[pos] = 0;
                    }
                    if counter.iter().all(|&v| v == 0) {
                        break;
                    }
                }
                let enumerated = enumerate_patterns(n, k).unwrap();
                let expected: Vec<OutcomePattern> = brute.into_iter().collect();
                assert_eq!(enumerated, expected, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn enumerate_counts_match_stirling_sums() {
        for n in 1..=6 {
            for k in 1..=6 {
                let expected: u64 = (1..=n.min(k)).map(|m| stirling2(n, m)).sum();
                assert_eq!(count_patterns(n, k).unwrap(), expected, "n={n}, k={k}");
                assert_eq!(enumerate_patterns(n, k).unwrap().len() as u64, expected);
            }
        }
    }

    #[test]
    fn enumerate_rejects_huge_spaces() {
        assert!(matches!(
            enumerate_patterns(30, 5),
            Err(Error::Overflow { .. })
        ));
        assert!(matches!(
            enumerate_patterns(100, 2),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn expand_two_shot_patterns() {
        let patterns = enumerate_patterns(2, 2).unwrap();
        let same = expand_pattern(&patterns[0], 2).unwrap();
        assert_eq!(same, vec![seq(&[0, 0], 2), seq(&[1, 1], 2)]);
        let diff = expand_pattern(&patterns[1], 2).unwrap();
        assert_eq!(diff, vec![seq(&[0, 1], 2), seq(&[1, 0], 2)]);
    }

    #[test]
    fn expand_all_distinct_pattern_has_six_sequences() {
        let p = canonicalize(&seq(&[0, 1, 2], 3));
        let orbit = expand_pattern(&p, 3).unwrap();
        assert_eq!(orbit.len(), 6);
        assert_eq!(p.orbit_size(3), 6);
    }

    #[test]
    fn pattern_names_use_letter_notation() {
        let patterns = enumerate_patterns(3, 3).unwrap();
        let names: Vec<String> = patterns.iter().map(OutcomePattern::name).collect();
        assert_eq!(names, ["xxx", "xxy", "xyx", "xyy", "xyz"]);
    }

    #[test]
    fn canonicalize_is_invariant_under_relabeling() {
        // Exhaustive over all sequences and all permutations for small n, k.
        for k in 1..=4usize {
            for n in 1..=4usize {
                let perms = Permutation::all(k);
                let mut counter = vec![0usize; n];
                loop {
                    let s = seq(&counter, k);
                    let base = canonicalize(&s);
                    for p in &perms {
                        assert_eq!(canonicalize(&p.apply_to_sequence(&s)), base);
                    }
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        counter[pos] += 1;
                        if counter[pos] < k {
                            break;
                        }
                        counter[pos] = 0;
                    }
                    if counter.iter().all(|&v| v == 0) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let inv = p.inverse();
        assert_eq!(p.compose(&inv), Permutation::identity(3));
        assert_eq!(inv.compose(&p), Permutation::identity(3));
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(3)[0], Permutation::identity(3));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn sequence() -> impl Strategy<Value = OutcomeSequence> {
            (1usize..=5).prop_flat_map(|k| {
                (proptest::collection::vec(0..k, 1..=5), Just(k))
                    .prop_map(|(indices, k)| OutcomeSequence::new(indices, k).unwrap())
            })
        }

        proptest! {
            #[test]
            fn round_trip_through_expansion(s in sequence()) {
                let orbit = expand_pattern(&canonicalize(&s), s.alphabet_size()).unwrap();
                prop_assert!(orbit.contains(&s));
            }

            #[test]
            fn orbit_sizes_partition_the_sequence_space(n in 1usize..=5, k in 1usize..=5) {
                let total: u128 = enumerate_patterns(n, k)
                    .unwrap()
                    .iter()
                    .map(|p| p.orbit_size(k))
                    .sum();
                prop_assert_eq!(total, (k as u128).pow(n as u32));
            }
        }
    }
}
