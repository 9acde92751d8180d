//! Brute-force oracles shared by the integration tests. None of them call the
//! closed forms they are used to check.

#![allow(dead_code)]

use std::collections::HashMap;

use pdshift_core::{prefix, GeneratorMethod, Word};
use rayon::prelude::*;

pub fn omega(n: usize) -> Word {
    prefix(n, GeneratorMethod::Toeplitz)
}

/// For the lengths `2^k ≤ m < 2^{k+1}`: the number of distinct `m`-windows among
/// positions `1..=3·2^{k+1}`, obtained from pairwise longest common prefixes.
///
/// Position `i` starts a new word of length `m` iff its longest match with any
/// earlier position is shorter than `m`.
pub fn distinct_window_counts(k: u32) -> Vec<(u64, u64)> {
    let span = 2usize << k;
    let scan = 3 * span;
    let w = omega(scan + span);
    let longest: Vec<usize> = (0..scan)
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| w.common_prefix(i, j, span))
                .max()
                .unwrap_or(0)
        })
        .collect();
    (1u64 << k..2u64 << k)
        .map(|m| {
            let fresh = longest.iter().filter(|&&l| (l as u64) < m).count() as u64;
            (m, fresh)
        })
        .collect()
}

/// All pairs `i < j ≤ limit` (1-based) with equal `m`-windows, found by grouping.
pub fn equal_window_pairs(m: usize, limit: usize) -> Vec<(u64, u64)> {
    let w = omega(limit + m);
    let mut groups: HashMap<Word, Vec<u64>> = HashMap::new();
    for i in 0..limit {
        groups.entry(w.factor(i, m)).or_default().push(i as u64 + 1);
    }
    let mut pairs: Vec<(u64, u64)> = groups
        .values()
        .flat_map(|idx| {
            idx.iter()
                .enumerate()
                .flat_map(move |(a, &i)| idx[a + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Pair counts for the Bowen metric on the embedded sequence, computed from the
/// definitions.
///
/// `counts[ell][m]` is the number of pairs `0 ≤ i, j < n` with
/// `ρ_ell^d(σ^i x^d, σ^j x^d) ≤ 2^{−m}`, where `x^d_t = x_t … x_{t+d−1}` and
/// `ρ^d` is `2^{−k+1}` for the first differing embedded symbol `k`.
pub struct EmbeddedPairCounts {
    pub n: u64,
    pub counts: Vec<Vec<u128>>,
}

impl EmbeddedPairCounts {
    /// `C_ell^d(x^d, n, 2^{−m})` as a float.
    pub fn sum(&self, ell: usize, m: usize) -> f64 {
        self.counts[ell][m] as f64 / (self.n as f64 * self.n as f64)
    }

    /// The exact pair count behind [`Self::sum`].
    pub fn pairs(&self, ell: usize, m: usize) -> u128 {
        self.counts[ell][m]
    }

    pub fn rr(&self, ell: usize, m: usize) -> f64 {
        ell as f64 * self.sum(ell, m) - (ell as f64 - 1.0) * self.sum(ell + 1, m)
    }

    pub fn det(&self, ell: usize, m: usize) -> f64 {
        self.rr(ell, m) / self.rr(1, m)
    }
}

pub fn embedded_pair_counts(
    d: usize,
    n: usize,
    max_ell: usize,
    max_m: usize,
) -> EmbeddedPairCounts {
    // Enough embedded symbols to resolve every shift s < max_ell at 2^{−max_m}.
    let depth = max_ell + max_m + 1;
    let x = omega(n + depth + d);
    let embedded: Vec<u32> = (0..n + depth)
        .map(|t| (0..d).fold(0u32, |acc, r| (acc << 1) | x.bit(t + r) as u32))
        .collect();

    let mut kinds: HashMap<&[u32], u64> = HashMap::new();
    for i in 0..n {
        *kinds.entry(&embedded[i..i + depth]).or_default() += 1;
    }
    let kinds: Vec<(&[u32], u64)> = kinds.into_iter().collect();

    let mut counts = vec![vec![0u128; max_m + 1]; max_ell + 1];
    for &(a, ca) in &kinds {
        for &(b, cb) in &kinds {
            // ρ^d(σ^s a, σ^s b) = 2^{−exp[s]}, with exp = depth − s when no
            // mismatch is visible (finer than any threshold queried).
            let exps: Vec<usize> = (0..max_ell)
                .map(|s| (s..depth).position(|t| a[t] != b[t]).unwrap_or(depth - s))
                .collect();
            let weight = ca as u128 * cb as u128;
            for ell in 1..=max_ell {
                let bowen = *exps[..ell].iter().min().unwrap();
                for c in &mut counts[ell][..=max_m.min(bowen)] {
                    *c += weight;
                }
            }
        }
    }
    EmbeddedPairCounts {
        n: n as u64,
        counts,
    }
}
