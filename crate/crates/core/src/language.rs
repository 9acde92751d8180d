//! Factors of `ω`: windows `w_i^{(m)}`, the language `L_m`, the complexity
//! function `p(m)` and the structure of repeated windows.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sequence::omega_prefix;
use crate::word::Word;

/// Longest word accepted by [`window`] and [`locate`].
pub const MAX_WORD_LEN: u64 = 1 << 24;

/// `m = 2^k + q` with `0 ≤ q < 2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScaleDecomposition {
    pub m: u64,
    pub k: u32,
    pub q: u64,
}

impl ScaleDecomposition {
    /// `2^k`.
    pub fn base(&self) -> u64 {
        1 << self.k
    }

    /// Whether `q < 2^{k-1}`, written as `2q < 2^k` so that it is meaningful at `k = 0`.
    pub fn lower_half(&self) -> bool {
        2 * self.q < self.base()
    }

    /// `3·2^k`, the scan length that reaches every `m`-word.
    pub fn scan_len(&self) -> u64 {
        3 * self.base()
    }
}

pub fn decompose(m: u64) -> Result<ScaleDecomposition> {
    if m == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    let k = 63 - m.leading_zeros();
    Ok(ScaleDecomposition {
        m,
        k,
        q: m - (1 << k),
    })
}

/// Number of distinct factors of length `m`.
pub fn complexity(m: u64) -> Result<u64> {
    let ScaleDecomposition { k, q, .. } = decompose(m)?;
    if k == 0 {
        return Ok(2);
    }
    let half = 1u64 << (k - 1);
    Ok(if q <= half {
        3 * half + 2 * q
    } else {
        4 * half + q
    })
}

fn check_len(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "word length must be positive".into(),
        ));
    }
    if m > MAX_WORD_LEN {
        return Err(Error::CapExceeded {
            requested: m,
            cap: MAX_WORD_LEN,
        });
    }
    Ok(())
}

/// `w_i^{(m)} = ω_i … ω_{i+m-1}`.
pub fn window(i: u64, m: u64) -> Result<Word> {
    if i == 0 {
        return Err(Error::InvalidArgument("positions start at 1".into()));
    }
    check_len(m)?;
    let omega = omega_prefix((i + m - 1) as usize)?;
    Ok(omega.factor((i - 1) as usize, m as usize))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageEntry {
    pub word: Word,
    /// Least `i` with `w_i^{(m)} = word`.
    pub first_index: u64,
}

/// All factors of one length, ordered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageTable {
    pub m: u64,
    pub entries: Vec<LanguageEntry>,
}

impl LanguageTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LanguageEntry> {
        self.entries.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|e| &e.word)
    }
}

/// Scans `i = 1..=3·2^k` and keeps the first occurrence of every window.
///
/// Fails if the number of distinct windows differs from [`complexity`].
pub fn enumerate(m: u64) -> Result<LanguageTable> {
    check_len(m)?;
    let scale = decompose(m)?;
    let scan = scale.scan_len();
    let omega = omega_prefix((scan + m - 1) as usize)?;
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for i in 1..=scan {
        let w = omega.factor((i - 1) as usize, m as usize);
        if seen.insert(w.clone()) {
            entries.push(LanguageEntry {
                word: w,
                first_index: i,
            });
        }
    }
    let expected = complexity(m)?;
    if entries.len() as u64 != expected {
        return Err(Error::Consistency(format!(
            "scan of {scan} windows found {} words of length {m}, formula gives {expected}",
            entries.len()
        )));
    }
    Ok(LanguageTable { m, entries })
}

const HASH_MOD: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 0x1f3d_5b79_a2c4_e6f1 % HASH_MOD;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let r = ((p >> 61) as u64) + ((p as u64) & HASH_MOD);
    if r >= HASH_MOD {
        r - HASH_MOD
    } else {
        r
    }
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= HASH_MOD {
        r - HASH_MOD
    } else {
        r
    }
}

/// Polynomial hash of letters `start..start+len`, letters weighted 1 and 2.
fn poly_hash(w: &Word, start: usize, len: usize) -> u64 {
    (start..start + len).fold(0, |h, t| {
        add_mod(mul_mod(h, HASH_BASE), 1 + w.bit(t) as u64)
    })
}

/// Least `i` with `w_i^{(|u|)} = u`, or `None` if `u` is not a factor of `ω`.
///
/// Every factor first occurs at some `i ≤ 3·2^k`, so only that range is
/// scanned, with a rolling hash over the bit-packed prefix.
pub fn locate(u: &Word) -> Result<Option<u64>> {
    let m = u.len() as u64;
    check_len(m)?;
    let scan = decompose(m)?.scan_len();
    let omega = omega_prefix((scan + m - 1) as usize)?;
    let len = u.len();
    let target = poly_hash(u, 0, len);
    let top = (1..len).fold(1, |p, _| mul_mod(p, HASH_BASE));
    let mut h = poly_hash(&omega, 0, len);
    for i in 0..scan as usize {
        if h == target && omega.matches_at(i, u) {
            return Ok(Some(i as u64 + 1));
        }
        if i + 1 < scan as usize {
            let out = mul_mod(top, 1 + omega.bit(i) as u64);
            h = add_mod(h, HASH_MOD - out);
            h = add_mod(mul_mod(h, HASH_BASE), 1 + omega.bit(i + len) as u64);
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    /// `j = i + 2^{k+1}`.
    LongPeriod,
    /// `j = i + 2^{k-1}`.
    ShortPeriod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DuplicatePair {
    pub i: u64,
    pub j: u64,
    pub kind: PairKind,
}

/// Every pair `i < j ≤ 3·2^k` with `w_i^{(m)} = w_j^{(m)}`, from the closed-form
/// characterisation. Requires `m = 2^k + q` with `k ≥ 1` and `q ≥ 1`.
pub fn duplicate_pairs(m: u64) -> Result<Vec<DuplicatePair>> {
    let ScaleDecomposition { k, q, .. } = decompose(m)?;
    if k == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!(
            "duplicate pairs are characterised for m = 2^k + q with k ≥ 1, q ≥ 1; got m = {m}"
        )));
    }
    let base = 1u64 << k;
    let half = base / 2;
    let mut pairs: Vec<DuplicatePair> = (1..=base - q)
        .map(|i| DuplicatePair {
            i,
            j: i + 2 * base,
            kind: PairKind::LongPeriod,
        })
        .collect();
    if q < half {
        pairs.extend((base + 1..=3 * half - q).map(|i| DuplicatePair {
            i,
            j: i + half,
            kind: PairKind::ShortPeriod,
        }));
    }
    Ok(pairs)
}

/// Least `h ≤ 2^{k+1}` with `ω_{i+h-1} ≠ ω_{j+h-1}`, for `1 ≤ i < j ≤ 3·2^k`.
pub fn first_mismatch(i: u64, j: u64, k: u32) -> Result<u64> {
    if k == 0 || i == 0 || i >= j || j > 3 << k {
        return Err(Error::InvalidArgument(format!(
            "first_mismatch needs 1 ≤ i < j ≤ 3·2^k and k ≥ 1; got i={i}, j={j}, k={k}"
        )));
    }
    let span = 2u64 << k;
    let omega = omega_prefix((j + span - 1) as usize)?;
    let lcp = omega.common_prefix((i - 1) as usize, (j - 1) as usize, span as usize) as u64;
    if lcp >= span {
        return Err(Error::Consistency(format!(
            "windows at {i} and {j} agree on {span} letters"
        )));
    }
    Ok(lcp + 1)
}
