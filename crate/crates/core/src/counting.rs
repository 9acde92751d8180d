//! Multiplicities of the windows `w_1^{(m)}, …, w_n^{(m)}` of `ω`.
//!
//! Windows of at most 64 letters are keyed by their packed bits; longer ones by
//! the packed word itself. The index range is split into chunks that are counted
//! in parallel and merged by addition, so the result does not depend on the split.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::Result;
use crate::sequence::omega_prefix;
use crate::word::Word;

const CHUNK: usize = 1 << 15;

fn count_by<K, F>(n: usize, key: F) -> HashMap<K, u64>
where
    K: Hash + Eq + Send,
    F: Fn(usize) -> K + Sync,
{
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut local = HashMap::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                *local.entry(key(i)).or_insert(0u64) += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Counts of each distinct `m`-window among positions `1..=n`.
pub fn window_counts(m: usize, n: usize) -> Result<HashMap<Word, u64>> {
    let omega = omega_prefix(n + m.saturating_sub(1))?;
    if m <= 64 {
        let packed = count_by(n, |i| omega.window_u64(i, m));
        Ok(packed
            .into_iter()
            .map(|(bits, c)| (Word::from_blocks(vec![bits], m), c))
            .collect())
    } else {
        Ok(count_by(n, |i| omega.factor(i, m)))
    }
}

/// Multiplicities only, unordered; their squares sum to the number of matching pairs.
pub fn window_multiplicities(m: usize, n: usize) -> Result<Vec<u64>> {
    if m == 0 {
        return Ok(if n == 0 { vec![] } else { vec![n as u64] });
    }
    let omega = omega_prefix(n + m - 1)?;
    let counts: Vec<u64> = if m <= 64 {
        count_by(n, |i| omega.window_u64(i, m))
            .into_values()
            .collect()
    } else {
        count_by(n, |i| omega.factor(i, m)).into_values().collect()
    };
    Ok(counts)
}
