//! The period-doubling sequence `ω = 0100 0101 0100 0100 …` and its substitution.
//!
//! Three independent constructions are provided and must agree letter for letter:
//!
//! * **valuation**: `ω_i = v₂(i) mod 2`, where `v₂` is the 2-adic valuation;
//! * **substitution**: iterate `0 ↦ 01, 1 ↦ 00` on `0` and truncate;
//! * **toeplitz**: fill every other hole with `0`, then every other remaining
//!   hole with `1`, then `0` again, and so on.
//!
//! Positions are 1-based throughout the public API, matching `ω₁ω₂…`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Default upper bound on generated prefix lengths (2^26 letters, 8 MiB packed).
pub const DEFAULT_PREFIX_CAP: u64 = 1 << 26;

static PREFIX_CAP: AtomicU64 = AtomicU64::new(DEFAULT_PREFIX_CAP);

/// Current cap on prefix lengths handed out by [`omega_prefix`].
pub fn prefix_cap() -> u64 {
    PREFIX_CAP.load(Ordering::Relaxed)
}

/// Overrides the prefix cap for the whole process.
pub fn set_prefix_cap(cap: u64) {
    PREFIX_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorMethod {
    Valuation,
    Substitution,
    Toeplitz,
}

impl GeneratorMethod {
    pub const ALL: [GeneratorMethod; 3] = [
        GeneratorMethod::Valuation,
        GeneratorMethod::Substitution,
        GeneratorMethod::Toeplitz,
    ];
}

impl fmt::Display for GeneratorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorMethod::Valuation => "valuation",
            GeneratorMethod::Substitution => "substitution",
            GeneratorMethod::Toeplitz => "toeplitz",
        })
    }
}

impl FromStr for GeneratorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "valuation" => Ok(GeneratorMethod::Valuation),
            "substitution" => Ok(GeneratorMethod::Substitution),
            "toeplitz" => Ok(GeneratorMethod::Toeplitz),
            other => Err(Error::InvalidArgument(format!(
                "unknown generator method '{other}' (expected valuation, substitution or toeplitz)"
            ))),
        }
    }
}

/// `ω_i` for `i ≥ 1`, computed from the 2-adic valuation of `i`.
pub fn letter(i: u64) -> Result<Symbol> {
    if i == 0 {
        return Err(Error::InvalidArgument("positions start at 1".into()));
    }
    Ok(Symbol::from_bit(i.trailing_zeros() & 1 == 1))
}

/// `ω₁…ω_n` built with the requested construction.
pub fn prefix(n: usize, method: GeneratorMethod) -> Word {
    match method {
        GeneratorMethod::Valuation => prefix_by_valuation(n),
        GeneratorMethod::Substitution => prefix_by_substitution(n),
        GeneratorMethod::Toeplitz => prefix_by_toeplitz(n),
    }
}

fn prefix_by_valuation(n: usize) -> Word {
    let mut blocks = vec![0u64; n.div_ceil(64)];
    for (b, blk) in blocks.iter_mut().enumerate() {
        let base = 64 * b as u64;
        for off in 0..64u64 {
            let i = base + off + 1;
            *blk |= ((i.trailing_zeros() & 1) as u64) << off;
        }
    }
    Word::from_blocks(blocks, n)
}

fn prefix_by_substitution(n: usize) -> Word {
    let mut w: Word = "0".parse().expect("literal word");
    while w.len() < n {
        w = substitution_image(&w);
    }
    w.truncate(n);
    w
}

fn prefix_by_toeplitz(n: usize) -> Word {
    let mut w = Word::zeros(n);
    // Holes form the progression first, first + stride, …; every other hole is
    // filled in each round and the rest stay open.
    let (mut first, mut stride, mut round) = (1usize, 1usize, 0u32);
    while first <= n {
        if round % 2 == 1 {
            let mut pos = first;
            while pos <= n {
                w.set_bit(pos - 1, true);
                pos += 2 * stride;
            }
        }
        first += stride;
        stride *= 2;
        round += 1;
    }
    w
}

/// Places bit `t` of `x` at bit `2t` of the result.
#[inline]
fn spread_even(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// `ζ(w)`, the letter-wise image under `0 ↦ 01, 1 ↦ 00`.
///
/// Every image starts with `0` and its second letter is the complement of
/// the source letter, so the image is the source complemented and spread
/// onto odd positions.
pub fn substitution_image(w: &Word) -> Word {
    let out_len = 2 * w.len();
    let mut blocks = Vec::with_capacity(2 * w.blocks().len());
    for &blk in w.blocks() {
        let inv = !blk;
        blocks.push(spread_even(inv as u32) << 1);
        blocks.push(spread_even((inv >> 32) as u32) << 1);
    }
    Word::from_blocks(blocks, out_len)
}

/// `ζ^k(s)`, a word of length `2^k`; these are the blocks `0^{(2^k)}` and `1^{(2^k)}`.
pub fn block(s: Symbol, k: u32) -> Word {
    let mut w: Word = std::iter::once(s).collect();
    for _ in 0..k {
        w = substitution_image(&w);
    }
    w
}

fn cache() -> &'static RwLock<Arc<Word>> {
    static OMEGA: OnceLock<RwLock<Arc<Word>>> = OnceLock::new();
    OMEGA.get_or_init(|| RwLock::new(Arc::new(Word::new())))
}

/// A shared prefix of `ω` with at least `n` letters.
///
/// The cache only ever grows. Readers keep whatever `Arc` they were handed,
/// and a longer prefix is published only after it is fully built.
pub fn omega_prefix(n: usize) -> Result<Arc<Word>> {
    let cap = prefix_cap();
    if n as u64 > cap {
        return Err(Error::CapExceeded {
            requested: n as u64,
            cap,
        });
    }
    {
        let current = cache().read().expect("prefix cache poisoned");
        if current.len() >= n {
            return Ok(Arc::clone(&current));
        }
    }
    let mut slot = cache().write().expect("prefix cache poisoned");
    if slot.len() < n {
        let target = n
            .next_power_of_two()
            .max(1 << 12)
            .min((cap as usize).max(n));
        *slot = Arc::new(prefix_by_valuation(target));
    }
    Ok(Arc::clone(&slot))
}
