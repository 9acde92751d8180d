//! Binary letters and bit-packed finite words.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A letter of the alphabet {0, 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
}

impl Symbol {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn bit(self) -> bool {
        self == Symbol::One
    }

    pub fn flip(self) -> Self {
        Symbol::from_bit(!self.bit())
    }
}

impl From<Symbol> for u8 {
    fn from(s: Symbol) -> u8 {
        s.bit() as u8
    }
}

impl TryFrom<u8> for Symbol {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self, Error> {
        match v {
            0 => Ok(Symbol::Zero),
            1 => Ok(Symbol::One),
            other => Err(Error::InvalidArgument(format!(
                "{other} is not a binary letter"
            ))),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// A finite word over {0, 1}, stored LSB-first in 64-bit blocks.
///
/// Letter `idx` (0-based) lives in bit `idx % 64` of block `idx / 64`. Bits past
/// `len` are always zero so that derived equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    blocks: Vec<u64>,
    len: usize,
}

#[inline]
fn blocks_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn with_capacity(letters: usize) -> Self {
        Word {
            blocks: Vec::with_capacity(blocks_for(letters)),
            len: 0,
        }
    }

    /// A word of `len` zeros.
    pub fn zeros(len: usize) -> Self {
        Word {
            blocks: vec![0; blocks_for(len)],
            len,
        }
    }

    pub(crate) fn from_blocks(mut blocks: Vec<u64>, len: usize) -> Self {
        blocks.truncate(blocks_for(len));
        blocks.resize(blocks_for(len), 0);
        if !len.is_multiple_of(64) {
            if let Some(last) = blocks.last_mut() {
                *last &= low_mask(len % 64);
            }
        }
        Word { blocks, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    #[inline]
    pub fn bit(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        (self.blocks[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    /// Letter at 0-based position `idx`.
    pub fn get(&self, idx: usize) -> Option<Symbol> {
        (idx < self.len).then(|| Symbol::from_bit(self.bit(idx)))
    }

    #[inline]
    pub(crate) fn set_bit(&mut self, idx: usize, value: bool) {
        let (b, o) = (idx >> 6, idx & 63);
        if value {
            self.blocks[b] |= 1 << o;
        } else {
            self.blocks[b] &= !(1 << o);
        }
    }

    pub fn push(&mut self, s: Symbol) {
        if self.len.is_multiple_of(64) {
            self.blocks.push(0);
        }
        let idx = self.len;
        self.len += 1;
        self.set_bit(idx, s.bit());
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.len).map(|i| Symbol::from_bit(self.bit(i)))
    }

    /// The (up to) 64 letters starting at `start`, packed LSB-first.
    /// Letters past the end of the word read as zero.
    #[inline]
    pub(crate) fn chunk(&self, start: usize) -> u64 {
        let (b, o) = (start >> 6, start & 63);
        let lo = self.blocks.get(b).copied().unwrap_or(0) >> o;
        if o == 0 {
            lo
        } else {
            lo | (self.blocks.get(b + 1).copied().unwrap_or(0) << (64 - o))
        }
    }

    /// Letters `start..start+len` packed into a `u64`; `len` must be at most 64.
    #[inline]
    pub fn window_u64(&self, start: usize, len: usize) -> u64 {
        debug_assert!(len <= 64 && start + len <= self.len);
        self.chunk(start) & low_mask(len)
    }

    /// The factor of length `len` starting at 0-based `start`.
    ///
    /// # Panics
    /// If the factor runs past the end of the word.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        assert!(
            start + len <= self.len,
            "factor {start}+{len} exceeds word length {}",
            self.len
        );
        let blocks = (0..blocks_for(len))
            .map(|b| self.chunk(start + 64 * b))
            .collect();
        Word::from_blocks(blocks, len)
    }

    /// Whether the factors of length `len` at `a` and `b` coincide.
    pub fn factors_equal(&self, a: usize, b: usize, len: usize) -> bool {
        self.common_prefix(a, b, len) == len
    }

    /// Length of the longest common prefix of the suffixes at `a` and `b`,
    /// capped at `cap` and at the end of the word.
    pub fn common_prefix(&self, a: usize, b: usize, cap: usize) -> usize {
        let cap = cap.min(self.len.saturating_sub(a.max(b)));
        let mut done = 0;
        while done < cap {
            let diff = self.chunk(a + done) ^ self.chunk(b + done);
            if diff != 0 {
                return (done + diff.trailing_zeros() as usize).min(cap);
            }
            done += 64;
        }
        cap
    }

    /// Whether `other` occurs in this word at 0-based position `start`.
    pub fn matches_at(&self, start: usize, other: &Word) -> bool {
        if start + other.len > self.len {
            return false;
        }
        other.blocks.iter().enumerate().all(|(b, &blk)| {
            let want = low_mask(other.len - 64 * b);
            (self.chunk(start + 64 * b) ^ blk) & want == 0
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Word::zeros(self.len + other.len);
        out.blocks[..self.blocks.len()].copy_from_slice(&self.blocks);
        let shift = self.len;
        for (b, &blk) in other.blocks.iter().enumerate() {
            let pos = shift + 64 * b;
            let (ob, oo) = (pos >> 6, pos & 63);
            out.blocks[ob] |= blk << oo;
            if oo != 0 && ob + 1 < out.blocks.len() {
                out.blocks[ob + 1] |= blk >> (64 - oo);
            }
        }
        out
    }

    /// Truncates to the first `len` letters; no-op if already shorter.
    pub fn truncate(&mut self, len: usize) {
        if len < self.len {
            *self = Word::from_blocks(std::mem::take(&mut self.blocks), len);
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .symbols()
            .map(|s| if s.bit() { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut w = Word::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => w.push(Symbol::Zero),
                '1' => w.push(Symbol::One),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "'{other}' is not a binary letter"
                    )))
                }
            }
        }
        Ok(w)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut w = Word::new();
        for s in iter {
            w.push(s);
        }
        w
    }
}
