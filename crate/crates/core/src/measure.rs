//! Cylinder measures `μ([u])` of the unique shift-invariant measure.
//!
//! Three routes are available and are expected to agree exactly:
//!
//! 1. the closed form indexed by the first occurrence of `u`
//!    ([`measure_by_index`], [`measure_table`]);
//! 2. the normalised eigenvector for eigenvalue 2 of the composition matrix of
//!    the induced substitution on `m`-words ([`perron_measure_oracle`]);
//! 3. window frequencies along a finite prefix ([`empirical_frequency`]), which
//!    only converge to the measure.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::language::{decompose, enumerate, locate, LanguageTable};
use crate::linalg::{nullspace, SparseRow};
use crate::sequence::{omega_prefix, substitution_image};
use crate::word::Word;
use crate::ExactRational;

fn frac(num: u64, den: u64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// `μ([u])` for the allowed `m`-word `u` whose least occurrence index is `i`.
///
/// The value is `2/(3·2^k)` when `i ≤ 2^k − q`, or when `q < 2^{k−1}` and
/// `2^k < i ≤ 2^k + 2^{k−1} − q`; otherwise `1/(3·2^k)`. The second clause is
/// evaluated in integer form (`2q < 2^k`, `2i ≤ 3·2^k − 2q`) so it is vacuous at
/// `k = 0`.
pub fn measure_by_index(i: u64, m: u64) -> Result<ExactRational> {
    let s = decompose(m)?;
    if i == 0 || i > s.scan_len() {
        return Err(Error::InvalidArgument(format!(
            "least occurrence index {i} outside 1..={} for m = {m}",
            s.scan_len()
        )));
    }
    let base = s.base();
    let heavy = i <= base - s.q || (s.lower_half() && base < i && 2 * i <= 3 * base - 2 * s.q);
    Ok(frac(if heavy { 2 } else { 1 }, 3 * base))
}

/// `μ([u])`, or `None` when `u` is not a factor of `ω`.
pub fn measure(u: &Word) -> Result<Option<ExactRational>> {
    match locate(u)? {
        Some(i) => measure_by_index(i, u.len() as u64).map(Some),
        None => Ok(None),
    }
}

/// `r(m)`: how many `m`-words carry the larger measure `2/(3·2^k)`.
pub fn class_count(m: u64) -> Result<u64> {
    let s = decompose(m)?;
    if s.k == 0 {
        return Ok(1);
    }
    let half = s.base() / 2;
    Ok(if s.q < half {
        3 * half - 2 * s.q
    } else {
        s.base() - s.q
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureRow {
    pub word: Word,
    pub first_index: u64,
    pub value: ExactRational,
}

/// One exact measure per allowed `m`-word, in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureTable {
    pub m: u64,
    pub rows: Vec<MeasureRow>,
}

impl MeasureTable {
    pub fn total(&self) -> ExactRational {
        self.weighted_sum(|v| v.clone())
    }

    fn weighted_sum(&self, f: impl Fn(&ExactRational) -> ExactRational) -> ExactRational {
        let mut groups: HashMap<&ExactRational, u64> = HashMap::new();
        for r in &self.rows {
            *groups.entry(&r.value).or_default() += 1;
        }
        groups
            .into_iter()
            .map(|(v, n)| f(v) * ExactRational::from(BigInt::from(n)))
            .sum()
    }

    pub fn get(&self, word: &Word) -> Option<&ExactRational> {
        self.rows.iter().find(|r| &r.word == word).map(|r| &r.value)
    }

    /// Number of rows equal to `value`.
    pub fn count_of(&self, value: &ExactRational) -> usize {
        self.rows.iter().filter(|r| &r.value == value).count()
    }

    pub fn sum_of_squares(&self) -> ExactRational {
        self.weighted_sum(|v| v * v)
    }
}

/// The closed-form measure of every allowed `m`-word.
pub fn measure_table(m: u64) -> Result<MeasureTable> {
    let lang = enumerate(m)?;
    let rows = lang
        .entries
        .into_iter()
        .map(|e| {
            Ok(MeasureRow {
                value: measure_by_index(e.first_index, m)?,
                word: e.word,
                first_index: e.first_index,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let table = MeasureTable { m, rows };

    if !table.total().is_one() {
        return Err(Error::Consistency(format!(
            "measures of {m}-words sum to {}",
            table.total()
        )));
    }
    let heavy = frac(2, 3 * decompose(m)?.base());
    let r = class_count(m)?;
    if table.count_of(&heavy) as u64 != r {
        return Err(Error::Consistency(format!(
            "{} words of length {m} carry measure {heavy}, expected {r}",
            table.count_of(&heavy)
        )));
    }
    Ok(table)
}

/// `ζ^{(m)}(u)`: the windows of `ζ(u)` at offsets 1 and 2, each of length `|u|`.
pub fn block_substitution(u: &Word) -> Result<(Word, Word)> {
    if u.is_empty() {
        return Err(Error::InvalidArgument(
            "the induced substitution acts on nonempty words".into(),
        ));
    }
    let image = substitution_image(u);
    let m = u.len();
    Ok((image.factor(0, m), image.factor(1, m)))
}

/// Composition matrix of `ζ^{(m)}` over `L_m`: entry `(u, v)` counts the
/// occurrences of `v` among the two letters of `ζ^{(m)}(u)`.
#[derive(Clone, Debug)]
pub struct CompositionMatrix {
    pub m: u64,
    pub alphabet: LanguageTable,
    pub entries: Vec<Vec<u8>>,
}

impl CompositionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as u32).sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<u32> {
        let mut sums = vec![0u32; self.size()];
        for row in &self.entries {
            for (s, &x) in sums.iter_mut().zip(row) {
                *s += x as u32;
            }
        }
        sums
    }
}

pub fn composition_matrix(m: u64) -> Result<CompositionMatrix> {
    let alphabet = enumerate(m)?;
    let index: HashMap<&Word, usize> = alphabet.words().enumerate().map(|(i, w)| (w, i)).collect();
    let p = alphabet.len();
    let mut entries = vec![vec![0u8; p]; p];
    for (row, u) in entries.iter_mut().zip(alphabet.words()) {
        let (a, b) = block_substitution(u)?;
        for v in [a, b] {
            let col = *index.get(&v).ok_or_else(|| {
                Error::Consistency(format!("ζ^({m})({u}) contains {v}, which is not a factor"))
            })?;
            row[col] += 1;
        }
    }
    Ok(CompositionMatrix {
        m,
        alphabet,
        entries,
    })
}

/// Measures obtained by solving `d·M = 2d`, `Σd = 1` exactly over the rationals.
///
/// Fails unless the eigenspace is one-dimensional with a strictly positive
/// normalised generator.
pub fn perron_measure_oracle(m: u64) -> Result<MeasureTable> {
    let matrix = composition_matrix(m)?;
    let p = matrix.size();
    // Equation for target word v: Σ_u d_u M[u][v] − 2 d_v = 0.
    let mut rows: Vec<SparseRow> = vec![Vec::new(); p];
    for (u, row) in matrix.entries.iter().enumerate() {
        for (v, &x) in row.iter().enumerate() {
            if x != 0 {
                rows[v].push((u, frac(x as u64, 1)));
            }
        }
    }
    for (v, row) in rows.iter_mut().enumerate() {
        match row.binary_search_by_key(&v, |(c, _)| *c) {
            Ok(at) => {
                row[at].1 -= frac(2, 1);
                if row[at].1.is_zero() {
                    row.remove(at);
                }
            }
            Err(at) => row.insert(at, (v, -frac(2, 1))),
        }
    }
    let basis = nullspace(rows, p);
    if basis.len() != 1 {
        return Err(Error::Consistency(format!(
            "eigenvalue 2 of the m = {m} composition matrix has a {}-dimensional eigenspace",
            basis.len()
        )));
    }
    let v = &basis[0];
    let total: ExactRational = v.iter().sum();
    if total.is_zero() {
        return Err(Error::Consistency("eigenvector sums to zero".into()));
    }
    let rows = matrix
        .alphabet
        .entries
        .into_iter()
        .zip(v)
        .map(|(e, x)| {
            let value = x / &total;
            if !value.is_positive() {
                return Err(Error::Consistency(format!(
                    "eigenvector entry for {} is {value}",
                    e.word
                )));
            }
            Ok(MeasureRow {
                word: e.word,
                first_index: e.first_index,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureTable { m, rows })
}

/// `#{1 ≤ i ≤ n : w_i^{(|u|)} = u} / n`.
pub fn empirical_frequency(u: &Word, n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sample length must be positive".into(),
        ));
    }
    if u.is_empty() {
        return Ok(ExactRational::one());
    }
    let omega = omega_prefix(n as usize + u.len() - 1)?;
    let hits = if u.len() <= 64 {
        let target = u.window_u64(0, u.len());
        (0..n as usize)
            .filter(|&i| omega.window_u64(i, u.len()) == target)
            .count()
    } else {
        (0..n as usize).filter(|&i| omega.matches_at(i, u)).count()
    };
    Ok(frac(hits as u64, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn measure_by_index_examples() {
        assert_eq!(measure_by_index(1, 1).unwrap(), frac(2, 3));
        assert_eq!(measure_by_index(2, 1).unwrap(), frac(1, 3));
        for k in 1..8u32 {
            let m = 1u64 << k;
            for i in 1..=3 * m / 2 {
                assert_eq!(measure_by_index(i, m).unwrap(), frac(2, 3 * m));
            }
        }
        assert!(measure_by_index(4, 1).is_err());
        assert!(measure_by_index(0, 1).is_err());
    }

    #[test]
    fn single_letter_frequencies_converge() {
        let n = 3 << 20;
        let f0 = empirical_frequency(&w("0"), n).unwrap().to_f64().unwrap();
        let f1 = empirical_frequency(&w("1"), n).unwrap().to_f64().unwrap();
        assert!((f0 - 2.0 / 3.0).abs() < 1e-5);
        assert!((f1 - 1.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&w("00")).unwrap(), Some(frac(1, 3)));
        assert_eq!(measure(&w("010")).unwrap(), Some(frac(1, 3)));
        assert_eq!(measure(&w("11")).unwrap(), None);
        let f = empirical_frequency(&w("00"), 1 << 20)
            .unwrap()
            .to_f64()
            .unwrap();
        assert!((f - 1.0 / 3.0).abs() < 1e-4);
    }

    #[test]
    fn class_count_examples() {
        assert_eq!(class_count(1).unwrap(), 1);
        assert_eq!(class_count(4).unwrap(), 6);
        assert_eq!(class_count(6).unwrap(), 2);
        assert_eq!(measure_table(6).unwrap().count_of(&frac(2, 12)), 2);
    }

    #[test]
    fn measure_table_examples() {
        let t = measure_table(1).unwrap();
        assert_eq!(t.get(&w("0")), Some(&frac(2, 3)));
        assert_eq!(t.get(&w("1")), Some(&frac(1, 3)));

        let t = measure_table(2).unwrap();
        assert!(t.rows.iter().all(|r| r.value == frac(1, 3)));
        assert_eq!(t.rows.len(), 3);

        let t = measure_table(3).unwrap();
        let got: Vec<(String, ExactRational)> = t
            .rows
            .iter()
            .map(|r| (r.word.to_string(), r.value.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("010".into(), frac(1, 3)),
                ("100".into(), frac(1, 6)),
                ("000".into(), frac(1, 6)),
                ("001".into(), frac(1, 6)),
                ("101".into(), frac(1, 6)),
            ]
        );
    }

    #[test]
    fn block_substitution_examples() {
        assert_eq!(block_substitution(&w("0")).unwrap(), (w("0"), w("1")));
        assert_eq!(block_substitution(&w("1")).unwrap(), (w("0"), w("0")));
        assert_eq!(block_substitution(&w("01")).unwrap(), (w("01"), w("10")));
        assert!(block_substitution(&Word::new()).is_err());
    }

    #[test]
    fn composition_matrix_examples() {
        let c = composition_matrix(1).unwrap();
        assert_eq!(c.entries, vec![vec![1, 1], vec![2, 0]]);
        for m in 1..40 {
            let c = composition_matrix(m).unwrap();
            assert!(c.row_sums().iter().all(|&s| s == 2), "m={m}");
            assert!(c.entries.iter().flatten().all(|&x| x <= 2));
        }
        for k in 1..7 {
            let c = composition_matrix(1 << k).unwrap();
            assert!(c.column_sums().iter().all(|&s| s == 2), "k={k}");
        }
    }

    #[test]
    fn perron_examples() {
        let t = perron_measure_oracle(1).unwrap();
        assert_eq!(t.get(&w("0")), Some(&frac(2, 3)));
        assert_eq!(t.get(&w("1")), Some(&frac(1, 3)));
        for k in 1..7u32 {
            let m = 1u64 << k;
            let t = perron_measure_oracle(m).unwrap();
            assert!(t.rows.iter().all(|r| r.value == frac(2, 3 * m)));
        }
        assert_eq!(perron_measure_oracle(3).unwrap(), measure_table(3).unwrap());
    }

    #[test]
    fn empirical_examples() {
        assert_eq!(empirical_frequency(&w("0"), 4).unwrap(), frac(3, 4));
        for n in [1, 10, 1000, 12345] {
            assert!(empirical_frequency(&w("11"), n).unwrap().is_zero());
        }
        assert!(empirical_frequency(&w("0"), 0).is_err());
    }
}
