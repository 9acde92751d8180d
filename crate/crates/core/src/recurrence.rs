//! Correlation integral, correlation sums and the recurrence quantities RR and DET.
//!
//! The metric on one-sided sequences is `ρ(α, β) = 2^{−k+1}` where `k` is the
//! first position at which they differ, so `ρ(σ^{i−1}ω, σ^{j−1}ω) ≤ 2^{−m}`
//! exactly when `w_i^{(m)} = w_j^{(m)}`. Every quantity here therefore depends on
//! a threshold `ε` only through the dyadic index `m_ε` with
//! `2^{−m_ε} ≤ ε < 2^{−m_ε+1}` (and `m_ε = 0` for `ε ≥ 1`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::counting::window_multiplicities;
use crate::error::{Error, Result};
use crate::language::decompose;
use crate::measure::measure_table;
use crate::sequence::omega_prefix;
use crate::ExactRational;

/// A positive distance threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Epsilon {
    Value(ExactRational),
    /// `2^{−m}`.
    Dyadic(u64),
}

impl Epsilon {
    pub fn new(value: ExactRational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "threshold must be positive, got {value}"
            )));
        }
        Ok(Epsilon::Value(value))
    }

    pub fn dyadic(m: u64) -> Self {
        Epsilon::Dyadic(m)
    }

    pub fn value(&self) -> ExactRational {
        match self {
            Epsilon::Value(v) => v.clone(),
            Epsilon::Dyadic(m) => ExactRational::new(BigInt::one(), BigInt::one() << *m),
        }
    }

    /// `2^{−shift}·ε`.
    pub fn halved(&self, shift: u64) -> Epsilon {
        match self {
            Epsilon::Dyadic(m) => Epsilon::Dyadic(m + shift),
            Epsilon::Value(v) => Epsilon::Value(v / ExactRational::from(BigInt::one() << shift)),
        }
    }

    pub fn at_least_one(&self) -> bool {
        match self {
            Epsilon::Dyadic(m) => *m == 0,
            Epsilon::Value(v) => *v >= ExactRational::one(),
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::Dyadic(m) => write!(f, "2^-{m}"),
            Epsilon::Value(v) => write!(f, "{v}"),
        }
    }
}

fn parse_decimal(s: &str) -> Option<ExactRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(at) => (&s[..at], s[at + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        ExactRational::from(digits * Pow::pow(&ten, scale as u32))
    } else {
        ExactRational::new(digits, Pow::pow(&ten, (-scale) as u32))
    })
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `2^-m`, a fraction `a/b`, or a decimal such as `0.3` or `1e-3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse threshold '{s}'"));
        if let Some(m) = s.strip_prefix("2^-") {
            return Ok(Epsilon::Dyadic(m.parse().map_err(|_| bad())?));
        }
        let value = if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            ExactRational::new(a, b)
        } else {
            parse_decimal(s).ok_or_else(bad)?
        };
        Epsilon::new(value)
    }
}

/// Line length, embedding dimension and (optionally finite) trajectory length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RqaParams {
    pub ell: u64,
    pub d: u64,
    pub n: Option<u64>,
}

impl RqaParams {
    pub fn validate(&self, for_determinism: bool) -> Result<()> {
        if self.ell == 0 || self.d == 0 || self.n == Some(0) {
            return Err(Error::InvalidArgument(
                "line length, dimension and trajectory length must be positive".into(),
            ));
        }
        if for_determinism && self.ell < 2 {
            return Err(Error::InvalidArgument(
                "determinism needs a minimal line length of at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// The dyadic index `m_ε`, computed by exact comparison.
pub fn m_epsilon(eps: &Epsilon) -> Result<u64> {
    let v = match eps {
        Epsilon::Dyadic(m) => return Ok(*m),
        Epsilon::Value(v) => v,
    };
    if !v.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "threshold must be positive, got {v}"
        )));
    }
    if *v >= ExactRational::one() {
        return Ok(0);
    }
    // Least m ≥ 1 with a·2^m ≥ b, for ε = a/b.
    let (a, b) = (v.numer(), v.denom());
    let guess = b.bits().saturating_sub(a.bits()).max(1);
    let mut m = guess.saturating_sub(1).max(1);
    while (a << m) < *b {
        m += 1;
    }
    Ok(m)
}

/// Whether `ρ(σ^{i−1}ω, σ^{j−1}ω) ≤ 2^{−m}`, i.e. the `m`-windows at `i` and `j` agree.
pub fn scale_match(i: u64, j: u64, m: u64) -> Result<bool> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument("positions start at 1".into()));
    }
    if m == 0 || i == j {
        return Ok(true);
    }
    let omega = omega_prefix((i.max(j) + m - 1) as usize)?;
    Ok(omega.factors_equal((i - 1) as usize, (j - 1) as usize, m as usize))
}

fn ratio(num: BigInt, den: BigInt) -> ExactRational {
    ExactRational::new(num, den)
}

/// `9·4^k = (3·2^k)²`.
fn square_scale(k: u32) -> BigInt {
    BigInt::from(9) << (2 * k as usize)
}

/// `c(μ, ε)` as a function of `m_ε`.
pub fn correlation_integral(m_eps: u64) -> ExactRational {
    match m_eps {
        0 => ExactRational::one(),
        1 => ratio(5.into(), 9.into()),
        m => {
            let s = decompose(m).expect("m ≥ 2");
            let base = BigInt::one() << s.k as usize;
            let q = BigInt::from(s.q);
            let num = if s.lower_half() {
                BigInt::from(6) * base - BigInt::from(4) * q
            } else {
                BigInt::from(5) * base - BigInt::from(2) * q
            };
            ratio(num, square_scale(s.k))
        }
    }
}

/// `Σ_u μ([u])²` over the allowed `m_ε`-words.
pub fn correlation_integral_from_measure(m_eps: u64) -> Result<ExactRational> {
    if m_eps == 0 {
        return Err(Error::InvalidArgument(
            "the measure route needs m_ε ≥ 1".into(),
        ));
    }
    Ok(measure_table(m_eps)?.sum_of_squares())
}

/// `C(ω, n, ε)`: the fraction of pairs `0 ≤ i, j < n` whose shifts are within `ε`,
/// counted through window multiplicities.
pub fn correlation_sum(n: u64, m_eps: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "trajectory length must be positive".into(),
        ));
    }
    if m_eps == 0 {
        return Ok(ExactRational::one());
    }
    let pairs: BigInt = window_multiplicities(m_eps as usize, n as usize)?
        .into_iter()
        .map(|c| BigInt::from(c) * BigInt::from(c))
        .sum();
    Ok(ratio(pairs, BigInt::from(n) * BigInt::from(n)))
}

/// `C_ℓ(ω, n, ε)` for the Bowen metric `ρ_ℓ`.
///
/// `ρ_ℓ` never exceeds 1, so thresholds `ε ≥ 1` admit every pair. Below 1,
/// `ρ_ℓ ≤ ε` is equivalent to `ρ ≤ 2^{−ℓ+1}ε`.
pub fn bowen_correlation_sum(ell: u64, n: u64, eps: &Epsilon) -> Result<ExactRational> {
    if ell == 0 {
        return Err(Error::InvalidArgument(
            "line length must be positive".into(),
        ));
    }
    if eps.at_least_one() {
        return correlation_sum(n, 0);
    }
    correlation_sum(n, m_epsilon(&eps.halved(ell - 1))?)
}

/// Limit recurrence rate `RR_ℓ(ω, ε)` in closed form.
pub fn recurrence_rate(ell: u64, eps: &Epsilon) -> Result<ExactRational> {
    if ell == 0 {
        return Err(Error::InvalidArgument(
            "line length must be positive".into(),
        ));
    }
    let m = m_epsilon(eps)?;
    if m == 0 {
        return Ok(ExactRational::one());
    }
    if m == 1 && ell == 1 {
        return Ok(ratio(5.into(), 9.into()));
    }
    let s = decompose(m + ell - 1)?;
    let base = BigInt::one() << s.k as usize;
    let q = BigInt::from(s.q);
    let lines = BigInt::from(ell - 1);
    let num = if s.lower_half() {
        BigInt::from(6) * base - BigInt::from(4) * q + BigInt::from(4) * lines
    } else {
        BigInt::from(5) * base - BigInt::from(2) * q + BigInt::from(2) * lines
    };
    Ok(ratio(num, square_scale(s.k)))
}

/// `RR_ℓ(ω, n, ε) = ℓ·C_ℓ − (ℓ−1)·C_{ℓ+1}` from finite correlation sums.
pub fn recurrence_rate_empirical(ell: u64, n: u64, eps: &Epsilon) -> Result<ExactRational> {
    let c_ell = bowen_correlation_sum(ell, n, eps)?;
    if ell == 1 {
        return Ok(c_ell);
    }
    let c_next = bowen_correlation_sum(ell + 1, n, eps)?;
    let l = ExactRational::from(BigInt::from(ell));
    Ok(&l * c_ell - (l - ExactRational::one()) * c_next)
}

fn require_line(ell: u64) -> Result<()> {
    if ell < 2 {
        return Err(Error::InvalidArgument(
            "determinism needs a minimal line length of at least 2".into(),
        ));
    }
    Ok(())
}

/// `DET_ℓ(ω, ε) = RR_ℓ / RR_1`.
pub fn determinism(ell: u64, eps: &Epsilon) -> Result<ExactRational> {
    require_line(ell)?;
    Ok(recurrence_rate(ell, eps)? / recurrence_rate(1, eps)?)
}

/// Whether `DET_ℓ(ω, ε) = 1`: `ε ≥ 1`, or `m_ε` and `m_ε + ℓ − 1` both lie in
/// `[2^k, 2^k + 2^{k−1})` or both in `[2^k + 2^{k−1}, 2^{k+1})` for some `k ≥ 1`.
pub fn determinism_is_one(ell: u64, eps: &Epsilon) -> Result<bool> {
    require_line(ell)?;
    let m = m_epsilon(eps)? as u128;
    if m == 0 {
        return Ok(true);
    }
    let end = m + ell as u128 - 1;
    Ok((1..64u32).any(|k| {
        let base = 1u128 << k;
        let mid = base + base / 2;
        (base <= m && m < end && end < mid) || (mid <= m && m < end && end < 2 * base)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundsClass {
    /// `c = 2/(3m_ε)`: `m_ε` is `2^k` or `3·2^{k−1}`.
    LowerTight,
    /// `c = 25/(36m_ε)`: `m_ε` is `5·2^{k−2}`.
    UpperTight,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CintBounds {
    pub lower: ExactRational,
    pub upper: ExactRational,
    pub class: BoundsClass,
}

/// `2/(3m_ε) ≤ c(μ, ε) ≤ 25/(36m_ε)` for `m_ε ≥ 2`, with the tight cases classified.
pub fn cint_bounds(m_eps: u64) -> Result<CintBounds> {
    if m_eps < 2 {
        return Err(Error::InvalidArgument(
            "correlation-integral bounds need m_ε ≥ 2".into(),
        ));
    }
    let s = decompose(m_eps)?;
    let class = if s.q == 0 || s.q == s.base() / 2 {
        BoundsClass::LowerTight
    } else if s.k >= 2 && s.q == s.base() / 4 {
        BoundsClass::UpperTight
    } else {
        BoundsClass::Strict
    };
    let m = BigInt::from(m_eps);
    Ok(CintBounds {
        lower: ratio(2.into(), BigInt::from(3) * &m),
        upper: ratio(25.into(), BigInt::from(36) * &m),
        class,
    })
}

/// Limit `RR_ℓ^d` for embedding dimension `d`.
///
/// For `ε < 1`, embedding in dimension `d` shifts the resolution by `d − 1`:
/// the result is `RR_ℓ(ω, 2^{−(d−1)}ε)`. For `ε ≥ 1` every pair recurs and the
/// rate is 1.
pub fn embedded_rr(d: u64, ell: u64, eps: &Epsilon) -> Result<ExactRational> {
    if d == 0 || ell == 0 {
        return Err(Error::InvalidArgument(
            "dimension and line length must be positive".into(),
        ));
    }
    if eps.at_least_one() {
        return Ok(ExactRational::one());
    }
    recurrence_rate(ell, &eps.halved(d - 1))
}

pub fn embedded_det(d: u64, ell: u64, eps: &Epsilon) -> Result<ExactRational> {
    require_line(ell)?;
    Ok(embedded_rr(d, ell, eps)? / embedded_rr(d, 1, eps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn eps(s: &str) -> Epsilon {
        s.parse().unwrap()
    }

    #[test]
    fn parse_thresholds() {
        assert_eq!(eps("2^-3"), Epsilon::Dyadic(3));
        assert_eq!(eps("3/10").value(), q(3, 10));
        assert_eq!(eps("0.3").value(), q(3, 10));
        assert_eq!(eps("1e-3").value(), q(1, 1000));
        assert_eq!(eps("2.5E1").value(), q(25, 1));
        assert_eq!(eps("1").value(), q(1, 1));
        assert!("0".parse::<Epsilon>().is_err());
        assert!("-1/2".parse::<Epsilon>().is_err());
        assert!("1/0".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
        assert!(".".parse::<Epsilon>().is_err());
    }

    #[test]
    fn m_epsilon_examples() {
        assert_eq!(m_epsilon(&eps("1")).unwrap(), 0);
        assert_eq!(m_epsilon(&eps("1/2")).unwrap(), 1);
        assert_eq!(m_epsilon(&eps("3/10")).unwrap(), 2);
        assert_eq!(m_epsilon(&eps("7")).unwrap(), 0);
        assert!(m_epsilon(&Epsilon::Value(q(0, 1))).is_err());
    }

    #[test]
    fn m_epsilon_is_exact_at_breakpoints() {
        for m in 1..80u64 {
            let at = Epsilon::Dyadic(m).value();
            assert_eq!(m_epsilon(&Epsilon::Value(at.clone())).unwrap(), m);
            let tiny = ExactRational::new(BigInt::one(), BigInt::one() << 200);
            assert_eq!(m_epsilon(&Epsilon::Value(&at - &tiny)).unwrap(), m + 1);
            assert_eq!(
                m_epsilon(&Epsilon::Value(&at * q(2, 1) - &tiny)).unwrap(),
                m
            );
        }
    }

    #[test]
    fn scale_match_examples() {
        assert!(scale_match(1, 5, 3).unwrap());
        assert!(!scale_match(1, 2, 1).unwrap());
        assert!(scale_match(17, 17, 40).unwrap());
        assert!(scale_match(1, 2, 0).unwrap());
    }

    #[test]
    fn correlation_integral_examples() {
        assert_eq!(correlation_integral(1), q(5, 9));
        assert_eq!(correlation_integral(0), q(1, 1));
        assert_eq!(correlation_integral(2), q(1, 3));
        assert_eq!(correlation_integral_from_measure(1).unwrap(), q(5, 9));
        assert_eq!(correlation_integral_from_measure(4).unwrap(), q(1, 6));
        assert!(correlation_integral_from_measure(0).is_err());
    }

    #[test]
    fn correlation_integral_agrees_with_measure_route() {
        for m in 1..=300 {
            assert_eq!(
                correlation_integral(m),
                correlation_integral_from_measure(m).unwrap(),
                "m={m}"
            );
        }
    }

    #[test]
    fn correlation_sum_examples() {
        assert_eq!(correlation_sum(17, 0).unwrap(), q(1, 1));
        assert_eq!(correlation_sum(4, 1).unwrap(), q(10, 16));
        let c = correlation_sum(1 << 16, 2).unwrap().to_f64().unwrap();
        assert!((c - 1.0 / 3.0).abs() < 1e-3);
        assert!(correlation_sum(0, 1).is_err());
    }

    #[test]
    fn bowen_examples() {
        let n = 1000;
        for e in ["1/2", "3/10", "2^-5"] {
            let e = eps(e);
            assert_eq!(
                bowen_correlation_sum(1, n, &e).unwrap(),
                correlation_sum(n, m_epsilon(&e).unwrap()).unwrap()
            );
        }
        assert_eq!(
            bowen_correlation_sum(2, 4, &Epsilon::Dyadic(1)).unwrap(),
            q(6, 16)
        );
        for ell in 1..6 {
            let big = Epsilon::Value(ExactRational::from(BigInt::one() << (ell - 1)));
            assert_eq!(bowen_correlation_sum(ell, 50, &big).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn recurrence_rate_examples() {
        assert_eq!(recurrence_rate(1, &Epsilon::Dyadic(1)).unwrap(), q(5, 9));
        assert_eq!(recurrence_rate(2, &Epsilon::Dyadic(1)).unwrap(), q(4, 9));
        for ell in 1..10 {
            assert_eq!(recurrence_rate(ell, &eps("1")).unwrap(), q(1, 1));
            assert_eq!(recurrence_rate(ell, &eps("5/2")).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn empirical_recurrence_rate_examples() {
        let e = eps("3/10");
        assert_eq!(
            recurrence_rate_empirical(1, 999, &e).unwrap(),
            correlation_sum(999, 2).unwrap()
        );
        let rr = recurrence_rate_empirical(2, 1 << 16, &Epsilon::Dyadic(1))
            .unwrap()
            .to_f64()
            .unwrap();
        assert!((rr - 4.0 / 9.0).abs() < 1e-3);
        assert_eq!(
            recurrence_rate_empirical(2, 4, &Epsilon::Dyadic(0)).unwrap(),
            q(1, 1)
        );
    }

    #[test]
    fn determinism_examples() {
        assert_eq!(determinism(2, &Epsilon::Dyadic(1)).unwrap(), q(4, 5));
        assert_eq!(determinism(2, &Epsilon::Dyadic(4096)).unwrap(), q(1, 1));
        for ell in 2..8 {
            assert_eq!(determinism(ell, &eps("1")).unwrap(), q(1, 1));
        }
        assert!(determinism(1, &Epsilon::Dyadic(3)).is_err());
    }

    #[test]
    fn determinism_predicate_examples() {
        assert!(determinism_is_one(2, &Epsilon::Dyadic(4096)).unwrap());
        assert!(!determinism_is_one(2, &Epsilon::Dyadic(1)).unwrap());
        assert!(determinism_is_one(5, &eps("3")).unwrap());
        // m = 11 and m + 2 = 13 straddle 2^3 + 2^2 = 12.
        assert!(!determinism_is_one(3, &Epsilon::Dyadic(11)).unwrap());
        assert_ne!(determinism(3, &Epsilon::Dyadic(11)).unwrap(), q(1, 1));
        assert!(determinism_is_one(2, &Epsilon::Dyadic(9)).unwrap());
        assert!(determinism_is_one(1, &Epsilon::Dyadic(9)).is_err());
    }

    #[test]
    fn cint_bounds_examples() {
        let b = cint_bounds(2).unwrap();
        assert_eq!(b.class, BoundsClass::LowerTight);
        assert_eq!(b.lower, correlation_integral(2));
        assert_eq!(correlation_integral(2), q(2, 6));

        let b = cint_bounds(5).unwrap();
        assert_eq!(b.class, BoundsClass::UpperTight);
        assert_eq!(b.upper, correlation_integral(5));
        assert_eq!(correlation_integral(5), q(25, 180));

        let b = cint_bounds(6).unwrap();
        assert_eq!(b.class, BoundsClass::LowerTight);
        assert_eq!(correlation_integral(6), q(1, 9));

        assert_eq!(cint_bounds(7).unwrap().class, BoundsClass::Strict);
        assert!(cint_bounds(1).is_err());
    }

    #[test]
    fn embedded_examples() {
        for ell in 1..5 {
            for m in 0..6 {
                let e = Epsilon::Dyadic(m);
                assert_eq!(
                    embedded_rr(1, ell, &e).unwrap(),
                    recurrence_rate(ell, &e).unwrap()
                );
            }
        }
        assert_eq!(
            embedded_rr(2, 1, &Epsilon::Dyadic(1)).unwrap(),
            recurrence_rate(1, &Epsilon::Dyadic(2)).unwrap()
        );
        assert_eq!(
            embedded_rr(3, 2, &Epsilon::Dyadic(1)).unwrap(),
            recurrence_rate(2, &Epsilon::Dyadic(3)).unwrap()
        );
        assert_eq!(embedded_rr(2, 1, &Epsilon::Dyadic(0)).unwrap(), q(1, 1));
        assert_eq!(embedded_det(1, 2, &Epsilon::Dyadic(1)).unwrap(), q(4, 5));
        assert_eq!(
            embedded_det(2, 2, &Epsilon::Dyadic(1)).unwrap(),
            determinism(2, &Epsilon::Dyadic(2)).unwrap()
        );
        assert_eq!(embedded_det(3, 4, &eps("2")).unwrap(), q(1, 1));
        assert!(embedded_rr(0, 1, &Epsilon::Dyadic(1)).is_err());
    }

    #[test]
    fn params_validation() {
        let p = RqaParams {
            ell: 1,
            d: 1,
            n: None,
        };
        assert!(p.validate(false).is_ok());
        assert!(p.validate(true).is_err());
        assert!(RqaParams {
            ell: 2,
            d: 0,
            n: None
        }
        .validate(false)
        .is_err());
    }
}
