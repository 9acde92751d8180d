use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use pdshift_core::{Epsilon, ExactRational};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pgm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Formula,
    Eigen,
    /// Finite-prefix estimate from the first `n` positions.
    Empirical(u64),
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "formula" => Ok(Mode::Formula),
            "eigen" => Ok(Mode::Eigen),
            _ => {
                let n = s
                    .strip_prefix("empirical:")
                    .ok_or_else(|| format!("unknown mode '{s}' (formula, eigen, empirical:<n>)"))?;
                match n.parse::<u64>() {
                    Ok(n) if n > 0 => Ok(Mode::Empirical(n)),
                    _ => Err(format!("empirical mode needs a positive length, got '{n}'")),
                }
            }
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Formula => f.write_str("formula"),
            Mode::Eigen => f.write_str("eigen"),
            Mode::Empirical(n) => write!(f, "empirical:{n}"),
        }
    }
}

/// A set of thresholds to evaluate, listed from largest to smallest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sweep {
    /// `ε = 2^{−m}` for every `m` in `lo..=hi`: one row per step of the step functions.
    Dyadic { lo: u64, hi: u64 },
    /// `samples` thresholds spaced evenly in `log ε` between `min` and `max`.
    LogUniform {
        min: Epsilon,
        max: Epsilon,
        samples: usize,
    },
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep::Dyadic { lo: 1, hi: 10 }
    }
}

impl FromStr for Sweep {
    type Err = String;

    /// `dyadic:M` (m = 0..=M), `dyadic:LO..HI`, or `min:max:samples`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(range) = s.strip_prefix("dyadic:") {
            let int = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad dyadic bound '{t}'"))
            };
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (int(lo)?, int(hi)?),
                None => (0, int(range)?),
            };
            if lo > hi {
                return Err(format!("empty dyadic range {lo}..{hi}"));
            }
            return Ok(Sweep::Dyadic { lo, hi });
        }
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, samples] = parts[..] else {
            return Err(format!(
                "sweep must be min:max:samples or dyadic:M, got '{s}'"
            ));
        };
        let eps = |t: &str| t.parse::<Epsilon>().map_err(|e| e.to_string());
        let (min, max) = (eps(min)?, eps(max)?);
        let samples: usize = samples
            .parse()
            .map_err(|_| format!("bad sample count '{samples}'"))?;
        if samples == 0 {
            return Err("sweep needs at least one sample".into());
        }
        if min.value() > max.value() {
            return Err(format!("sweep minimum {min} exceeds maximum {max}"));
        }
        Ok(Sweep::LogUniform { min, max, samples })
    }
}

impl Sweep {
    pub fn thresholds(&self) -> Result<Vec<Epsilon>> {
        match self {
            Sweep::Dyadic { lo, hi } => Ok((*lo..=*hi).map(Epsilon::dyadic).collect()),
            Sweep::LogUniform { min, max, samples } => {
                if *samples == 1 || min == max {
                    return Ok(vec![max.clone(); *samples]);
                }
                let (lmin, lmax) = (log2(min)?, log2(max)?);
                let mut out = vec![max.clone()];
                for s in 1..samples - 1 {
                    let t = s as f64 / (samples - 1) as f64;
                    let x = (lmax + (lmin - lmax) * t).exp2();
                    let v = ExactRational::from_float(x).ok_or_else(|| {
                        CliError::Usage(format!("threshold {x} not representable"))
                    })?;
                    out.push(Epsilon::new(v)?);
                }
                out.push(min.clone());
                Ok(out)
            }
        }
    }
}

fn log2(eps: &Epsilon) -> Result<f64> {
    if let Epsilon::Dyadic(m) = eps {
        return Ok(-(*m as f64));
    }
    let v = eps.value();
    let x = v.to_f64().filter(|x| *x > 0.0 && x.is_finite());
    x.map(f64::log2)
        .ok_or_else(|| CliError::Usage(format!("threshold {eps} is out of floating-point range")))
}

/// Numerator and denominator of a threshold, `2^{−m}` written out in full.
pub fn eps_parts(eps: &Epsilon) -> (num_bigint::BigInt, num_bigint::BigInt) {
    let v = eps.value();
    (v.numer().clone(), v.denom().clone())
}
