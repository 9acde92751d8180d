use std::io::Write;

use num_traits::{One, ToPrimitive};
use pdshift_core::counting::window_counts;
use pdshift_core::{
    complexity, decompose, embedded_det, embedded_rr, m_epsilon, measure_table,
    perron_measure_oracle, prefix, recurrence_rate_empirical, scale_match, Epsilon, Error,
    ExactRational, GeneratorMethod, MeasureTable,
};
use serde_json::json;

use crate::error::{CliError, Result};
use crate::options::{eps_parts, Format, Mode};
use crate::output::{write_json, Cell, Table};

/// Largest `m` accepted by the eigenvector route.
pub const EIGEN_CAP: u64 = 256;

/// Largest `n` for which a recurrence plot is rendered.
pub const RPLOT_CAP: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    /// Correlation integral.
    Cint,
    /// Recurrence rate.
    Rr,
    /// Determinism.
    Det,
}

pub fn seq(n: usize, method: GeneratorMethod, format: Format, out: impl Write) -> Result<()> {
    let cap = pdshift_core::sequence::prefix_cap();
    if n as u64 > cap {
        return Err(Error::CapExceeded {
            requested: n as u64,
            cap,
        }
        .into());
    }
    let w = prefix(n, method).to_string();
    match format {
        Format::Csv => {
            let mut out = out;
            writeln!(out, "{w}")?;
        }
        Format::Json => write_json(
            &json!({ "n": n, "method": method.to_string(), "sequence": w }),
            out,
        )?,
        Format::Pgm => {
            return Err(CliError::Usage(
                "pgm output is only available for rplot".into(),
            ))
        }
    }
    Ok(())
}

/// Distinct `m`-windows among positions `1..=3·2^{k+1}`, counted by a direct scan.
pub fn scanned_complexity(m: u64) -> Result<u64> {
    let s = decompose(m)?;
    Ok(window_counts(m as usize, (6 * s.base()) as usize)?.len() as u64)
}

pub fn complexity_table(m_max: u64, oracle: bool) -> Result<Table> {
    if m_max == 0 {
        return Err(CliError::Usage("--m-max must be at least 1".into()));
    }
    let mut columns = vec!["m", "k", "q", "p_formula"];
    if oracle {
        columns.push("p_oracle");
    }
    let mut table = Table::new(columns);
    for m in 1..=m_max {
        let s = decompose(m)?;
        let p = complexity(m)?;
        let mut row = vec![
            Cell::Int(m),
            Cell::Int(s.k as u64),
            Cell::Int(s.q),
            Cell::Int(p),
        ];
        if oracle {
            let scanned = scanned_complexity(m)?;
            if scanned != p {
                return Err(Error::Consistency(format!(
                    "m={m}: formula gives {p}, scan finds {scanned}"
                ))
                .into());
            }
            row.push(Cell::Int(scanned));
        }
        table.rows.push(row);
    }
    Ok(table)
}

fn exact_rows(table: &MeasureTable) -> Table {
    let mut out = Table::new(vec!["word", "first_index", "numerator", "denominator"]);
    for r in &table.rows {
        out.rows.push(vec![
            Cell::Text(r.word.to_string()),
            Cell::Int(r.first_index),
            Cell::Big(r.value.numer().clone()),
            Cell::Big(r.value.denom().clone()),
        ]);
    }
    out
}

/// With `oracle`, eigen mode is also compared against the closed form.
pub fn measure_output(m: u64, mode: Mode, oracle: bool) -> Result<Table> {
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    match mode {
        Mode::Formula => Ok(exact_rows(&measure_table(m)?)),
        Mode::Eigen => {
            if m > EIGEN_CAP {
                return Err(CliError::Usage(format!(
                    "eigen mode is limited to m ≤ {EIGEN_CAP}, got {m}"
                )));
            }
            let eigen = perron_measure_oracle(m)?;
            if oracle && eigen != measure_table(m)? {
                return Err(Error::Consistency(format!(
                    "m={m}: eigenvector disagrees with the closed form"
                ))
                .into());
            }
            Ok(exact_rows(&eigen))
        }
        Mode::Empirical(n) => {
            let counts = window_counts(m as usize, n as usize)?;
            let mut words: Vec<(String, u64)> = counts
                .into_iter()
                .map(|(w, c)| (w.to_string(), c))
                .collect();
            words.sort_unstable();
            let mut out = Table::new(vec!["word", "frequency"]);
            for (w, c) in words {
                out.rows
                    .push(vec![Cell::Text(w), Cell::Float(c as f64 / n as f64)]);
            }
            Ok(out)
        }
    }
}

/// The requested quantity at one threshold, with embedding dimension `d`.
pub fn rqa_value(
    q: Quantity,
    ell: u64,
    d: u64,
    eps: &Epsilon,
    mode: Mode,
) -> Result<ExactRational> {
    match mode {
        Mode::Formula => Ok(match q {
            Quantity::Cint => embedded_rr(d, 1, eps)?,
            Quantity::Rr => embedded_rr(d, ell, eps)?,
            Quantity::Det => embedded_det(d, ell, eps)?,
        }),
        Mode::Empirical(n) => {
            if d == 0 {
                return Err(CliError::Usage(
                    "embedding dimension must be positive".into(),
                ));
            }
            if q == Quantity::Det && ell < 2 {
                return Err(CliError::Usage("det needs --ell ≥ 2".into()));
            }
            let rr = |l: u64| -> Result<ExactRational> {
                if eps.at_least_one() {
                    return Ok(ExactRational::one());
                }
                Ok(recurrence_rate_empirical(l, n, &eps.halved(d - 1))?)
            };
            Ok(match q {
                Quantity::Cint => rr(1)?,
                Quantity::Rr => rr(ell)?,
                Quantity::Det => rr(ell)? / rr(1)?,
            })
        }
        Mode::Eigen => Err(CliError::Usage("eigen mode only applies to measure".into())),
    }
}

pub fn rqa_table(
    q: Quantity,
    ell: u64,
    d: u64,
    thresholds: &[Epsilon],
    mode: Mode,
) -> Result<Table> {
    let mut table = Table::new(vec![
        "eps_numerator",
        "eps_denominator",
        "m_eps",
        "value_num",
        "value_den",
        "float",
    ]);
    for eps in thresholds {
        let v = rqa_value(q, ell, d, eps, mode)?;
        let (en, ed) = eps_parts(eps);
        table.rows.push(vec![
            Cell::Big(en),
            Cell::Big(ed),
            Cell::Int(m_epsilon(eps)?),
            Cell::Big(v.numer().clone()),
            Cell::Big(v.denom().clone()),
            Cell::Float(v.to_f64().unwrap_or(f64::NAN)),
        ]);
    }
    Ok(table)
}

/// `R_{ij} = [ρ(σ^i ω, σ^j ω) ≤ ε]` for `0 ≤ i, j < n`, row-major.
pub fn recurrence_matrix(n: u64, eps: &Epsilon) -> Result<Vec<Vec<bool>>> {
    let m = m_epsilon(eps)?;
    (1..=n)
        .map(|i| (1..=n).map(|j| Ok(scale_match(i, j, m)?)).collect())
        .collect()
}

pub fn rplot(n: u64, eps: &Epsilon, format: Format, mut out: impl Write) -> Result<()> {
    if n == 0 || n > RPLOT_CAP {
        return Err(CliError::Usage(format!(
            "recurrence plots need 1 ≤ n ≤ {RPLOT_CAP}, got {n}"
        )));
    }
    let r = recurrence_matrix(n, eps)?;
    match format {
        Format::Pgm => {
            write!(out, "P5\n{n} {n}\n255\n")?;
            for row in &r {
                let bytes: Vec<u8> = row.iter().map(|&hit| if hit { 0 } else { 255 }).collect();
                out.write_all(&bytes)?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            for row in &r {
                w.write_record(row.iter().map(|&hit| if hit { "1" } else { "0" }))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let (en, ed) = eps_parts(eps);
            let matrix: Vec<Vec<u8>> = r
                .iter()
                .map(|row| row.iter().map(|&hit| hit as u8).collect())
                .collect();
            let doc = json!({
                "n": n,
                "eps_numerator": en.to_string(),
                "eps_denominator": ed.to_string(),
                "m_eps": m_epsilon(eps)?,
                "matrix": matrix,
            });
            write_json(&doc, out)?;
        }
    }
    Ok(())
}
