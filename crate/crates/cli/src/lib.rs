//! Command-line front end for the period-doubling toolkit.

pub mod commands;
pub mod error;
pub mod options;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pdshift_core::{Epsilon, GeneratorMethod};

pub use commands::Quantity;
pub use error::{CliError, Result};
pub use options::{Format, Mode, Sweep};

/// Environment variable overriding the prefix-length cap.
pub const MAX_PREFIX_VAR: &str = "PDSHIFT_MAX_PREFIX";

#[derive(Debug, Parser)]
#[command(
    name = "pdshift",
    version,
    about = "Exact tools for the period-doubling subshift"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format: csv (default), json, or pgm (default for rplot).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first n letters of the sequence.
    Seq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "valuation")]
        method: GeneratorMethod,
    },
    /// Tabulate the factor complexity for 1 ≤ m ≤ m-max.
    Complexity {
        #[arg(long = "m-max")]
        m_max: u64,
        /// Also count distinct windows by scanning, exiting with 2 on disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Measures of all cylinders of length m.
    Measure {
        #[arg(long)]
        m: u64,
        /// formula, eigen or empirical:<n>
        #[arg(long, default_value = "formula")]
        mode: Mode,
        /// In eigen mode, also compare with the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Correlation integral, recurrence rate or determinism over thresholds.
    Rqa {
        #[arg(value_enum)]
        quantity: Quantity,
        /// Minimal line length (1 for rr, 2 for det if omitted).
        #[arg(long)]
        ell: Option<u64>,
        /// Embedding dimension.
        #[arg(long = "dim", default_value_t = 1)]
        dim: u64,
        /// A single threshold: decimal, a/b or 2^-m.
        #[arg(long, conflicts_with = "sweep")]
        eps: Option<Epsilon>,
        /// dyadic:M, dyadic:LO..HI or min:max:samples (default dyadic:1..10).
        #[arg(long)]
        sweep: Option<Sweep>,
        /// formula or empirical:<n>
        #[arg(long, default_value = "formula")]
        mode: Mode,
    },
    /// Recurrence plot of the first n shifts at threshold eps.
    Rplot {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        eps: Epsilon,
    },
}

/// Applies the prefix cap from the environment, if set.
pub fn apply_env_cap() -> Result<()> {
    if let Ok(v) = std::env::var(MAX_PREFIX_VAR) {
        let cap = v.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!("{MAX_PREFIX_VAR} must be an integer, got '{v}'"))
        })?;
        pdshift_core::sequence::set_prefix_cap(cap);
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<()> {
    apply_env_cap()?;
    let is_plot = matches!(cli.command, Command::Rplot { .. });
    let format = cli
        .format
        .unwrap_or(if is_plot { Format::Pgm } else { Format::Csv });
    if format == Format::Pgm && !is_plot {
        return Err(CliError::Usage(
            "pgm output is only available for rplot".into(),
        ));
    }
    let out = || output::sink(cli.out.as_deref());
    match cli.command {
        Command::Seq { n, method } => commands::seq(n, method, format, out()?),
        Command::Complexity { m_max, oracle } => {
            commands::complexity_table(m_max, oracle)?.write(format, out()?)
        }
        Command::Measure { m, mode, oracle } => {
            commands::measure_output(m, mode, oracle)?.write(format, out()?)
        }
        Command::Rqa {
            quantity,
            ell,
            dim,
            eps,
            sweep,
            mode,
        } => {
            let ell = match (quantity, ell) {
                (Quantity::Cint, Some(l)) if l != 1 => {
                    return Err(CliError::Usage("cint takes no --ell".into()))
                }
                (_, Some(l)) => l,
                (Quantity::Det, None) => 2,
                (_, None) => 1,
            };
            let thresholds = match eps {
                Some(e) => vec![e],
                None => sweep.unwrap_or_default().thresholds()?,
            };
            commands::rqa_table(quantity, ell, dim, &thresholds, mode)?.write(format, out()?)
        }
        Command::Rplot { n, eps } => commands::rplot(n, &eps, format, out()?),
    }
}
