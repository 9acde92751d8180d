//! Exact combinatorics and recurrence quantities of the period-doubling subshift.
//!
//! The period-doubling sequence `ω = 0100 0101 0100 0100 …` is the fixed point of
//! `0 ↦ 01, 1 ↦ 00`. This crate generates it, counts and enumerates its factors,
//! evaluates cylinder measures of its unique invariant measure, and computes the
//! correlation integral, recurrence rate and determinism in closed form. Every
//! closed form has an independent brute-force counterpart (prefix scans, window
//! frequencies, an exact Perron eigenvector) so the two can be checked against
//! each other.
//!
//! All measures and recurrence values are exact rationals.

pub mod counting;
pub mod error;
pub mod language;
mod linalg;
pub mod measure;
pub mod recurrence;
pub mod sequence;
pub mod word;

pub use error::{Error, Result};
pub use language::{
    complexity, decompose, duplicate_pairs, enumerate, first_mismatch, locate, window,
    DuplicatePair, LanguageEntry, LanguageTable, PairKind, ScaleDecomposition,
};
pub use measure::{
    block_substitution, class_count, composition_matrix, empirical_frequency, measure,
    measure_by_index, measure_table, perron_measure_oracle, CompositionMatrix, MeasureRow,
    MeasureTable,
};
pub use recurrence::{
    bowen_correlation_sum, cint_bounds, correlation_integral, correlation_integral_from_measure,
    correlation_sum, determinism, determinism_is_one, embedded_det, embedded_rr, m_epsilon,
    recurrence_rate, recurrence_rate_empirical, scale_match, BoundsClass, CintBounds, Epsilon,
    RqaParams,
};
pub use sequence::{block, letter, omega_prefix, prefix, substitution_image, GeneratorMethod};
pub use word::{Symbol, Word};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = num_rational::BigRational;
