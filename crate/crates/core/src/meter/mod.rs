//! Stratified meter notation: the GNSM and MNSM sequence languages.
//!
//! A GNSM value lists, for every position of a metric tree, the highest
//! level at which that position starts a subtree. `GNSM_{f,i,a}` repeats
//! between `i` and `a` subtrees of top weight `f`; an MNSM value marks the
//! measure start with a single, unique top weight instead.

mod language;
mod parse;
mod recognize;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relkit::Sequence;

pub use language::{
    count, count_gnsm, count_mnsm, enumerate, enumerate_gnsm, enumerate_mnsm, for_each_word, sample, sample_gnsm,
    sample_mnsm, words, DEFAULT_GUARD,
};
pub use parse::{parse_meter, ParseError, ParseErrorKind};
pub use recognize::{recognize, InvalidReason, Recognition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeterError {
    #[error("invalid meter parameters: {0}")]
    InvalidParams(String),
    #[error("language has {count} members, over the enumeration guard of {guard}")]
    GuardExceeded { count: u128, guard: u128 },
    #[error("language size overflows 128-bit arithmetic")]
    CountOverflow,
}

/// Bounds on the number of children of every subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arity {
    pub min: usize,
    pub max: usize,
}

impl Arity {
    /// Groupings of two or three, the input domain of the reference algorithm.
    pub const DUPLE_TRIPLE: Arity = Arity { min: 2, max: 3 };

    pub fn new(min: usize, max: usize) -> Result<Self, MeterError> {
        if min == 0 || min > max {
            return Err(MeterError::InvalidParams(format!(
                "arity bounds must satisfy 1 <= i <= a, got i={min} a={max}"
            )));
        }
        Ok(Arity { min, max })
    }

    pub fn contains(&self, n: usize) -> bool {
        (self.min..=self.max).contains(&n)
    }
}

impl Default for Arity {
    fn default() -> Self {
        Arity::DUPLE_TRIPLE
    }
}

/// The `(f, i, a)` triple indexing a language. `top = -1` denotes the base
/// case `{⟨⟩}`, which only makes sense for GNSM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeterParams {
    pub top: i64,
    pub arity: Arity,
}

impl MeterParams {
    pub fn new(top: i64, min_arity: usize, max_arity: usize) -> Result<Self, MeterError> {
        if top < -1 {
            return Err(MeterError::InvalidParams(format!(
                "top stratum must be >= -1, got {top}"
            )));
        }
        Ok(MeterParams {
            top,
            arity: Arity::new(min_arity, max_arity)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeterKind {
    Gnsm,
    Mnsm,
}

impl fmt::Display for MeterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeterKind::Gnsm => "GNSM",
            MeterKind::Mnsm => "MNSM",
        })
    }
}

/// What is known about a weight sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeterClass {
    Unvalidated,
    Gnsm { top: usize, pulses: usize, arity: Arity },
    Mnsm { top: usize, arity: Arity },
}

impl fmt::Display for MeterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeterClass::Unvalidated => f.write_str("unvalidated"),
            MeterClass::Gnsm { top, pulses, .. } => write!(f, "GNSM f={top} top={pulses}"),
            MeterClass::Mnsm { top, .. } => write!(f, "MNSM f={top}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid: {reason}")]
pub struct InvalidMeter {
    pub reason: InvalidReason,
}

/// A weight sequence together with its classification.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeterSeq {
    weights: Sequence,
    class: MeterClass,
}

impl MeterSeq {
    pub fn unvalidated(weights: impl Into<Sequence>) -> Self {
        MeterSeq {
            weights: weights.into(),
            class: MeterClass::Unvalidated,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_meter(text).map(Self::unvalidated)
    }

    /// Runs the recognizer and records the classification.
    pub fn validate(self, arity: Arity) -> Result<Self, InvalidMeter> {
        let class = match recognize(self.weights.as_slice(), arity) {
            Recognition::Gnsm { top, pulses } => MeterClass::Gnsm { top, pulses, arity },
            Recognition::Mnsm { top } => MeterClass::Mnsm { top, arity },
            Recognition::Invalid(reason) => return Err(InvalidMeter { reason }),
        };
        Ok(MeterSeq { class, ..self })
    }

    pub fn weights(&self) -> &Sequence {
        &self.weights
    }

    pub fn class(&self) -> MeterClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Token form: weights separated by single spaces.
pub fn format_weights(seq: &Sequence) -> String {
    seq.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}
