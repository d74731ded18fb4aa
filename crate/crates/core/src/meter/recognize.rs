//! Membership test for GNSM and MNSM by block decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Arity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Recognition {
    Gnsm { top: usize, pulses: usize },
    Mnsm { top: usize },
    Invalid(InvalidReason),
}

impl Recognition {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Recognition::Invalid(_))
    }
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::Gnsm { top, pulses } => write!(f, "GNSM f={top} top={pulses}"),
            Recognition::Mnsm { top } => write!(f, "MNSM f={top}"),
            Recognition::Invalid(reason) => write!(f, "invalid: {reason}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvalidReason {
    Empty,
    FirstNotMaximal,
    /// Number of top-level subtrees outside `[i, a]`.
    TopArity {
        count: usize,
        min: usize,
        max: usize,
    },
    /// The subtree starting at `position` on `level` has a bad child count.
    SubtreeArity {
        level: usize,
        position: usize,
        count: usize,
        min: usize,
        max: usize,
    },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InvalidReason::Empty => f.write_str("empty meter"),
            InvalidReason::FirstNotMaximal => f.write_str("first weight is not maximal"),
            InvalidReason::TopArity { count, min, max } => {
                write!(f, "{count} top-level subtrees, expected {min}..={max}")
            }
            InvalidReason::SubtreeArity {
                level,
                position,
                count,
                min,
                max,
            } => write!(
                f,
                "subtree at position {position} on level {level} has {count} children, expected {min}..={max}"
            ),
        }
    }
}

/// Classifies `weights` under the arity bounds, inferring `f` as the maximal
/// weight. A sequence that is both a one-block GNSM and an MNSM (possible
/// only when `i = 1`) is reported as GNSM.
pub fn recognize(weights: &[usize], arity: Arity) -> Recognition {
    let Some(&first) = weights.first() else {
        return Recognition::Invalid(InvalidReason::Empty);
    };
    let top = weights.iter().copied().max().unwrap_or(first);
    if first != top {
        return Recognition::Invalid(InvalidReason::FirstNotMaximal);
    }

    let gnsm = check_blocks(weights, 0, top, arity).map_err(|reason| match reason {
        InvalidReason::SubtreeArity {
            level, count, min, max, ..
        } if level == top => InvalidReason::TopArity { count, min, max },
        other => other,
    });
    let gnsm_err = match gnsm {
        Ok(pulses) => return Recognition::Gnsm { top, pulses },
        Err(reason) => reason,
    };

    let single_top = weights.iter().filter(|&&w| w == top).count() == 1;
    if !single_top {
        return Recognition::Invalid(gnsm_err);
    }
    // MNSM_f = { u ⊕ ⟨f⟩ | u ∈ gnsM_{f-1} }
    let mnsm = if top == 0 {
        if weights.len() == 1 {
            Ok(())
        } else {
            Err(InvalidReason::SubtreeArity {
                level: 0,
                position: 0,
                count: weights.len(),
                min: 1,
                max: 1,
            })
        }
    } else {
        check_blocks(weights, 0, top - 1, arity).map(|_| ())
    };
    match (mnsm, gnsm_err) {
        (Ok(()), _) => Recognition::Mnsm { top },
        (Err(reason), InvalidReason::TopArity { .. }) => Recognition::Invalid(reason),
        (Err(_), reason) => Recognition::Invalid(reason),
    }
}

/// Checks that `seg`, read with its first entry lowered to `level`, is in
/// `GNSM_{level,i,a}`. All entries after the first must be `<= level`.
/// Returns the number of top-level blocks.
fn check_blocks(seg: &[usize], offset: usize, level: usize, arity: Arity) -> Result<usize, InvalidReason> {
    let starts: Vec<usize> = (0..seg.len()).filter(|&p| p == 0 || seg[p] == level).collect();
    let count = starts.len();
    if !arity.contains(count) {
        return Err(InvalidReason::SubtreeArity {
            level,
            position: offset,
            count,
            min: arity.min,
            max: arity.max,
        });
    }
    if level > 0 {
        for (k, &start) in starts.iter().enumerate() {
            let end = starts.get(k + 1).copied().unwrap_or(seg.len());
            check_blocks(&seg[start..end], offset + start, level - 1, arity)?;
        }
    } else if count != seg.len() {
        unreachable!("every level-0 position starts a block");
    }
    Ok(count)
}
