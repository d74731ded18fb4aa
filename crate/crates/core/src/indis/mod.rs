//! Indispensability of metric positions.
//!
//! Two algorithms are provided. [`indispensability_ref`] assigns values
//! stratum by stratum to binary/ternary GNSM inputs. [`indispensability_gen`]
//! instead grows a priority order of positions and accepts any validated
//! GNSM or MNSM. Both produce an [`IndisMap`], a permutation of
//! `{0..n-1}` where `n - 1` marks the most indispensable position.

mod equiv;
mod generalized;
mod reference;
mod start;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::meter::InvalidReason;
use crate::relkit::{NatSet, RelError, Sequence};

pub use equiv::{check_equivalence, EquivConfig, EquivReport, Mismatch};
pub use generalized::{
    descend_gen, descend_gen_traced, indispensability_gen, indispensability_gen_traced, GenStep, GenTrace,
};
pub use reference::{
    descend_ref, descend_ref_traced, indispensability_ref, indispensability_ref_traced, initial_values, RefStep,
    RefTrace,
};
pub use start::StartOrders;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndisError {
    #[error("reference algorithm requires 2 or 3 top pulses, got {0}")]
    TopPulseCount(usize),
    #[error("input is not in GNSM(·,2,3): {0}")]
    NotDupleTriple(InvalidReason),
    #[error("meter must be validated before computing indispensability")]
    Unvalidated,
    #[error("start order requested for 0 top pulses")]
    NoTopPulses,
    #[error("no canonical start order for {0} top pulses; supply a custom order")]
    NoStartOrder(usize),
    #[error("custom start order {order} is not a permutation of 0..{len}")]
    BadStartOrder { order: Sequence, len: usize },
    #[error("not a permutation of 0..{len}: {order}")]
    NotPermutation { order: Sequence, len: usize },
    #[error("descend precondition violated: {0}")]
    Precondition(String),
    #[error("input violates GNSM(·,2,3) adjacency property at level {level}: successors of successors {offending:?} are unassigned")]
    Adjacency { level: usize, offending: NatSet },
    #[error("no positions carry weight {0}; the meter skips a stratum")]
    EmptyStratum(usize),
    #[error("internal: result does not cover every position exactly once")]
    Incomplete,
    #[error("internal relation error: {0}")]
    Relation(#[from] RelError),
}

impl IndisError {
    /// Whether the error signals a broken structural invariant rather than
    /// unsuitable input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            IndisError::Adjacency { .. }
                | IndisError::EmptyStratum(_)
                | IndisError::Incomplete
                | IndisError::Relation(_)
        )
    }
}

/// Total map from position to indispensability; a permutation of `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndisMap(Sequence);

impl IndisMap {
    pub fn new(values: Sequence) -> Result<Self, IndisError> {
        if !is_permutation(&values) {
            let len = values.len();
            return Err(IndisError::NotPermutation { order: values, len });
        }
        Ok(IndisMap(values))
    }

    pub fn values(&self) -> &Sequence {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions from most to least indispensable.
    pub fn priority_order(&self) -> PriorityOrder {
        let n = self.len();
        let mut order = vec![0; n];
        for (pos, value) in self.0.iter().enumerate() {
            order[n - 1 - value] = pos;
        }
        PriorityOrder(Sequence::new(order))
    }
}

/// Positions listed from highest priority to lowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PriorityOrder(Sequence);

impl PriorityOrder {
    pub fn new(positions: Sequence) -> Self {
        PriorityOrder(positions)
    }

    pub fn positions(&self) -> &Sequence {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `result(S(k)) = n - 1 - k`: earlier in the order means more indispensable.
pub fn perm_to_indis(order: &PriorityOrder, n: usize) -> Result<IndisMap, IndisError> {
    let positions = order.positions();
    if positions.len() != n || !is_permutation(positions) {
        return Err(IndisError::NotPermutation {
            order: positions.clone(),
            len: n,
        });
    }
    let mut values = vec![0; n];
    for (rank, pos) in positions.iter().enumerate() {
        values[pos] = n - 1 - rank;
    }
    Ok(IndisMap(Sequence::new(values)))
}

pub(crate) fn is_permutation(seq: &Sequence) -> bool {
    let n = seq.len();
    let mut seen = vec![false; n];
    seq.iter().all(|v| v < n && !std::mem::replace(&mut seen[v], true))
}
