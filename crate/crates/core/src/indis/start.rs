use std::collections::BTreeMap;

use super::{is_permutation, IndisError};
use crate::relkit::Sequence;

/// Initial priority orders for the top pulses of the generalized algorithm.
///
/// Orders for one to four top pulses are built in. Custom orders may be
/// registered for any count and take precedence over the built-in ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StartOrders {
    custom: BTreeMap<usize, Sequence>,
}

impl StartOrders {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canonical(count: usize) -> Option<Sequence> {
        let order: &[usize] = match count {
            1 => &[0],
            2 => &[0, 1],
            3 => &[0, 2, 1],
            // tentative; override with a custom order if needed
            4 => &[0, 2, 1, 3],
            _ => return None,
        };
        Some(Sequence::new(order.to_vec()))
    }

    /// Registers `order` for `order.len()` top pulses.
    pub fn with_custom(mut self, order: Sequence) -> Result<Self, IndisError> {
        if order.is_empty() {
            return Err(IndisError::NoTopPulses);
        }
        if !is_permutation(&order) {
            let len = order.len();
            return Err(IndisError::BadStartOrder { order, len });
        }
        self.custom.insert(order.len(), order);
        Ok(self)
    }

    pub fn start_positions(&self, count: usize) -> Result<Sequence, IndisError> {
        if count == 0 {
            return Err(IndisError::NoTopPulses);
        }
        if let Some(order) = self.custom.get(&count) {
            return Ok(order.clone());
        }
        Self::canonical(count).ok_or(IndisError::NoStartOrder(count))
    }
}
