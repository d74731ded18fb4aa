//! Priority-order construction for arbitrary GNSM and MNSM inputs.
//!
//! Instead of assigning values, the descent grows a sequence `S` of
//! positions, most indispensable first. Each step picks the unassigned
//! positions `V` of the current weight (or, once those are exhausted, of the
//! next lower weight) and appends, in the order of `S`, those that are the
//! cyclic predecessor of an already listed position.

use serde::{Deserialize, Serialize};

use super::{perm_to_indis, IndisError, IndisMap, PriorityOrder, StartOrders};
use crate::meter::{MeterClass, MeterSeq};
use crate::relkit::{cyclic_succ, occurrences, sort_set, squash, NatSet, PartialMap, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenStep {
    /// Lowest weight among the listed positions.
    pub level: usize,
    /// Unlisted positions of that weight.
    pub same_level: NatSet,
    /// Positions of the next lower weight present in the meter.
    pub next_level: NatSet,
    pub candidates: NatSet,
    /// Index in `S` to the cyclic predecessor it contributes, restricted to
    /// the candidates.
    pub predecessors: PartialMap,
    pub order: Sequence,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenTrace {
    pub top_pulses: Sequence,
    pub start: Sequence,
    pub steps: Vec<GenStep>,
}

pub fn indispensability_gen(meter: &MeterSeq, starts: &StartOrders) -> Result<IndisMap, IndisError> {
    run(meter, starts, None).map(|(map, _)| map)
}

pub fn indispensability_gen_traced(
    meter: &MeterSeq,
    starts: &StartOrders,
) -> Result<(IndisMap, PriorityOrder, GenTrace), IndisError> {
    let mut trace = GenTrace::default();
    let (map, order) = run(meter, starts, Some(&mut trace))?;
    Ok((map, order, trace))
}

fn run(
    meter: &MeterSeq,
    starts: &StartOrders,
    mut trace: Option<&mut GenTrace>,
) -> Result<(IndisMap, PriorityOrder), IndisError> {
    if meter.class() == MeterClass::Unvalidated {
        return Err(IndisError::Unvalidated);
    }
    let g = meter.weights();
    let strata = g.head().ok_or(IndisError::Unvalidated)?;
    let top_pulses = sort_set(&occurrences(g, strata));
    let start = starts.start_positions(top_pulses.len())?;
    // b = startPositions(#topPulses) ⨾ topPulses
    let b = start
        .as_relation()
        .compose(&top_pulses.as_relation())
        .to_partial_map()?
        .to_sequence()
        .ok_or(IndisError::Incomplete)?;
    if let Some(t) = trace.as_deref_mut() {
        t.top_pulses = top_pulses;
        t.start = start;
    }
    let order = descend(g, PriorityOrder::new(b), &mut trace)?;
    let map = perm_to_indis(&order, g.len()).map_err(|_| IndisError::Incomplete)?;
    Ok((map, order))
}

pub fn descend_gen(g: &Sequence, order: &PriorityOrder) -> Result<PriorityOrder, IndisError> {
    check_order(g, order)?;
    descend(g, order.clone(), &mut None)
}

pub fn descend_gen_traced(g: &Sequence, order: &PriorityOrder) -> Result<(PriorityOrder, GenTrace), IndisError> {
    check_order(g, order)?;
    let mut trace = GenTrace::default();
    let result = descend(g, order.clone(), &mut Some(&mut trace))?;
    Ok((result, trace))
}

fn check_order(g: &Sequence, order: &PriorityOrder) -> Result<(), IndisError> {
    let positions = order.positions();
    if positions.is_empty() {
        return Err(IndisError::Precondition("priority order is empty".into()));
    }
    if let Some(pos) = positions.iter().find(|&p| p >= g.len()) {
        return Err(IndisError::Precondition(format!("position {pos} is outside the meter")));
    }
    if positions.as_map().inverse().to_partial_map().is_err() {
        return Err(IndisError::Precondition(format!(
            "priority order {positions} repeats a position"
        )));
    }
    Ok(())
}

/// Largest weight of `g` strictly below `level`. For meters without skipped
/// strata this is `level - 1`.
fn next_lower_weight(g: &Sequence, level: usize) -> Option<usize> {
    g.iter().filter(|&w| w < level).max()
}

fn descend(g: &Sequence, order: PriorityOrder, trace: &mut Option<&mut GenTrace>) -> Result<PriorityOrder, IndisError> {
    let listed = order.positions().ran();
    let level = g
        .as_map()
        .image(&listed)
        .first()
        .copied()
        .expect("priority order is non-empty");
    let same_level: NatSet = occurrences(g, level).difference(&listed).copied().collect();
    let next_level = next_lower_weight(g, level)
        .map(|w| occurrences(g, w))
        .unwrap_or_default();
    let candidates = if same_level.is_empty() {
        next_level.clone()
    } else {
        same_level.clone()
    };
    if candidates.is_empty() {
        return Ok(order);
    }

    // X = (S ⨾ cyclicSucc(V ∪ ran S)~) ▷ V
    let pool: NatSet = candidates.union(&listed).copied().collect();
    let predecessors = order
        .positions()
        .as_relation()
        .compose(&cyclic_succ(&pool)?.inverse())
        .restrict_ran(&candidates)
        .to_partial_map()?;
    let extended = order.positions().concat(&squash(&predecessors.as_relation())?);

    if let Some(t) = trace.as_deref_mut() {
        t.steps.push(GenStep {
            level,
            same_level,
            next_level,
            candidates,
            predecessors,
            order: extended.clone(),
        });
    }
    descend(g, PriorityOrder::new(extended), trace)
}
