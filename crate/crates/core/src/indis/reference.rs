//! Stratum-by-stratum assignment for GNSM inputs with groupings of 2 or 3.
//!
//! The accumulator `c` maps every position already handled to a value,
//! compact in `{0..#c-1}`. Each descent step takes the next lower weight
//! `f`, looks at the cyclic successor of every position of weight `f` among
//! the positions of weight `>= f`, and ranks the new positions below all
//! old ones:
//!
//! * `J`: positions whose successor is already assigned copy its value;
//! * `K`: the middle position of a ternary group copies the value its
//!   successor just received in `J`;
//! * `L`: `K` with its values compacted.
//!
//! `J` is ranked above `L`, and both below the previous accumulator.

use serde::{Deserialize, Serialize};

use super::{IndisError, IndisMap};
use crate::meter::{recognize, Arity, InvalidReason, MeterSeq, Recognition};
use crate::relkit::{combine, cyclic_succ, occurrences, sort_set, squash, NatSet, PartialMap, Sequence};

/// One descent step, with every intermediate value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefStep {
    /// Level in focus.
    pub level: usize,
    pub accumulator: PartialMap,
    /// Positions carrying the focused weight.
    pub focus: NatSet,
    /// Focused positions together with all assigned ones.
    pub reached: NatSet,
    /// Cyclic successor restricted to the focus.
    pub successor: PartialMap,
    pub copied: PartialMap,
    pub second_of_three: PartialMap,
    pub compacted: PartialMap,
    /// `combine(c, J)`.
    pub combined: PartialMap,
    pub result: PartialMap,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefTrace {
    pub initial: PartialMap,
    pub steps: Vec<RefStep>,
}

/// Hard-coded values for the sorted top pulses.
pub fn initial_values(top_pulses: usize) -> Result<Sequence, IndisError> {
    match top_pulses {
        2 => Ok(Sequence::new(vec![1, 0])),
        3 => Ok(Sequence::new(vec![2, 0, 1])),
        n => Err(IndisError::TopPulseCount(n)),
    }
}

pub fn indispensability_ref(meter: &MeterSeq) -> Result<IndisMap, IndisError> {
    run(meter, None)
}

pub fn indispensability_ref_traced(meter: &MeterSeq) -> Result<(IndisMap, RefTrace), IndisError> {
    let mut trace = RefTrace::default();
    let map = run(meter, Some(&mut trace))?;
    Ok((map, trace))
}

fn run(meter: &MeterSeq, mut trace: Option<&mut RefTrace>) -> Result<IndisMap, IndisError> {
    let g = meter.weights();
    match recognize(g.as_slice(), Arity::DUPLE_TRIPLE) {
        Recognition::Gnsm { .. } => {}
        Recognition::Mnsm { .. } => return Err(IndisError::TopPulseCount(1)),
        Recognition::Invalid(InvalidReason::TopArity { count, .. }) => return Err(IndisError::TopPulseCount(count)),
        Recognition::Invalid(reason) => return Err(IndisError::NotDupleTriple(reason)),
    }
    let strata = g.head().expect("recognized meters are non-empty");
    let top_pulses = occurrences(g, strata);
    let initial = initial_values(top_pulses.len())?;
    // b = sort(topPulses)~ ⨾ initial
    let b = sort_set(&top_pulses)
        .as_relation()
        .inverse()
        .compose(&initial.as_relation())
        .to_partial_map()?;
    if let Some(t) = trace.as_deref_mut() {
        t.initial = b.clone();
    }
    let result = if strata == 0 { b } else { descend(g, b, &mut trace)? };
    let values = result.to_sequence().ok_or(IndisError::Incomplete)?;
    IndisMap::new(values).map_err(|_| IndisError::Incomplete)
}

/// Runs the descent from an explicit accumulator.
pub fn descend_ref(g: &Sequence, c: &PartialMap) -> Result<PartialMap, IndisError> {
    check_accumulator(g, c)?;
    descend(g, c.clone(), &mut None)
}

pub fn descend_ref_traced(g: &Sequence, c: &PartialMap) -> Result<(PartialMap, RefTrace), IndisError> {
    check_accumulator(g, c)?;
    let mut trace = RefTrace {
        initial: c.clone(),
        steps: Vec::new(),
    };
    let result = descend(g, c.clone(), &mut Some(&mut trace))?;
    Ok((result, trace))
}

fn check_accumulator(g: &Sequence, c: &PartialMap) -> Result<(), IndisError> {
    if c.is_empty() {
        return Err(IndisError::Precondition("accumulator is empty".into()));
    }
    if let Some(pos) = c.dom().into_iter().find(|&p| p >= g.len()) {
        return Err(IndisError::Precondition(format!("position {pos} is outside the meter")));
    }
    if !c.is_compact() {
        return Err(IndisError::Precondition(format!("accumulator {c} is not compact")));
    }
    if g.as_map().image(&c.dom()).contains(&0) {
        return Err(IndisError::Precondition("accumulator already covers weight 0".into()));
    }
    Ok(())
}

fn descend(g: &Sequence, c: PartialMap, trace: &mut Option<&mut RefTrace>) -> Result<PartialMap, IndisError> {
    let lowest = g
        .as_map()
        .image(&c.dom())
        .first()
        .copied()
        .expect("accumulator is non-empty");
    let level = lowest - 1;
    let focus = occurrences(g, level);
    if focus.is_empty() {
        return Err(IndisError::EmptyStratum(level));
    }
    let reached: NatSet = focus.union(&c.dom()).copied().collect();
    let successor = cyclic_succ(&reached)?.restrict_dom(&focus);

    let assigned = c.dom();
    let offending: NatSet = successor
        .compose(&successor)
        .ran()
        .difference(&assigned)
        .copied()
        .collect();
    if !offending.is_empty() {
        return Err(IndisError::Adjacency { level, offending });
    }

    let copied = successor.compose(&c);
    let second_of_three = successor.compose(&copied);
    let compacted = squash(&second_of_three.inverse())?
        .as_relation()
        .inverse()
        .to_partial_map()?;
    let combined = combine(&c, &copied)?;
    let result = combine(&combined, &compacted)?;

    if let Some(t) = trace.as_deref_mut() {
        t.steps.push(RefStep {
            level,
            accumulator: c,
            focus,
            reached,
            successor,
            copied,
            second_of_three,
            compacted,
            combined,
            result: result.clone(),
        });
    }

    if level == 0 {
        Ok(result)
    } else {
        descend(g, result, trace)
    }
}
