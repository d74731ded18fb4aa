//! Enumeration, counting and random sampling of the meter languages.

use std::ops::ControlFlow;

use rand::Rng;

use super::{Arity, MeterError, MeterKind, MeterParams};
use crate::relkit::{lang_power, Language, Sequence};

/// Default upper bound on the size of a fully materialized language.
pub const DEFAULT_GUARD: u128 = 1_000_000;

/// `|GNSM_{f,i,a}|`, with `|GNSM_{-1}| = 1`.
///
/// Blocks of a GNSM start exactly at its top-weight positions, so every word
/// decomposes uniquely and `|MNSM_f ↑ n| = |MNSM_f|^n`.
pub fn count_gnsm(params: MeterParams) -> Result<u128, MeterError> {
    gnsm_count(params.top, params.arity)
}

/// `|MNSM_{f,i,a}| = |GNSM_{f-1,i,a}|`.
pub fn count_mnsm(params: MeterParams) -> Result<u128, MeterError> {
    require_mnsm_top(params.top)?;
    gnsm_count(params.top - 1, params.arity)
}

pub fn count(kind: MeterKind, params: MeterParams) -> Result<u128, MeterError> {
    match kind {
        MeterKind::Gnsm => count_gnsm(params),
        MeterKind::Mnsm => count_mnsm(params),
    }
}

fn gnsm_count(top: i64, arity: Arity) -> Result<u128, MeterError> {
    if top < 0 {
        return Ok(1);
    }
    let subtrees = gnsm_count(top - 1, arity)?;
    let mut total: u128 = 0;
    for n in arity.min..=arity.max {
        let exp = u32::try_from(n).map_err(|_| MeterError::CountOverflow)?;
        let term = subtrees.checked_pow(exp).ok_or(MeterError::CountOverflow)?;
        total = total.checked_add(term).ok_or(MeterError::CountOverflow)?;
    }
    Ok(total)
}

fn require_mnsm_top(top: i64) -> Result<(), MeterError> {
    if top < 0 {
        return Err(MeterError::InvalidParams(format!("MNSM requires f >= 0, got {top}")));
    }
    Ok(())
}

fn check_guard(size: u128, guard: u128) -> Result<(), MeterError> {
    if size > guard {
        return Err(MeterError::GuardExceeded { count: size, guard });
    }
    Ok(())
}

/// Builds `GNSM_{f,i,a}` bottom-up from the set constructions, in
/// lexicographic order. Refuses languages larger than `guard`.
pub fn enumerate_gnsm(params: MeterParams, guard: u128) -> Result<Vec<Sequence>, MeterError> {
    check_guard(count_gnsm(params)?, guard)?;
    Ok(gns_m(params.top, params.arity).into_iter().collect())
}

pub fn enumerate_mnsm(params: MeterParams, guard: u128) -> Result<Vec<Sequence>, MeterError> {
    check_guard(count_mnsm(params)?, guard)?;
    Ok(mnsm_lang(params.top as usize, params.arity).into_iter().collect())
}

pub fn enumerate(kind: MeterKind, params: MeterParams, guard: u128) -> Result<Vec<Sequence>, MeterError> {
    match kind {
        MeterKind::Gnsm => enumerate_gnsm(params, guard),
        MeterKind::Mnsm => enumerate_mnsm(params, guard),
    }
}

// gnsM: GNSM extended with the f = -1 base case
fn gns_m(top: i64, arity: Arity) -> Language {
    if top < 0 {
        return Language::from([Sequence::empty()]);
    }
    let subtrees = mnsm_lang(top as usize, arity);
    (arity.min..=arity.max).flat_map(|n| lang_power(&subtrees, n)).collect()
}

fn mnsm_lang(top: usize, arity: Arity) -> Language {
    let marker = Sequence::new(vec![top]);
    gns_m(top as i64 - 1, arity)
        .iter()
        .map(|u| u.override_with(&marker))
        .collect()
}

/// Visits the words of a language in lexicographic order without
/// materializing it. Stops early when `visit` breaks.
///
/// Walks the metric tree left to right, tracking for each level how many
/// children its open node has; this is independent of the set construction
/// used by [`enumerate_gnsm`].
pub fn for_each_word<F>(kind: MeterKind, params: MeterParams, mut visit: F) -> Result<(), MeterError>
where
    F: FnMut(&Sequence) -> ControlFlow<()>,
{
    let (levels, raise) = match kind {
        MeterKind::Gnsm => (params.top, None),
        MeterKind::Mnsm => {
            require_mnsm_top(params.top)?;
            (params.top - 1, Some(params.top as usize))
        }
    };
    if levels < 0 {
        // GNSM_{-1} = {⟨⟩}; MNSM_0 = {⟨0⟩}
        let word = Sequence::new(raise.into_iter().collect());
        let _ = visit(&word);
        return Ok(());
    }
    let mut walker = Walker {
        top: levels as usize,
        arity: params.arity,
        open: vec![0; levels as usize + 1],
        word: Vec::new(),
    };
    let _ = walker.walk(&mut |word: &[usize]| {
        let mut word = word.to_vec();
        if let Some(top) = raise {
            word[0] = top;
        }
        visit(&Sequence::new(word))
    });
    Ok(())
}

/// The first `limit` words in lexicographic order.
pub fn words(kind: MeterKind, params: MeterParams, limit: usize) -> Result<Vec<Sequence>, MeterError> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_word(kind, params, |w| {
        out.push(w.clone());
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

struct Walker {
    top: usize,
    arity: Arity,
    // open[l]: children of the currently open level-l node
    open: Vec<usize>,
    word: Vec<usize>,
}

impl Walker {
    fn complete(&self) -> bool {
        !self.word.is_empty() && self.open.iter().all(|&n| n >= self.arity.min)
    }

    fn can_append(&self, weight: usize) -> bool {
        if self.word.is_empty() {
            return weight == self.top;
        }
        self.open[weight] < self.arity.max && self.open[..weight].iter().all(|&n| n >= self.arity.min)
    }

    fn walk(&mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.complete() {
            visit(&self.word)?;
        }
        for weight in 0..=self.top {
            if !self.can_append(weight) {
                continue;
            }
            let saved = self.open.clone();
            self.open[weight] += 1;
            self.open[..weight].iter_mut().for_each(|n| *n = 1);
            self.word.push(weight);
            let flow = self.walk(visit);
            self.word.pop();
            self.open = saved;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Draws a GNSM by choosing every subtree arity uniformly from `[i, a]`.
/// This is uniform over arity choices, not over words.
pub fn sample_gnsm<R: Rng + ?Sized>(params: MeterParams, rng: &mut R) -> Sequence {
    let mut out = Vec::new();
    sample_into(params.top, params.arity, rng, &mut out);
    Sequence::new(out)
}

/// Draws an MNSM: a sampled GNSM one level down with its first weight raised.
pub fn sample_mnsm<R: Rng + ?Sized>(params: MeterParams, rng: &mut R) -> Result<Sequence, MeterError> {
    require_mnsm_top(params.top)?;
    let mut out = Vec::new();
    sample_into(params.top - 1, params.arity, rng, &mut out);
    raise_first(&mut out, params.top as usize);
    Ok(Sequence::new(out))
}

pub fn sample<R: Rng + ?Sized>(kind: MeterKind, params: MeterParams, rng: &mut R) -> Result<Sequence, MeterError> {
    match kind {
        MeterKind::Gnsm => Ok(sample_gnsm(params, rng)),
        MeterKind::Mnsm => sample_mnsm(params, rng),
    }
}

fn sample_into<R: Rng + ?Sized>(top: i64, arity: Arity, rng: &mut R, out: &mut Vec<usize>) {
    if top < 0 {
        return;
    }
    let blocks = rng.random_range(arity.min..=arity.max);
    for _ in 0..blocks {
        let start = out.len();
        sample_into(top - 1, arity, rng, out);
        let mut block = out.split_off(start);
        raise_first(&mut block, top as usize);
        out.extend(block);
    }
}

// u ⊕ ⟨top⟩
fn raise_first(word: &mut Vec<usize>, top: usize) {
    match word.first_mut() {
        Some(first) => *first = top,
        None => word.push(top),
    }
}
