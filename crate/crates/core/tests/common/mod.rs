#![allow(dead_code)]

pub mod laws;
pub mod oracle;

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratameter::meter::{for_each_word, sample, sample_gnsm, Arity, MeterKind, MeterParams, MeterSeq};
use stratameter::relkit::Sequence;

/// Every member of GNSM_{1,2,3} and GNSM_{2,2,3}, then 500 members of
/// GNSM_{3,2,3} drawn with seed 0, in the order the equivalence check visits them.
pub fn equivalence_corpus() -> Vec<Sequence> {
    let mut corpus = Vec::new();
    for top in 1..=2 {
        let params = MeterParams::new(top, 2, 3).unwrap();
        for_each_word(MeterKind::Gnsm, params, |w| {
            corpus.push(w.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
    }
    let params = MeterParams::new(3, 2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    corpus.extend((0..500).map(|_| sample_gnsm(params, &mut rng)));
    corpus
}

/// A random valid meter with top weight at most 3, hence at most `a` top pulses.
pub fn random_meter<R: Rng>(rng: &mut R, kind: MeterKind, arity: Arity) -> MeterSeq {
    let lowest = match kind {
        MeterKind::Gnsm => 0,
        MeterKind::Mnsm => 1,
    };
    let top = rng.random_range(lowest..=3);
    let params = MeterParams::new(top, arity.min, arity.max).unwrap();
    let word = sample(kind, params, rng).unwrap();
    MeterSeq::unvalidated(word).validate(arity).unwrap()
}

pub fn seeded_meter(seed: u64, kind: MeterKind, arity: Arity) -> MeterSeq {
    random_meter(&mut ChaCha8Rng::seed_from_u64(seed), kind, arity)
}

pub fn is_permutation(values: &[usize]) -> bool {
    let mut seen = vec![false; values.len()];
    values
        .iter()
        .all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}
