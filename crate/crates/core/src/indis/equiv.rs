//! Empirical comparison of the reference and generalized algorithms.

use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{indispensability_gen, indispensability_ref, IndisError, IndisMap, StartOrders};
use crate::meter::{for_each_word, sample_gnsm, Arity, MeterError, MeterKind, MeterParams, MeterSeq};
use crate::relkit::Sequence;

#[derive(Debug, Clone)]
pub struct EquivConfig {
    /// Lowest top weight compared exhaustively.
    pub min_top: usize,
    /// Highest top weight compared exhaustively; samples are drawn one level above.
    pub max_top: usize,
    pub samples: usize,
    pub seed: u64,
    pub starts: StartOrders,
}

impl Default for EquivConfig {
    fn default() -> Self {
        EquivConfig {
            min_top: 1,
            max_top: 2,
            samples: 500,
            seed: 0,
            starts: StartOrders::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: Sequence,
    pub reference: Result<IndisMap, IndisError>,
    pub generalized: Result<IndisMap, IndisError>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivReport {
    pub exhaustive: usize,
    pub sampled: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    fn record(&mut self, input: &Sequence, starts: &StartOrders) {
        let meter = MeterSeq::unvalidated(input.clone()).validate(Arity::DUPLE_TRIPLE);
        let (reference, generalized) = match meter {
            Ok(meter) => (indispensability_ref(&meter), indispensability_gen(&meter, starts)),
            Err(e) => {
                let err = IndisError::NotDupleTriple(e.reason);
                (Err(err.clone()), Err(err))
            }
        };
        let agree = matches!((&reference, &generalized), (Ok(r), Ok(g)) if r == g);
        if !agree {
            self.mismatches += 1;
            self.first_mismatch.get_or_insert(Mismatch {
                input: input.clone(),
                reference,
                generalized,
            });
        }
    }
}

/// Compares both algorithms on every member of `GNSM_{f,2,3}` for
/// `min_top <= f <= max_top`, then on `samples` seeded random members of
/// `GNSM_{max_top+1,2,3}`.
pub fn check_equivalence(config: &EquivConfig) -> Result<EquivReport, MeterError> {
    let mut report = EquivReport::default();
    for top in config.min_top..=config.max_top {
        let params = MeterParams::new(top as i64, 2, 3)?;
        for_each_word(MeterKind::Gnsm, params, |word| {
            report.exhaustive += 1;
            report.record(word, &config.starts);
            ControlFlow::Continue(())
        })?;
    }
    let sample_params = MeterParams::new(config.max_top as i64 + 1, 2, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let word = sample_gnsm(sample_params, &mut rng);
        report.sampled += 1;
        report.record(&word, &config.starts);
    }
    Ok(report)
}
