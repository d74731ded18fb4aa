//! Metric indispensability for stratified meters.
//!
//! * [`relkit`]: finite relations, partial maps and sequences.
//! * [`meter`]: the GNSM/MNSM notation languages, with enumeration,
//!   counting, recognition and parsing.
//! * [`indis`]: the reference and generalized indispensability algorithms
//!   and an equivalence harness comparing them.
//! * [`cli`]: the `stratameter` command-line front end.
//!
//! ```
//! use stratameter::indis::{indispensability_gen, indispensability_ref, StartOrders};
//! use stratameter::meter::{Arity, MeterSeq};
//!
//! let meter = MeterSeq::parse("1 0 0 1 0 1 0 0")?.validate(Arity::DUPLE_TRIPLE)?;
//! let reference = indispensability_ref(&meter)?;
//! let generalized = indispensability_gen(&meter, &StartOrders::new())?;
//! assert_eq!(reference.values().as_slice(), &[7, 0, 2, 5, 3, 6, 1, 4]);
//! assert_eq!(reference, generalized);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod indis;
pub mod meter;
pub mod relkit;
