//! Algebraic laws of the relation toolkit, each as a deterministic
//! property run with a given number of cases.

use std::collections::BTreeMap;
use std::fmt::Debug;

use proptest::collection::{btree_map, btree_set, vec};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseResult, TestRng, TestRunner};
use stratameter::relkit::{
    combine, cyclic_succ, lang_concat, occurrences, squash, Language, NatSet, PartialMap, Relation, Sequence,
};

pub type Law = fn(u32) -> Result<(), String>;

pub const ALL: [(&str, Law); 9] = [
    ("inverse involution", inverse_involution),
    ("composition associativity", compose_associative),
    ("inverse of composition", inverse_of_compose),
    ("squash preserves order", squash_preserves_order),
    ("squash idempotent", squash_idempotent),
    ("cyclicSucc single cycle", cyclic_succ_single_cycle),
    ("combine compact", combine_compact),
    ("occurrences partition", occurrences_partition),
    ("langConcat size bound", lang_concat_bound),
];

fn check<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> TestCaseResult) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn relation() -> impl Strategy<Value = Relation> {
    btree_set((0..8usize, 0..8usize), 0..16).prop_map(|pairs| pairs.into_iter().collect())
}

fn partial_map() -> impl Strategy<Value = PartialMap> {
    btree_map(0..40usize, 0..40usize, 0..12).prop_map(PartialMap::from)
}

fn sequence() -> impl Strategy<Value = Sequence> {
    vec(0..6usize, 0..12).prop_map(Sequence::new)
}

fn language() -> impl Strategy<Value = Language> {
    btree_set(vec(0..3usize, 0..4).prop_map(Sequence::new), 0..6)
}

pub fn inverse_involution(cases: u32) -> Result<(), String> {
    check(cases, relation(), |r| {
        prop_assert_eq!(r.inverse().inverse(), r);
        Ok(())
    })
}

pub fn compose_associative(cases: u32) -> Result<(), String> {
    check(cases, (relation(), relation(), relation()), |(r, s, t)| {
        prop_assert_eq!(r.compose(&s).compose(&t), r.compose(&s.compose(&t)));
        Ok(())
    })
}

pub fn inverse_of_compose(cases: u32) -> Result<(), String> {
    check(cases, (relation(), relation()), |(r, s)| {
        prop_assert_eq!(r.compose(&s).inverse(), s.inverse().compose(&r.inverse()));
        Ok(())
    })
}

pub fn squash_preserves_order(cases: u32) -> Result<(), String> {
    let keep = btree_set(0..12usize, 0..12);
    check(cases, (sequence(), keep, partial_map()), |(seq, keep, m)| {
        // a sequence is its own squash, and squashing a restriction yields the subsequence
        prop_assert_eq!(&m.squash().into_vec(), &m.iter().map(|(_, v)| v).collect::<Vec<_>>());
        prop_assert_eq!(squash(&seq.as_relation()).unwrap(), seq.clone());
        let sub: Vec<usize> = seq
            .iter()
            .enumerate()
            .filter(|(k, _)| keep.contains(k))
            .map(|(_, v)| v)
            .collect();
        prop_assert_eq!(seq.as_map().restrict_dom(&keep).squash().into_vec(), sub);
        Ok(())
    })
}

pub fn squash_idempotent(cases: u32) -> Result<(), String> {
    check(cases, partial_map(), |m| {
        let once = m.squash();
        prop_assert_eq!(once.as_map().squash(), once);
        Ok(())
    })
}

pub fn cyclic_succ_single_cycle(cases: u32) -> Result<(), String> {
    check(cases, btree_set(0..60usize, 1..15), |set| {
        let succ = cyclic_succ(&set).unwrap();
        prop_assert_eq!(succ.dom(), set.clone());
        prop_assert_eq!(succ.ran(), set.clone());
        let start = *set.first().unwrap();
        let mut p = start;
        for step in 1..=set.len() {
            p = succ.get(p).unwrap();
            prop_assert_eq!(p == start, step == set.len(), "returned after {} steps", step);
        }
        Ok(())
    })
}

// Two compact maps on disjoint domains.
fn compact_pair() -> impl Strategy<Value = (PartialMap, PartialMap)> {
    btree_set(0..50usize, 0..14)
        .prop_flat_map(|keys| {
            let n = keys.len();
            let keys: Vec<usize> = keys.into_iter().collect();
            (
                Just(keys).prop_shuffle(),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                0..=n,
            )
        })
        .prop_map(|(keys, values, split)| {
            let high: BTreeMap<usize, usize> = keys[..split]
                .iter()
                .copied()
                .zip(squash_ranks(&values[..split]))
                .collect();
            let low: BTreeMap<usize, usize> = keys[split..]
                .iter()
                .copied()
                .zip(squash_ranks(&values[split..]))
                .collect();
            (PartialMap::from(high), PartialMap::from(low))
        })
}

fn squash_ranks(values: &[usize]) -> Vec<usize> {
    values
        .iter()
        .map(|v| values.iter().filter(|w| *w < v).count())
        .collect()
}

pub fn combine_compact(cases: u32) -> Result<(), String> {
    check(cases, compact_pair(), |(high, low)| {
        prop_assert!(high.is_compact() && low.is_compact());
        let joined = combine(&high, &low).unwrap();
        prop_assert!(joined.is_compact(), "{} is not compact", joined);
        prop_assert_eq!(joined.len(), high.len() + low.len());
        for (p, v) in low.iter() {
            prop_assert_eq!(joined.get(p), Some(v));
        }
        for (p, v) in high.iter() {
            prop_assert_eq!(joined.get(p), Some(v + low.len()));
        }
        Ok(())
    })
}

pub fn occurrences_partition(cases: u32) -> Result<(), String> {
    check(cases, sequence(), |seq| {
        let mut covered = NatSet::new();
        for w in seq.ran() {
            let occ = occurrences(&seq, w);
            prop_assert!(!occ.is_empty());
            prop_assert!(occ.is_disjoint(&covered));
            prop_assert!(occ.iter().all(|&p| seq.get(p) == Some(w)));
            covered.extend(occ);
        }
        prop_assert_eq!(covered, (0..seq.len()).collect::<NatSet>());
        Ok(())
    })
}

pub fn lang_concat_bound(cases: u32) -> Result<(), String> {
    check(cases, (language(), language()), |(a, b)| {
        let joined = lang_concat(&a, &b);
        prop_assert!(joined.len() <= a.len() * b.len());
        for w in &joined {
            prop_assert!(a.iter().any(|v| w.as_slice().starts_with(v.as_slice())));
        }
        Ok(())
    })
}
