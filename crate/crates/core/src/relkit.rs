//! Finite relations, partial maps and 0-based sequences over the naturals.
//!
//! The operators here are the small relational toolkit the indispensability
//! algorithms are written in: inverse, composition, image, domain and range
//! restriction, overriding, `squash`, and a handful of sequence helpers.
//! Every value is immutable once built; all operations return new values.
//!
//! Relations are stored as sorted pair sets, so equality, hashing and
//! iteration order are canonical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A finite set of naturals.
pub type NatSet = BTreeSet<usize>;

/// A set of sequences, i.e. a finite language over the naturals.
pub type Language = BTreeSet<Sequence>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("not a partial function: {0} maps to more than one value")]
    NotPartialFunction(usize),
    #[error("cyclicSucc of empty set")]
    EmptyCyclicSucc,
    #[error("combine domain clash at {0}")]
    CombineDomainClash(usize),
}

/// A finite binary relation on the naturals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new() -> Self {
        Self::default()
    }

    /// `ID_A`, the identity relation on `set`.
    pub fn identity(set: &NatSet) -> Self {
        set.iter().map(|&a| (a, a)).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// Pairs in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn dom(&self) -> NatSet {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    pub fn ran(&self) -> NatSet {
        self.pairs.iter().map(|&(_, b)| b).collect()
    }

    /// `r~`: every pair flipped.
    pub fn inverse(&self) -> Self {
        self.pairs.iter().map(|&(a, b)| (b, a)).collect()
    }

    /// `r ⨾ s`: first apply `self`, then `other`.
    pub fn compose(&self, other: &Relation) -> Self {
        let mut by_first: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (b, c) in other.iter() {
            by_first.entry(b).or_default().push(c);
        }
        let mut out = BTreeSet::new();
        for (a, b) in self.iter() {
            if let Some(cs) = by_first.get(&b) {
                out.extend(cs.iter().map(|&c| (a, c)));
            }
        }
        Relation { pairs: out }
    }

    /// `r⦇s⦈`, the relational image of `set`.
    pub fn image(&self, set: &NatSet) -> NatSet {
        self.iter().filter(|(a, _)| set.contains(a)).map(|(_, b)| b).collect()
    }

    /// `s ◁ r`
    pub fn restrict_dom(&self, set: &NatSet) -> Self {
        self.iter().filter(|(a, _)| set.contains(a)).collect()
    }

    /// `r ▷ s`
    pub fn restrict_ran(&self, set: &NatSet) -> Self {
        self.iter().filter(|(_, b)| set.contains(b)).collect()
    }

    /// `r ⊕ s`: pairs of `self` whose first component is in `dom s` are
    /// dropped, then all of `s` is added.
    pub fn override_with(&self, other: &Relation) -> Self {
        let shadowed = other.dom();
        self.iter()
            .filter(|(a, _)| !shadowed.contains(a))
            .chain(other.iter())
            .collect()
    }

    pub fn union(&self, other: &Relation) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    pub fn is_functional(&self) -> bool {
        self.to_partial_map().is_ok()
    }

    pub fn to_partial_map(&self) -> Result<PartialMap, RelError> {
        let mut map = BTreeMap::new();
        for (a, b) in self.iter() {
            if map.insert(a, b).is_some() {
                return Err(RelError::NotPartialFunction(a));
            }
        }
        Ok(PartialMap { map })
    }
}

impl FromIterator<(usize, usize)> for Relation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Relation {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.iter())
    }
}

fn write_pairs(f: &mut fmt::Formatter<'_>, pairs: impl Iterator<Item = (usize, usize)>) -> fmt::Result {
    f.write_str("{")?;
    for (k, (a, b)) in pairs.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}→{b}")?;
    }
    f.write_str("}")
}

/// A functional relation: every domain element has exactly one image.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialMap {
    map: BTreeMap<usize, usize>,
}

impl PartialMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a map from pairs, rejecting duplicate keys with distinct values.
    pub fn try_from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self, RelError> {
        pairs.into_iter().collect::<Relation>().to_partial_map()
    }

    pub fn get(&self, key: usize) -> Option<usize> {
        self.map.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn dom(&self) -> NatSet {
        self.map.keys().copied().collect()
    }

    pub fn ran(&self) -> NatSet {
        self.map.values().copied().collect()
    }

    pub fn as_relation(&self) -> Relation {
        self.iter().collect()
    }

    /// The inverse is a plain relation; it is functional only if `self` is injective.
    pub fn inverse(&self) -> Relation {
        self.as_relation().inverse()
    }

    pub fn compose(&self, other: &PartialMap) -> PartialMap {
        let map = self.iter().filter_map(|(a, b)| other.get(b).map(|c| (a, c))).collect();
        PartialMap { map }
    }

    pub fn image(&self, set: &NatSet) -> NatSet {
        set.iter().filter_map(|&a| self.get(a)).collect()
    }

    pub fn restrict_dom(&self, set: &NatSet) -> PartialMap {
        let map = self.iter().filter(|(a, _)| set.contains(a)).collect();
        PartialMap { map }
    }

    pub fn restrict_ran(&self, set: &NatSet) -> PartialMap {
        let map = self.iter().filter(|(_, b)| set.contains(b)).collect();
        PartialMap { map }
    }

    pub fn override_with(&self, other: &PartialMap) -> PartialMap {
        let mut map = self.map.clone();
        map.extend(other.iter());
        PartialMap { map }
    }

    /// Maps every value through `f`, keeping the domain.
    pub fn map_values(&self, f: impl Fn(usize) -> usize) -> PartialMap {
        let map = self.iter().map(|(a, b)| (a, f(b))).collect();
        PartialMap { map }
    }

    pub fn is_injective(&self) -> bool {
        self.ran().len() == self.len()
    }

    /// `ran = {0..#self-1}`.
    pub fn is_compact(&self) -> bool {
        is_initial_segment(&self.ran(), self.len())
    }

    /// Order-preserving index compaction into a 0-based sequence.
    pub fn squash(&self) -> Sequence {
        Sequence(self.map.values().copied().collect())
    }

    /// `Some` if the domain is exactly `{0..#self-1}`.
    pub fn to_sequence(&self) -> Option<Sequence> {
        is_initial_segment(&self.dom(), self.len()).then(|| self.squash())
    }
}

impl From<BTreeMap<usize, usize>> for PartialMap {
    fn from(map: BTreeMap<usize, usize>) -> Self {
        PartialMap { map }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.iter())
    }
}

fn is_initial_segment(set: &NatSet, len: usize) -> bool {
    set.len() == len && set.iter().enumerate().all(|(k, &v)| k == v)
}

/// A finite sequence, i.e. a partial map with domain `{0..len-1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequence(Vec<usize>);

impl Sequence {
    pub fn new(values: Vec<usize>) -> Self {
        Sequence(values)
    }

    pub fn empty() -> Self {
        Sequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<usize> {
        self.0.get(index).copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn as_map(&self) -> PartialMap {
        PartialMap {
            map: self.0.iter().copied().enumerate().collect(),
        }
    }

    pub fn as_relation(&self) -> Relation {
        self.0.iter().copied().enumerate().collect()
    }

    pub fn ran(&self) -> NatSet {
        self.0.iter().copied().collect()
    }

    pub fn head(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> Sequence {
        Sequence(self.0.iter().skip(1).copied().collect())
    }

    /// `self ⌢ other`
    pub fn concat(&self, other: &Sequence) -> Sequence {
        Sequence(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// `self ⊕ other`; the union of two initial segments is again one.
    pub fn override_with(&self, other: &Sequence) -> Sequence {
        let mut out = self.0.clone();
        for (k, &v) in other.0.iter().enumerate() {
            match out.get_mut(k) {
                Some(slot) => *slot = v,
                None => out.push(v),
            }
        }
        Sequence(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<usize>> for Sequence {
    fn from(values: Vec<usize>) -> Self {
        Sequence(values)
    }
}

impl FromIterator<usize> for Sequence {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Sequence(iter.into_iter().collect())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("⟩")
    }
}

/// Compacts the indices of a functional relation, keeping their order.
pub fn squash(rel: &Relation) -> Result<Sequence, RelError> {
    Ok(rel.to_partial_map()?.squash())
}

/// `sort(A) = squash(ID_A)`
pub fn sort_set(set: &NatSet) -> Sequence {
    Relation::identity(set)
        .to_partial_map()
        .expect("identity is functional")
        .squash()
}

/// Maps each element of `set` to the next larger element, and the largest
/// back to the smallest.
///
/// Built as `B~ ⨾ (tail B ⌢ ⟨head B⟩)` with `B = sort(set)`.
pub fn cyclic_succ(set: &NatSet) -> Result<PartialMap, RelError> {
    let sorted = sort_set(set);
    let head = sorted.head().ok_or(RelError::EmptyCyclicSucc)?;
    let rotated = sorted.tail().concat(&Sequence(vec![head]));
    sorted
        .as_relation()
        .inverse()
        .compose(&rotated.as_relation())
        .to_partial_map()
}

/// `(A ⨾ (_ + #B)) ∪ B`: values of `high` are lifted above all values of `low`.
pub fn combine(high: &PartialMap, low: &PartialMap) -> Result<PartialMap, RelError> {
    if let Some(clash) = high.dom().intersection(&low.dom()).next() {
        return Err(RelError::CombineDomainClash(*clash));
    }
    let shift = low.len();
    Ok(high.map_values(|v| v + shift).override_with(low))
}

/// `g~⦇{n}⦈`: every index at which `seq` holds `n`.
pub fn occurrences(seq: &Sequence, n: usize) -> NatSet {
    seq.as_relation().inverse().image(&NatSet::from([n]))
}

/// All concatenations `v ⌢ w` with `v ∈ a`, `w ∈ b`.
pub fn lang_concat(a: &Language, b: &Language) -> Language {
    a.iter().flat_map(|v| b.iter().map(move |w| v.concat(w))).collect()
}

/// `a ↑ n`: `n`-fold concatenation, with `a ↑ 0 = {⟨⟩}`.
pub fn lang_power(a: &Language, n: usize) -> Language {
    (0..n).fold(Language::from([Sequence::empty()]), |acc, _| lang_concat(a, &acc))
}
