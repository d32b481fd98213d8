//! Set families and multifamilies over a finite universe `{1, ..., n}`.
//!
//! Members are bit-vectors where element `i` is bit `i - 1`. A family keeps its
//! members sorted by numeric bit-vector value, so two families over the same
//! universe are equal exactly when they contain the same sets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite set of positive element labels, stored as a little-endian bit-vector.
///
/// Trailing zero words are never stored, so equality and ordering are by
/// numeric value regardless of how the set was built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut set = Self::new();
        for e in elements {
            set.insert(e);
        }
        set
    }

    /// `{lo, lo + 1, ..., hi}`; empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::from_elements(lo..=hi)
    }

    /// Builds a set from raw words (bit 0 of word 0 is element 1).
    pub fn from_words(words: &[u64]) -> Self {
        let mut words = words.to_vec();
        trim(&mut words);
        ElemSet { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The set as a single word. Panics if some element exceeds 64.
    pub fn as_u64(&self) -> u64 {
        assert!(self.words.len() <= 1, "set does not fit in 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(&[bits])
    }

    pub fn insert(&mut self, element: usize) {
        assert!(element >= 1, "element labels are 1-based");
        let bit = element - 1;
        let w = bit / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (bit % 64);
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 {
            return false;
        }
        let bit = element - 1;
        self.words
            .get(bit / 64)
            .is_some_and(|w| w & (1 << (bit % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b + 1)
            })
        })
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        ElemSet { words }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        trim(&mut words);
        ElemSet { words }
    }

    /// Relabels every element through `map` (1-based in, 1-based out).
    pub fn map_elements(&self, mut map: impl FnMut(usize) -> usize) -> ElemSet {
        ElemSet::from_elements(self.iter().map(&mut map))
    }

    /// Elements shifted up by `offset`.
    pub fn shifted(&self, offset: usize) -> ElemSet {
        self.map_elements(|e| e + offset)
    }
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_elements(iter)
    }
}

/// Number of members containing each element, counted with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector(Vec<u64>);

impl DegreeVector {
    /// Degree of a 1-based element.
    pub fn get(&self, element: usize) -> u64 {
        self.0[element - 1]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Anything that can be read as a list of sets with positive multiplicities.
pub trait Members {
    fn universe(&self) -> usize;

    fn weighted(&self) -> Box<dyn Iterator<Item = (&ElemSet, u64)> + '_>;

    /// Number of members counted with multiplicity.
    fn total_multiplicity(&self) -> u64 {
        self.weighted().map(|(_, m)| m).sum()
    }

    fn degree_vector(&self) -> DegreeVector {
        let mut degrees = vec![0u64; self.universe()];
        for (set, mult) in self.weighted() {
            for e in set.iter() {
                degrees[e - 1] += mult;
            }
        }
        DegreeVector(degrees)
    }
}

/// Distinct nonempty subsets of `{1, ..., universe}` in ascending bit-vector order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: usize,
    members: Vec<ElemSet>,
}

impl SetFamily {
    pub fn empty(universe: usize) -> Self {
        SetFamily {
            universe,
            members: Vec::new(),
        }
    }

    /// Validates and normalizes `sets`. Indices in errors refer to input order.
    pub fn new(universe: usize, sets: Vec<ElemSet>) -> Result<Self> {
        for (index, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet { index });
            }
            let max = set.max_element();
            if max > universe {
                return Err(Error::ElementOutOfRange {
                    element: max,
                    universe,
                });
            }
        }
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| sets[a].cmp(&sets[b]).then(a.cmp(&b)));
        for pair in order.windows(2) {
            if sets[pair[0]] == sets[pair[1]] {
                return Err(Error::DuplicateSet {
                    first: pair[0],
                    second: pair[1],
                });
            }
        }
        let mut members = sets;
        members.sort();
        Ok(SetFamily { universe, members })
    }

    /// Sorts without validating; callers guarantee distinct, nonempty, in-range sets.
    pub(crate) fn from_sorted_unchecked(universe: usize, mut members: Vec<ElemSet>) -> Self {
        members.sort();
        debug_assert!(members.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(members
            .iter()
            .all(|m| !m.is_empty() && m.max_element() <= universe));
        SetFamily { universe, members }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElemSet] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &ElemSet {
        &self.members[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElemSet> {
        self.members.iter()
    }

    pub fn position(&self, set: &ElemSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    /// Union of all members.
    pub fn support(&self) -> ElemSet {
        self.members
            .iter()
            .fold(ElemSet::new(), |acc, m| acc.union(m))
    }

    pub fn is_antichain(&self) -> bool {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.members.iter().all(|m| m.len() == k)
    }

    /// The common member size, if there is one (and the family is nonempty).
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        self.is_uniform(k).then_some(k)
    }

    /// Members of size exactly `k`.
    pub fn slice(&self, k: usize) -> SetFamily {
        SetFamily {
            universe: self.universe,
            members: self
                .members
                .iter()
                .filter(|m| m.len() == k)
                .cloned()
                .collect(),
        }
    }

    /// The members at `indices` (in any order; duplicates collapse).
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        SetFamily {
            universe: self.universe,
            members: idx.into_iter().map(|i| self.members[i].clone()).collect(),
        }
    }

    /// Same members over a larger (or equal) universe.
    pub fn with_universe(&self, universe: usize) -> Result<SetFamily> {
        SetFamily::new(universe, self.members.clone())
    }

    /// Applies an element relabeling to every member.
    pub fn relabel(&self, universe: usize, map: impl Fn(usize) -> usize) -> Result<SetFamily> {
        SetFamily::new(
            universe,
            self.members.iter().map(|m| m.map_elements(&map)).collect(),
        )
    }
}

impl Members for SetFamily {
    fn universe(&self) -> usize {
        self.universe
    }

    fn weighted(&self) -> Box<dyn Iterator<Item = (&ElemSet, u64)> + '_> {
        Box::new(self.members.iter().map(|m| (m, 1)))
    }
}

/// Builds a family from 1-based element lists.
pub fn make_family(universe: usize, sets: &[Vec<usize>]) -> Result<SetFamily> {
    let mut built = Vec::with_capacity(sets.len());
    for (index, list) in sets.iter().enumerate() {
        if list.is_empty() {
            return Err(Error::EmptySet { index });
        }
        if let Some(&bad) = list.iter().find(|&&e| e == 0 || e > universe) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                universe,
            });
        }
        built.push(ElemSet::from_elements(list.iter().copied()));
    }
    SetFamily::new(universe, built)
}

/// Sets with positive integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiFamily {
    universe: usize,
    entries: Vec<(ElemSet, u64)>,
}

impl MultiFamily {
    pub fn new(universe: usize, entries: Vec<(ElemSet, u64)>) -> Result<Self> {
        for (index, (set, mult)) in entries.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptySet { index });
            }
            if *mult == 0 {
                return Err(Error::InvalidParameter(format!(
                    "entry #{index} has multiplicity 0"
                )));
            }
            if set.max_element() > universe {
                return Err(Error::ElementOutOfRange {
                    element: set.max_element(),
                    universe,
                });
            }
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(i) = entries.windows(2).position(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateSet {
                first: i,
                second: i + 1,
            });
        }
        Ok(MultiFamily { universe, entries })
    }

    pub fn from_lists(universe: usize, entries: &[(Vec<usize>, u64)]) -> Result<Self> {
        let fam = entries
            .iter()
            .map(|(l, m)| (ElemSet::from_elements(l.iter().copied()), *m))
            .collect();
        MultiFamily::new(universe, fam)
    }

    pub fn from_family(family: &SetFamily) -> Self {
        MultiFamily {
            universe: family.universe(),
            entries: family.iter().map(|m| (m.clone(), 1)).collect(),
        }
    }

    pub fn entries(&self) -> &[(ElemSet, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, set: &ElemSet) -> u64 {
        self.entries
            .binary_search_by(|(s, _)| s.cmp(set))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Intersects every member with `keep`, drops members that become empty,
    /// and merges equal members by adding multiplicities.
    pub fn restrict(&self, keep: &ElemSet) -> MultiFamily {
        let mut merged: std::collections::BTreeMap<ElemSet, u64> = Default::default();
        for (set, mult) in &self.entries {
            let cut = set.intersection(keep);
            if !cut.is_empty() {
                *merged.entry(cut).or_default() += mult;
            }
        }
        MultiFamily {
            universe: self.universe,
            entries: merged.into_iter().collect(),
        }
    }
}

impl Members for MultiFamily {
    fn universe(&self) -> usize {
        self.universe
    }

    fn weighted(&self) -> Box<dyn Iterator<Item = (&ElemSet, u64)> + '_> {
        Box::new(self.entries.iter().map(|(s, m)| (s, *m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        make_family(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn elemset_order_is_numeric() {
        let a = ElemSet::from_elements([1, 2]); // 3
        let b = ElemSet::from_elements([3]); // 4
        let c = ElemSet::from_elements([65]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(c.max_element(), 65);
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![65]);
        assert_eq!(
            ElemSet::from_words(&[5, 0, 0]),
            ElemSet::from_elements([1, 3])
        );
    }

    #[test]
    fn make_family_builds_c3() {
        let f = fam(3, &[&[2, 3], &[1, 2], &[1, 3]]);
        assert_eq!(f.len(), 3);
        let listed: Vec<Vec<usize>> = f.iter().map(|m| m.iter().collect()).collect();
        assert_eq!(listed, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn make_family_errors() {
        assert_eq!(
            make_family(4, &[vec![1, 2], vec![1, 2]]),
            Err(Error::DuplicateSet {
                first: 0,
                second: 1
            })
        );
        assert!(matches!(
            make_family(5, &[vec![1, 2, 3], vec![4, 5, 6]]),
            Err(Error::ElementOutOfRange {
                element: 6,
                universe: 5
            })
        ));
        assert_eq!(
            make_family(3, &[vec![1], vec![]]),
            Err(Error::EmptySet { index: 1 })
        );
    }

    #[test]
    fn degree_vectors() {
        let f = fam(3, &[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]);
        assert_eq!(f.degree_vector().as_slice(), &[3, 3, 3]);
        assert_eq!(SetFamily::empty(3).degree_vector().as_slice(), &[0, 0, 0]);
        let h = MultiFamily::from_lists(2, &[(vec![1, 2], 2), (vec![2], 1)]).unwrap();
        assert_eq!(h.degree_vector().as_slice(), &[2, 3]);
    }

    #[test]
    fn antichain_and_uniformity() {
        assert!(fam(3, &[&[1, 2], &[1, 3], &[2, 3]]).is_antichain());
        assert!(!fam(2, &[&[1], &[1, 2]]).is_antichain());
        assert!(SetFamily::empty(4).is_antichain());
        let c4 = fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert!(c4.is_uniform(3));
        assert!(!fam(3, &[&[1], &[2, 3]]).is_uniform(1));
        assert!(SetFamily::empty(7).is_uniform(5));
    }

    #[test]
    fn slices() {
        let f = fam(3, &[&[1], &[1, 2], &[2, 3]]);
        assert_eq!(f.slice(2), fam(3, &[&[1, 2], &[2, 3]]));
        let c4plus = fam(
            4,
            &[
                &[1, 2, 3],
                &[1, 2, 4],
                &[1, 3, 4],
                &[2, 3, 4],
                &[1, 2, 3, 4],
            ],
        );
        assert_eq!(
            c4plus.slice(3),
            fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
        );
        assert!(fam(3, &[&[1, 2], &[1, 3], &[2, 3]]).slice(1).is_empty());
    }

    #[test]
    fn restrict_merges_and_drops() {
        let h = MultiFamily::from_lists(3, &[(vec![1, 2], 1), (vec![1, 3], 1)]).unwrap();
        let r = h.restrict(&ElemSet::from_elements([1]));
        assert_eq!(r, MultiFamily::from_lists(3, &[(vec![1], 2)]).unwrap());
        assert_eq!(h.restrict(&ElemSet::range(1, 3)), h);
        let h = MultiFamily::from_lists(3, &[(vec![1, 2], 1), (vec![3], 1)]).unwrap();
        assert_eq!(
            h.restrict(&ElemSet::from_elements([3])),
            MultiFamily::from_lists(3, &[(vec![3], 1)]).unwrap()
        );
    }
}
