//! Minimal odd-sunflowers (MOS) and their enumeration up to isomorphism.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::detect::is_odd_sunflower;
use crate::detect::search::{ParityIndex, Step};
use crate::error::{Error, Result};
use crate::family::{ElemSet, SetFamily};

/// Largest universe [`canonical_form`] accepts.
pub const MAX_CANONICAL_UNIVERSE: usize = 10;

/// Largest family [`is_minimal_odd_sunflower`] accepts.
pub const MAX_MINIMALITY_MEMBERS: usize = 25;

/// The least relabeling of a family, plus the size of its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalClass {
    pub family: SetFamily,
    pub automorphisms: u64,
}

impl CanonicalClass {
    pub fn canonical_members(&self) -> &[ElemSet] {
        self.family.members()
    }

    pub fn universe(&self) -> usize {
        self.family.universe()
    }
}

/// Canonical form over the family's universe.
///
/// Elements are first split into classes by an isomorphism-invariant colour
/// refinement seeded with their degrees (higher degree first). Labels are
/// handed out class by class, and the result is the least sorted member list
/// over all relabelings that respect the classes. Every automorphism respects
/// the classes, so counting the relabelings that reach the minimum counts
/// the automorphisms.
pub fn canonical_form(f: &SetFamily) -> Result<CanonicalClass> {
    let n = f.universe();
    if n > MAX_CANONICAL_UNIVERSE {
        return Err(Error::TooLarge {
            what: format!("canonical form universe {n}"),
            limit: MAX_CANONICAL_UNIVERSE,
        });
    }
    let masks: Vec<u64> = f.iter().map(ElemSet::as_u64).collect();
    let (canon, automorphisms) = canonical_masks(n, &masks);
    let family = SetFamily::new(n, canon.into_iter().map(ElemSet::from_u64).collect())?;
    Ok(CanonicalClass {
        family,
        automorphisms,
    })
}

fn refine_colours(n: usize, members: &[u64]) -> Vec<usize> {
    let degree = |v: usize| members.iter().filter(|&&m| m & (1 << v) != 0).count();
    let mut colours = rank(
        &(0..n)
            .map(|v| std::cmp::Reverse(degree(v)))
            .collect::<Vec<_>>(),
    );
    let mut classes = count_distinct(&colours);
    loop {
        let signatures: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = members
                    .iter()
                    .filter(|&&m| m & (1 << v) != 0)
                    .map(|&m| {
                        let mut cs: Vec<usize> = (0..n)
                            .filter(|&u| m & (1 << u) != 0)
                            .map(|u| colours[u])
                            .collect();
                        cs.sort_unstable();
                        cs
                    })
                    .collect();
                around.sort();
                (colours[v], around)
            })
            .collect();
        let next = rank(&signatures);
        let next_classes = count_distinct(&next);
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let sorted: BTreeSet<T> = keys.iter().cloned().collect();
    let sorted: Vec<T> = sorted.into_iter().collect();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn count_distinct(colours: &[usize]) -> usize {
    colours.iter().collect::<BTreeSet<_>>().len()
}

struct LabelSearch<'a> {
    members: &'a [u64],
    /// the colour class that owns each label slot
    slot_class: Vec<usize>,
    colours: Vec<usize>,
    label_of: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<u64>>,
    hits: u64,
}

impl LabelSearch<'_> {
    fn assign(&mut self, slot: usize) {
        let n = self.colours.len();
        if slot == n {
            let mut image: Vec<u64> = self
                .members
                .iter()
                .map(|&m| {
                    (0..n)
                        .filter(|&v| m & (1 << v) != 0)
                        .fold(0u64, |acc, v| acc | 1 << self.label_of[v])
                })
                .collect();
            image.sort_unstable();
            match &self.best {
                Some(b) if image > *b => {}
                Some(b) if image == *b => self.hits += 1,
                _ => {
                    self.best = Some(image);
                    self.hits = 1;
                }
            }
            return;
        }
        for v in 0..n {
            if !self.used[v] && self.colours[v] == self.slot_class[slot] {
                self.used[v] = true;
                self.label_of[v] = slot;
                self.assign(slot + 1);
                self.used[v] = false;
            }
        }
    }
}

pub(crate) fn canonical_masks(n: usize, members: &[u64]) -> (Vec<u64>, u64) {
    let colours = refine_colours(n, members);
    let mut slot_class = colours.clone();
    slot_class.sort_unstable();
    let mut search = LabelSearch {
        members,
        slot_class,
        colours,
        label_of: vec![0; n],
        used: vec![false; n],
        best: None,
        hits: 0,
    };
    search.assign(0);
    (search.best.unwrap_or_default(), search.hits)
}

/// True iff `f` is an odd-sunflower with no odd-sunflower as a proper subfamily.
pub fn is_minimal_odd_sunflower(f: &SetFamily) -> Result<bool> {
    if f.len() > MAX_MINIMALITY_MEMBERS {
        return Err(Error::TooLarge {
            what: format!("minimality check on {} members", f.len()),
            limit: MAX_MINIMALITY_MEMBERS,
        });
    }
    if !is_odd_sunflower(f) {
        return Ok(false);
    }
    // every proper subfamily misses some member
    let index = ParityIndex::new(f.universe(), f.iter().map(|m| m.words()));
    Ok(no_proper_witness(&index, f.len()))
}

fn no_proper_witness(index: &ParityIndex, len: usize) -> bool {
    (0..len).all(|skip| !matches!(index.search_excluding(&[skip], u64::MAX).0, Step::Found(_)))
}

/// `n` when `k` is odd, `n - 1` when `k` is even.
pub fn mos_size_bound(n: usize, k: usize) -> usize {
    if k % 2 == 1 {
        n
    } else {
        n.saturating_sub(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MosSearchConfig {
    pub k: usize,
    pub max_members: usize,
    pub max_universe: usize,
}

impl MosSearchConfig {
    /// Default bounds for `k <= 3`: at most 7 members on at most 7 elements
    /// (4 and 4 for `k = 1`).
    pub fn default_for(k: usize) -> Result<Self> {
        let (max_members, max_universe) = match k {
            1 => (4, 4),
            2 | 3 => (7, 7),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "no default search bounds for k = {k}; supply them explicitly"
                )))
            }
        };
        Ok(MosSearchConfig {
            k,
            max_members,
            max_universe,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MosEnumeration {
    pub config: MosSearchConfig,
    pub classes: Vec<CanonicalClass>,
    /// Set when completeness rests only on the caller's bounds (`k >= 4`).
    pub bounded: bool,
}

/// All k-uniform minimal odd-sunflowers within the configured bounds, one per
/// isomorphism class, sorted by size and then canonical members.
///
/// Two disjoint k-sets form a MOS, and any MOS containing two disjoint members
/// is exactly that pair. Everything else is intersecting, so it is built
/// member by member from `{1..k}`: each new k-set meets every previous member
/// and brings its new elements in as the next unused labels. Each level is
/// reduced to canonical representatives before extending. A partial family
/// is dropped once it contains an odd-sunflower, or once an element that no
/// further k-set can reach has even degree.
pub fn enumerate_mos(config: MosSearchConfig) -> Result<MosEnumeration> {
    let MosSearchConfig {
        k,
        max_members,
        max_universe,
    } = config;
    if k == 0 {
        return Err(Error::InvalidParameter("uniformity must be >= 1".into()));
    }
    if max_universe > MAX_CANONICAL_UNIVERSE {
        return Err(Error::TooLarge {
            what: format!("MOS search universe {max_universe}"),
            limit: MAX_CANONICAL_UNIVERSE,
        });
    }
    let mut found: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    if max_members >= 2 && 2 * k <= max_universe {
        let a = (1u64 << k) - 1;
        found.insert(canonical_key(2 * k, &[a, a << k]));
    }

    let mut level: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    if max_members >= 1 && k <= max_universe {
        level.insert((k, vec![(1u64 << k) - 1]));
    }
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for (used, members) in &level {
            extend(config, *used, members, &mut next, &mut found);
        }
        level = next;
    }

    let mut classes = found
        .into_iter()
        .map(|(n, masks)| {
            let family = SetFamily::new(n, masks.iter().map(|&m| ElemSet::from_u64(m)).collect())?;
            let (_, automorphisms) = canonical_masks(n, &masks);
            Ok(CanonicalClass {
                family,
                automorphisms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| {
        (a.family.len(), a.family.members()).cmp(&(b.family.len(), b.family.members()))
    });
    Ok(MosEnumeration {
        config,
        classes,
        bounded: k >= 4,
    })
}

fn canonical_key(n: usize, members: &[u64]) -> (usize, Vec<u64>) {
    (n, canonical_masks(n, members).0)
}

fn extend(
    config: MosSearchConfig,
    used: usize,
    members: &[u64],
    next: &mut BTreeSet<(usize, Vec<u64>)>,
    found: &mut BTreeSet<(usize, Vec<u64>)>,
) {
    let k = config.k;
    for old in 1u64..1 << used {
        let shared = old.count_ones() as usize;
        if shared > k {
            continue;
        }
        let fresh = k - shared;
        let universe = used + fresh;
        if universe > config.max_universe {
            continue;
        }
        let set = old | (((1u64 << fresh) - 1) << used);
        if members.contains(&set) || members.iter().any(|&m| m & set == 0) {
            continue;
        }
        let mut grown = members.to_vec();
        grown.push(set);
        grown.sort_unstable();

        if odd_sunflower_masks(&grown) {
            let index = ParityIndex::from_masks(universe, &grown);
            if no_proper_witness(&index, grown.len()) {
                found.insert(canonical_key(universe, &grown));
            }
            continue;
        }
        let pos = grown.binary_search(&set).expect("just inserted");
        let index = ParityIndex::from_masks(universe, &grown);
        if let (Step::Found(_), _) = index.search(&[pos], u64::MAX) {
            continue;
        }
        if grown.len() >= config.max_members || closed_even_element(k, universe, &grown) {
            continue;
        }
        next.insert(canonical_key(universe, &grown));
    }
}

fn odd_sunflower_masks(members: &[u64]) -> bool {
    let mut parity = 0;
    let mut cover = 0;
    for &m in members {
        parity ^= m;
        cover |= m;
    }
    members.len() >= 2 && parity == cover
}

/// Some element has even degree and can never be covered again: no k-set
/// through it meets every member that avoids it.
fn closed_even_element(k: usize, universe: usize, members: &[u64]) -> bool {
    (0..universe).any(|v| {
        let bit = 1u64 << v;
        let degree = members.iter().filter(|&&m| m & bit != 0).count();
        if degree % 2 == 1 {
            return false;
        }
        let avoiding: Vec<u64> = members.iter().copied().filter(|&m| m & bit == 0).collect();
        let others = ((1u64 << universe) - 1) & !bit;
        !hitting_set_within(&avoiding, others, k - 1)
    })
}

fn hitting_set_within(sets: &[u64], pool: u64, budget: usize) -> bool {
    let mut choice = pool;
    // enumerate subsets of `pool` with at most `budget` elements
    loop {
        if (choice.count_ones() as usize) <= budget && sets.iter().all(|&s| s & choice != 0) {
            return true;
        }
        if choice == 0 {
            return false;
        }
        choice = (choice - 1) & pool;
    }
}
