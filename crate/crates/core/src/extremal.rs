//! Exact maximum sizes of even-sunflower-free, odd-sunflower-free, and
//! odd-sunflower-free antichain families on tiny universes.
//!
//! Two independent modes: an exhaustive scan over every family of nonempty
//! subsets (bitmask dynamic programming, `n <= 4`), and a branch-and-bound
//! search (`n <= 5`). Both report the lexicographically least maximum family,
//! comparing families as ascending lists of member bit-vectors.

use serde::Serialize;

use crate::construct::direct_sum;
use crate::detect::search::{ParityIndex, Step};
use crate::detect::{find_odd_sunflower, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::family::{ElemSet, SetFamily};

pub const EXHAUSTIVE_MAX_N: usize = 4;
pub const BRANCH_AND_BOUND_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtremalKind {
    Even,
    Odd,
    OddAntichain,
}

impl ExtremalKind {
    pub const ALL: [ExtremalKind; 3] = [
        ExtremalKind::Even,
        ExtremalKind::Odd,
        ExtremalKind::OddAntichain,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalMode {
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub kind: ExtremalKind,
    pub value: usize,
    pub witness: SetFamily,
}

/// Exhaustive mode when `n` allows it, branch-and-bound otherwise.
pub fn exact_extremal(n: usize, kind: ExtremalKind) -> Result<ExtremalRecord> {
    let mode = if n <= EXHAUSTIVE_MAX_N {
        ExtremalMode::Exhaustive
    } else {
        ExtremalMode::BranchAndBound
    };
    exact_extremal_with(n, kind, mode)
}

pub fn exact_extremal_with(
    n: usize,
    kind: ExtremalKind,
    mode: ExtremalMode,
) -> Result<ExtremalRecord> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "universe must have at least one element".into(),
        ));
    }
    let (limit, what) = match mode {
        ExtremalMode::Exhaustive => (EXHAUSTIVE_MAX_N, "exhaustive extremal search universe"),
        ExtremalMode::BranchAndBound => (
            BRANCH_AND_BOUND_MAX_N,
            "branch-and-bound extremal search universe",
        ),
    };
    if n > limit {
        return Err(Error::TooLarge {
            what: format!("{what} {n}"),
            limit,
        });
    }
    let masks = match mode {
        ExtremalMode::Exhaustive => exhaustive(n, kind),
        ExtremalMode::BranchAndBound => branch_and_bound(n, kind),
    };
    let witness = SetFamily::new(n, masks.iter().map(|&m| ElemSet::from_u64(m)).collect())?;
    Ok(ExtremalRecord {
        n,
        kind,
        value: witness.len(),
        witness,
    })
}

/// Every family is a mask over the `2^n - 1` nonempty subsets; subset `i + 1` is bit `i`.
fn exhaustive(n: usize, kind: ExtremalKind) -> Vec<u64> {
    let subsets = (1usize << n) - 1;
    let families = 1usize << subsets;
    let mut parity = vec![0u64; families];
    let mut cover = vec![0u64; families];
    let mut contains = vec![false; families];
    let mut antichain = vec![true; families];

    let comparable: Vec<u64> = (0..subsets)
        .map(|i| {
            let a = (i + 1) as u64;
            (0..subsets)
                .filter(|&j| {
                    j != i && {
                        let b = (j + 1) as u64;
                        a & b == a || a & b == b
                    }
                })
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();

    let mut best: Option<(u32, Vec<u64>)> = None;
    for fam in 1..families {
        let low = fam.trailing_zeros() as usize;
        let rest = fam & (fam - 1);
        let set = (low + 1) as u64;
        parity[fam] = parity[rest] ^ set;
        cover[fam] = cover[rest] | set;
        antichain[fam] = antichain[rest] && comparable[low] & rest as u64 == 0;

        let size = fam.count_ones();
        let is_sunflower = match kind {
            ExtremalKind::Even => parity[fam] == 0,
            ExtremalKind::Odd | ExtremalKind::OddAntichain => {
                size >= 2 && parity[fam] == cover[fam]
            }
        };
        let mut bits = fam;
        let mut inherited = false;
        while bits != 0 && !inherited {
            let b = bits & bits.wrapping_neg();
            inherited = contains[fam ^ b];
            bits ^= b;
        }
        contains[fam] = is_sunflower || inherited;

        let admissible = !contains[fam] && (kind != ExtremalKind::OddAntichain || antichain[fam]);
        if !admissible {
            continue;
        }
        let members: Vec<u64> = (0..subsets)
            .filter(|&i| fam & (1 << i) != 0)
            .map(|i| (i + 1) as u64)
            .collect();
        let better = match &best {
            None => true,
            Some((s, m)) => size > *s || (size == *s && members < *m),
        };
        if better {
            best = Some((size, members));
        }
    }
    best.map(|(_, m)| m).unwrap_or_default()
}

struct Bnb {
    n: usize,
    kind: ExtremalKind,
    order: Vec<u64>,
    chosen: Vec<u64>,
    /// GF(2) basis indexed by pivot bit (even kind only)
    basis: Vec<u64>,
}

impl Bnb {
    fn new(n: usize, kind: ExtremalKind, order: Vec<u64>) -> Self {
        Bnb {
            n,
            kind,
            order,
            chosen: Vec::new(),
            basis: vec![0; n],
        }
    }

    fn compatible(&self, s: u64) -> bool {
        match self.kind {
            ExtremalKind::Even => true,
            // two disjoint sets already form an odd-sunflower
            ExtremalKind::Odd => self.chosen.iter().all(|&c| c & s != 0),
            ExtremalKind::OddAntichain => self
                .chosen
                .iter()
                .all(|&c| c & s != 0 && c & s != c && c & s != s),
        }
    }

    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let p = v.trailing_zeros() as usize;
            if self.basis[p] == 0 {
                break;
            }
            v ^= self.basis[p];
        }
        v
    }

    /// Whether adding `s` keeps the chosen family free; pushes it if so.
    fn try_push(&mut self, s: u64) -> bool {
        if !self.compatible(s) {
            return false;
        }
        match self.kind {
            ExtremalKind::Even => {
                let v = self.reduce(s);
                if v == 0 {
                    return false;
                }
                self.basis[v.trailing_zeros() as usize] = v;
            }
            ExtremalKind::Odd | ExtremalKind::OddAntichain => {
                let mut masks = self.chosen.clone();
                masks.push(s);
                let index = ParityIndex::from_masks(self.n, &masks);
                if let (Step::Found(_), _) = index.search(&[masks.len() - 1], u64::MAX) {
                    return false;
                }
            }
        }
        self.chosen.push(s);
        true
    }

    fn pop(&mut self) {
        self.chosen.pop();
        if self.kind == ExtremalKind::Even {
            // n <= 5, rebuilding is cheaper than tracking which row to drop
            self.basis.iter_mut().for_each(|b| *b = 0);
            for i in 0..self.chosen.len() {
                let v = self.reduce(self.chosen[i]);
                self.basis[v.trailing_zeros() as usize] = v;
            }
        }
    }

    fn open_after(&self, pos: usize) -> usize {
        let open = self.order[pos..]
            .iter()
            .filter(|&&s| self.compatible(s))
            .count();
        match self.kind {
            ExtremalKind::Even => open.min(self.n - self.chosen.len()),
            _ => open,
        }
    }

    fn maximize(&mut self, pos: usize, best: &mut usize) {
        if self.chosen.len() > *best {
            *best = self.chosen.len();
        }
        if pos == self.order.len() || self.chosen.len() + self.open_after(pos) <= *best {
            return;
        }
        let s = self.order[pos];
        if self.try_push(s) {
            self.maximize(pos + 1, best);
            self.pop();
        }
        self.maximize(pos + 1, best);
    }

    /// First family of exactly `target` members in include-first order.
    fn first_of_size(&mut self, pos: usize, target: usize) -> Option<Vec<u64>> {
        if self.chosen.len() == target {
            return Some(self.chosen.clone());
        }
        if pos == self.order.len() || self.chosen.len() + self.open_after(pos) < target {
            return None;
        }
        let s = self.order[pos];
        if self.try_push(s) {
            if let Some(found) = self.first_of_size(pos + 1, target) {
                return Some(found);
            }
            self.pop();
        }
        self.first_of_size(pos + 1, target)
    }
}

fn branch_and_bound(n: usize, kind: ExtremalKind) -> Vec<u64> {
    let ascending: Vec<u64> = (1..1u64 << n).collect();
    let mut by_size = ascending.clone();
    by_size.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));

    let mut best = 0;
    Bnb::new(n, kind, by_size).maximize(0, &mut best);
    Bnb::new(n, kind, ascending)
        .first_of_size(0, best)
        .expect("a family of the maximum size exists")
}

/// Checks `f_oa(n + m) >= f_oa(n) · f_oa(m)` and that the direct sum of the
/// two witnesses is an odd-sunflower-free antichain of the product size.
pub fn verify_supermultiplicativity(n: usize, m: usize) -> Result<bool> {
    let kind = ExtremalKind::OddAntichain;
    let a = exact_extremal(n, kind)?;
    let b = exact_extremal(m, kind)?;
    let ab = exact_extremal(n + m, kind)?;
    let (sum, _) = direct_sum(&a.witness, &b.witness)?;
    let free = find_odd_sunflower(&sum, DEFAULT_BUDGET).is_absent();
    Ok(ab.value >= a.value * b.value
        && sum.len() == a.value * b.value
        && sum.is_antichain()
        && free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::make_family;

    #[test]
    fn even_equals_n() {
        for n in 1..=4 {
            let r = exact_extremal(n, ExtremalKind::Even).unwrap();
            assert_eq!(r.value, n);
            let singletons = make_family(n, &(1..=n).map(|i| vec![i]).collect::<Vec<_>>()).unwrap();
            assert_eq!(r.witness, singletons);
        }
    }

    #[test]
    fn small_odd_values() {
        assert_eq!(exact_extremal(1, ExtremalKind::Odd).unwrap().value, 1);
        let r = exact_extremal(2, ExtremalKind::Odd).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness, make_family(2, &[vec![1], vec![1, 2]]).unwrap());
    }

    #[test]
    fn modes_agree_up_to_four() {
        for n in 1..=4 {
            for kind in ExtremalKind::ALL {
                let a = exact_extremal_with(n, kind, ExtremalMode::Exhaustive).unwrap();
                let b = exact_extremal_with(n, kind, ExtremalMode::BranchAndBound).unwrap();
                assert_eq!(a, b, "n={n} {kind:?}");
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(
            exact_extremal_with(5, ExtremalKind::Odd, ExtremalMode::Exhaustive),
            Err(Error::TooLarge { limit: 4, .. })
        ));
        assert!(matches!(
            exact_extremal(6, ExtremalKind::Odd),
            Err(Error::TooLarge { limit: 5, .. })
        ));
        assert!(exact_extremal(0, ExtremalKind::Odd).is_err());
    }

    #[test]
    fn supermultiplicativity_small() {
        assert!(verify_supermultiplicativity(2, 2).unwrap());
        assert!(verify_supermultiplicativity(1, 3).unwrap());
    }
}
