//! Exact search for odd-sunflowers.
//!
//! The state is the chosen subfamily, summarized by its cover mask and its
//! degree-parity mask. An element in `cover & !parity` has a nonzero even
//! degree; any odd-sunflower extending the current choice must add a member
//! containing it. The search branches on such a violated element with the
//! fewest undecided candidates, excluding earlier candidates in later
//! branches, so every subfamily is reached at most once. When nothing is
//! violated and at least two members are chosen, the choice is a witness.
//!
//! Every covered element must end with odd degree, so the undecided members,
//! restricted to the cover, must be able to flip exactly the violated
//! elements over GF(2). Nodes where the violated vector lies outside that
//! span are cut.

use serde::Serialize;

use super::cover::{CoverSearch, COVER_SEARCH_MAX_SUPPORT};
use super::{Certificate, SunflowerKind};
use crate::family::SetFamily;

/// Default node budget for [`find_odd_sunflower`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OddSearch {
    Found {
        certificate: Certificate,
        nodes: u64,
    },
    Absent {
        nodes: u64,
    },
    BudgetExceeded {
        nodes: u64,
    },
}

impl OddSearch {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            OddSearch::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, OddSearch::Found { .. })
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, OddSearch::Absent { .. })
    }

    pub fn nodes(&self) -> u64 {
        match *self {
            OddSearch::Found { nodes, .. }
            | OddSearch::Absent { nodes }
            | OddSearch::BudgetExceeded { nodes } => nodes,
        }
    }
}

/// Searches `f` for an odd-sunflower within `budget` search nodes.
pub fn find_odd_sunflower(f: &SetFamily, budget: u64) -> OddSearch {
    find_odd_sunflower_with(f, budget, &[])
}

/// Like [`find_odd_sunflower`], but only witnesses containing all of `forced` count.
///
/// Without forced members, a family on fewer elements than members is
/// searched over covers instead (see the `cover` module); the budget then
/// counts cover nodes.
pub fn find_odd_sunflower_with(f: &SetFamily, budget: u64, forced: &[usize]) -> OddSearch {
    let support: Vec<usize> = f.support().iter().collect();
    let (found, nodes) = if forced.is_empty()
        && support.len() <= COVER_SEARCH_MAX_SUPPORT
        && support.len() < f.len()
    {
        let mut bit = vec![0usize; f.universe() + 1];
        for (b, &e) in support.iter().enumerate() {
            bit[e] = b;
        }
        let masks = f
            .iter()
            .map(|m| m.iter().fold(0u64, |acc, e| acc | 1 << bit[e]))
            .collect();
        CoverSearch::new(masks, support.len()).run(budget)
    } else {
        ParityIndex::new(f.universe(), f.iter().map(|m| m.words())).search(forced, budget)
    };
    match found {
        Step::Found(indices) => OddSearch::Found {
            certificate: Certificate::from_indices(SunflowerKind::Odd, indices),
            nodes,
        },
        Step::Dead => OddSearch::Absent { nodes },
        Step::Budget => OddSearch::BudgetExceeded { nodes },
    }
}

/// Flat bit-vector storage of a family plus, per element, the members containing it.
pub(crate) struct ParityIndex {
    words: usize,
    sets: Vec<u64>,
    containing: Vec<Vec<u32>>,
}

pub(crate) enum Step {
    Found(Vec<usize>),
    Dead,
    Budget,
}

impl ParityIndex {
    pub(crate) fn new<'a>(universe: usize, members: impl Iterator<Item = &'a [u64]>) -> Self {
        let words = universe.div_ceil(64).max(1);
        let mut sets = Vec::new();
        let mut containing = vec![Vec::new(); universe.max(1)];
        for (i, m) in members.enumerate() {
            for w in 0..words {
                let bits = m.get(w).copied().unwrap_or(0);
                sets.push(bits);
                let mut rest = bits;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    containing[w * 64 + b].push(i as u32);
                }
            }
        }
        ParityIndex {
            words,
            sets,
            containing,
        }
    }

    /// Members given as single-word masks over `{1..universe}`, `universe <= 64`.
    pub(crate) fn from_masks(universe: usize, masks: &[u64]) -> Self {
        let wrapped: Vec<[u64; 1]> = masks.iter().map(|&m| [m]).collect();
        Self::new(universe, wrapped.iter().map(|m| m.as_slice()))
    }

    fn len(&self) -> usize {
        self.sets.len() / self.words
    }

    pub(crate) fn search(&self, forced: &[usize], budget: u64) -> (Step, u64) {
        self.search_restricted(forced, &[], budget)
    }

    /// Witnesses avoiding every member in `excluded`.
    pub(crate) fn search_excluding(&self, excluded: &[usize], budget: u64) -> (Step, u64) {
        self.search_restricted(&[], excluded, budget)
    }

    fn search_restricted(&self, forced: &[usize], excluded: &[usize], budget: u64) -> (Step, u64) {
        let mut dfs = Dfs {
            index: self,
            status: vec![Status::Undecided; self.len()],
            chosen: Vec::new(),
            parity: vec![0; self.words],
            cover: vec![0; self.words],
            nodes: 0,
            budget,
            basis: Vec::new(),
            pivots: Vec::new(),
            row: vec![0; self.words],
        };
        for &i in excluded {
            dfs.status[i] = Status::Out;
        }
        for &i in forced {
            if dfs.status[i] == Status::Undecided {
                dfs.include(i);
            }
        }
        let step = dfs.run();
        (step, dfs.nodes)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    In,
    Out,
}

struct Dfs<'a> {
    index: &'a ParityIndex,
    status: Vec<Status>,
    chosen: Vec<usize>,
    parity: Vec<u64>,
    cover: Vec<u64>,
    nodes: u64,
    budget: u64,
    /// scratch for the span test: reduced rows, flat, with their pivot bits
    basis: Vec<u64>,
    pivots: Vec<usize>,
    row: Vec<u64>,
}

impl Dfs<'_> {
    /// Whether the undecided members, cut down to the cover, span the violated vector.
    fn repairable(&mut self) -> bool {
        let w = self.index.words;
        self.basis.clear();
        self.pivots.clear();
        for i in 0..self.status.len() {
            if self.status[i] != Status::Undecided {
                continue;
            }
            for k in 0..w {
                self.row[k] = self.index.sets[i * w + k] & self.cover[k];
            }
            if let Some(p) = reduce(&mut self.row, &self.basis, &self.pivots) {
                self.basis.extend_from_slice(&self.row);
                self.pivots.push(p);
            }
        }
        for k in 0..w {
            self.row[k] = self.cover[k] & !self.parity[k];
        }
        reduce(&mut self.row, &self.basis, &self.pivots).is_none()
    }

    fn include(&mut self, i: usize) {
        let w = self.index.words;
        for (k, &bits) in self.index.sets[i * w..(i + 1) * w].iter().enumerate() {
            self.parity[k] ^= bits;
            self.cover[k] |= bits;
        }
        self.status[i] = Status::In;
        self.chosen.push(i);
    }

    /// The violated element with the fewest undecided candidates;
    /// `Err(())` when some violated element has none left.
    fn most_constrained(&self) -> Result<Option<usize>, ()> {
        let mut best: Option<(usize, usize)> = None;
        for w in 0..self.index.words {
            let mut violated = self.cover[w] & !self.parity[w];
            while violated != 0 {
                let e = w * 64 + violated.trailing_zeros() as usize;
                violated &= violated - 1;
                let open = self.index.containing[e]
                    .iter()
                    .filter(|&&m| self.status[m as usize] == Status::Undecided)
                    .count();
                if open == 0 {
                    return Err(());
                }
                if best.map_or(true, |(_, c)| open < c) {
                    best = Some((e, open));
                }
            }
        }
        Ok(best.map(|(e, _)| e))
    }

    fn run(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        if !self.repairable() {
            return Step::Dead;
        }
        let candidates: Vec<usize> = match self.most_constrained() {
            Err(()) => return Step::Dead,
            Ok(Some(e)) => self.index.containing[e]
                .iter()
                .map(|&m| m as usize)
                .filter(|&m| self.status[m] == Status::Undecided)
                .collect(),
            Ok(None) if self.chosen.len() >= 2 => {
                let mut found = self.chosen.clone();
                found.sort_unstable();
                return Step::Found(found);
            }
            Ok(None) => (0..self.status.len())
                .filter(|&m| self.status[m] == Status::Undecided)
                .collect(),
        };

        let saved_parity = self.parity.clone();
        let saved_cover = self.cover.clone();
        let mut excluded = Vec::with_capacity(candidates.len());
        let mut outcome = Step::Dead;
        for c in candidates {
            self.include(c);
            match self.run() {
                Step::Dead => {}
                other => {
                    outcome = other;
                    break;
                }
            }
            self.chosen.pop();
            self.parity.copy_from_slice(&saved_parity);
            self.cover.copy_from_slice(&saved_cover);
            self.status[c] = Status::Out;
            excluded.push(c);
        }
        for c in excluded {
            self.status[c] = Status::Undecided;
        }
        outcome
    }
}

/// Reduces `row` by rows whose pivots are their lowest set bits, in insertion
/// order; returns the new pivot, or `None` if the row vanishes.
fn reduce(row: &mut [u64], basis: &[u64], pivots: &[usize]) -> Option<usize> {
    let w = row.len();
    for (r, &p) in pivots.iter().enumerate() {
        if row[p / 64] >> (p % 64) & 1 == 1 {
            for k in 0..w {
                row[k] ^= basis[r * w + k];
            }
        }
    }
    row.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(k, &x)| k * 64 + x.trailing_zeros() as usize)
}
