//! Odd-sunflower search over covers instead of subfamilies.
//!
//! A subfamily `X` with union `C` is an odd-sunflower iff the member vectors
//! of `X` sum to the all-ones vector on `C` over GF(2) and `|X| >= 2`. So for
//! a fixed `C` the question is linear in the members inside `C`. Elements of
//! the support are decided one at a time (in `C` or not). A member survives
//! while it avoids every excluded element, and a node is cut when the
//! surviving members, restricted to the included elements, cannot sum to
//! all-ones there. The cost grows with the support, not with the family.

use super::search::Step;

/// Largest support the cover search handles (members become single words).
pub(crate) const COVER_SEARCH_MAX_SUPPORT: usize = 48;

pub(crate) struct CoverSearch {
    /// members as masks over the compressed support
    members: Vec<u64>,
    support: usize,
    nodes: u64,
    budget: u64,
}

impl CoverSearch {
    /// `members` must already be compressed onto bits `0..support`.
    pub(crate) fn new(members: Vec<u64>, support: usize) -> Self {
        debug_assert!(support <= COVER_SEARCH_MAX_SUPPORT);
        CoverSearch {
            members,
            support,
            nodes: 0,
            budget: 0,
        }
    }

    pub(crate) fn run(mut self, budget: u64) -> (Step, u64) {
        self.budget = budget;
        let alive: Vec<usize> = (0..self.members.len()).collect();
        let step = self.descend(0, 0, &alive);
        (step, self.nodes)
    }

    fn descend(&mut self, element: usize, included: u64, alive: &[usize]) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        let rows: Vec<u64> = alive.iter().map(|&i| self.members[i] & included).collect();
        if solve(&rows, included).is_none() {
            return Step::Dead;
        }
        if element == self.support {
            if included == 0 {
                return Step::Dead;
            }
            // every alive member now lies inside `included`
            return match witness(&rows, included) {
                Some(pick) => {
                    let mut found: Vec<usize> = pick.into_iter().map(|r| alive[r]).collect();
                    found.sort_unstable();
                    Step::Found(found)
                }
                None => Step::Dead,
            };
        }
        let bit = 1u64 << element;
        if alive.iter().any(|&i| self.members[i] & bit != 0) {
            match self.descend(element + 1, included | bit, alive) {
                Step::Dead => {}
                other => return other,
            }
        }
        let without: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| self.members[i] & bit == 0)
            .collect();
        self.descend(element + 1, included, &without)
    }
}

/// Gaussian elimination tracking row combinations. Returns one subset of
/// rows summing to `target`, and a nonempty subset summing to zero if any.
fn eliminate(rows: &[u64], target: u64) -> (Option<Vec<u64>>, Option<Vec<u64>>) {
    let words = rows.len().div_ceil(64).max(1);
    let mut basis: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut kernel = None;
    for (i, &r) in rows.iter().enumerate() {
        let mut v = r;
        let mut combo = vec![0u64; words];
        combo[i / 64] |= 1 << (i % 64);
        for (b, c) in &basis {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
                xor_into(&mut combo, c);
            }
        }
        if v == 0 {
            kernel.get_or_insert(combo);
        } else {
            basis.push((v, combo));
        }
    }
    let mut v = target;
    let mut combo = vec![0u64; words];
    for (b, c) in &basis {
        if v & (b & b.wrapping_neg()) != 0 {
            v ^= b;
            xor_into(&mut combo, c);
        }
    }
    ((v == 0).then_some(combo), kernel)
}

fn xor_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

fn solve(rows: &[u64], target: u64) -> Option<Vec<u64>> {
    if target == 0 {
        return Some(Vec::new());
    }
    eliminate(rows, target).0
}

fn indices(combo: &[u64]) -> Vec<usize> {
    combo
        .iter()
        .enumerate()
        .flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
        .collect()
}

/// A set of at least two rows summing to `target`.
fn witness(rows: &[u64], target: u64) -> Option<Vec<usize>> {
    let (solution, kernel) = eliminate(rows, target);
    let solution = solution?;
    let pick = indices(&solution);
    if pick.len() >= 2 {
        return Some(pick);
    }
    // a lone row equal to `target`: shift by any dependency
    let mut other = solution;
    xor_into(&mut other, &kernel?);
    Some(indices(&other))
}
