//! Brute-force oracles and generators shared by the integration tests.
//!
//! Oracles work on plain `Vec<Vec<usize>>` and count degrees directly, so
//! they share no search code with the library.

#![allow(dead_code)]

use oddsun::detect::{find_odd_sunflower_with, DEFAULT_BUDGET};
use oddsun::{ElemSet, SetFamily};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn lists(f: &SetFamily) -> Vec<Vec<usize>> {
    f.iter().map(|m| m.iter().collect()).collect()
}

pub fn family(universe: usize, sets: &[Vec<usize>]) -> SetFamily {
    SetFamily::new(
        universe,
        sets.iter().map(|s| s.iter().copied().collect()).collect(),
    )
    .unwrap()
}

fn degrees(sets: &[&Vec<usize>], universe: usize) -> Vec<usize> {
    let mut d = vec![0; universe + 1];
    for s in sets {
        for &e in s.iter() {
            d[e] += 1;
        }
    }
    d
}

pub fn is_odd(sets: &[&Vec<usize>], universe: usize) -> bool {
    sets.len() >= 2
        && degrees(sets, universe)
            .iter()
            .all(|&d| d == 0 || d % 2 == 1)
}

pub fn is_even(sets: &[&Vec<usize>], universe: usize) -> bool {
    !sets.is_empty() && degrees(sets, universe).iter().all(|&d| d % 2 == 0)
}

fn pick_sets(sets: &[Vec<usize>], mask: u64) -> Vec<&Vec<usize>> {
    (0..sets.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| &sets[i])
        .collect()
}

/// Every subfamily, smallest masks first.
pub fn brute_odd(f: &SetFamily) -> Option<Vec<usize>> {
    let sets = lists(f);
    assert!(sets.len() <= 24, "brute force over {} members", sets.len());
    (1u64..1 << sets.len())
        .find(|&mask| is_odd(&pick_sets(&sets, mask), f.universe()))
        .map(|mask| (0..sets.len()).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn brute_even(f: &SetFamily) -> bool {
    let sets = lists(f);
    assert!(sets.len() <= 24);
    (1u64..1 << sets.len()).any(|mask| is_even(&pick_sets(&sets, mask), f.universe()))
}

/// Odd-sunflower existence by trying every cover `C`: the members inside `C`
/// must sum to all-ones on `C` over GF(2) using at least two members.
pub fn cover_odd(f: &SetFamily) -> bool {
    let support: Vec<usize> = f.support().iter().collect();
    assert!(
        support.len() <= 22,
        "cover oracle over {} elements",
        support.len()
    );
    let index = |e: usize| support.iter().position(|&x| x == e).unwrap();
    let masks: Vec<u64> = lists(f)
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &e| acc | 1 << index(e)))
        .collect();
    (1u64..1 << support.len()).any(|c| {
        let inside: Vec<u64> = masks.iter().copied().filter(|&m| m & !c == 0).collect();
        let (rank, reaches) = span(&inside, c);
        // a lone member equal to `c` is not enough unless a dependency exists
        reaches && !(inside.contains(&c) && rank == inside.len())
    })
}

/// Rank of `rows` and whether `target` lies in their span.
fn span(rows: &[u64], target: u64) -> (usize, bool) {
    let mut basis: Vec<u64> = Vec::new();
    let reduce = |mut v: u64, basis: &[u64]| {
        for &b in basis {
            v = v.min(v ^ b);
        }
        v
    };
    for &r in rows {
        let v = reduce(r, &basis);
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    (basis.len(), reduce(target, &basis) == 0)
}

pub fn brute_classic(f: &SetFamily) -> bool {
    let sets = lists(f);
    let meet = |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> {
        a.iter().copied().filter(|x| b.contains(x)).collect()
    };
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            for k in j + 1..sets.len() {
                let ij = meet(&sets[i], &sets[j]);
                if ij == meet(&sets[i], &sets[k]) && ij == meet(&sets[j], &sets[k]) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn is_antichain(sets: &[Vec<usize>]) -> bool {
    sets.iter().enumerate().all(|(i, a)| {
        sets.iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.iter().all(|x| b.contains(x)))
    })
}

pub fn random_set(rng: &mut StdRng, universe: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (1..=universe).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Any family of distinct nonempty sets.
pub fn random_family(rng: &mut StdRng, universe: usize, members: usize) -> SetFamily {
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let target = members.min((1usize << universe) - 1);
    while sets.len() < target {
        let s = random_set(rng, universe);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    family(universe, &sets)
}

/// A random odd-sunflower-free family grown greedily, checked exhaustively.
pub fn random_odd_free(
    rng: &mut StdRng,
    universe: usize,
    max_members: usize,
    antichain: bool,
) -> SetFamily {
    let mut candidates: Vec<Vec<usize>> = (1u64..1 << universe)
        .map(|m| (1..=universe).filter(|e| m >> (e - 1) & 1 == 1).collect())
        .collect();
    candidates.shuffle(rng);
    let target = rng.gen_range(1..=max_members);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for c in candidates {
        if sets.len() == target {
            break;
        }
        let mut next = sets.clone();
        next.push(c);
        if antichain && !is_antichain(&next) {
            continue;
        }
        let f = family(universe, &next);
        let pos = f
            .position(&ElemSet::from_elements(
                next.last().unwrap().iter().copied(),
            ))
            .unwrap();
        if find_odd_sunflower_with(&f, DEFAULT_BUDGET, &[pos]).is_absent() {
            sets = next;
        }
    }
    let f = family(universe, &sets);
    assert_eq!(brute_odd(&f), None, "generator produced an odd-sunflower");
    f
}

/// Applies a permutation of `1..=universe` (given 0-based) to every member.
pub fn permute(f: &SetFamily, perm: &[usize]) -> SetFamily {
    f.relabel(f.universe(), |e| perm[e - 1] + 1).unwrap()
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Maximum free family size by trying every family of nonempty subsets (`n <= 3`).
pub fn brute_extremal(n: usize, odd: bool, antichain: bool) -> usize {
    assert!(n <= 3);
    let subsets: Vec<Vec<usize>> = (1u64..1 << n)
        .map(|m| (1..=n).filter(|e| m >> (e - 1) & 1 == 1).collect())
        .collect();
    let mut best = 0;
    for fam in 1u64..1 << subsets.len() {
        let sets: Vec<Vec<usize>> = pick_sets(&subsets, fam).into_iter().cloned().collect();
        if antichain && !is_antichain(&sets) {
            continue;
        }
        let f = family(n, &sets);
        let contains = if odd {
            brute_odd(&f).is_some()
        } else {
            brute_even(&f)
        };
        if !contains {
            best = best.max(sets.len());
        }
    }
    best
}

/// Members as bitmasks over elements `1..=64` (bit `e - 1`).
pub fn masks(f: &SetFamily) -> Vec<u64> {
    assert!(
        f.universe() <= 64,
        "mask oracle over {} elements",
        f.universe()
    );
    f.iter()
        .map(|m| m.iter().fold(0u64, |acc, e| acc | 1 << (e - 1)))
        .collect()
}

/// Whether the members selected by `pick` form an odd-sunflower. Tracks the
/// cover and the odd-degree set; the two agree exactly when every covered
/// element has odd degree.
pub fn is_odd_pick(sets: &[u64], pick: u64) -> bool {
    let (mut cover, mut odd) = (0u64, 0u64);
    for (i, &s) in sets.iter().enumerate() {
        if pick >> i & 1 == 1 {
            cover |= s;
            odd ^= s;
        }
    }
    pick.count_ones() >= 2 && cover == odd
}

/// Every odd-sunflower, as a mask over member indices.
pub fn odd_subfamilies(sets: &[u64]) -> Vec<u64> {
    assert!(sets.len() <= 24, "brute force over {} members", sets.len());
    (1u64..1 << sets.len())
        .filter(|&pick| is_odd_pick(sets, pick))
        .collect()
}

/// Every odd-sunflower of a family on any universe, as member-index masks.
pub fn odd_subfamilies_wide(f: &SetFamily) -> Vec<u64> {
    let sets = lists(f);
    assert!(sets.len() <= 20, "brute force over {} members", sets.len());
    (1u64..1 << sets.len())
        .filter(|&pick| is_odd(&pick_sets(&sets, pick), f.universe()))
        .collect()
}

pub fn has_odd_subfamily(sets: &[u64]) -> bool {
    assert!(sets.len() <= 24, "brute force over {} members", sets.len());
    (1u64..1 << sets.len()).any(|pick| is_odd_pick(sets, pick))
}

/// Minimal odd-sunflower by definition: odd, and no proper subfamily of at
/// least two members is odd.
pub fn brute_is_mos(f: &SetFamily) -> bool {
    let sets = masks(f);
    let all = (1u64 << sets.len()) - 1;
    let odd = odd_subfamilies(&sets);
    odd.contains(&all) && odd.len() == 1
}
