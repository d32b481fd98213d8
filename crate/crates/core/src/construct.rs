//! Explicit families: `C_n`, `C_n^+`, direct sums and powers, wreath products,
//! the triple-group construction, and root-to-leaf paths of a binary tree.

use crate::error::{Error, Result};
use crate::family::{ElemSet, SetFamily};

/// Default cap on the number of materialized members.
pub const DEFAULT_MEMBER_CAP: usize = 1 << 20;

/// Hard limit on stored bit-vector words (members times words per member).
const MAX_STORED_WORDS: u128 = 1 << 26;

/// Where each source element ended up in a combined universe.
///
/// `blocks[b][e - 1]` is the target label of element `e` of source copy `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    pub blocks: Vec<Vec<usize>>,
}

impl LabelMap {
    fn contiguous(block_sizes: &[usize]) -> Self {
        let mut next = 1;
        let blocks = block_sizes
            .iter()
            .map(|&size| {
                let block = (next..next + size).collect();
                next += size;
                block
            })
            .collect();
        LabelMap { blocks }
    }

    pub fn target(&self, block: usize, element: usize) -> usize {
        self.blocks[block][element - 1]
    }
}

fn check_cap(members: u128, universe: usize, cap: usize) -> Result<()> {
    let words = universe.div_ceil(64).max(1) as u128;
    if members > cap as u128 || members.saturating_mul(words) > MAX_STORED_WORDS {
        return Err(Error::MaterializationTooLarge { members, cap });
    }
    Ok(())
}

/// All `(n-1)`-subsets of `{1..n}`.
pub fn c_n(n: usize) -> Result<SetFamily> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "C_n needs n >= 2, got {n}"
        )));
    }
    check_cap(n as u128, n, DEFAULT_MEMBER_CAP)?;
    let full = ElemSet::range(1, n);
    let members = (1..=n)
        .map(|skip| ElemSet::from_elements(full.iter().filter(|&e| e != skip)))
        .collect();
    Ok(SetFamily::from_sorted_unchecked(n, members))
}

/// `C_n` plus the full set `{1..n}`.
pub fn c_n_plus(n: usize) -> Result<SetFamily> {
    let mut members = c_n(n)?.members().to_vec();
    members.push(ElemSet::range(1, n));
    Ok(SetFamily::from_sorted_unchecked(n, members))
}

/// `{F ∪ G}` with `g` shifted onto fresh labels `n+1..n+m`.
pub fn direct_sum(f: &SetFamily, g: &SetFamily) -> Result<(SetFamily, LabelMap)> {
    direct_sum_capped(f, g, DEFAULT_MEMBER_CAP)
}

pub fn direct_sum_capped(
    f: &SetFamily,
    g: &SetFamily,
    cap: usize,
) -> Result<(SetFamily, LabelMap)> {
    let n = f.universe();
    let universe = n + g.universe();
    check_cap(f.len() as u128 * g.len() as u128, universe, cap)?;
    let shifted: Vec<ElemSet> = g.iter().map(|m| m.shifted(n)).collect();
    let mut members = Vec::with_capacity(f.len() * g.len());
    for a in f.iter() {
        for b in &shifted {
            members.push(a.union(b));
        }
    }
    Ok((
        SetFamily::from_sorted_unchecked(universe, members),
        LabelMap::contiguous(&[n, g.universe()]),
    ))
}

/// The `t`-fold direct sum; copy `c` occupies labels `(c-1)n+1..cn`.
pub fn direct_power(f: &SetFamily, t: usize) -> Result<SetFamily> {
    direct_power_capped(f, t, DEFAULT_MEMBER_CAP)
}

pub fn direct_power_capped(f: &SetFamily, t: usize, cap: usize) -> Result<SetFamily> {
    if t == 0 {
        return Err(Error::InvalidParameter("direct power needs t >= 1".into()));
    }
    let total = (f.len() as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    check_cap(total, f.universe() * t, cap)?;
    let mut acc = f.clone();
    for _ in 1..t {
        acc = direct_sum_capped(&acc, f, cap)?.0;
    }
    Ok(acc)
}

/// Number of members of `f ≀ g`: the sum over `F` of `|g|^|F|`, saturating.
pub fn wreath_size(f: &SetFamily, g: &SetFamily) -> u128 {
    f.iter()
        .map(|m| {
            (g.len() as u128)
                .checked_pow(m.len() as u32)
                .unwrap_or(u128::MAX)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Wreath product: for each `F` in `f`, every union of one `g`-member per
/// block `i ∈ F`, where block `i` holds labels `(i-1)m+1..im`.
pub fn wreath(f: &SetFamily, g: &SetFamily) -> Result<(SetFamily, LabelMap)> {
    wreath_capped(f, g, DEFAULT_MEMBER_CAP)
}

pub fn wreath_capped(f: &SetFamily, g: &SetFamily, cap: usize) -> Result<(SetFamily, LabelMap)> {
    let n = f.universe();
    let m = g.universe();
    let universe = n * m;
    check_cap(wreath_size(f, g), universe, cap)?;
    let map = LabelMap::contiguous(&vec![m; n]);
    let mut members = Vec::new();
    if g.is_empty() {
        return Ok((SetFamily::from_sorted_unchecked(universe, members), map));
    }
    // copies[i][j]: member j of g moved into block i (0-based)
    let copies: Vec<Vec<ElemSet>> = (0..n)
        .map(|i| g.iter().map(|s| s.shifted(i * m)).collect())
        .collect();
    for outer in f.iter() {
        let blocks: Vec<usize> = outer.iter().map(|i| i - 1).collect();
        let mut choice = vec![0usize; blocks.len()];
        loop {
            let set = blocks
                .iter()
                .zip(&choice)
                .fold(ElemSet::new(), |acc, (&b, &c)| acc.union(&copies[b][c]));
            members.push(set);
            // odometer
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < g.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    Ok((SetFamily::from_sorted_unchecked(universe, members), map))
}

/// `⌊n/3⌋` disjoint triples `{1,2,3}, {4,5,6}, ...`; all sets meeting every
/// triple in exactly two elements. Elements past the last triple stay unused.
pub fn construction1(n: usize) -> Result<SetFamily> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "the triple-group construction needs n >= 3, got {n}"
        )));
    }
    let k = n / 3;
    let total = 3u128.checked_pow(k as u32).unwrap_or(u128::MAX);
    check_cap(total, n, DEFAULT_MEMBER_CAP)?;
    let c3 = c_n(3)?;
    let core = direct_power(&c3, k)?;
    core.with_universe(n)
}

/// `C_9 ≀ C_3`: `3^10` sets of size 16 on 27 elements.
pub fn construction2() -> Result<SetFamily> {
    let (family, _) = wreath(&c_n(9)?, &c_n(3)?)?;
    Ok(family)
}

/// Root-to-leaf vertex sets of the complete binary tree with `k` levels,
/// vertices numbered breadth-first from the root `1` (children of `v` are `2v`, `2v+1`).
pub fn binary_tree_family(k: usize) -> Result<SetFamily> {
    if k == 0 {
        return Err(Error::InvalidParameter("tree depth must be >= 1".into()));
    }
    if k > 40 {
        return Err(Error::MaterializationTooLarge {
            members: 1u128 << (k - 1).min(127),
            cap: DEFAULT_MEMBER_CAP,
        });
    }
    let universe = (1usize << k) - 1;
    check_cap(1u128 << (k - 1), universe, DEFAULT_MEMBER_CAP)?;
    let members = (1usize << (k - 1)..=universe)
        .map(|leaf| {
            let mut path = ElemSet::new();
            let mut v = leaf;
            while v >= 1 {
                path.insert(v);
                v /= 2;
            }
            path
        })
        .collect();
    Ok(SetFamily::from_sorted_unchecked(universe, members))
}

/// The odd `n` maximizing `(ln n + (n-1) ln g) / n`, chosen among the odd
/// integers just below and just above `e·g`.
pub fn optimal_wreath_n(g_size: u64) -> u64 {
    assert!(g_size >= 1, "building block must be nonempty");
    let target = std::f64::consts::E * g_size as f64;
    let mut below = target.floor() as u64;
    if below % 2 == 0 {
        below = below.saturating_sub(1);
    }
    let above = below + 2;
    let ln_g = (g_size as f64).ln();
    // Dropping the constant ln g leaves (ln n - ln g)/n, which keeps the tiny
    // gap between neighbouring candidates above rounding noise.
    let score = |n: u64| ((n as f64).ln() - ln_g) / n as f64;
    if below >= 1 && score(below) >= score(above) {
        below
    } else {
        above
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{
        find_classic_sunflower, find_odd_sunflower, is_even_sunflower, is_odd_sunflower,
        DEFAULT_BUDGET,
    };
    use crate::family::make_family;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        make_family(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cn_examples() {
        let c4 = c_n(4).unwrap();
        assert_eq!(
            c4,
            fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
        );
        assert!(is_odd_sunflower(&c4));
        assert!(is_even_sunflower(&c_n(3).unwrap()));
        assert_eq!(c_n(2).unwrap(), fam(2, &[&[1], &[2]]));
        assert!(matches!(c_n(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cn_plus_examples() {
        assert_eq!(
            c_n_plus(3).unwrap(),
            fam(3, &[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]])
        );
        assert!(is_odd_sunflower(&c_n_plus(3).unwrap()));
        assert!(is_even_sunflower(&c_n_plus(4).unwrap()));
        assert_eq!(c_n_plus(2).unwrap(), fam(2, &[&[1], &[2], &[1, 2]]));
    }

    #[test]
    fn parity_facts_for_small_n() {
        for n in 2..=10 {
            let cn = c_n(n).unwrap();
            let cp = c_n_plus(n).unwrap();
            assert_eq!(is_odd_sunflower(&cn), n % 2 == 0, "C_{n} odd");
            assert_eq!(is_even_sunflower(&cn), n % 2 == 1, "C_{n} even");
            assert_eq!(is_odd_sunflower(&cp), n % 2 == 1, "C_{n}^+ odd");
            assert_eq!(is_even_sunflower(&cp), n % 2 == 0, "C_{n}^+ even");
        }
    }

    #[test]
    fn direct_sum_examples() {
        let c3 = c_n(3).unwrap();
        let (s, map) = direct_sum(&c3, &c3).unwrap();
        assert_eq!((s.len(), s.universe()), (9, 6));
        assert_eq!(map.target(1, 1), 4);

        let one = fam(1, &[&[1]]);
        assert_eq!(direct_sum(&one, &one).unwrap().0, fam(2, &[&[1, 2]]));

        let f = fam(2, &[&[1], &[1, 2]]);
        let (s, _) = direct_sum(&f, &f).unwrap();
        assert_eq!(s.len(), 4);
        assert!(find_odd_sunflower(&s, DEFAULT_BUDGET).is_found());
    }

    #[test]
    fn direct_power_examples() {
        let c3 = c_n(3).unwrap();
        assert_eq!(
            direct_power(&c3, 2).unwrap(),
            direct_sum(&c3, &c3).unwrap().0
        );
        assert_eq!(direct_power(&c3, 1).unwrap(), c3);
        let big = direct_power(&c3, 9).unwrap();
        assert_eq!((big.len(), big.universe()), (19683, 27));
        assert!(matches!(
            direct_power_capped(&c3, 9, 1000),
            Err(Error::MaterializationTooLarge {
                members: 19683,
                cap: 1000
            })
        ));
    }

    #[test]
    fn wreath_examples() {
        let g = fam(2, &[&[1], &[1, 2]]);
        let (w, map) = wreath(&fam(1, &[&[1]]), &g).unwrap();
        assert_eq!(w, g);
        assert_eq!(map.blocks, vec![vec![1, 2]]);

        // {{1,2}} ≀ {{3},{3,4}} written over {1,2}: 3_i -> block i element 1
        let (w, map) = wreath(&fam(2, &[&[1, 2]]), &g).unwrap();
        assert_eq!(w.len(), 4);
        let a = |b: usize, e: usize| map.target(b, e);
        let res = find_odd_sunflower(&w, DEFAULT_BUDGET);
        let got: Vec<ElemSet> = res
            .certificate()
            .unwrap()
            .indices()
            .iter()
            .map(|&i| w.member(i).clone())
            .collect();
        let mut want = vec![
            ElemSet::from_elements([a(0, 1), a(1, 1)]),
            ElemSet::from_elements([a(0, 1), a(1, 1), a(0, 2)]),
            ElemSet::from_elements([a(0, 1), a(1, 1), a(1, 2)]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn wreath_size_matches_formula() {
        let f = fam(3, &[&[1], &[1, 2], &[2, 3], &[1, 2, 3]]);
        let g = c_n(3).unwrap();
        let (w, _) = wreath(&f, &g).unwrap();
        assert_eq!(w.len() as u128, wreath_size(&f, &g));
        assert_eq!(w.len(), 3 + 9 + 9 + 27);
        assert_eq!(w.universe(), 9);
    }

    #[test]
    fn construction2_shape() {
        let f = construction2().unwrap();
        assert_eq!(
            (f.len(), f.universe(), f.uniformity()),
            (59049, 27, Some(16))
        );
    }

    #[test]
    fn construction1_examples() {
        assert_eq!(construction1(3).unwrap(), c_n(3).unwrap());
        let f = construction1(6).unwrap();
        assert_eq!((f.len(), f.universe()), (9, 6));
        assert!(f.is_uniform(4) && f.is_antichain());
        let f = construction1(8).unwrap();
        assert_eq!((f.len(), f.universe()), (9, 8));
        assert!(!f.support().contains(7) && !f.support().contains(8));
        let f = construction1(9).unwrap();
        assert_eq!(f.len(), 27);
        assert!(find_odd_sunflower(&f, DEFAULT_BUDGET).is_absent());
    }

    #[test]
    fn binary_tree_examples() {
        assert_eq!(binary_tree_family(2).unwrap(), fam(3, &[&[1, 2], &[1, 3]]));
        let t3 = binary_tree_family(3).unwrap();
        assert_eq!(t3.len(), 4);
        assert_eq!(find_classic_sunflower(&t3), None);
        let t4 = binary_tree_family(4).unwrap();
        assert_eq!((t4.len(), t4.universe()), (8, 15));
        assert!(t4.is_uniform(4));
        assert!(find_odd_sunflower(&t4, DEFAULT_BUDGET).is_absent());
        assert_eq!(binary_tree_family(1).unwrap(), fam(1, &[&[1]]));
    }

    #[test]
    fn optimal_n_examples() {
        assert_eq!(optimal_wreath_n(3), 9);
        assert_eq!(optimal_wreath_n(59049), 160511);
        assert_eq!(optimal_wreath_n(1), 3);
    }
}
