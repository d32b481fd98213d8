//! 3-dimensional matching (3DM) to odd-sunflower containment.
//!
//! A 3DM instance has parts `A`, `B`, `C` of `n` vertices each and a list of
//! triples. The reduced family has `n` copies of every edge. Copy `j` of an
//! edge holds the edge's three vertices, the `j`-th tag set, and one pair
//! element for every other copy it must never be chosen together with: copies
//! sharing a vertex (copies of the same edge included) and copies of other
//! edges carrying the same tag set. A pair element lies in exactly two
//! members, so choosing both makes its degree even.
//!
//! The tag sets must be `n` sets, each of `n - 1` elements, whose only
//! odd-sunflower subfamily is the whole collection. For odd `n` the complete
//! family `C_n` of `(n-1)`-subsets has every degree `n - 1`, which is even, so
//! it is an even-sunflower and never completes a witness. The default gadget
//! instead uses an apex `z` and the complements of the cyclic pairs:
//! `T_j = {z} ∪ [n] \ {j, j+1 mod n}`. The apex has degree `n` and every cycle
//! element degree `n - 2`, both odd. Any odd number `m < n` of the `T_j`
//! leaves some `j + 1` uncovered only once from the chosen side, giving it the
//! even degree `m - 1`. The literal `C_n` gadget is kept as
//! [`TagGadget::SharedCn`] to demonstrate the failure.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::detect::search::{ParityIndex, Step};
use crate::error::{Error, Result};
use crate::family::{ElemSet, SetFamily};

/// Largest `n · |edges|` that [`verify_reduction`] will search exactly.
pub const VERIFY_MAX_MEMBERS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeDMInstance {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl ThreeDMInstance {
    /// Rejects vertices outside `1..=n` and repeated edges.
    pub fn new(n: usize, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("3DM parts must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b, c) in &edges {
            if [a, b, c].iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b},{c}) leaves 1..={n}"
                )));
            }
            if !seen.insert((a, b, c)) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b},{c}) repeated"
                )));
            }
        }
        Ok(ThreeDMInstance { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TagGadget {
    /// Apex plus cyclic-pair complements on `n + 1` tag elements.
    #[default]
    ApexCycle,
    /// The `(n-1)`-subsets of `n` tag elements, which fails for odd `n`.
    SharedCn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Part {
    A,
    B,
    C,
}

/// Why two copies share a pair element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairReason {
    SharedVertex,
    SharedTag,
}

/// A copy is `(edge index, copy number)` with the copy number in `1..=n`.
pub type CopyId = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum ElementRole {
    Vertex {
        part: Part,
        index: usize,
    },
    Tag {
        index: usize,
    },
    Apex,
    Pair {
        first: CopyId,
        second: CopyId,
        reason: PairReason,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub family: SetFamily,
    /// `element_legend[e - 1]` is the role of element `e`.
    pub element_legend: Vec<ElementRole>,
    /// `copy_index[i]` is the copy behind member `i` of `family`.
    pub copy_index: Vec<CopyId>,
    pub gadget: TagGadget,
}

impl ReducedInstance {
    pub fn tag_elements(&self) -> usize {
        self.element_legend
            .iter()
            .filter(|r| matches!(r, ElementRole::Tag { .. } | ElementRole::Apex))
            .count()
    }

    /// Counts of pair elements added for shared vertices and for shared tags.
    pub fn pair_counts(&self) -> (usize, usize) {
        self.element_legend
            .iter()
            .fold((0, 0), |(v, t), r| match r {
                ElementRole::Pair {
                    reason: PairReason::SharedVertex,
                    ..
                } => (v + 1, t),
                ElementRole::Pair {
                    reason: PairReason::SharedTag,
                    ..
                } => (v, t + 1),
                _ => (v, t),
            })
    }
}

pub fn reduce_3dm(inst: &ThreeDMInstance) -> Result<ReducedInstance> {
    reduce_3dm_with(inst, TagGadget::default())
}

pub fn reduce_3dm_with(inst: &ThreeDMInstance, gadget: TagGadget) -> Result<ReducedInstance> {
    let n = inst.n;
    if n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "n = {n}: the tag sets would be empty; use n >= 3"
        )));
    }
    if inst.edges.is_empty() {
        return Err(Error::EmptyInstance);
    }

    let mut legend: Vec<ElementRole> = Vec::new();
    for part in [Part::A, Part::B, Part::C] {
        legend.extend((1..=n).map(|index| ElementRole::Vertex { part, index }));
    }
    let tag_base = 3 * n;
    legend.extend((1..=n).map(|index| ElementRole::Tag { index }));
    if gadget == TagGadget::ApexCycle {
        legend.push(ElementRole::Apex);
    }
    // element labels are 1-based
    let tag = |i: usize| tag_base + i;
    let apex = tag_base + n + 1;
    let tag_set = |j: usize| -> Vec<usize> {
        match gadget {
            TagGadget::SharedCn => (1..=n).filter(|&i| i != j).map(tag).collect(),
            TagGadget::ApexCycle => {
                let next = j % n + 1;
                (1..=n)
                    .filter(|&i| i != j && i != next)
                    .map(tag)
                    .chain([apex])
                    .collect()
            }
        }
    };

    let copies: Vec<CopyId> = (0..inst.edges.len())
        .flat_map(|e| (1..=n).map(move |j| (e, j)))
        .collect();
    let mut contents: Vec<Vec<usize>> = copies
        .iter()
        .map(|&(e, j)| {
            let (a, b, c) = inst.edges[e];
            let mut s = vec![a, n + b, 2 * n + c];
            s.extend(tag_set(j));
            s
        })
        .collect();

    for x in 0..copies.len() {
        for y in x + 1..copies.len() {
            let (ex, jx) = copies[x];
            let (ey, jy) = copies[y];
            let (a1, b1, c1) = inst.edges[ex];
            let (a2, b2, c2) = inst.edges[ey];
            let mut reasons = Vec::new();
            if a1 == a2 || b1 == b2 || c1 == c2 {
                reasons.push(PairReason::SharedVertex);
            }
            if ex != ey && jx == jy {
                reasons.push(PairReason::SharedTag);
            }
            for reason in reasons {
                legend.push(ElementRole::Pair {
                    first: copies[x],
                    second: copies[y],
                    reason,
                });
                let element = legend.len();
                contents[x].push(element);
                contents[y].push(element);
            }
        }
    }

    let universe = legend.len();
    let sets: Vec<ElemSet> = contents
        .iter()
        .map(|c| ElemSet::from_elements(c.iter().copied()))
        .collect();
    let family = SetFamily::new(universe, sets.clone())?;
    let copy_index = family
        .iter()
        .map(|m| {
            copies[sets
                .iter()
                .position(|s| s == m)
                .expect("member came from a copy")]
        })
        .collect();
    Ok(ReducedInstance {
        family,
        element_legend: legend,
        copy_index,
        gadget,
    })
}

/// A perfect matching by backtracking over the vertices of `A`.
pub fn solve_3dm(inst: &ThreeDMInstance) -> Option<Vec<(usize, usize, usize)>> {
    fn go(
        inst: &ThreeDMInstance,
        a: usize,
        used_b: &mut [bool],
        used_c: &mut [bool],
        chosen: &mut Vec<(usize, usize, usize)>,
    ) -> bool {
        if a > inst.n {
            return true;
        }
        for &(ea, b, c) in &inst.edges {
            if ea == a && !used_b[b] && !used_c[c] {
                used_b[b] = true;
                used_c[c] = true;
                chosen.push((ea, b, c));
                if go(inst, a + 1, used_b, used_c, chosen) {
                    return true;
                }
                chosen.pop();
                used_b[b] = false;
                used_c[c] = false;
            }
        }
        false
    }
    let mut chosen = Vec::new();
    let mut used_b = vec![false; inst.n + 1];
    let mut used_c = vec![false; inst.n + 1];
    go(inst, 1, &mut used_b, &mut used_c, &mut chosen).then_some(chosen)
}

/// Differential check: a matching exists iff the reduced family contains an
/// odd-sunflower, and any witness is `n` copies of disjoint edges using every
/// tag set once.
pub fn verify_reduction(inst: &ThreeDMInstance) -> Result<bool> {
    verify_reduction_with(inst, TagGadget::default())
}

pub fn verify_reduction_with(inst: &ThreeDMInstance, gadget: TagGadget) -> Result<bool> {
    let members = inst.n.saturating_mul(inst.edges.len());
    if members > VERIFY_MAX_MEMBERS {
        return Err(Error::TooLarge {
            what: format!("exact verification of {members} reduced members"),
            limit: VERIFY_MAX_MEMBERS,
        });
    }
    let reduced = reduce_3dm_with(inst, gadget)?;
    let matching = solve_3dm(inst);
    let index = ParityIndex::new(
        reduced.family.universe(),
        reduced.family.iter().map(|m| m.words()),
    );
    let witness = match index.search(&[], u64::MAX).0 {
        Step::Found(w) => Some(w),
        _ => None,
    };
    match (matching, witness) {
        (None, None) => Ok(true),
        (Some(_), Some(w)) => Ok(witness_is_matching(inst, &reduced, &w)),
        _ => Ok(false),
    }
}

fn witness_is_matching(
    inst: &ThreeDMInstance,
    reduced: &ReducedInstance,
    witness: &[usize],
) -> bool {
    let copies: Vec<CopyId> = witness.iter().map(|&i| reduced.copy_index[i]).collect();
    let tags: BTreeSet<usize> = copies.iter().map(|&(_, j)| j).collect();
    let mut seen = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    let disjoint = copies.iter().all(|&(e, _)| {
        let (a, b, c) = inst.edges[e];
        seen[0].insert(a) & seen[1].insert(b) & seen[2].insert(c)
    });
    copies.len() == inst.n && tags.len() == inst.n && disjoint
}

/// One instance per orbit of edge sets with `1..=max_edges` edges under
/// relabeling each part independently.
pub fn instances_up_to_symmetry(n: usize, max_edges: usize) -> Result<Vec<ThreeDMInstance>> {
    if n == 0 || n > 3 {
        return Err(Error::TooLarge {
            what: format!("symmetry sweep over parts of size {n}"),
            limit: 3,
        });
    }
    let triples: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|a| (1..=n).flat_map(move |b| (1..=n).map(move |c| (a, b, c))))
        .collect();
    let perms = permutations(n);
    let mut reps: BTreeSet<Vec<(usize, usize, usize)>> = BTreeSet::new();
    let mut chosen = Vec::new();
    subsets(&triples, 0, max_edges, &mut chosen, &mut |edges| {
        if edges.is_empty() {
            return;
        }
        let mut best: Option<Vec<(usize, usize, usize)>> = None;
        for pa in &perms {
            for pb in &perms {
                for pc in &perms {
                    let mut image: Vec<_> = edges
                        .iter()
                        .map(|&(a, b, c)| (pa[a - 1], pb[b - 1], pc[c - 1]))
                        .collect();
                    image.sort_unstable();
                    if best.as_ref().map_or(true, |b| image < *b) {
                        best = Some(image);
                    }
                }
            }
        }
        reps.insert(best.expect("at least one permutation"));
    });
    reps.into_iter()
        .map(|edges| ThreeDMInstance::new(n, edges))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn subsets<T: Clone>(
    items: &[T],
    from: usize,
    left: usize,
    chosen: &mut Vec<T>,
    visit: &mut impl FnMut(&[T]),
) {
    visit(chosen);
    if left == 0 {
        return;
    }
    for i in from..items.len() {
        chosen.push(items[i].clone());
        subsets(items, i + 1, left - 1, chosen, visit);
        chosen.pop();
    }
}
