//! Detection of classic, even- and odd-sunflowers, with self-checking certificates.

mod cover;
mod even;
pub(crate) mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{ElemSet, Members, MultiFamily, SetFamily};

pub use even::find_even_sunflower;
pub use search::{find_odd_sunflower, find_odd_sunflower_with, OddSearch, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SunflowerKind {
    Even,
    Odd,
    Classic,
}

/// A witness subfamily, as `(member index, multiplicity)` pairs into the examined family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: SunflowerKind,
    pub members: Vec<(usize, u64)>,
}

impl Certificate {
    pub(crate) fn from_indices(kind: SunflowerKind, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        Certificate {
            kind,
            members: indices.into_iter().map(|i| (i, 1)).collect(),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|&(i, _)| i).collect()
    }

    /// The witnessed sets, with multiplicity.
    pub fn multifamily(&self, family: &SetFamily) -> Result<MultiFamily> {
        if let Some(&(i, _)) = self.members.iter().find(|&&(i, _)| i >= family.len()) {
            return Err(Error::PreconditionViolated(format!(
                "certificate index {i} is outside a family of {} members",
                family.len()
            )));
        }
        MultiFamily::new(
            family.universe(),
            self.members
                .iter()
                .map(|&(i, m)| (family.member(i).clone(), m))
                .collect(),
        )
    }

    /// Re-evaluates the claimed condition on exactly the certified members.
    pub fn verify(&self, family: &SetFamily) -> bool {
        let Ok(h) = self.multifamily(family) else {
            return false;
        };
        match self.kind {
            SunflowerKind::Even => is_even_sunflower(&h),
            SunflowerKind::Odd => is_odd_sunflower(&h),
            SunflowerKind::Classic => {
                self.members.len() == 3
                    && self.members.iter().all(|&(_, m)| m == 1)
                    && classic_core(
                        family.member(self.members[0].0),
                        family.member(self.members[1].0),
                        family.member(self.members[2].0),
                    )
                    .is_some()
            }
        }
    }
}

/// Nonempty, and every covered element has even degree.
pub fn is_even_sunflower<M: Members + ?Sized>(f: &M) -> bool {
    f.total_multiplicity() >= 1 && f.degree_vector().as_slice().iter().all(|d| d % 2 == 0)
}

/// At least two members, and every covered element has odd degree.
pub fn is_odd_sunflower<M: Members + ?Sized>(f: &M) -> bool {
    f.total_multiplicity() >= 2
        && f.degree_vector()
            .as_slice()
            .iter()
            .all(|&d| d == 0 || d % 2 == 1)
}

/// The common core when the three pairwise intersections agree.
pub fn classic_core(a: &ElemSet, b: &ElemSet, c: &ElemSet) -> Option<ElemSet> {
    let ab = a.intersection(b);
    (ab == a.intersection(c) && ab == b.intersection(c)).then_some(ab)
}

/// First member triple (in index order) forming a sunflower; the core may be empty.
pub fn find_classic_sunflower(f: &SetFamily) -> Option<Certificate> {
    let m = f.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let ij = m[i].intersection(&m[j]);
            for k in j + 1..m.len() {
                if m[i].intersection(&m[k]) == ij && m[j].intersection(&m[k]) == ij {
                    return Some(Certificate::from_indices(
                        SunflowerKind::Classic,
                        vec![i, j, k],
                    ));
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiTag {
    NotOddSunflower,
    OddCopiesOfOneSetPlusEvenSubsets,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiClassification {
    pub tag: MultiTag,
    pub principal: Option<ElemSet>,
}

/// Structural classification of a multifamily drawn from an odd-sunflower-free base.
///
/// Looks only at multiplicities and containments: the multifamily is an
/// odd-sunflower iff exactly one set has odd multiplicity and every other set
/// is a subset of it. The caller asserts `base` is odd-sunflower-free.
pub fn classify_multifamily(base: &SetFamily, h: &MultiFamily) -> Result<MultiClassification> {
    if let Some((set, _)) = h.entries().iter().find(|(s, _)| base.position(s).is_none()) {
        return Err(Error::PreconditionViolated(format!(
            "multifamily member {{{set}}} is not in the base family"
        )));
    }
    if h.total_multiplicity() < 2 {
        return Err(Error::PreconditionViolated(
            "multifamily needs at least two members counted with multiplicity".into(),
        ));
    }
    let mut odd = h.entries().iter().filter(|(_, m)| m % 2 == 1);
    let not = MultiClassification {
        tag: MultiTag::NotOddSunflower,
        principal: None,
    };
    let (Some((principal, _)), None) = (odd.next(), odd.next()) else {
        return Ok(not);
    };
    let nested = h
        .entries()
        .iter()
        .all(|(s, _)| s == principal || s.is_subset(principal));
    Ok(if nested {
        MultiClassification {
            tag: MultiTag::OddCopiesOfOneSetPlusEvenSubsets,
            principal: Some(principal.clone()),
        }
    } else {
        not
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::make_family;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        make_family(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn c3() -> SetFamily {
        fam(3, &[&[1, 2], &[1, 3], &[2, 3]])
    }

    fn c4() -> SetFamily {
        fam(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn parity_predicates() {
        assert!(is_even_sunflower(&c3()));
        assert!(!is_even_sunflower(&c4()));
        let mut c4p = c4().members().to_vec();
        c4p.push(ElemSet::range(1, 4));
        assert!(is_even_sunflower(&SetFamily::new(4, c4p).unwrap()));

        assert!(is_odd_sunflower(&fam(
            3,
            &[&[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]]
        )));
        assert!(is_odd_sunflower(&fam(6, &[&[1, 2, 3], &[4, 5, 6]])));
        assert!(!is_odd_sunflower(&c3()));
        assert!(!is_odd_sunflower(&fam(3, &[&[1, 2, 3]])));
        assert!(!is_even_sunflower(&SetFamily::empty(3)));
    }

    #[test]
    fn classic_triples() {
        let f = fam(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        let cert = find_classic_sunflower(&f).unwrap();
        assert_eq!(cert.indices(), vec![0, 1, 2]);
        assert!(cert.verify(&f));
        let m = f.members();
        assert_eq!(
            classic_core(&m[0], &m[1], &m[2]),
            Some(ElemSet::from_elements([1]))
        );

        assert_eq!(find_classic_sunflower(&c4()), None);

        let f = fam(3, &[&[1], &[2], &[3]]);
        let cert = find_classic_sunflower(&f).unwrap();
        let m = f.members();
        assert_eq!(classic_core(&m[0], &m[1], &m[2]), Some(ElemSet::new()));
        assert!(cert.verify(&f));
    }

    #[test]
    fn classification_examples() {
        let base = c3();
        let h = MultiFamily::from_lists(3, &[(vec![1, 2], 3)]).unwrap();
        let c = classify_multifamily(&base, &h).unwrap();
        assert_eq!(c.tag, MultiTag::OddCopiesOfOneSetPlusEvenSubsets);
        assert_eq!(c.principal, Some(ElemSet::from_elements([1, 2])));
        assert!(is_odd_sunflower(&h));

        let h = MultiFamily::from_lists(3, &[(vec![1, 2], 1), (vec![1, 3], 1)]).unwrap();
        assert_eq!(
            classify_multifamily(&base, &h).unwrap().tag,
            MultiTag::NotOddSunflower
        );
        assert!(!is_odd_sunflower(&h));

        let base = fam(2, &[&[1, 2], &[1]]);
        let h = MultiFamily::from_lists(2, &[(vec![1, 2], 1), (vec![1], 2)]).unwrap();
        let c = classify_multifamily(&base, &h).unwrap();
        assert_eq!(c.tag, MultiTag::OddCopiesOfOneSetPlusEvenSubsets);
        assert_eq!(c.principal, Some(ElemSet::from_elements([1, 2])));
        assert!(is_odd_sunflower(&h));
    }

    #[test]
    fn classification_rejects_foreign_members() {
        let h = MultiFamily::from_lists(3, &[(vec![1], 1), (vec![1, 2], 1)]).unwrap();
        assert!(matches!(
            classify_multifamily(&c3(), &h),
            Err(Error::PreconditionViolated(_))
        ));
        let h = MultiFamily::from_lists(3, &[(vec![1, 2], 1)]).unwrap();
        assert!(matches!(
            classify_multifamily(&c3(), &h),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn certificate_verify_rejects_wrong_claims() {
        let f = c3();
        let bogus = Certificate::from_indices(SunflowerKind::Odd, vec![0, 1, 2]);
        assert!(!bogus.verify(&f));
        let out_of_range = Certificate::from_indices(SunflowerKind::Even, vec![0, 7]);
        assert!(!out_of_range.verify(&f));
        let ok = Certificate::from_indices(SunflowerKind::Even, vec![0, 1, 2]);
        assert!(ok.verify(&f));
    }
}
