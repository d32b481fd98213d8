use std::collections::HashMap;

use super::{Certificate, SunflowerKind};
use crate::family::SetFamily;

struct BasisRow {
    vector: Vec<u64>,
    /// Which members XOR together to give `vector`.
    combination: Vec<u64>,
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Finds a nonempty subfamily in which every element has even degree.
///
/// Columns (members) are reduced over GF(2) in family order; the first column
/// that reduces to zero yields the kernel vector. Whenever the family has more
/// members than elements such a column must exist.
pub fn find_even_sunflower(f: &SetFamily) -> Option<Certificate> {
    let words = f.universe().div_ceil(64).max(1);
    let comb_words = f.len().div_ceil(64).max(1);
    let mut basis: Vec<BasisRow> = Vec::new();
    let mut by_pivot: HashMap<usize, usize> = HashMap::new();

    for (j, member) in f.iter().enumerate() {
        let mut vector = member.words().to_vec();
        vector.resize(words, 0);
        let mut combination = vec![0u64; comb_words];
        combination[j / 64] |= 1 << (j % 64);

        loop {
            let Some(pivot) = lowest_bit(&vector) else {
                let indices = (0..f.len())
                    .filter(|&i| combination[i / 64] & (1 << (i % 64)) != 0)
                    .collect();
                return Some(Certificate::from_indices(SunflowerKind::Even, indices));
            };
            match by_pivot.get(&pivot) {
                Some(&row) => {
                    xor_into(&mut vector, &basis[row].vector);
                    xor_into(&mut combination, &basis[row].combination);
                }
                None => {
                    by_pivot.insert(pivot, basis.len());
                    basis.push(BasisRow {
                        vector,
                        combination,
                    });
                    break;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::is_even_sunflower;
    use crate::family::make_family;

    #[test]
    fn c3_is_its_own_witness() {
        let c3 = make_family(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let cert = find_even_sunflower(&c3).unwrap();
        assert_eq!(cert.indices(), vec![0, 1, 2]);
        assert!(cert.verify(&c3));
    }

    #[test]
    fn singletons_are_free() {
        for n in 1..=12 {
            let f = make_family(n, &(1..=n).map(|i| vec![i]).collect::<Vec<_>>()).unwrap();
            assert_eq!(find_even_sunflower(&f), None);
        }
    }

    #[test]
    fn brute_force_agreement_on_c3() {
        let c3 = make_family(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let hits: Vec<u32> = (1u32..8)
            .filter(|mask| {
                let idx: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
                is_even_sunflower(&c3.subfamily(&idx))
            })
            .collect();
        assert_eq!(hits, vec![0b111]);
    }

    #[test]
    fn wide_universe() {
        let f = make_family(130, &[vec![1, 70], vec![70, 129], vec![1, 129], vec![2]]).unwrap();
        let cert = find_even_sunflower(&f).unwrap();
        assert!(cert.verify(&f));
        assert_eq!(cert.members.len(), 3);
    }
}
