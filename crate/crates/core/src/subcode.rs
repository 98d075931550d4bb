//! Binary subfield subcodes of Reed-Solomon duals.
//!
//! For a Reed-Solomon code `C` of dimension `n` and length `2^s - 1` over
//! GF(2^s), the binary words of `C^perp` are exactly the GF(2) coding
//! vectors whose combinations of `C` vanish identically. Their dimension is
//! the total size of the cyclotomic cosets inside `{1, ..., 2^s - 1 - n}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Element, Field};
use crate::gf2::CodingVector;

/// The orbits of `{0, ..., 2^s - 2}` under doubling modulo `2^s - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCosets {
    s: u32,
    /// Keyed by smallest member; each orbit listed as `a, 2a, 4a, ...`.
    cosets: BTreeMap<u32, Vec<u32>>,
}

impl CyclotomicCosets {
    pub fn new(s: u32) -> Result<Self> {
        if !(2..=16).contains(&s) {
            return Err(Error::param(format!("coset degree s = {s} outside 2..=16")));
        }
        let modulus = (1u32 << s) - 1;
        let mut seen = vec![false; modulus as usize];
        let mut cosets = BTreeMap::new();
        for a in 0..modulus {
            if seen[a as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = a;
            while !seen[x as usize] {
                seen[x as usize] = true;
                orbit.push(x);
                x = (2 * x) % modulus;
            }
            cosets.insert(a, orbit);
        }
        Ok(Self { s, cosets })
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// The coset with smallest member `leader`.
    pub fn get(&self, leader: u32) -> Option<&[u32]> {
        self.cosets.get(&leader).map(Vec::as_slice)
    }

    /// `(leader, members)` in increasing leader order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &[u32])> {
        self.cosets.iter().map(|(&a, c)| (a, c.as_slice()))
    }

    /// Cosets lying entirely in `{1, ..., bound}`.
    pub fn contained_in(&self, bound: u32) -> impl Iterator<Item = (u32, &[u32])> {
        self.iter()
            .filter(move |(_, c)| c.iter().all(|&x| (1..=bound).contains(&x)))
    }
}

pub fn cyclotomic_cosets(s: u32) -> Result<CyclotomicCosets> {
    CyclotomicCosets::new(s)
}

fn check_dimension(n: usize, s: u32) -> Result<()> {
    if !(2..=16).contains(&s) {
        return Err(Error::param(format!("s = {s} outside 2..=16")));
    }
    let q1 = (1usize << s) - 1;
    if n == 0 || n > q1 {
        return Err(Error::param(format!("n = {n} outside 1..={q1}")));
    }
    Ok(())
}

/// Dimension of the binary subfield subcode of the dual of the
/// `[2^s - 1, n]` Reed-Solomon code.
pub fn subfield_subcode_dimension(n: usize, s: u32) -> Result<usize> {
    check_dimension(n, s)?;
    let bound = ((1usize << s) - 1 - n) as u32;
    Ok(CyclotomicCosets::new(s)?
        .contained_in(bound)
        .map(|(_, c)| c.len())
        .sum())
}

/// A basis of that subcode, as binary words of length `2^s - 1`.
///
/// For each coset `I_a` inside `{1, ..., 2^s - 1 - n}` with `m` members and
/// each `j < m`, the word is the evaluation at `alpha^0, ..., alpha^(q-2)`
/// of `sum_t (beta^j)^(2^t) X^(2^t a)` where `beta` generates GF(2^m).
pub fn subfield_subcode_basis(n: usize, s: u32) -> Result<Vec<CodingVector>> {
    check_dimension(n, s)?;
    let field = Field::standard(s)?;
    let q1 = (1u64 << s) - 1;
    let bound = (q1 - n as u64) as u32;
    let cosets = CyclotomicCosets::new(s)?;
    let mut basis = Vec::new();
    for (a, members) in cosets.contained_in(bound) {
        let m = members.len() as u32;
        let beta = field.alpha_pow(q1 / ((1u64 << m) - 1));
        for j in 0..m {
            let gamma = field.pow(beta, j as u64);
            let mut word = CodingVector::zeros(q1 as usize);
            for i in 0..q1 {
                let mut value: Element = 0;
                let mut coeff = gamma;
                let mut exponent = a as u64;
                for _ in 0..m {
                    value ^= field.mul(coeff, field.alpha_pow(i * exponent));
                    coeff = field.mul(coeff, coeff);
                    exponent = (2 * exponent) % q1;
                }
                match value {
                    0 => {}
                    1 => word.set(i as usize, true),
                    v => {
                        return Err(Error::Domain(format!(
                            "trace polynomial evaluated to non-binary {v:#x}"
                        )))
                    }
                }
            }
            basis.push(word);
        }
    }
    Ok(basis)
}

/// Whether every GF(2)-full-rank combination of the `[2^s - 1, n]`
/// Reed-Solomon code is claimed full rank: `n >= 2^(s-1)`.
pub fn rs_full_rank_guaranteed(n: usize, s: u32) -> Result<bool> {
    check_dimension(n, s)?;
    Ok(n >= 1 << (s - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> CodingVector {
        CodingVector::from_bits(&s.bytes().map(|b| b == b'1').collect::<Vec<_>>())
    }

    #[test]
    fn cosets_s4() {
        let c = cyclotomic_cosets(4).unwrap();
        let listed: Vec<(u32, Vec<u32>)> = c.iter().map(|(a, m)| (a, m.to_vec())).collect();
        assert_eq!(
            listed,
            vec![
                (0, vec![0]),
                (1, vec![1, 2, 4, 8]),
                (3, vec![3, 6, 12, 9]),
                (5, vec![5, 10]),
                (7, vec![7, 14, 13, 11]),
            ]
        );
    }

    #[test]
    fn cosets_s2() {
        let c = cyclotomic_cosets(2).unwrap();
        assert_eq!(c.get(0), Some(&[0][..]));
        assert_eq!(c.get(1), Some(&[1, 2][..]));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn cosets_partition_and_close_under_doubling() {
        for s in 2..=12 {
            let c = cyclotomic_cosets(s).unwrap();
            let modulus = (1u32 << s) - 1;
            let mut count = vec![0; modulus as usize];
            for (leader, members) in c.iter() {
                assert_eq!(leader, *members.iter().min().unwrap());
                for &x in members {
                    count[x as usize] += 1;
                    assert!(members.contains(&((2 * x) % modulus)));
                }
            }
            assert!(count.iter().all(|&k| k == 1));
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(subfield_subcode_dimension(8, 4).unwrap(), 0);
        assert_eq!(subfield_subcode_dimension(7, 4).unwrap(), 4);
        for s in 2..=8 {
            assert_eq!(subfield_subcode_dimension((1 << s) - 1, s).unwrap(), 0);
        }
        assert!(subfield_subcode_dimension(0, 4).is_err());
        assert!(subfield_subcode_dimension(16, 4).is_err());
    }

    /// Carry-less GF(16) product modulo x^4 + x + 1, independent of `Field`.
    fn gf16_mul(a: u8, b: u8) -> u8 {
        let mut acc = 0u8;
        for i in 0..4 {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        for bit in (4..8).rev() {
            if (acc >> bit) & 1 == 1 {
                acc ^= 0x13 << (bit - 4);
            }
        }
        acc
    }

    /// Whether `v` annihilates random codewords of the `[15, n]` RS code.
    fn annihilates_rs(v: &CodingVector, n: usize, trials: usize) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
        let mut powers = [1u8; 15];
        for i in 1..15 {
            powers[i] = gf16_mul(powers[i - 1], 2);
        }
        (0..trials).all(|_| {
            let poly: Vec<u8> = (0..n).map(|_| rng.random_range(0..16)).collect();
            let mut dot = 0u8;
            for i in v.ones() {
                let mut value = 0u8;
                for &c in poly.iter().rev() {
                    value = gf16_mul(value, powers[i]) ^ c;
                }
                dot ^= value;
            }
            dot == 0
        })
    }

    #[test]
    fn basis_n7_s4_matches_known_generator() {
        let basis = subfield_subcode_basis(7, 4).unwrap();
        // Cyclic shifts of ev(X + X^2 + X^4 + X^8).
        let expected = [
            "000100110101111",
            "001001101011110",
            "010011010111100",
            "100110101111000",
        ];
        assert_eq!(basis.len(), 4);
        for (b, e) in basis.iter().zip(expected) {
            assert_eq!(*b, bits(e));
        }
        assert!(subfield_subcode_basis(8, 4).unwrap().is_empty());
    }

    #[test]
    fn basis_words_are_dual_to_rs_codewords() {
        for n in 1..15 {
            let basis = subfield_subcode_basis(n, 4).unwrap();
            assert_eq!(basis.len(), subfield_subcode_dimension(n, 4).unwrap());
            assert_eq!(crate::gf2::rank(&basis), basis.len());
            for v in &basis {
                assert!(annihilates_rs(v, n, 100), "n = {n}, {v:?}");
            }
        }
    }

    #[test]
    fn one_bit_off_the_fourth_word_is_not_dual() {
        // Differs from a codeword in one position, and the dual has minimum
        // distance n + 1, so this cannot be a codeword.
        assert!(!annihilates_rs(&bits("101110101111000"), 7, 100));
    }

    #[test]
    fn threshold_boundary() {
        assert!(rs_full_rank_guaranteed(8, 4).unwrap());
        assert!(!rs_full_rank_guaranteed(7, 4).unwrap());
        for s in 2..=8 {
            assert!(rs_full_rank_guaranteed(1 << (s - 1), s).unwrap());
        }
    }

    #[test]
    fn threshold_agrees_with_trivial_subcode() {
        for s in 2..=10 {
            for n in 1..(1usize << s) {
                assert_eq!(
                    rs_full_rank_guaranteed(n, s).unwrap(),
                    subfield_subcode_dimension(n, s).unwrap() == 0,
                    "n = {n}, s = {s}"
                );
            }
        }
    }
}
