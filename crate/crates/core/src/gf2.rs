//! Bit-packed GF(2) vectors and incremental elimination.

use std::fmt;

use rand::Rng;

use crate::counters::OpCounters;
use crate::field::xor_into;

/// A GF(2) vector, bit `i` stored at bit `i % 64` of word `i / 64`.
///
/// Bits past `len` are always zero, so the little-endian byte image is the
/// LSB-first packing used on the wire.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CodingVector {
    words: Vec<u64>,
    len: usize,
}

impl CodingVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Uniformly random bits.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = rng.random();
        }
        v.clear_padding();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &CodingVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn byte_len(&self) -> usize {
        self.len.div_ceil(8)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.byte_len());
        out
    }

    /// Inverse of [`CodingVector::to_bytes`]. Returns `None` if `bytes` has
    /// the wrong length or a padding bit is set.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut v = Self::zeros(len);
        for (i, &b) in bytes.iter().enumerate() {
            v.words[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        let before = v.words.clone();
        v.clear_padding();
        (before == v.words).then_some(v)
    }

    /// Same bits with the columns reordered: bit `i` moves to `perm[i]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.len);
        for i in self.ones() {
            out.set(perm[i], true);
        }
        out
    }

    fn clear_padding(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Debug for CodingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "CodingVector({s})")
    }
}

/// Rank of a set of GF(2) vectors of equal length.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a CodingVector>) -> usize {
    let mut basis: Vec<CodingVector> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for b in &basis {
            if v.get(b.first_one().unwrap()) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = v.first_one() {
            for b in &mut basis {
                if b.get(p) {
                    b.xor_assign(&v);
                }
            }
            basis.push(v);
        }
    }
    basis.len()
}

/// A stored row: its coefficients and, optionally, the payload it carries.
#[derive(Debug, Clone)]
pub(crate) struct BitRow {
    pub vector: CodingVector,
    pub payload: Vec<u8>,
}

/// Incremental GF(2) Gauss-Jordan elimination.
///
/// Rows are kept in reduced row-echelon form: every pivot column is set in
/// exactly one stored row. The pivot of a new row is its lowest set column.
#[derive(Debug, Clone)]
pub(crate) struct Gf2Eliminator {
    columns: usize,
    rows: Vec<Option<BitRow>>,
    rank: usize,
}

impl Gf2Eliminator {
    pub fn new(columns: usize) -> Self {
        Self {
            columns,
            rows: vec![None; columns],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn row(&self, pivot: usize) -> Option<&BitRow> {
        self.rows[pivot].as_ref()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &BitRow)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(p, r)| r.as_ref().map(|r| (p, r)))
    }

    /// Reduces `row` against the stored pivots without inserting it.
    pub fn reduce(&self, row: &mut BitRow, counters: &mut OpCounters) {
        let ones: Vec<usize> = row.vector.ones().collect();
        for c in ones {
            if let Some(pivot) = &self.rows[c] {
                if row.vector.get(c) {
                    row.vector.xor_assign(&pivot.vector);
                    if !row.payload.is_empty() {
                        xor_into(&mut row.payload, &pivot.payload);
                        counters.gf2_row_xors += 1;
                    }
                }
            }
        }
    }

    /// Inserts a row. Returns its pivot column, or `None` if it was linearly
    /// dependent on the stored rows.
    pub fn insert(&mut self, mut row: BitRow, counters: &mut OpCounters) -> Option<usize> {
        debug_assert_eq!(row.vector.len(), self.columns);
        self.reduce(&mut row, counters);
        let pivot = row.vector.first_one()?;
        for other in self.rows.iter_mut().flatten() {
            if other.vector.get(pivot) {
                other.vector.xor_assign(&row.vector);
                if !row.payload.is_empty() {
                    xor_into(&mut other.payload, &row.payload);
                    counters.gf2_row_xors += 1;
                }
            }
        }
        self.rows[pivot] = Some(row);
        self.rank += 1;
        Some(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn byte_image_is_lsb_first() {
        let v = CodingVector::from_bits(&[
            true, false, false, false, false, false, false, false, false, true,
        ]);
        assert_eq!(v.to_bytes(), vec![0x01, 0x02]);
        assert_eq!(CodingVector::from_bytes(&[0x01, 0x02], 10), Some(v));
        // Padding bit 10 set.
        assert_eq!(CodingVector::from_bytes(&[0x01, 0x06], 10), None);
        assert_eq!(CodingVector::from_bytes(&[0x01], 10), None);
    }

    #[test]
    fn random_vectors_have_clean_padding() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for len in [1, 7, 63, 64, 65, 130] {
            let v = CodingVector::random(len, &mut rng);
            assert_eq!(CodingVector::from_bytes(&v.to_bytes(), len), Some(v));
        }
    }

    #[test]
    fn ones_and_first_one() {
        let mut v = CodingVector::zeros(140);
        for i in [3, 64, 100, 139] {
            v.set(i, true);
        }
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 100, 139]);
        assert_eq!(v.first_one(), Some(3));
        assert_eq!(v.count_ones(), 4);
        assert_eq!(CodingVector::zeros(5).first_one(), None);
    }

    #[test]
    fn eliminator_keeps_reduced_form_and_payloads_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cols = 20;
        let truth: Vec<Vec<u8>> = (0..cols)
            .map(|_| (0..8).map(|_| rng.random()).collect())
            .collect();
        let mut elim = Gf2Eliminator::new(cols);
        let mut counters = OpCounters::default();
        while elim.rank() < cols {
            let v = CodingVector::random(cols, &mut rng);
            let mut payload = vec![0u8; 8];
            for j in v.ones() {
                xor_into(&mut payload, &truth[j]);
            }
            elim.insert(BitRow { vector: v, payload }, &mut counters);
            for (p, row) in elim.rows() {
                for (q, _) in elim.rows() {
                    assert_eq!(row.vector.get(q), p == q);
                }
            }
        }
        for (p, row) in elim.rows() {
            assert_eq!(row.vector, CodingVector::unit(cols, p));
            assert_eq!(row.payload, truth[p]);
        }
        assert!(counters.gf2_row_xors > 0);
    }

    #[test]
    fn rank_of_dependent_set() {
        let a = CodingVector::from_bits(&[true, false, true]);
        let b = CodingVector::from_bits(&[false, true, true]);
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(rank([&a, &b, &c]), 2);
        assert_eq!(rank([&a, &a]), 1);
    }
}
