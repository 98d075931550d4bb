//! The GF(2^h) outer code: generator matrices and source-side expansion.
//!
//! An [`OuterMapping`] holds the `(n + r) x n` generator `G`. Row `j` is the
//! outer coding vector of expanded packet `C_j`, so `C_j = sum_k G[j][k] P_k`.

use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::dense::matrix_rank;
use crate::error::{Error, Result};
use crate::field::{Element, Field, FieldSpec};

/// Largest generation size representable in a packet header.
pub const MAX_N: usize = u16::MAX as usize;
/// Largest expansion representable in a packet header.
pub const MAX_R: usize = u8::MAX as usize;

/// `n` source packets per generation, `r` expansion packets, and the outer field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    n: usize,
    r: usize,
    field: FieldSpec,
}

impl CodeParams {
    /// Parameters over the standard field GF(2^`field_bits`).
    pub fn new(n: usize, r: usize, field_bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::param(format!("n = {n} outside 1..={MAX_N}")));
        }
        if r > MAX_R {
            return Err(Error::param(format!("r = {r} outside 0..={MAX_R}")));
        }
        if n + r > MAX_N {
            return Err(Error::param(format!("n + r = {} exceeds {MAX_N}", n + r)));
        }
        let field = FieldSpec::standard(field_bits)?;
        if !field.supports_symbols() {
            return Err(Error::param(format!(
                "outer field must be GF(2), GF(2^8) or GF(2^16), got GF(2^{field_bits})"
            )));
        }
        Ok(Self { n, r, field })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `n + r`, the dimension seen by the GF(2) network.
    pub fn expanded(&self) -> usize {
        self.n + self.r
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field
    }

    pub fn field(&self) -> &'static Field {
        Field::standard(self.field.degree()).expect("validated at construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MappingKind {
    /// Identity block followed by `r` seeded random rows.
    SystematicRandom { seed: u64 },
    /// Evaluations of `1, X, ..., X^(n-1)` at `alpha^0, ..., alpha^(n+r-1)`.
    ReedSolomon,
    /// Caller-supplied rows.
    Explicit,
}

impl MappingKind {
    pub fn tag(&self) -> u8 {
        match self {
            MappingKind::SystematicRandom { .. } => 0,
            MappingKind::ReedSolomon => 1,
            MappingKind::Explicit => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterMapping {
    params: CodeParams,
    rows: Vec<Vec<Element>>,
    kind: MappingKind,
    systematic: bool,
}

impl OuterMapping {
    /// Systematic mapping with random expansion rows.
    ///
    /// Expansion coefficients come from SplitMix64 with its state set to
    /// `seed`: one output word per coefficient, row by row, keeping the low
    /// `h` bits. Zero coefficients are allowed.
    pub fn systematic_random(params: CodeParams, seed: u64) -> Result<Self> {
        let n = params.n;
        let mask = params.field().max_element() as u64;
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut rows: Vec<Vec<Element>> = (0..n).map(|i| unit_row(n, i)).collect();
        for _ in 0..params.r {
            rows.push((0..n).map(|_| (rng.next_u64() & mask) as Element).collect());
        }
        let mapping = Self {
            params,
            rows,
            kind: MappingKind::SystematicRandom { seed },
            systematic: true,
        };
        mapping.check_rank()?;
        Ok(mapping)
    }

    /// Reed-Solomon mapping, `G[j][k] = alpha^(j k)`. Requires `n + r <= 2^h - 1`.
    pub fn reed_solomon(params: CodeParams) -> Result<Self> {
        let field = params.field();
        let length = params.expanded();
        if length > field.max_element() as usize {
            return Err(Error::param(format!(
                "Reed-Solomon length n + r = {length} exceeds 2^{} - 1",
                field.degree()
            )));
        }
        let rows = (0..length)
            .map(|j| {
                (0..params.n)
                    .map(|k| field.alpha_pow((j * k) as u64))
                    .collect()
            })
            .collect();
        Ok(Self {
            params,
            rows,
            kind: MappingKind::ReedSolomon,
            systematic: false,
        })
    }

    /// Mapping from explicit rows; must be `(n + r) x n` of rank `n`.
    pub fn explicit(params: CodeParams, rows: Vec<Vec<Element>>) -> Result<Self> {
        if rows.len() != params.expanded() || rows.iter().any(|r| r.len() != params.n) {
            return Err(Error::param(format!(
                "explicit mapping must be {} x {}",
                params.expanded(),
                params.n
            )));
        }
        let field = params.field();
        if rows.iter().flatten().any(|&e| !field.contains(e)) {
            return Err(Error::param(format!(
                "explicit mapping has entries outside {}",
                field.spec()
            )));
        }
        let systematic = rows
            .iter()
            .take(params.n)
            .enumerate()
            .all(|(i, row)| *row == unit_row(params.n, i));
        let mapping = Self {
            params,
            rows,
            kind: MappingKind::Explicit,
            systematic,
        };
        mapping.check_rank()?;
        Ok(mapping)
    }

    fn check_rank(&self) -> Result<()> {
        let rank = matrix_rank(self.params.field(), &self.rows);
        if rank != self.params.n {
            return Err(Error::param(format!(
                "outer generator has rank {rank}, needs {}",
                self.params.n
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn kind(&self) -> MappingKind {
        self.kind
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic
    }

    pub fn rows(&self) -> &[Vec<Element>] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &[Element] {
        &self.rows[j]
    }

    pub fn field(&self) -> &'static Field {
        self.params.field()
    }

    /// Expands `n` source symbols into the `n + r` symbols `C_j`.
    pub fn encode(&self, source: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
        self.encode_counted(source, &mut OpCounters::default())
    }

    pub fn encode_counted(
        &self,
        source: &[Vec<u8>],
        counters: &mut OpCounters,
    ) -> Result<Vec<Vec<u8>>> {
        let n = self.params.n;
        if source.len() != n {
            return Err(Error::contract(format!(
                "expected {n} source symbols, got {}",
                source.len()
            )));
        }
        let size = source[0].len();
        if source.iter().any(|s| s.len() != size) {
            return Err(Error::contract("source symbols differ in size"));
        }
        let field = self.field();
        field.spec().check_symbol_size(size)?;
        let elements = field.spec().elements_per_symbol(size) as u64;

        let mut out = Vec::with_capacity(self.params.expanded());
        for (j, row) in self.rows.iter().enumerate() {
            if self.systematic && j < n {
                out.push(source[j].clone());
                continue;
            }
            let mut c = vec![0u8; size];
            for (&coeff, p) in row.iter().zip(source) {
                if coeff != 0 {
                    field.axpy(&mut c, p, coeff);
                    counters.gf_add += elements;
                    if coeff != 1 {
                        counters.gf_mul += elements;
                    }
                }
            }
            out.push(c);
        }
        Ok(out)
    }

    /// Compact descriptor: a kind tag byte, then the seed (8 bytes LE) for
    /// systematic random mappings, nothing for Reed-Solomon, or all rows of
    /// little-endian elements for explicit mappings.
    pub fn to_descriptor(&self) -> Vec<u8> {
        let mut out = vec![self.kind.tag()];
        match self.kind {
            MappingKind::SystematicRandom { seed } => out.extend_from_slice(&seed.to_le_bytes()),
            MappingKind::ReedSolomon => {}
            MappingKind::Explicit => {
                let wide = self.params.field.degree() > 8;
                for &e in self.rows.iter().flatten() {
                    if wide {
                        out.extend_from_slice(&e.to_le_bytes());
                    } else {
                        out.push(e as u8);
                    }
                }
            }
        }
        out
    }

    pub fn from_descriptor(params: CodeParams, bytes: &[u8]) -> Result<Self> {
        let (&tag, body) = bytes
            .split_first()
            .ok_or_else(|| Error::parse(0, "empty mapping descriptor"))?;
        match tag {
            0 => {
                let seed: [u8; 8] = body
                    .try_into()
                    .map_err(|_| Error::parse(1, "seed must be exactly 8 bytes"))?;
                Self::systematic_random(params, u64::from_le_bytes(seed))
            }
            1 => {
                if !body.is_empty() {
                    return Err(Error::parse(1, "trailing bytes after Reed-Solomon tag"));
                }
                Self::reed_solomon(params)
            }
            2 => {
                let width = if params.field.degree() > 8 { 2 } else { 1 };
                let expected = params.expanded() * params.n * width;
                if body.len() != expected {
                    return Err(Error::parse(
                        1 + body.len().min(expected),
                        format!("explicit rows need {expected} bytes, got {}", body.len()),
                    ));
                }
                let elements: Vec<Element> = body
                    .chunks_exact(width)
                    .map(|c| {
                        if width == 2 {
                            u16::from_le_bytes([c[0], c[1]])
                        } else {
                            c[0] as Element
                        }
                    })
                    .collect();
                let rows = elements.chunks(params.n).map(<[_]>::to_vec).collect();
                Self::explicit(params, rows)
            }
            t => Err(Error::parse(0, format!("unknown mapping kind tag {t}"))),
        }
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

fn unit_row(n: usize, i: usize) -> Vec<Element> {
    let mut row = vec![0; n];
    row[i] = 1;
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference SplitMix64, written out independently of the crate in use.
    fn splitmix_outputs(seed: u64, count: usize) -> Vec<u64> {
        let mut state = seed;
        (0..count)
            .map(|_| {
                state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                z ^ (z >> 31)
            })
            .collect()
    }

    #[test]
    fn splitmix_reference_value() {
        assert_eq!(splitmix_outputs(0, 1)[0], 0xE220_A839_7B1D_CDAF);
    }

    #[test]
    fn no_expansion_is_identity() {
        let m = OuterMapping::systematic_random(CodeParams::new(4, 0, 8).unwrap(), 1).unwrap();
        assert_eq!(m.rows().len(), 4);
        for (i, row) in m.rows().iter().enumerate() {
            assert_eq!(*row, unit_row(4, i));
        }
    }

    #[test]
    fn expansion_rows_replay_the_seeded_generator() {
        let seed = 0x0123_4567_89AB_CDEF;
        let m = OuterMapping::systematic_random(CodeParams::new(2, 1, 8).unwrap(), seed).unwrap();
        let words = splitmix_outputs(seed, 2);
        assert_eq!(m.rows()[0], vec![1, 0]);
        assert_eq!(m.rows()[1], vec![0, 1]);
        assert_eq!(
            m.rows()[2],
            vec![(words[0] & 0xFF) as u16, (words[1] & 0xFF) as u16]
        );

        let wide =
            OuterMapping::systematic_random(CodeParams::new(2, 1, 16).unwrap(), seed).unwrap();
        assert_eq!(
            wide.rows()[2],
            vec![(words[0] & 0xFFFF) as u16, (words[1] & 0xFFFF) as u16]
        );
    }

    #[test]
    fn n8_r2_layout() {
        let m = OuterMapping::systematic_random(CodeParams::new(8, 2, 8).unwrap(), 9).unwrap();
        assert_eq!(m.rows().len(), 10);
        assert!(m.is_systematic());
        for i in 0..8 {
            assert_eq!(m.rows()[i], unit_row(8, i));
        }
    }

    #[test]
    fn reed_solomon_rows() {
        let m = OuterMapping::reed_solomon(CodeParams::new(1, 5, 8).unwrap()).unwrap();
        assert!(m.rows().iter().all(|r| *r == vec![1]));

        let params = CodeParams::new(8, 7, 8).unwrap();
        let m = OuterMapping::reed_solomon(params).unwrap();
        let f = Field::gf256();
        assert_eq!(m.rows()[0], vec![1; 8]);
        for (j, row) in m.rows().iter().enumerate() {
            for (k, &e) in row.iter().enumerate() {
                let mut expect = 1;
                for _ in 0..j * k {
                    expect = f.mul(expect, 2);
                }
                assert_eq!(e, expect);
            }
        }
        assert!(!m.is_systematic());
        assert_eq!(m.kind(), MappingKind::ReedSolomon);
    }

    #[test]
    fn reed_solomon_length_bound() {
        assert!(OuterMapping::reed_solomon(CodeParams::new(200, 55, 8).unwrap()).is_ok());
        assert!(matches!(
            OuterMapping::reed_solomon(CodeParams::new(200, 56, 8).unwrap()),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn reed_solomon_any_n_rows_independent() {
        use rand::seq::index::sample;
        use rand_chacha::ChaCha8Rng;
        let params = CodeParams::new(12, 30, 8).unwrap();
        let m = OuterMapping::reed_solomon(params).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let pick: Vec<Vec<Element>> = sample(&mut rng, 42, 12)
                .into_iter()
                .map(|j| m.rows()[j].clone())
                .collect();
            assert_eq!(matrix_rank(Field::gf256(), &pick), 12);
        }
    }

    #[test]
    fn encode_systematic_prefix_and_explicit_row() {
        let params = CodeParams::new(2, 1, 8).unwrap();
        let m =
            OuterMapping::explicit(params, vec![vec![1, 0], vec![0, 1], vec![0x02, 0x03]]).unwrap();
        assert!(m.is_systematic());
        let out = m.encode(&[vec![0x01], vec![0x01]]).unwrap();
        assert_eq!(out, vec![vec![0x01], vec![0x01], vec![0x01]]);

        let single = OuterMapping::reed_solomon(CodeParams::new(1, 3, 8).unwrap()).unwrap();
        let out = single.encode(&[vec![0xAB, 0xCD]]).unwrap();
        assert!(out.iter().all(|c| *c == vec![0xAB, 0xCD]));

        assert!(matches!(
            m.encode(&[vec![1, 2], vec![3]]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(m.encode(&[vec![1]]), Err(Error::Contract(_))));
    }

    #[test]
    fn explicit_rejects_rank_deficiency() {
        let params = CodeParams::new(2, 1, 8).unwrap();
        assert!(OuterMapping::explicit(params, vec![vec![1, 2], vec![2, 4], vec![3, 6]]).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        let params = CodeParams::new(3, 2, 16).unwrap();
        let mappings = [
            OuterMapping::systematic_random(params, 77).unwrap(),
            OuterMapping::reed_solomon(params).unwrap(),
            OuterMapping::explicit(
                params,
                vec![
                    vec![1, 0, 0],
                    vec![0, 1, 0],
                    vec![0, 0, 1],
                    vec![0x1234, 7, 0],
                    vec![0xFFFF, 1, 2],
                ],
            )
            .unwrap(),
        ];
        for m in mappings {
            let d = m.to_descriptor();
            assert_eq!(OuterMapping::from_descriptor(params, &d).unwrap(), m);
        }
        let seeded = OuterMapping::systematic_random(params, 77)
            .unwrap()
            .to_descriptor();
        assert_eq!(seeded[0], 0);
        assert_eq!(&seeded[1..], &77u64.to_le_bytes());
        assert!(OuterMapping::from_descriptor(params, &[9]).is_err());
        assert!(OuterMapping::from_descriptor(params, &[0, 1, 2]).is_err());
    }
}
