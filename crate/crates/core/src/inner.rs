//! The GF(2) inner code: source encoder and relay recoder.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::error::{Error, Result};
use crate::field::xor_into;
use crate::gf2::{BitRow, CodingVector, Gf2Eliminator};
use crate::outer::{CodeParams, OuterMapping};
use crate::packet::CodedPacket;

/// How coded (non-systematic) inner vectors are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SparsityMode {
    /// Every coefficient is an independent fair bit.
    Dense,
    /// Exactly `k` distinct coefficients are set.
    FixedNonzeros { k: usize },
    /// Every coefficient is set independently with probability `rho`.
    FixedDensity { rho: f64 },
}

impl SparsityMode {
    pub fn validate(&self, width: usize) -> Result<()> {
        match *self {
            SparsityMode::Dense => Ok(()),
            SparsityMode::FixedNonzeros { k } if (1..=width).contains(&k) => Ok(()),
            SparsityMode::FixedNonzeros { k } => Err(Error::param(format!(
                "nonzero count k = {k} outside 1..={width}"
            ))),
            SparsityMode::FixedDensity { rho } if rho > 0.0 && rho <= 0.5 => Ok(()),
            SparsityMode::FixedDensity { rho } => Err(Error::param(format!(
                "density rho = {rho} outside (0, 1/2]"
            ))),
        }
    }

    /// A basis of the space spanned by every vector this mode can draw, or
    /// `None` when that is all of GF(2)^`width`. Fixed even weights only
    /// reach the even-weight subspace, and `k = width` only the all-ones
    /// vector; recoding cannot leave the span either.
    pub fn reachable_span(&self, width: usize) -> Option<Vec<CodingVector>> {
        match *self {
            SparsityMode::FixedNonzeros { k } if k == width && width > 1 => {
                Some(vec![CodingVector::from_bits(&vec![true; width])])
            }
            SparsityMode::FixedNonzeros { k } if k % 2 == 0 && k < width => Some(
                (1..width)
                    .map(|i| {
                        let mut v = CodingVector::unit(width, 0);
                        v.set(i, true);
                        v
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Draws a nonzero vector of length `width`, resampling zero draws.
    pub fn draw<R: Rng + ?Sized>(&self, width: usize, rng: &mut R) -> CodingVector {
        loop {
            let v = match *self {
                SparsityMode::Dense => CodingVector::random(width, rng),
                SparsityMode::FixedNonzeros { k } => {
                    let mut v = CodingVector::zeros(width);
                    for i in sample(rng, width, k) {
                        v.set(i, true);
                    }
                    v
                }
                SparsityMode::FixedDensity { rho } => {
                    let mut v = CodingVector::zeros(width);
                    for i in 0..width {
                        if rng.random_bool(rho) {
                            v.set(i, true);
                        }
                    }
                    v
                }
            };
            if !v.is_zero() {
                return v;
            }
        }
    }
}

/// Source stream shape: optional systematic phase, then coded packets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerMode {
    pub systematic: bool,
    pub sparsity: SparsityMode,
}

impl InnerMode {
    pub fn dense() -> Self {
        Self {
            systematic: false,
            sparsity: SparsityMode::Dense,
        }
    }

    pub fn systematic_then(sparsity: SparsityMode) -> Self {
        Self {
            systematic: true,
            sparsity,
        }
    }
}

/// Source-side encoder for one generation.
///
/// Holds the `n + r` expanded symbols. With a systematic mode the first
/// `n + r` packets carry `e_1, ..., e_{n+r}`; after that every packet is a
/// fresh GF(2) combination drawn from the sparsity mode.
#[derive(Debug, Clone)]
pub struct Encoder {
    params: CodeParams,
    generation_id: u32,
    expanded: Vec<Vec<u8>>,
    mode: InnerMode,
    emitted: u64,
    counters: OpCounters,
}

impl Encoder {
    /// Runs the outer code over `source` and prepares the inner stream.
    pub fn new(
        mapping: Arc<OuterMapping>,
        generation_id: u32,
        source: &[Vec<u8>],
        mode: InnerMode,
    ) -> Result<Self> {
        let mut counters = OpCounters::default();
        let expanded = mapping.encode_counted(source, &mut counters)?;
        let mut encoder = Self::from_expanded(*mapping.params(), generation_id, expanded, mode)?;
        encoder.counters = counters;
        Ok(encoder)
    }

    /// Encoder over already expanded symbols.
    pub fn from_expanded(
        params: CodeParams,
        generation_id: u32,
        expanded: Vec<Vec<u8>>,
        mode: InnerMode,
    ) -> Result<Self> {
        if expanded.len() != params.expanded() {
            return Err(Error::contract(format!(
                "expected {} expanded symbols, got {}",
                params.expanded(),
                expanded.len()
            )));
        }
        let size = expanded[0].len();
        if expanded.iter().any(|s| s.len() != size) {
            return Err(Error::contract("expanded symbols differ in size"));
        }
        if size > u16::MAX as usize {
            return Err(Error::param(format!("symbol size {size} exceeds 65535")));
        }
        mode.sparsity.validate(params.expanded())?;
        Ok(Self {
            params,
            generation_id,
            expanded,
            mode,
            emitted: 0,
            counters: OpCounters::default(),
        })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn generation_id(&self) -> u32 {
        self.generation_id
    }

    pub fn expanded(&self) -> &[Vec<u8>] {
        &self.expanded
    }

    pub fn mode(&self) -> InnerMode {
        self.mode
    }

    /// Packets emitted so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn in_systematic_phase(&self) -> bool {
        self.mode.systematic && self.emitted < self.params.expanded() as u64
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    pub fn next_packet<R: Rng + ?Sized>(&mut self, rng: &mut R) -> CodedPacket {
        let width = self.params.expanded();
        let vector = if self.in_systematic_phase() {
            CodingVector::unit(width, self.emitted as usize)
        } else {
            self.mode.sparsity.draw(width, rng)
        };
        self.emitted += 1;
        self.packet_for(vector)
            .expect("vector width matches the parameters")
    }

    /// The packet carrying the combination `vector` of the expanded symbols.
    pub fn packet_for(&mut self, vector: CodingVector) -> Result<CodedPacket> {
        if vector.len() != self.params.expanded() {
            return Err(Error::contract(format!(
                "coding vector has {} bits, expected {}",
                vector.len(),
                self.params.expanded()
            )));
        }
        let mut payload = vec![0u8; self.expanded[0].len()];
        let mut ones = vector.ones();
        if let Some(first) = ones.next() {
            payload.copy_from_slice(&self.expanded[first]);
        }
        for j in ones {
            xor_into(&mut payload, &self.expanded[j]);
            self.counters.gf2_row_xors += 1;
        }
        CodedPacket::new(
            self.generation_id,
            self.params.n(),
            self.params.r(),
            vector,
            payload,
        )
    }
}

fn same_stream(a: &CodedPacket, b: &CodedPacket) -> Result<()> {
    if a.generation_id() != b.generation_id()
        || a.n() != b.n()
        || a.r() != b.r()
        || a.symbol_size() != b.symbol_size()
    {
        return Err(Error::contract(
            "packets disagree on generation or parameters",
        ));
    }
    Ok(())
}

fn check_buffer(buffer: &[CodedPacket]) -> Result<()> {
    let first = buffer
        .first()
        .ok_or_else(|| Error::State("cannot recode from an empty buffer".into()))?;
    buffer[1..].iter().try_for_each(|p| same_stream(first, p))
}

/// XOR of the packets flagged in `selection`.
pub fn recode_with_selection(buffer: &[CodedPacket], selection: &[bool]) -> Result<CodedPacket> {
    recode_selected(buffer, selection, &mut OpCounters::default())
}

fn recode_selected(
    buffer: &[CodedPacket],
    selection: &[bool],
    counters: &mut OpCounters,
) -> Result<CodedPacket> {
    check_buffer(buffer)?;
    if selection.len() != buffer.len() {
        return Err(Error::contract(format!(
            "selection has {} flags for {} packets",
            selection.len(),
            buffer.len()
        )));
    }
    let first = &buffer[0];
    let mut vector = CodingVector::zeros(first.n() + first.r());
    let mut payload = vec![0u8; first.symbol_size()];
    let mut any = false;
    for (p, _) in buffer.iter().zip(selection).filter(|(_, &s)| s) {
        vector.xor_assign(p.vector());
        if any {
            xor_into(&mut payload, p.payload());
            counters.gf2_row_xors += 1;
        } else {
            payload.copy_from_slice(p.payload());
            any = true;
        }
    }
    CodedPacket::new(first.generation_id(), first.n(), first.r(), vector, payload)
}

/// Recodes a buffer: every packet is included with probability 1/2; empty
/// selections and all-zero results are redrawn.
pub fn recode<R: Rng + ?Sized>(buffer: &[CodedPacket], rng: &mut R) -> Result<CodedPacket> {
    recode_counted(buffer, rng, &mut OpCounters::default())
}

fn recode_counted<R: Rng + ?Sized>(
    buffer: &[CodedPacket],
    rng: &mut R,
    counters: &mut OpCounters,
) -> Result<CodedPacket> {
    check_buffer(buffer)?;
    if buffer.iter().all(|p| p.vector().is_zero()) {
        return Err(Error::State("buffer spans only the zero vector".into()));
    }
    let mut selection = vec![false; buffer.len()];
    loop {
        for s in &mut selection {
            *s = rng.random_bool(0.5);
        }
        let mut v = CodingVector::zeros(buffer[0].vector().len());
        for (p, _) in buffer.iter().zip(&selection).filter(|(_, &s)| s) {
            v.xor_assign(p.vector());
        }
        if !v.is_zero() {
            return recode_selected(buffer, &selection, counters);
        }
    }
}

/// An intermediate node. It buffers the packets that were innovative to it
/// and emits GF(2) recombinations. It never touches the outer field.
#[derive(Debug, Clone)]
pub struct Relay {
    buffer: Vec<CodedPacket>,
    span: Option<Gf2Eliminator>,
    counters: OpCounters,
}

impl Default for Relay {
    fn default() -> Self {
        Self::new()
    }
}

impl Relay {
    pub fn new() -> Self {
        Self {
            buffer: Vec::new(),
            span: None,
            counters: OpCounters::default(),
        }
    }

    /// Stores `packet` if it extends the span of the buffer. Returns whether
    /// it did.
    pub fn receive(&mut self, packet: CodedPacket) -> Result<bool> {
        if let Some(first) = self.buffer.first() {
            same_stream(first, &packet)?;
        }
        let span = self
            .span
            .get_or_insert_with(|| Gf2Eliminator::new(packet.vector().len()));
        let row = BitRow {
            vector: packet.vector().clone(),
            payload: Vec::new(),
        };
        if span.insert(row, &mut self.counters).is_some() {
            self.buffer.push(packet);
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn rank(&self) -> usize {
        self.buffer.len()
    }

    pub fn buffer(&self) -> &[CodedPacket] {
        &self.buffer
    }

    /// A recoded packet, or `None` while the buffer is empty.
    pub fn emit<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<CodedPacket> {
        if self.buffer.is_empty() {
            return None;
        }
        Some(
            recode_counted(&self.buffer, rng, &mut self.counters)
                .expect("buffer holds independent nonzero vectors"),
        )
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn encoder(n: usize, r: usize, mode: InnerMode, seed: u64) -> Encoder {
        let params = CodeParams::new(n, r, 8).unwrap();
        let mapping = OuterMapping::systematic_random(params, seed)
            .unwrap()
            .into_shared();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let source: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..16).map(|_| rng.random()).collect())
            .collect();
        Encoder::new(mapping, 3, &source, mode).unwrap()
    }

    fn consistent(enc: &Encoder, p: &CodedPacket) -> bool {
        let mut expect = vec![0u8; p.symbol_size()];
        for j in p.vector().ones() {
            xor_into(&mut expect, &enc.expanded()[j]);
        }
        expect == p.payload()
    }

    #[test]
    fn systematic_phase_emits_unit_vectors() {
        let mut enc = encoder(8, 2, InnerMode::systematic_then(SparsityMode::Dense), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for t in 0..10 {
            let p = enc.next_packet(&mut rng);
            assert_eq!(*p.vector(), CodingVector::unit(10, t));
            assert_eq!(p.payload(), enc.expanded()[t].as_slice());
        }
        assert!(!enc.in_systematic_phase());
        assert_eq!(enc.counters().gf2_row_xors, 0);
        for _ in 0..50 {
            let p = enc.next_packet(&mut rng);
            assert!(!p.vector().is_zero());
            assert!(consistent(&enc, &p));
        }
    }

    #[test]
    fn dense_popcount_is_half_the_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let width = 40;
        let draws = 20_000;
        let total: usize = (0..draws)
            .map(|_| SparsityMode::Dense.draw(width, &mut rng).count_ones())
            .sum();
        let mean = total as f64 / draws as f64;
        // sd of a single popcount is sqrt(10), so the mean's is ~0.022.
        assert!((mean - 20.0).abs() < 0.1, "{mean}");
    }

    #[test]
    fn reachable_span_matches_sampled_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for width in 1..12 {
            for k in 1..=width {
                let mode = SparsityMode::FixedNonzeros { k };
                let drawn: Vec<CodingVector> =
                    (0..400).map(|_| mode.draw(width, &mut rng)).collect();
                let expected = mode.reachable_span(width).map_or(width, |b| rank(&b));
                assert_eq!(rank(&drawn), expected, "width {width}, k {k}");
            }
        }
        assert!(SparsityMode::Dense.reachable_span(5).is_none());
    }

    #[test]
    fn fixed_nonzeros_sets_exactly_k_bits() {
        let mut enc = encoder(
            7,
            3,
            InnerMode {
                systematic: false,
                sparsity: SparsityMode::FixedNonzeros { k: 3 },
            },
            2,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let p = enc.next_packet(&mut rng);
            assert_eq!(p.vector().count_ones(), 3);
            assert!(consistent(&enc, &p));
        }
    }

    #[test]
    fn fixed_density_matches_rho() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mode = SparsityMode::FixedDensity { rho: 0.25 };
        let width = 100;
        let draws = 5_000;
        let total: usize = (0..draws)
            .map(|_| mode.draw(width, &mut rng).count_ones())
            .sum();
        let mean = total as f64 / draws as f64;
        assert!((mean - 25.0).abs() < 0.3, "{mean}");
    }

    #[test]
    fn sparsity_validation() {
        assert!(SparsityMode::FixedNonzeros { k: 0 }.validate(10).is_err());
        assert!(SparsityMode::FixedNonzeros { k: 11 }.validate(10).is_err());
        assert!(SparsityMode::FixedNonzeros { k: 10 }.validate(10).is_ok());
        assert!(SparsityMode::FixedDensity { rho: 0.0 }
            .validate(10)
            .is_err());
        assert!(SparsityMode::FixedDensity { rho: 0.51 }
            .validate(10)
            .is_err());
        assert!(SparsityMode::FixedDensity { rho: 0.5 }.validate(10).is_ok());
    }

    #[test]
    fn single_packet_selection_is_identity() {
        let mut enc = encoder(4, 0, InnerMode::systematic_then(SparsityMode::Dense), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = enc.next_packet(&mut rng);
        assert_eq!(
            recode_with_selection(std::slice::from_ref(&p), &[true]).unwrap(),
            p
        );
        assert_eq!(recode(std::slice::from_ref(&p), &mut rng).unwrap(), p);
    }

    #[test]
    fn selecting_both_xors_vectors_and_payloads() {
        let mut enc = encoder(4, 0, InnerMode::systematic_then(SparsityMode::Dense), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = enc.next_packet(&mut rng);
        let b = enc.next_packet(&mut rng);
        let c = recode_with_selection(&[a.clone(), b.clone()], &[true, true]).unwrap();
        assert_eq!(
            *c.vector(),
            CodingVector::from_bits(&[true, true, false, false])
        );
        let mut expect = a.payload().to_vec();
        xor_into(&mut expect, b.payload());
        assert_eq!(c.payload(), expect.as_slice());
    }

    #[test]
    fn recoded_packets_stay_in_span() {
        let mut enc = encoder(10, 3, InnerMode::dense(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let buffer: Vec<CodedPacket> = (0..5).map(|_| enc.next_packet(&mut rng)).collect();
        let base = rank(buffer.iter().map(CodedPacket::vector));
        for _ in 0..200 {
            let out = recode(&buffer, &mut rng).unwrap();
            assert!(!out.vector().is_zero());
            assert!(consistent(&enc, &out));
            let with = rank(buffer.iter().map(CodedPacket::vector).chain([out.vector()]));
            assert_eq!(with, base);
        }
    }

    #[test]
    fn recode_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(recode(&[], &mut rng), Err(Error::State(_))));
        let zero = CodedPacket::new(0, 2, 0, CodingVector::zeros(2), vec![0]).unwrap();
        assert!(matches!(
            recode(std::slice::from_ref(&zero), &mut rng),
            Err(Error::State(_))
        ));
        let other = CodedPacket::new(1, 2, 0, CodingVector::unit(2, 0), vec![0]).unwrap();
        assert!(matches!(
            recode(&[zero, other], &mut rng),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn relay_keeps_only_innovative_packets() {
        let mut enc = encoder(6, 2, InnerMode::dense(), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut relay = Relay::new();
        assert!(relay.emit(&mut rng).is_none());
        let p = enc.next_packet(&mut rng);
        assert!(relay.receive(p.clone()).unwrap());
        assert!(!relay.receive(p).unwrap());
        while relay.rank() < 8 {
            relay.receive(enc.next_packet(&mut rng)).unwrap();
        }
        for _ in 0..20 {
            let out = relay.emit(&mut rng).unwrap();
            assert!(consistent(&enc, &out));
        }
        assert_eq!(relay.counters().gf_mul, 0);
        assert_eq!(relay.counters().gf_add, 0);
    }
}
