//! Receivers: inner (GF(2) only), outer (GF(2^h) on arrival) and combined
//! (two-stage GF(2) elimination finished by a small GF(2^h) solve).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::dense::{DenseEliminator, DenseRow};
use crate::error::{Error, Result};
use crate::field::{xor_into, Element};
use crate::gf2::{BitRow, Gf2Eliminator};
use crate::outer::OuterMapping;
use crate::packet::CodedPacket;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Inner,
    Outer,
    Combined,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 3] = [
        DecoderKind::Inner,
        DecoderKind::Outer,
        DecoderKind::Combined,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::Inner => "inner",
            DecoderKind::Outer => "outer",
            DecoderKind::Combined => "combined",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inner" => Ok(DecoderKind::Inner),
            "outer" => Ok(DecoderKind::Outer),
            "combined" => Ok(DecoderKind::Combined),
            other => Err(Error::param(format!(
                "unknown decoder `{other}` (expected inner, outer or combined)"
            ))),
        }
    }
}

/// Result of feeding one packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeedStatus {
    /// Rank went up by one.
    Innovative,
    /// Nothing learned; also returned for every packet after completion.
    Redundant,
    /// This packet completed decoding.
    Complete,
}

/// Generation and symbol size of the stream, fixed by the first packet.
#[derive(Debug, Clone)]
struct StreamGuard {
    n: usize,
    r: usize,
    generation_id: Option<u32>,
    symbol_size: Option<usize>,
}

impl StreamGuard {
    fn new(mapping: &OuterMapping) -> Self {
        Self {
            n: mapping.params().n(),
            r: mapping.params().r(),
            generation_id: None,
            symbol_size: None,
        }
    }

    fn check(&mut self, p: &CodedPacket, mapping: &OuterMapping) -> Result<()> {
        if p.n() != self.n || p.r() != self.r {
            return Err(Error::contract(format!(
                "packet has n = {}, r = {}; decoder expects n = {}, r = {}",
                p.n(),
                p.r(),
                self.n,
                self.r
            )));
        }
        match self.generation_id {
            Some(g) if g != p.generation_id() => {
                return Err(Error::contract(format!(
                    "packet from generation {} fed to decoder of generation {g}",
                    p.generation_id()
                )))
            }
            _ => {}
        }
        match self.symbol_size {
            Some(s) if s != p.symbol_size() => {
                return Err(Error::contract(format!(
                    "packet symbol size {} differs from stream symbol size {s}",
                    p.symbol_size()
                )))
            }
            Some(_) => {}
            None => mapping.field().spec().check_symbol_size(p.symbol_size())?,
        }
        self.generation_id = Some(p.generation_id());
        self.symbol_size = Some(p.symbol_size());
        Ok(())
    }
}

fn require_systematic(mapping: &OuterMapping, kind: DecoderKind) -> Result<()> {
    if mapping.is_systematic() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "the {kind} decoder needs a systematic outer mapping"
        )))
    }
}

fn incomplete(rank: usize, required: usize) -> Error {
    Error::State(format!("decoding incomplete: rank {rank} of {required}"))
}

/// Pure GF(2) decoding of all `n + r` expanded symbols.
#[derive(Debug, Clone)]
pub struct InnerDecoder {
    mapping: Arc<OuterMapping>,
    guard: StreamGuard,
    elim: Gf2Eliminator,
    counters: OpCounters,
}

impl InnerDecoder {
    pub fn new(mapping: Arc<OuterMapping>) -> Result<Self> {
        require_systematic(&mapping, DecoderKind::Inner)?;
        Ok(Self {
            guard: StreamGuard::new(&mapping),
            elim: Gf2Eliminator::new(mapping.params().expanded()),
            mapping,
            counters: OpCounters::default(),
        })
    }

    pub fn feed(&mut self, p: &CodedPacket) -> Result<FeedStatus> {
        self.guard.check(p, &self.mapping)?;
        if self.is_complete() {
            return Ok(FeedStatus::Redundant);
        }
        let row = BitRow {
            vector: p.vector().clone(),
            payload: p.payload().to_vec(),
        };
        Ok(match self.elim.insert(row, &mut self.counters) {
            None => FeedStatus::Redundant,
            Some(_) if self.is_complete() => FeedStatus::Complete,
            Some(_) => FeedStatus::Innovative,
        })
    }

    pub fn rank(&self) -> usize {
        self.elim.rank()
    }

    pub fn required_rank(&self) -> usize {
        self.elim.columns()
    }

    pub fn is_complete(&self) -> bool {
        self.elim.rank() == self.elim.columns()
    }

    /// All `n + r` expanded symbols.
    pub fn expanded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        if !self.is_complete() {
            return Err(incomplete(self.rank(), self.required_rank()));
        }
        Ok((0..self.elim.columns())
            .map(|c| self.elim.row(c).expect("full rank").payload.clone())
            .collect())
    }

    pub fn decoded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        let mut all = self.expanded_symbols()?;
        all.truncate(self.mapping.params().n());
        Ok(all)
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }
}

/// Maps every packet to the outer field on arrival and eliminates over
/// GF(2^h) on `n` columns.
#[derive(Debug, Clone)]
pub struct OuterDecoder {
    mapping: Arc<OuterMapping>,
    guard: StreamGuard,
    elim: Option<DenseEliminator>,
    counters: OpCounters,
}

impl OuterDecoder {
    pub fn new(mapping: Arc<OuterMapping>) -> Self {
        Self {
            guard: StreamGuard::new(&mapping),
            mapping,
            elim: None,
            counters: OpCounters::default(),
        }
    }

    /// `sum_j lambda_j G_j`. Pure XOR of lookup rows, since `lambda_j` is a bit.
    pub fn map_vector(&self, p: &CodedPacket) -> Vec<Element> {
        map_rows(&self.mapping, p.vector().ones())
    }

    pub fn feed(&mut self, p: &CodedPacket) -> Result<FeedStatus> {
        self.guard.check(p, &self.mapping)?;
        if self.is_complete() {
            return Ok(FeedStatus::Redundant);
        }
        let coeffs = self.map_vector(p);
        let n = self.mapping.params().n();
        let elim = self
            .elim
            .get_or_insert_with(|| DenseEliminator::new(self.mapping.field(), n, p.symbol_size()));
        let row = DenseRow {
            coeffs,
            payload: p.payload().to_vec(),
        };
        Ok(match elim.insert(row, &mut self.counters) {
            None => FeedStatus::Redundant,
            Some(_) if elim.rank() == n => FeedStatus::Complete,
            Some(_) => FeedStatus::Innovative,
        })
    }

    pub fn rank(&self) -> usize {
        self.elim.as_ref().map_or(0, DenseEliminator::rank)
    }

    pub fn required_rank(&self) -> usize {
        self.mapping.params().n()
    }

    pub fn is_complete(&self) -> bool {
        self.rank() == self.required_rank()
    }

    pub fn decoded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        match &self.elim {
            Some(elim) if self.is_complete() => Ok(elim.payloads()),
            _ => Err(incomplete(self.rank(), self.required_rank())),
        }
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }
}

fn map_rows(mapping: &OuterMapping, ones: impl Iterator<Item = usize>) -> Vec<Element> {
    let mut g = vec![0; mapping.params().n()];
    for j in ones {
        for (a, &b) in g.iter_mut().zip(mapping.row(j)) {
            *a ^= b;
        }
    }
    g
}

/// Two-stage decoder for systematic mappings.
///
/// Coding vectors are eliminated over GF(2) with the `r` expansion columns
/// ordered first. Rows pivoting on an expansion column form stage one; the
/// rest have no expansion coordinates and form stage two. Once the GF(2)
/// rank reaches `n`, the stage-one rows are mapped to the outer field,
/// cleared against stage two, and the remaining small system over the
/// source columns not covered by stage two is solved. Stage two then
/// finishes with additions only.
#[derive(Debug, Clone)]
pub struct CombinedDecoder {
    mapping: Arc<OuterMapping>,
    guard: StreamGuard,
    /// Column `i` of the incoming vector is column `perm[i]` here.
    perm: Vec<usize>,
    elim: Gf2Eliminator,
    decoded: Option<Vec<Vec<u8>>>,
    counters: OpCounters,
    mapping_attempts: u64,
}

impl CombinedDecoder {
    pub fn new(mapping: Arc<OuterMapping>) -> Result<Self> {
        require_systematic(&mapping, DecoderKind::Combined)?;
        let n = mapping.params().n();
        let r = mapping.params().r();
        let perm = (0..n + r)
            .map(|i| if i < n { r + i } else { i - n })
            .collect();
        Ok(Self {
            guard: StreamGuard::new(&mapping),
            elim: Gf2Eliminator::new(n + r),
            perm,
            mapping,
            decoded: None,
            counters: OpCounters::default(),
            mapping_attempts: 0,
        })
    }

    pub fn feed(&mut self, p: &CodedPacket) -> Result<FeedStatus> {
        self.guard.check(p, &self.mapping)?;
        if self.is_complete() {
            return Ok(FeedStatus::Redundant);
        }
        let row = BitRow {
            vector: p.vector().permuted(&self.perm),
            payload: p.payload().to_vec(),
        };
        if self.elim.insert(row, &mut self.counters).is_none() {
            return Ok(FeedStatus::Redundant);
        }
        if self.elim.rank() >= self.mapping.params().n() {
            self.mapping_attempts += 1;
            if let Some(decoded) = self.finish() {
                self.decoded = Some(decoded);
                return Ok(FeedStatus::Complete);
            }
        }
        Ok(FeedStatus::Innovative)
    }

    /// GF(2) rank of the received stream.
    pub fn rank(&self) -> usize {
        self.elim.rank()
    }

    /// Rows currently in stage one (pivot on an expansion column).
    pub fn stage_one_rank(&self) -> usize {
        let r = self.mapping.params().r();
        self.elim.rows().filter(|(p, _)| *p < r).count()
    }

    pub fn stage_two_rank(&self) -> usize {
        self.rank() - self.stage_one_rank()
    }

    /// How many times the outer-field solve was tried.
    pub fn mapping_attempts(&self) -> u64 {
        self.mapping_attempts
    }

    pub fn required_rank(&self) -> usize {
        self.mapping.params().n()
    }

    pub fn is_complete(&self) -> bool {
        self.decoded.is_some()
    }

    pub fn decoded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        self.decoded
            .clone()
            .ok_or_else(|| incomplete(self.rank(), self.required_rank()))
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    /// Attempts the outer-field solve; `None` if the mapped system is still
    /// singular, in which case no payload work was done.
    fn finish(&mut self) -> Option<Vec<Vec<u8>>> {
        let n = self.mapping.params().n();
        let r = self.mapping.params().r();
        let field = self.mapping.field();
        let symbol_size = self.guard.symbol_size.expect("set by first packet");
        let elements = field.spec().elements_per_symbol(symbol_size) as u64;

        // Stage two rows by source column; their vectors have no expansion bits.
        let mut stage_two: Vec<Option<&BitRow>> = vec![None; n];
        let mut stage_one: Vec<&BitRow> = Vec::new();
        for (pivot, row) in self.elim.rows() {
            if pivot < r {
                stage_one.push(row);
            } else {
                stage_two[pivot - r] = Some(row);
            }
        }
        let free: Vec<usize> = (0..n).filter(|&c| stage_two[c].is_none()).collect();

        let mut counters = OpCounters::default();
        let mut solved: Vec<Option<Vec<u8>>> = vec![None; n];
        if !free.is_empty() {
            // Coefficients first: find stage-one rows that pin the free
            // columns before touching any payload.
            let mut probe = DenseEliminator::new(field, free.len(), 0);
            let mut chosen: Vec<(&BitRow, Vec<Element>)> = Vec::new();
            for row in &stage_one {
                // Outer-field image of the row over the source columns.
                let expansion = row.vector.ones().take_while(|&i| i < r).map(|u| n + u);
                let mut g = map_rows(&self.mapping, expansion);
                for i in row.vector.ones().skip_while(|&i| i < r) {
                    g[i - r] ^= 1;
                }
                let mut reduced = g.clone();
                for (c, two) in stage_two.iter().enumerate() {
                    let (Some(two), f) = (two, g[c]) else {
                        continue;
                    };
                    if f != 0 {
                        for i in two.vector.ones() {
                            reduced[i - r] ^= f;
                        }
                    }
                }
                let coeffs: Vec<Element> = free.iter().map(|&c| reduced[c]).collect();
                let probe_row = DenseRow {
                    coeffs,
                    payload: Vec::new(),
                };
                if probe.insert(probe_row, &mut counters).is_some() {
                    chosen.push((row, g));
                    if probe.rank() == free.len() {
                        break;
                    }
                }
            }
            if probe.rank() < free.len() {
                return None;
            }

            let mut small = DenseEliminator::new(field, free.len(), symbol_size);
            for (row, g) in chosen {
                let mut payload = row.payload.clone();
                let mut reduced = g.clone();
                for (c, two) in stage_two.iter().enumerate() {
                    let (Some(two), f) = (two, g[c]) else {
                        continue;
                    };
                    if f == 0 {
                        continue;
                    }
                    for i in two.vector.ones() {
                        reduced[i - r] ^= f;
                    }
                    field.axpy(&mut payload, &two.payload, f);
                    counters.gf_add += elements;
                    if f != 1 {
                        counters.gf_mul += elements;
                    }
                }
                let coeffs = free.iter().map(|&c| reduced[c]).collect();
                small.insert(DenseRow { coeffs, payload }, &mut counters);
            }
            debug_assert_eq!(small.rank(), free.len());
            for (k, payload) in small.into_payloads().into_iter().enumerate() {
                solved[free[k]] = Some(payload);
            }
        }

        // Back substitution: stage-two rows carry 0/1 coefficients on free columns.
        for (c, two) in stage_two.iter().enumerate() {
            let Some(two) = two else { continue };
            let mut payload = two.payload.clone();
            for i in two.vector.ones() {
                let col = i - r;
                if col != c {
                    xor_into(
                        &mut payload,
                        solved[col].as_ref().expect("free column solved"),
                    );
                    counters.gf_add += elements;
                }
            }
            solved[c] = Some(payload);
        }
        self.counters += counters;
        Some(
            solved
                .into_iter()
                .map(|s| s.expect("every column solved"))
                .collect(),
        )
    }
}

/// Any of the three receivers behind one interface.
#[derive(Debug, Clone)]
pub enum Decoder {
    Inner(InnerDecoder),
    Outer(OuterDecoder),
    Combined(CombinedDecoder),
}

impl Decoder {
    pub fn new(kind: DecoderKind, mapping: Arc<OuterMapping>) -> Result<Self> {
        Ok(match kind {
            DecoderKind::Inner => Decoder::Inner(InnerDecoder::new(mapping)?),
            DecoderKind::Outer => Decoder::Outer(OuterDecoder::new(mapping)),
            DecoderKind::Combined => Decoder::Combined(CombinedDecoder::new(mapping)?),
        })
    }

    pub fn kind(&self) -> DecoderKind {
        match self {
            Decoder::Inner(_) => DecoderKind::Inner,
            Decoder::Outer(_) => DecoderKind::Outer,
            Decoder::Combined(_) => DecoderKind::Combined,
        }
    }

    pub fn feed(&mut self, p: &CodedPacket) -> Result<FeedStatus> {
        match self {
            Decoder::Inner(d) => d.feed(p),
            Decoder::Outer(d) => d.feed(p),
            Decoder::Combined(d) => d.feed(p),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Decoder::Inner(d) => d.rank(),
            Decoder::Outer(d) => d.rank(),
            Decoder::Combined(d) => d.rank(),
        }
    }

    pub fn required_rank(&self) -> usize {
        match self {
            Decoder::Inner(d) => d.required_rank(),
            Decoder::Outer(d) => d.required_rank(),
            Decoder::Combined(d) => d.required_rank(),
        }
    }

    pub fn is_complete(&self) -> bool {
        match self {
            Decoder::Inner(d) => d.is_complete(),
            Decoder::Outer(d) => d.is_complete(),
            Decoder::Combined(d) => d.is_complete(),
        }
    }

    pub fn decoded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        match self {
            Decoder::Inner(d) => d.decoded_symbols(),
            Decoder::Outer(d) => d.decoded_symbols(),
            Decoder::Combined(d) => d.decoded_symbols(),
        }
    }

    pub fn counters(&self) -> OpCounters {
        match self {
            Decoder::Inner(d) => d.counters(),
            Decoder::Outer(d) => d.counters(),
            Decoder::Combined(d) => d.counters(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::CodingVector;
    use crate::inner::{Encoder, InnerMode, SparsityMode};
    use crate::outer::CodeParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize, r: usize, bits: u32, seed: u64) -> (Arc<OuterMapping>, Vec<Vec<u8>>) {
        let params = CodeParams::new(n, r, bits).unwrap();
        let mapping = OuterMapping::systematic_random(params, seed)
            .unwrap()
            .into_shared();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
        let source = (0..n)
            .map(|_| (0..8).map(|_| rng.random()).collect())
            .collect();
        (mapping, source)
    }

    #[test]
    fn duplicate_is_redundant() {
        let (m, src) = setup(6, 2, 8, 1);
        let mut enc = Encoder::new(m.clone(), 0, &src, InnerMode::dense()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = enc.next_packet(&mut rng);
        for kind in DecoderKind::ALL {
            let mut d = Decoder::new(kind, m.clone()).unwrap();
            assert_eq!(d.feed(&p).unwrap(), FeedStatus::Innovative);
            assert_eq!(d.feed(&p).unwrap(), FeedStatus::Redundant);
            assert_eq!(d.rank(), 1);
        }
    }

    #[test]
    fn unit_vectors_complete_inner_after_n_plus_r() {
        let (m, src) = setup(5, 3, 8, 2);
        let mut enc = Encoder::new(
            m.clone(),
            0,
            &src,
            InnerMode::systematic_then(SparsityMode::Dense),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut d = InnerDecoder::new(m).unwrap();
        for t in 0..8 {
            let status = d.feed(&enc.next_packet(&mut rng)).unwrap();
            assert_eq!(
                status,
                if t == 7 {
                    FeedStatus::Complete
                } else {
                    FeedStatus::Innovative
                }
            );
        }
        assert_eq!(d.decoded_symbols().unwrap(), src);
        assert_eq!(d.expanded_symbols().unwrap(), enc.expanded());
    }

    #[test]
    fn outer_mapping_of_unit_vectors() {
        let (m, _) = setup(4, 2, 8, 3);
        let d = OuterDecoder::new(m.clone());
        let p = CodedPacket::new(0, 4, 2, CodingVector::unit(6, 1), vec![0; 2]).unwrap();
        assert_eq!(d.map_vector(&p), vec![0, 1, 0, 0]);
        let p = CodedPacket::new(0, 4, 2, CodingVector::unit(6, 4), vec![0; 2]).unwrap();
        assert_eq!(d.map_vector(&p), m.row(4));
    }

    #[test]
    fn systematic_source_packets_need_no_multiplications() {
        let (m, src) = setup(16, 4, 8, 4);
        let mut enc = Encoder::new(
            m.clone(),
            0,
            &src,
            InnerMode::systematic_then(SparsityMode::Dense),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut d = CombinedDecoder::new(m).unwrap();
        for t in 0..16 {
            let status = d.feed(&enc.next_packet(&mut rng)).unwrap();
            assert_eq!(status == FeedStatus::Complete, t == 15);
        }
        assert_eq!(d.decoded_symbols().unwrap(), src);
        assert_eq!(d.counters().gf_mul, 0);
        assert_eq!(d.stage_one_rank(), 0);
    }

    #[test]
    fn combined_with_no_expansion_acts_like_inner() {
        let (m, src) = setup(12, 0, 8, 5);
        let mut enc = Encoder::new(m.clone(), 0, &src, InnerMode::dense()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut inner = InnerDecoder::new(m.clone()).unwrap();
        let mut combined = CombinedDecoder::new(m).unwrap();
        while !inner.is_complete() {
            let p = enc.next_packet(&mut rng);
            assert_eq!(inner.feed(&p).unwrap(), combined.feed(&p).unwrap());
        }
        assert!(combined.is_complete());
        assert_eq!(combined.decoded_symbols().unwrap(), src);
        assert_eq!(combined.counters().gf_mul, 0);
    }

    #[test]
    fn stage_split_invariants() {
        let (m, src) = setup(20, 5, 8, 6);
        let mut enc = Encoder::new(m.clone(), 0, &src, InnerMode::dense()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut d = CombinedDecoder::new(m).unwrap();
        while d.rank() < 19 {
            d.feed(&enc.next_packet(&mut rng)).unwrap();
            for (pivot, row) in d.elim.rows() {
                let expansion_bits = row.vector.ones().filter(|&i| i < 5).count();
                if pivot < 5 {
                    assert!(expansion_bits > 0);
                } else {
                    assert_eq!(expansion_bits, 0);
                }
            }
        }
    }

    #[test]
    fn all_decoders_agree_on_dense_streams() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = rng.random_range(1..=40);
            let r = rng.random_range(0..=8);
            let bits = if trial % 2 == 0 { 8 } else { 16 };
            let (m, src) = setup(n, r, bits, trial);
            let mut enc = Encoder::new(m.clone(), 9, &src, InnerMode::dense()).unwrap();
            let mut decoders: Vec<Decoder> = DecoderKind::ALL
                .iter()
                .map(|&k| Decoder::new(k, m.clone()).unwrap())
                .collect();
            while !decoders.iter().all(Decoder::is_complete) {
                let p = enc.next_packet(&mut rng);
                for d in &mut decoders {
                    d.feed(&p).unwrap();
                }
            }
            for d in &decoders {
                assert_eq!(
                    d.decoded_symbols().unwrap(),
                    src,
                    "{} n={n} r={r}",
                    d.kind()
                );
            }
            // With r >= n both end up solving an n x n dense system.
            let outer = decoders[1].counters().gf_mul;
            let combined = decoders[2].counters().gf_mul;
            if n >= 2 * r {
                assert!(combined <= outer, "n={n} r={r}: {combined} > {outer}");
            }
        }
    }

    #[test]
    fn errors() {
        let (m, src) = setup(4, 2, 8, 8);
        let rs = OuterMapping::reed_solomon(CodeParams::new(4, 2, 8).unwrap())
            .unwrap()
            .into_shared();
        assert!(matches!(
            InnerDecoder::new(rs.clone()),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            CombinedDecoder::new(rs.clone()),
            Err(Error::Config(_))
        ));
        assert!(Decoder::new(DecoderKind::Outer, rs).is_ok());

        let mut d = OuterDecoder::new(m.clone());
        assert!(matches!(d.decoded_symbols(), Err(Error::State(_))));
        let mut a = Encoder::new(m.clone(), 1, &src, InnerMode::dense()).unwrap();
        let mut b = Encoder::new(m, 2, &src, InnerMode::dense()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        d.feed(&a.next_packet(&mut rng)).unwrap();
        assert!(matches!(
            d.feed(&b.next_packet(&mut rng)),
            Err(Error::Contract(_))
        ));
        let wrong = CodedPacket::new(1, 5, 1, CodingVector::unit(6, 0), vec![0; 8]).unwrap();
        assert!(matches!(d.feed(&wrong), Err(Error::Contract(_))));
    }

    #[test]
    fn odd_symbol_size_rejected_for_wide_field() {
        let (m, _) = setup(2, 1, 16, 9);
        let mut d = OuterDecoder::new(m);
        let p = CodedPacket::new(0, 2, 1, CodingVector::unit(3, 0), vec![0; 3]).unwrap();
        assert!(d.feed(&p).is_err());
    }
}
