//! Plain random linear network coding over a single field, used as the
//! comparison baseline. Coefficients are uniform over the field, zero
//! vectors included.

use rand::Rng;

use crate::counters::OpCounters;
use crate::decoder::FeedStatus;
use crate::dense::{DenseEliminator, DenseRow};
use crate::error::{Error, Result};
use crate::field::{xor_into, Element, Field};
use crate::gf2::{BitRow, CodingVector, Gf2Eliminator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RlncPacket {
    pub coeffs: Vec<Element>,
    pub payload: Vec<u8>,
}

fn symbol_field(field_bits: u32) -> Result<&'static Field> {
    let field = Field::standard(field_bits)?;
    if !field.spec().supports_symbols() {
        return Err(Error::param(format!(
            "RLNC field must be GF(2), GF(2^8) or GF(2^16), got GF(2^{field_bits})"
        )));
    }
    Ok(field)
}

fn random_coeffs<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Vec<Element> {
    let max = field.max_element();
    (0..n).map(|_| rng.random_range(0..=max)).collect()
}

/// Source of RLNC packets for one generation.
#[derive(Debug, Clone)]
pub struct RlncEncoder {
    field: &'static Field,
    source: Vec<Vec<u8>>,
    counters: OpCounters,
}

impl RlncEncoder {
    pub fn new(field_bits: u32, source: Vec<Vec<u8>>) -> Result<Self> {
        let field = symbol_field(field_bits)?;
        let size = source
            .first()
            .ok_or_else(|| Error::param("generation must hold at least one symbol"))?
            .len();
        if source.iter().any(|s| s.len() != size) {
            return Err(Error::contract("source symbols differ in size"));
        }
        field.spec().check_symbol_size(size)?;
        Ok(Self {
            field,
            source,
            counters: OpCounters::default(),
        })
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.source.len()
    }

    pub fn next_packet<R: Rng + ?Sized>(&mut self, rng: &mut R) -> RlncPacket {
        let coeffs = random_coeffs(self.field, self.n(), rng);
        let payload = combine(self.field, &coeffs, &self.source, &mut self.counters);
        RlncPacket { coeffs, payload }
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }
}

fn combine(
    field: &Field,
    coeffs: &[Element],
    symbols: &[impl AsRef<[u8]>],
    counters: &mut OpCounters,
) -> Vec<u8> {
    let size = symbols[0].as_ref().len();
    let elements = field.spec().elements_per_symbol(size) as u64;
    let mut payload = vec![0u8; size];
    for (&c, s) in coeffs.iter().zip(symbols) {
        if c == 0 {
            continue;
        }
        if field.degree() == 1 {
            xor_into(&mut payload, s.as_ref());
            counters.gf2_row_xors += 1;
        } else {
            field.axpy(&mut payload, s.as_ref(), c);
            counters.gf_add += elements;
            if c != 1 {
                counters.gf_mul += elements;
            }
        }
    }
    payload
}

/// Recombines buffered RLNC packets with fresh uniform coefficients.
pub fn recode_rlnc<R: Rng + ?Sized>(
    field_bits: u32,
    buffer: &[RlncPacket],
    rng: &mut R,
    counters: &mut OpCounters,
) -> Result<RlncPacket> {
    let field = symbol_field(field_bits)?;
    let first = buffer
        .first()
        .ok_or_else(|| Error::State("cannot recode from an empty buffer".into()))?;
    let weights = random_coeffs(field, buffer.len(), rng);
    let mut coeffs = vec![0; first.coeffs.len()];
    for (&w, p) in weights.iter().zip(buffer) {
        field.vec_axpy(&mut coeffs, &p.coeffs, w);
    }
    let payloads: Vec<&[u8]> = buffer.iter().map(|p| p.payload.as_slice()).collect();
    let payload = combine(field, &weights, &payloads, counters);
    Ok(RlncPacket { coeffs, payload })
}

#[derive(Debug, Clone)]
enum Elim {
    Binary(Gf2Eliminator),
    Dense(Option<DenseEliminator>),
}

#[derive(Debug, Clone)]
pub struct RlncDecoder {
    field: &'static Field,
    n: usize,
    elim: Elim,
    counters: OpCounters,
}

impl RlncDecoder {
    pub fn new(field_bits: u32, n: usize) -> Result<Self> {
        let field = symbol_field(field_bits)?;
        if n == 0 {
            return Err(Error::param("generation size must be positive"));
        }
        let elim = if field.degree() == 1 {
            Elim::Binary(Gf2Eliminator::new(n))
        } else {
            Elim::Dense(None)
        };
        Ok(Self {
            field,
            n,
            elim,
            counters: OpCounters::default(),
        })
    }

    pub fn feed(&mut self, p: &RlncPacket) -> Result<FeedStatus> {
        if p.coeffs.len() != self.n {
            return Err(Error::contract(format!(
                "packet has {} coefficients, decoder expects {}",
                p.coeffs.len(),
                self.n
            )));
        }
        if self.is_complete() {
            return Ok(FeedStatus::Redundant);
        }
        let pivot = match &mut self.elim {
            Elim::Binary(e) => {
                let bits: Vec<bool> = p.coeffs.iter().map(|&c| c != 0).collect();
                let row = BitRow {
                    vector: CodingVector::from_bits(&bits),
                    payload: p.payload.clone(),
                };
                e.insert(row, &mut self.counters)
            }
            Elim::Dense(slot) => {
                let e = slot.get_or_insert_with(|| {
                    DenseEliminator::new(self.field, self.n, p.payload.len())
                });
                let row = DenseRow {
                    coeffs: p.coeffs.clone(),
                    payload: p.payload.clone(),
                };
                e.insert(row, &mut self.counters)
            }
        };
        Ok(match pivot {
            None => FeedStatus::Redundant,
            Some(_) if self.is_complete() => FeedStatus::Complete,
            Some(_) => FeedStatus::Innovative,
        })
    }

    pub fn rank(&self) -> usize {
        match &self.elim {
            Elim::Binary(e) => e.rank(),
            Elim::Dense(e) => e.as_ref().map_or(0, DenseEliminator::rank),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.rank() == self.n
    }

    pub fn decoded_symbols(&self) -> Result<Vec<Vec<u8>>> {
        if !self.is_complete() {
            return Err(Error::State(format!(
                "decoding incomplete: rank {} of {}",
                self.rank(),
                self.n
            )));
        }
        Ok(match &self.elim {
            Elim::Binary(e) => (0..self.n)
                .map(|c| e.row(c).expect("full rank").payload.clone())
                .collect(),
            Elim::Dense(e) => e.as_ref().expect("full rank").payloads(),
        })
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }
}
