//! Coded packets and their wire format.
//!
//! All integers little-endian:
//!
//! ```text
//! offset  size  field
//! 0       2     magic "FL" (0x46 0x4C)
//! 2       1     version (0x01)
//! 3       4     generation id
//! 7       2     n
//! 9       1     r
//! 10      2     symbol size in bytes
//! 12      v     coding vector, v = ceil((n + r) / 8), bit j of the vector
//!               is bit j % 8 of byte j / 8
//! 12 + v  s     payload
//! ```

use crate::error::{Error, Result};
use crate::gf2::CodingVector;

pub const MAGIC: [u8; 2] = [0x46, 0x4C];
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 12;

/// Serialized size of a packet.
pub fn wire_size(n: usize, r: usize, symbol_size: usize) -> usize {
    HEADER_LEN + (n + r).div_ceil(8) + symbol_size
}

/// A GF(2) combination of the expanded symbols of one generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedPacket {
    generation_id: u32,
    n: u16,
    r: u8,
    vector: CodingVector,
    payload: Vec<u8>,
}

impl CodedPacket {
    pub fn new(
        generation_id: u32,
        n: usize,
        r: usize,
        vector: CodingVector,
        payload: Vec<u8>,
    ) -> Result<Self> {
        let n16 = u16::try_from(n).map_err(|_| Error::param(format!("n = {n} exceeds 65535")))?;
        let r8 = u8::try_from(r).map_err(|_| Error::param(format!("r = {r} exceeds 255")))?;
        if vector.len() != n + r {
            return Err(Error::contract(format!(
                "coding vector has {} bits, expected n + r = {}",
                vector.len(),
                n + r
            )));
        }
        if payload.len() > u16::MAX as usize {
            return Err(Error::param(format!(
                "payload of {} bytes exceeds 65535",
                payload.len()
            )));
        }
        Ok(Self {
            generation_id,
            n: n16,
            r: r8,
            vector,
            payload,
        })
    }

    pub fn generation_id(&self) -> u32 {
        self.generation_id
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn symbol_size(&self) -> usize {
        self.payload.len()
    }

    pub fn vector(&self) -> &CodingVector {
        &self.vector
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn into_parts(self) -> (CodingVector, Vec<u8>) {
        (self.vector, self.payload)
    }

    pub fn wire_size(&self) -> usize {
        wire_size(self.n(), self.r(), self.symbol_size())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.wire_size());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.generation_id.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        out.push(self.r);
        out.extend_from_slice(&(self.payload.len() as u16).to_le_bytes());
        out.extend_from_slice(&self.vector.to_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::parse(
                bytes.len(),
                format!("truncated header: {} of {HEADER_LEN} bytes", bytes.len()),
            ));
        }
        if bytes[..2] != MAGIC {
            return Err(Error::parse(0, "bad magic"));
        }
        if bytes[2] != VERSION {
            return Err(Error::parse(
                2,
                format!("unsupported version {:#04x}", bytes[2]),
            ));
        }
        let generation_id = u32::from_le_bytes(bytes[3..7].try_into().unwrap());
        let n = u16::from_le_bytes([bytes[7], bytes[8]]) as usize;
        let r = bytes[9] as usize;
        let symbol_size = u16::from_le_bytes([bytes[10], bytes[11]]) as usize;
        if n == 0 {
            return Err(Error::parse(7, "generation size n is zero"));
        }
        let vlen = (n + r).div_ceil(8);
        let expected = HEADER_LEN + vlen + symbol_size;
        if bytes.len() < expected {
            return Err(Error::parse(
                bytes.len(),
                format!("truncated packet: {} of {expected} bytes", bytes.len()),
            ));
        }
        if bytes.len() > expected {
            return Err(Error::parse(
                expected,
                format!("{} trailing bytes", bytes.len() - expected),
            ));
        }
        let vector = CodingVector::from_bytes(&bytes[HEADER_LEN..HEADER_LEN + vlen], n + r)
            .ok_or_else(|| Error::parse(HEADER_LEN + vlen - 1, "nonzero coding vector padding"))?;
        let payload = bytes[HEADER_LEN + vlen..].to_vec();
        Self::new(generation_id, n, r, vector, payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wire_size_formula() {
        assert_eq!(wire_size(8, 2, 1600), 1614);
        let p = CodedPacket::new(1, 8, 2, CodingVector::unit(10, 0), vec![0; 1600]).unwrap();
        assert_eq!(p.to_bytes().len(), 1614);
    }

    #[test]
    fn header_layout() {
        let p = CodedPacket::new(
            0x0403_0201,
            3,
            1,
            CodingVector::from_bits(&[true, false, true, true]),
            vec![0xAA, 0xBB],
        )
        .unwrap();
        assert_eq!(
            p.to_bytes(),
            vec![
                0x46, 0x4C, 0x01, 0x01, 0x02, 0x03, 0x04, 0x03, 0x00, 0x01, 0x02, 0x00, 0x0D, 0xAA,
                0xBB
            ]
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let p = CodedPacket::new(5, 4, 4, CodingVector::unit(8, 7), vec![1, 2, 3]).unwrap();
        let bytes = p.to_bytes();

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            CodedPacket::from_bytes(&bad),
            Err(Error::Parse { offset: 0, .. })
        ));

        let mut bad = bytes.clone();
        bad[2] = 2;
        assert!(matches!(
            CodedPacket::from_bytes(&bad),
            Err(Error::Parse { offset: 2, .. })
        ));

        assert!(matches!(
            CodedPacket::from_bytes(&bytes[..bytes.len() - 1]),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            CodedPacket::from_bytes(&bytes[..5]),
            Err(Error::Parse { offset: 5, .. })
        ));

        let mut long = bytes.clone();
        long.push(0);
        assert!(CodedPacket::from_bytes(&long).is_err());
    }

    #[test]
    fn padding_bits_must_be_zero() {
        let p = CodedPacket::new(0, 3, 0, CodingVector::unit(3, 0), vec![]).unwrap();
        let mut bytes = p.to_bytes();
        bytes[HEADER_LEN] |= 0x80;
        assert!(matches!(
            CodedPacket::from_bytes(&bytes),
            Err(Error::Parse { .. })
        ));
    }

    proptest! {
        #[test]
        fn round_trip(
            generation in any::<u32>(),
            n in 1usize..300,
            r in 0usize..=255,
            seed in any::<u64>(),
            payload in proptest::collection::vec(any::<u8>(), 0..64),
        ) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v = CodingVector::random(n + r, &mut rng);
            let p = CodedPacket::new(generation, n, r, v, payload).unwrap();
            let bytes = p.to_bytes();
            prop_assert_eq!(bytes.len(), p.wire_size());
            prop_assert_eq!(CodedPacket::from_bytes(&bytes).unwrap(), p);
        }
    }
}
