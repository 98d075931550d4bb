#![allow(dead_code)]

use std::path::PathBuf;

use fulcrum::gf2::CodingVector;
use fulcrum::packet::CodedPacket;

/// A hand-written packet file and the fields it encodes.
///
/// `systematic_first.pkt` (17 bytes):
/// `46 4C | 01 | 00 00 00 00 | 04 00 | 02 | 04 00 | 01 | DE AD BE EF`
/// generation 0, n = 4, r = 2, one vector byte with bit 0 set.
///
/// `coded_generation_0x01020304.pkt` (17 bytes):
/// `46 4C | 01 | 04 03 02 01 | 0A 00 | 03 | 03 00 | 05 12 | 01 02 03`
/// n = 10, r = 3, vector bits {0, 2, 9, 12}.
///
/// `wide_all_ones.pkt` (53 bytes):
/// `46 4C | 01 | FF FF FF FF | 2C 01 | 08 | 02 00 | FF x 38, 0F | AB CD`
/// n = 300, r = 8, all 308 vector bits set, top four bits of the last
/// vector byte are padding.
pub struct Golden {
    pub file: &'static str,
    pub generation: u32,
    pub n: usize,
    pub r: usize,
    pub ones: Vec<usize>,
    pub payload: Vec<u8>,
}

impl Golden {
    pub fn path(&self) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(self.file)
    }

    pub fn bytes(&self) -> Vec<u8> {
        std::fs::read(self.path()).expect("fixture present")
    }

    pub fn packet(&self) -> CodedPacket {
        let mut v = CodingVector::zeros(self.n + self.r);
        for &i in &self.ones {
            v.set(i, true);
        }
        CodedPacket::new(self.generation, self.n, self.r, v, self.payload.clone())
            .expect("valid packet")
    }
}

pub fn goldens() -> Vec<Golden> {
    vec![
        Golden {
            file: "systematic_first.pkt",
            generation: 0,
            n: 4,
            r: 2,
            ones: vec![0],
            payload: vec![0xDE, 0xAD, 0xBE, 0xEF],
        },
        Golden {
            file: "coded_generation_0x01020304.pkt",
            generation: 0x0102_0304,
            n: 10,
            r: 3,
            ones: vec![0, 2, 9, 12],
            payload: vec![1, 2, 3],
        },
        Golden {
            file: "wide_all_ones.pkt",
            generation: u32::MAX,
            n: 300,
            r: 8,
            ones: (0..308).collect(),
            payload: vec![0xAB, 0xCD],
        },
    ]
}

/// Checks one fixture: parse, compare fields, re-serialize, and build from
/// fields. Returns a description of the first mismatch.
pub fn check_golden(g: &Golden) -> Result<(), String> {
    let bytes = g.bytes();
    let parsed = CodedPacket::from_bytes(&bytes).map_err(|e| format!("{}: {e}", g.file))?;
    let expected = g.packet();
    if parsed != expected {
        return Err(format!("{}: parsed fields differ", g.file));
    }
    if parsed.to_bytes() != bytes {
        return Err(format!("{}: re-serialization differs", g.file));
    }
    if expected.to_bytes() != bytes {
        return Err(format!("{}: serialization from fields differs", g.file));
    }
    if parsed.wire_size() != bytes.len() {
        return Err(format!(
            "{}: wire size {} vs {} bytes",
            g.file,
            parsed.wire_size(),
            bytes.len()
        ));
    }
    Ok(())
}
