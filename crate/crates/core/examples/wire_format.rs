//! Packet serialization: header fields, bit-packed coding vector, payload.
//!
//!     cargo run --example wire_format

use fulcrum::gf2::CodingVector;
use fulcrum::packet::{wire_size, CodedPacket};

fn main() -> Result<(), fulcrum::error::Error> {
    let mut v = CodingVector::zeros(13);
    for i in [0, 2, 9, 12] {
        v.set(i, true);
    }
    let p = CodedPacket::new(0x0102_0304, 10, 3, v, vec![1, 2, 3])?;
    let bytes = p.to_bytes();
    let hex: Vec<String> = bytes.iter().map(|b| format!("{b:02X}")).collect();
    println!("{} bytes: {}", bytes.len(), hex.join(" "));
    assert_eq!(bytes.len(), wire_size(10, 3, 3));

    let back = CodedPacket::from_bytes(&bytes)?;
    println!(
        "generation {:#010x}, n {}, r {}, vector bits {:?}",
        back.generation_id(),
        back.n(),
        back.r(),
        back.vector().ones().collect::<Vec<_>>()
    );

    let mut bad = bytes.clone();
    bad[0] = b'X';
    println!("corrupted: {}", CodedPacket::from_bytes(&bad).unwrap_err());
    Ok(())
}
