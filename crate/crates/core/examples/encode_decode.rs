//! One generation through an erasure channel, decoded three ways.
//!
//!     cargo run --example encode_decode

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fulcrum::decoder::{Decoder, DecoderKind};
use fulcrum::inner::{Encoder, InnerMode};
use fulcrum::outer::{CodeParams, OuterMapping};

fn main() -> Result<(), fulcrum::error::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (n, r, symbol_size) = (16, 4, 32);

    let params = CodeParams::new(n, r, 8)?;
    let mapping = OuterMapping::systematic_random(params, 42)?.into_shared();
    let source: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            format!("symbol {i:02} {}", "-".repeat(symbol_size)).into_bytes()[..symbol_size]
                .to_vec()
        })
        .collect();

    let mut encoder = Encoder::new(mapping.clone(), 0, &source, InnerMode::dense())?;
    let mut decoders: Vec<Decoder> = DecoderKind::ALL
        .iter()
        .map(|&k| Decoder::new(k, mapping.clone()))
        .collect::<Result<_, _>>()?;
    let mut received = vec![0usize; decoders.len()];

    let mut sent = 0;
    while decoders.iter().any(|d| !d.is_complete()) {
        let packet = encoder.next_packet(&mut rng);
        sent += 1;
        if rng.random_bool(0.2) {
            continue; // lost
        }
        for (d, count) in decoders.iter_mut().zip(&mut received) {
            if !d.is_complete() {
                d.feed(&packet)?;
                *count += 1;
            }
        }
    }

    println!("{sent} packets sent, 20% loss, n={n}, r={r}");
    for (d, count) in decoders.iter().zip(&received) {
        assert_eq!(d.decoded_symbols()?, source);
        let c = d.counters();
        println!(
            "{:>9}: decoded after {count} receptions, {} row XORs, {} GF(2^8) mults",
            d.kind().name(),
            c.gf2_row_xors,
            c.gf_mul
        );
    }
    println!(
        "first symbol: {}",
        String::from_utf8_lossy(&decoders[0].decoded_symbols()?[0])
    );
    Ok(())
}
