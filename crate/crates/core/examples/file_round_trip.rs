//! Encode a file into packet files, lose some, decode what is left.
//!
//!     cargo run --example file_round_trip

use std::fs;

use fulcrum::decoder::DecoderKind;
use fulcrum::files::{decode_dir, encode_file, packet_file_name, EncodeOptions};

fn main() -> Result<(), fulcrum::error::Error> {
    let work = tempfile::tempdir()?;
    let input = work.path().join("input.txt");
    let text: String = (0..200)
        .map(|i| format!("line {i}: the quick brown fox\n"))
        .collect();
    fs::write(&input, &text)?;

    let packets = work.path().join("packets");
    let opts = EncodeOptions {
        n: 8,
        r: 2,
        symbol_size: 512,
        coded_extra: 4,
        seed: 99,
        ..Default::default()
    };
    let manifest = encode_file(&input, &packets, &opts)?;
    println!(
        "{} bytes -> {} generation(s) of {} packets, {} bytes padding",
        manifest.original_length,
        manifest.generations,
        manifest.packets_per_generation,
        manifest.padding
    );

    // Drop three systematic packets from every generation.
    for g in 0..manifest.generations {
        for i in [1, 4, 6] {
            fs::remove_file(packets.join(packet_file_name(g, i)))?;
        }
    }

    let output = work.path().join("output.txt");
    let report = decode_dir(&packets, DecoderKind::Combined, &output)?;
    assert_eq!(fs::read_to_string(&output)?, text);
    println!(
        "recovered {} bytes from {} packets",
        report.bytes_written, report.packets_read
    );
    Ok(())
}
