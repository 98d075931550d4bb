//! Encode/decode throughput and exact operation counts per codec.
//!
//!     cargo run --release --example bench_counters

use fulcrum::bench::{run_bench, BenchConfig};

fn main() -> Result<(), fulcrum::error::Error> {
    for n in [32, 128] {
        let config = BenchConfig {
            n,
            r: 4,
            symbol_size: 1600,
            trials: 3,
            ..Default::default()
        };
        let res = run_bench(&config)?;
        println!("n = {n}, r = 4, 1600-byte symbols, GF(2^8)");
        println!(
            "{:<18} {:<7} {:>10} {:>12} {:>14} {:>14}",
            "codec", "role", "MB/s", "row XORs", "mults", "adds"
        );
        for row in &res.rows {
            println!(
                "{:<18} {:<7} {:>10.1} {:>12} {:>14} {:>14}",
                row.codec,
                row.role,
                row.bytes_per_second() / 1e6,
                row.counters.gf2_row_xors,
                row.counters.gf_mul,
                row.counters.gf_add
            );
        }
        let mults = |c| res.row(c, "decode").unwrap().counters.gf_mul as f64;
        println!(
            "combined/outer multiplications: {:.3}\n",
            mults("fulcrum-combined") / mults("fulcrum-outer")
        );
    }
    Ok(())
}
