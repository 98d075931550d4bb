//! Probability of decoding after exactly m receptions, for a dense GF(2)
//! inner code over an ideal outer code.
//!
//!     cargo run --example decode_probability_table

use fulcrum::analysis::{decode_cdf, decode_failure, expected_receptions_outer, reception_bounds};

fn main() -> Result<(), fulcrum::error::Error> {
    let n = 64;
    println!("n = {n}");
    println!(
        "{:>4} {:>14} {:>14} {:>14} {:>14}",
        "r", "m=n", "m=n+1", "m=n+2", "m=n+3"
    );
    for r in [0, 2, 4, 7, 10] {
        let row: Vec<String> = (0..4)
            .map(|k| format!("{:>13.9}%", 100.0 * decode_cdf(n, r, n + k).unwrap()))
            .collect();
        println!("{r:>4} {}", row.join(" "));
    }

    println!();
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>14}",
        "r", "E[recv]", "lower", "upper", "P(fail at n+3)"
    );
    for r in 0..=12 {
        let b = reception_bounds(n, r)?;
        println!(
            "{r:>4} {:>12.6} {:>12.6} {:>12.6} {:>14.3e}",
            expected_receptions_outer(n, r)?,
            b.lower_bound,
            b.upper_bound,
            decode_failure(n, r, n + 3)?
        );
    }
    Ok(())
}
