//! A JSON-configured simulation where receivers on the same broadcast pick
//! different decoders, written out as the CSV histogram.
//!
//!     cargo run --example heterogeneous_receivers

use fulcrum::sim::{run_with_jobs, SimConfig};

const CONFIG: &str = r#"{
    "n": 32, "r": 4, "field_bits": 8,
    "mapping": {"kind": "systematic_random", "seed": 11},
    "inner": {"variant": "dense", "systematic": true},
    "topology": {"type": "broadcast", "links": [{"loss": 0.05}, {"loss": 0.3}]},
    "receivers": [
        {"link": 0, "decoder": "inner"},
        {"link": 0, "decoder": "combined"},
        {"link": 1, "decoder": "outer"}
    ],
    "trials": 2000, "seed": 3
}"#;

fn main() -> Result<(), fulcrum::error::Error> {
    let config = SimConfig::from_json(CONFIG)?;
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let result = run_with_jobs(&config, jobs)?;

    for (i, rx) in result.receivers.iter().enumerate() {
        let c = rx.counters;
        println!(
            "receiver {i}: link {} {:>8} decoder, mean {:.2} transmissions, {:.0} mults/trial",
            rx.link,
            rx.decoder.name(),
            rx.transmissions.mean(),
            c.gf_mul as f64 / result.trials as f64
        );
    }
    println!("session mean {:.2}\n", result.session.mean());

    let mut csv = Vec::new();
    result.write_csv(&mut csv)?;
    let text = String::from_utf8_lossy(&csv);
    for line in text.lines().take(8) {
        println!("{line}");
    }
    println!("... ({} rows)", text.lines().count() - 1);
    Ok(())
}
