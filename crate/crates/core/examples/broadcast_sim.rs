//! Two receivers with 10% and 50% loss, n = 10: session completion for
//! Fulcrum at several r against RLNC over GF(2) and GF(2^16).
//!
//!     cargo run --release --example broadcast_sim [trials]

use fulcrum::decoder::DecoderKind::{Inner, Outer};
use fulcrum::sim::{baseline_rlnc, run, SimConfig, SimResult};

fn summary(label: &str, res: &SimResult) {
    let s = &res.session;
    let cdf: Vec<String> = [12, 16, 20, 24, 28]
        .iter()
        .map(|&m| format!("{:.3}", s.cdf(m)))
        .collect();
    println!(
        "{label:<28} mean {:>7.3} var {:>7.3}  cdf@12,16,20,24,28 {}",
        s.mean(),
        s.variance(),
        cdf.join(" ")
    );
}

fn main() -> Result<(), fulcrum::error::Error> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(20_000);
    let base = |r: usize, decoders: [fulcrum::decoder::DecoderKind; 2]| {
        let mut c = SimConfig::broadcast(10, r, &[0.1, 0.5], &decoders);
        c.trials = trials;
        c.seed = 5;
        c
    };

    summary("rlnc GF(2)", &baseline_rlnc(&base(0, [Outer, Outer]), 1)?);
    summary(
        "rlnc GF(2^16)",
        &baseline_rlnc(&base(0, [Outer, Outer]), 16)?,
    );
    for r in [0, 2, 7] {
        summary(
            &format!("fulcrum r={r} outer/outer"),
            &run(&base(r, [Outer, Outer]))?,
        );
    }
    for r in [2, 7] {
        let res = run(&base(r, [Inner, Outer]))?;
        summary(&format!("fulcrum r={r} inner/outer"), &res);
        for (i, rx) in res.receivers.iter().enumerate() {
            println!(
                "    receiver {i} ({}) mean {:.3}",
                rx.decoder,
                rx.transmissions.mean()
            );
        }
    }
    Ok(())
}
