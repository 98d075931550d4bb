//! A relay that recodes with XORs only, between a source and a receiver
//! that decodes in the outer field.
//!
//!     cargo run --example relay_recoding

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fulcrum::decoder::{Decoder, DecoderKind};
use fulcrum::inner::{Encoder, InnerMode, Relay};
use fulcrum::outer::{CodeParams, OuterMapping};
use fulcrum::sim::{run, LinkSpec, RelayMode, SimConfig, Topology};

fn main() -> Result<(), fulcrum::error::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (n, r) = (20, 3);
    let mapping = OuterMapping::systematic_random(CodeParams::new(n, r, 16)?, 1)?.into_shared();
    let source: Vec<Vec<u8>> = (0..n)
        .map(|_| (0..64).map(|_| rng.random()).collect())
        .collect();

    let mut encoder = Encoder::new(mapping.clone(), 9, &source, InnerMode::dense())?;
    let mut relay = Relay::new();
    let mut receiver = Decoder::new(DecoderKind::Combined, mapping)?;
    let mut slots = 0;
    while !receiver.is_complete() {
        slots += 1;
        let p = encoder.next_packet(&mut rng);
        if !rng.random_bool(0.3) {
            relay.receive(p)?;
        }
        if let Some(q) = relay.emit(&mut rng) {
            if !rng.random_bool(0.3) {
                receiver.feed(&q)?;
            }
        }
    }
    assert_eq!(receiver.decoded_symbols()?, source);
    let c = relay.counters();
    println!("decoded after {slots} slots over two 30%-loss hops");
    println!(
        "relay: rank {}, {} row XORs, {} outer-field mults",
        relay.rank(),
        c.gf2_row_xors,
        c.gf_mul
    );

    // The same comparison in the simulator, recode versus forward.
    for mode in [RelayMode::Forward, RelayMode::Recode] {
        let mut c = SimConfig::broadcast(n, r, &[], &[DecoderKind::Outer]);
        c.topology = Topology::Line {
            links: vec![LinkSpec { loss: 0.3 }, LinkSpec { loss: 0.3 }],
            relays: mode,
        };
        c.receivers[0].link = 1;
        c.trials = 2000;
        let res = run(&c)?;
        println!(
            "{mode:?}: mean {:.2} source transmissions",
            res.session.mean()
        );
    }
    Ok(())
}
