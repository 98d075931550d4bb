//! Encode/decode timing with exact operation counts.
//!
//! Each repetition draws a fresh generation and a dense, non-systematic
//! packet stream, then feeds that same stream to every decoder. Counters
//! depend only on the seed; wall clock is informational.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counters::OpCounters;
use crate::decoder::{Decoder, DecoderKind};
use crate::error::{Error, Result};
use crate::inner::{Encoder, InnerMode};
use crate::outer::{CodeParams, OuterMapping};
use crate::packet::CodedPacket;
use crate::rlnc::{RlncDecoder, RlncEncoder, RlncPacket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BenchConfig {
    pub n: usize,
    pub r: usize,
    pub field_bits: u32,
    pub symbol_size: usize,
    pub trials: u64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n: 64,
            r: 4,
            field_bits: 8,
            symbol_size: 1600,
            trials: 10,
            seed: 0,
        }
    }
}

/// One codec role, totalled over all repetitions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub codec: &'static str,
    pub role: &'static str,
    /// Source bytes processed.
    pub bytes: u64,
    pub packets: u64,
    pub seconds: f64,
    pub counters: OpCounters,
}

impl BenchRow {
    pub fn bytes_per_second(&self) -> f64 {
        if self.seconds > 0.0 {
            self.bytes as f64 / self.seconds
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

pub const CSV_HEADER: &str =
    "codec,role,n,r,field_bits,symbol_size,trials,bytes,packets,seconds,bytes_per_sec,gf2_row_xors,gf_mul,gf_add";

impl BenchResult {
    pub fn row(&self, codec: &str, role: &str) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.codec == codec && r.role == role)
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        let c = &self.config;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:.6},{:.0},{},{},{}",
                row.codec,
                row.role,
                c.n,
                c.r,
                c.field_bits,
                c.symbol_size,
                c.trials,
                row.bytes,
                row.packets,
                row.seconds,
                row.bytes_per_second(),
                row.counters.gf2_row_xors,
                row.counters.gf_mul,
                row.counters.gf_add
            )?;
        }
        Ok(())
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    packets: u64,
    time: Duration,
    counters: OpCounters,
}

impl std::ops::AddAssign for Tally {
    fn add_assign(&mut self, o: Self) {
        self.packets += o.packets;
        self.time += o.time;
        self.counters += o.counters;
    }
}

const FULCRUM_DECODERS: [(&str, DecoderKind); 3] = [
    ("fulcrum-inner", DecoderKind::Inner),
    ("fulcrum-outer", DecoderKind::Outer),
    ("fulcrum-combined", DecoderKind::Combined),
];
const RLNC_FIELDS: [(&str, u32); 2] = [("rlnc-gf2", 1), ("rlnc-gf256", 8)];

/// Tallies in row order: fulcrum encode, the three fulcrum decoders, then
/// encode and decode for each RLNC field.
fn repetition(
    config: &BenchConfig,
    mapping: &std::sync::Arc<OuterMapping>,
    index: u64,
) -> Result<Vec<Tally>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let source: Vec<Vec<u8>> = (0..config.n)
        .map(|_| {
            let mut s = vec![0u8; config.symbol_size];
            rng.fill(s.as_mut_slice());
            s
        })
        .collect();
    let mut tallies = Vec::new();

    // Encode until every decoder is done with the same stream.
    let mut decoders = FULCRUM_DECODERS
        .iter()
        .map(|&(_, kind)| Decoder::new(kind, mapping.clone()))
        .collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let mut encoder = Encoder::new(mapping.clone(), index as u32, &source, InnerMode::dense())?;
    let mut stream: Vec<CodedPacket> = Vec::new();
    let mut encode_time = start.elapsed();
    let mut decode = vec![Tally::default(); decoders.len()];
    let mut i = 0;
    while decoders.iter().any(|d| !d.is_complete()) {
        if i == stream.len() {
            let t = Instant::now();
            stream.push(encoder.next_packet(&mut rng));
            encode_time += t.elapsed();
        }
        for (d, tally) in decoders.iter_mut().zip(decode.iter_mut()) {
            if d.is_complete() {
                continue;
            }
            let t = Instant::now();
            d.feed(&stream[i])?;
            tally.time += t.elapsed();
            tally.packets += 1;
        }
        i += 1;
    }
    tallies.push(Tally {
        packets: stream.len() as u64,
        time: encode_time,
        counters: encoder.counters(),
    });
    for (d, mut tally) in decoders.into_iter().zip(decode) {
        if d.decoded_symbols()? != source {
            return Err(Error::State(format!(
                "{} decoder returned wrong payloads",
                d.kind()
            )));
        }
        tally.counters = d.counters();
        tallies.push(tally);
    }

    for &(_, bits) in &RLNC_FIELDS {
        let t = Instant::now();
        let mut encoder = RlncEncoder::new(bits, source.clone())?;
        let mut encode_time = t.elapsed();
        let mut decoder = RlncDecoder::new(bits, config.n)?;
        let mut dec = Tally::default();
        let mut sent = 0u64;
        while !decoder.is_complete() {
            let t = Instant::now();
            let p: RlncPacket = encoder.next_packet(&mut rng);
            encode_time += t.elapsed();
            sent += 1;
            let t = Instant::now();
            decoder.feed(&p)?;
            dec.time += t.elapsed();
            dec.packets += 1;
        }
        if decoder.decoded_symbols()? != source {
            return Err(Error::State("RLNC decoder returned wrong payloads".into()));
        }
        dec.counters = decoder.counters();
        tallies.push(Tally {
            packets: sent,
            time: encode_time,
            counters: encoder.counters(),
        });
        tallies.push(dec);
    }
    Ok(tallies)
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchResult> {
    run_bench_with_jobs(config, 1)
}

/// Repetitions are split across `jobs` threads; counters come out the same
/// for any job count.
pub fn run_bench_with_jobs(config: &BenchConfig, jobs: usize) -> Result<BenchResult> {
    if config.trials == 0 {
        return Err(Error::param("bench needs at least one trial"));
    }
    let params = CodeParams::new(config.n, config.r, config.field_bits)?;
    params.field_spec().check_symbol_size(config.symbol_size)?;
    let mapping = OuterMapping::systematic_random(params, config.seed)?.into_shared();
    let per_rep: Vec<Vec<Tally>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::param(format!("cannot start {jobs} worker threads: {e}")))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|t| repetition(config, &mapping, t))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        (0..config.trials)
            .map(|t| repetition(config, &mapping, t))
            .collect::<Result<Vec<_>>>()?
    };

    let mut totals = vec![Tally::default(); per_rep[0].len()];
    for rep in per_rep {
        for (t, x) in totals.iter_mut().zip(rep) {
            *t += x;
        }
    }
    let mut labels = vec![("fulcrum", "encode")];
    labels.extend(FULCRUM_DECODERS.iter().map(|&(c, _)| (c, "decode")));
    for &(c, _) in &RLNC_FIELDS {
        labels.push((c, "encode"));
        labels.push((c, "decode"));
    }
    let bytes = (config.n * config.symbol_size) as u64 * config.trials;
    let rows = labels
        .into_iter()
        .zip(totals)
        .map(|((codec, role), t)| BenchRow {
            codec,
            role,
            bytes,
            packets: t.packets,
            seconds: t.time.as_secs_f64(),
            counters: t.counters,
        })
        .collect();
    Ok(BenchResult {
        config: *config,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig {
            n: 32,
            r: 4,
            field_bits: 8,
            symbol_size: 8,
            trials: 3,
            seed: 9,
        }
    }

    #[test]
    fn counters_are_deterministic_across_jobs() {
        let a = run_bench(&small()).unwrap();
        let b = run_bench_with_jobs(&small(), 2).unwrap();
        assert_eq!(a.rows.len(), 8);
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(
                (x.codec, x.role, x.packets, x.counters),
                (y.codec, y.role, y.packets, y.counters)
            );
        }
    }

    #[test]
    fn binary_decoders_never_multiply() {
        let res = run_bench(&small()).unwrap();
        for codec in ["fulcrum-inner", "rlnc-gf2"] {
            let row = res.row(codec, "decode").unwrap();
            assert_eq!(row.counters.gf_mul, 0, "{codec}");
            assert!(row.counters.gf2_row_xors > 0);
        }
        let outer = res.row("fulcrum-outer", "decode").unwrap().counters.gf_mul;
        let combined = res
            .row("fulcrum-combined", "decode")
            .unwrap()
            .counters
            .gf_mul;
        assert!(combined < outer, "{combined} vs {outer}");
    }

    #[test]
    fn csv_columns() {
        let res = run_bench(&small()).unwrap();
        let mut out = Vec::new();
        res.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let width = CSV_HEADER.split(',').count();
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().all(|l| l.split(',').count() == width));
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = small();
        c.trials = 0;
        assert!(matches!(run_bench(&c), Err(Error::Param(_))));
        c.trials = 1;
        c.field_bits = 16;
        c.symbol_size = 7;
        assert!(run_bench(&c).is_err());
    }
}
