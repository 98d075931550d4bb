//! Slotted Monte-Carlo simulation of broadcast and relay-line topologies
//! with Bernoulli erasures.
//!
//! Every slot the source sends one packet. On a broadcast topology each
//! link erases it independently. On a line, link `i` joins node `i` to node
//! `i + 1`; interior nodes are relays that, once they hold anything, send
//! one packet per slot downstream. A receiver attached to link `i` hears
//! what survives that link. A trial ends when every receiver has decoded.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::decoder::{Decoder, DecoderKind};
use crate::dense::matrix_rank;
use crate::error::{Error, Result};
use crate::field::Element;
use crate::inner::{Encoder, InnerMode, Relay, SparsityMode};
use crate::outer::{CodeParams, OuterMapping};
use crate::packet::CodedPacket;
use crate::rlnc::{recode_rlnc, RlncDecoder, RlncEncoder, RlncPacket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MappingChoice {
    #[default]
    SystematicRandom,
    ReedSolomon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingSpec {
    #[serde(default)]
    pub kind: MappingChoice,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerSpec {
    #[serde(flatten)]
    pub sparsity: SparsityMode,
    #[serde(default)]
    pub systematic: bool,
}

impl Default for InnerSpec {
    fn default() -> Self {
        Self {
            sparsity: SparsityMode::Dense,
            systematic: false,
        }
    }
}

impl From<InnerSpec> for InnerMode {
    fn from(s: InnerSpec) -> Self {
        InnerMode {
            systematic: s.systematic,
            sparsity: s.sparsity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub loss: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelayMode {
    /// Send a fresh GF(2) recombination of everything buffered.
    #[default]
    Recode,
    /// Pass on the packet received this slot, if any.
    Forward,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Topology {
    Broadcast {
        links: Vec<LinkSpec>,
    },
    Line {
        links: Vec<LinkSpec>,
        #[serde(default)]
        relays: RelayMode,
    },
}

impl Topology {
    pub fn links(&self) -> &[LinkSpec] {
        match self {
            Topology::Broadcast { links } | Topology::Line { links, .. } => links,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReceiverSpec {
    pub link: usize,
    #[serde(default = "default_decoder")]
    pub decoder: DecoderKind,
}

fn default_decoder() -> DecoderKind {
    DecoderKind::Outer
}

/// Which code the source runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Codec {
    #[default]
    Fulcrum,
    /// Plain RLNC over GF(2^`field_bits`) on `n` dimensions; `r`, the
    /// mapping, the inner mode and the decoder kinds are ignored.
    Rlnc,
}

fn default_field_bits() -> u32 {
    8
}

fn default_symbol_size() -> usize {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    pub r: usize,
    #[serde(default = "default_field_bits")]
    pub field_bits: u32,
    #[serde(default)]
    pub mapping: MappingSpec,
    #[serde(default)]
    pub inner: InnerSpec,
    pub topology: Topology,
    pub receivers: Vec<ReceiverSpec>,
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_symbol_size")]
    pub symbol_size: usize,
    #[serde(default)]
    pub codec: Codec,
    /// Source slots after which a trial is abandoned with an error.
    #[serde(default)]
    pub max_slots: Option<u64>,
}

impl SimConfig {
    /// Single-hop broadcast with one receiver per loss rate.
    pub fn broadcast(n: usize, r: usize, losses: &[f64], decoders: &[DecoderKind]) -> Self {
        Self {
            n,
            r,
            field_bits: default_field_bits(),
            mapping: MappingSpec::default(),
            inner: InnerSpec::default(),
            topology: Topology::Broadcast {
                links: losses.iter().map(|&loss| LinkSpec { loss }).collect(),
            },
            receivers: decoders
                .iter()
                .enumerate()
                .map(|(link, &decoder)| ReceiverSpec { link, decoder })
                .collect(),
            trials: 1000,
            seed: 0,
            symbol_size: default_symbol_size(),
            codec: Codec::Fulcrum,
            max_slots: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        Self::from_json(&text).map_err(|e| e.in_file(path))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        let links = self.topology.links();
        if links.is_empty() {
            return Err(Error::param("topology needs at least one link"));
        }
        for (i, l) in links.iter().enumerate() {
            if !(0.0..1.0).contains(&l.loss) {
                return Err(Error::param(format!(
                    "link {i} loss {} outside [0, 1)",
                    l.loss
                )));
            }
        }
        if self.receivers.is_empty() {
            return Err(Error::param("at least one receiver is required"));
        }
        for (i, rx) in self.receivers.iter().enumerate() {
            if rx.link >= links.len() {
                return Err(Error::param(format!(
                    "receiver {i} is on link {}, but there are {} links",
                    rx.link,
                    links.len()
                )));
            }
        }
        match self.codec {
            Codec::Fulcrum => {
                let mapping = self.mapping()?;
                for rx in &self.receivers {
                    Decoder::new(rx.decoder, mapping.clone())?;
                }
                self.inner.sparsity.validate(self.n + self.r)?;
                self.check_reachable(&mapping)?;
                mapping.field().spec().check_symbol_size(self.symbol_size)?;
            }
            Codec::Rlnc => {
                RlncDecoder::new(self.field_bits, self.n)?;
                RlncEncoder::new(self.field_bits, vec![vec![0; self.symbol_size]])?;
            }
        }
        if self.symbol_size == 0 || self.symbol_size > u16::MAX as usize {
            return Err(Error::param(format!(
                "symbol size {} outside 1..=65535",
                self.symbol_size
            )));
        }
        Ok(())
    }

    /// Rejects receivers that the coded phase can never bring to
    /// completion; the systematic phase is finite and may be lost.
    fn check_reachable(&self, mapping: &OuterMapping) -> Result<()> {
        let width = self.n + self.r;
        let Some(span) = self.inner.sparsity.reachable_span(width) else {
            return Ok(());
        };
        let mapped: Vec<Vec<Element>> = span
            .iter()
            .map(|v| {
                let mut row = vec![0; self.n];
                for j in v.ones() {
                    for (a, &b) in row.iter_mut().zip(mapping.row(j)) {
                        *a ^= b;
                    }
                }
                row
            })
            .collect();
        let outer_rank = matrix_rank(mapping.field(), &mapped);
        for (i, rx) in self.receivers.iter().enumerate() {
            let (rank, needed) = match rx.decoder {
                DecoderKind::Inner => (span.len(), width),
                DecoderKind::Outer | DecoderKind::Combined => (outer_rank, self.n),
            };
            if rank < needed {
                return Err(Error::param(format!(
                    "receiver {i} ({} decoder) can never finish: coded packets span rank {rank}, it needs {needed}",
                    rx.decoder
                )));
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<CodeParams> {
        CodeParams::new(self.n, self.r, self.field_bits)
    }

    pub fn mapping(&self) -> Result<Arc<OuterMapping>> {
        let params = self.params()?;
        let mapping = match self.mapping.kind {
            MappingChoice::SystematicRandom => {
                OuterMapping::systematic_random(params, self.mapping.seed)?
            }
            MappingChoice::ReedSolomon => OuterMapping::reed_solomon(params)?,
        };
        Ok(mapping.into_shared())
    }

    fn slot_cap(&self) -> u64 {
        self.max_slots.unwrap_or_else(|| {
            let worst = self
                .topology
                .links()
                .iter()
                .map(|l| l.loss)
                .fold(0.0f64, f64::max);
            let hops = self.topology.links().len() as f64;
            let dims = (self.n + self.r) as f64;
            (1000.0 + 50.0 * dims * hops / (1.0 - worst)) as u64
        })
    }
}

/// Counts of an integer-valued outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Histogram {
    counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn record(&mut self, value: u64) {
        *self.counts.entry(value).or_insert(0) += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, value: u64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn min(&self) -> Option<u64> {
        self.counts.keys().next().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Fraction of outcomes `<= value`.
    pub fn cdf(&self, value: u64) -> f64 {
        let below: u64 = self.counts.range(..=value).map(|(_, &c)| c).sum();
        below as f64 / self.total().max(1) as f64
    }

    pub fn pmf(&self, value: u64) -> f64 {
        self.count(value) as f64 / self.total().max(1) as f64
    }

    pub fn mean(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return f64::NAN;
        }
        self.iter().map(|(v, c)| v as f64 * c as f64).sum::<f64>() / total as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let total = self.total();
        if total < 2 {
            return 0.0;
        }
        let mean = self.mean();
        self.iter()
            .map(|(v, c)| c as f64 * (v as f64 - mean).powi(2))
            .sum::<f64>()
            / (total - 1) as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        (self.variance() / self.total().max(1) as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReceiverStats {
    pub link: usize,
    pub decoder: DecoderKind,
    /// Source transmissions until this receiver decoded.
    pub transmissions: Histogram,
    /// Packets this receiver heard until it decoded.
    pub receptions: Histogram,
    pub counters: OpCounters,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub trials: u64,
    pub receivers: Vec<ReceiverStats>,
    /// Transmissions until every receiver decoded.
    pub session: Histogram,
    /// Summed over all relays and trials.
    pub relay_counters: OpCounters,
}

impl SimResult {
    /// `receiver_id,m,count,cdf,pmf` over transmission counts.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "receiver_id,m,count,cdf,pmf")?;
        let rows = self
            .receivers
            .iter()
            .enumerate()
            .map(|(i, rx)| (i.to_string(), &rx.transmissions))
            .chain([("session".to_string(), &self.session)]);
        for (id, hist) in rows {
            let (Some(lo), Some(hi)) = (hist.min(), hist.max()) else {
                continue;
            };
            for m in lo..=hi {
                writeln!(
                    out,
                    "{id},{m},{},{},{}",
                    hist.count(m),
                    hist.cdf(m),
                    hist.pmf(m)
                )?;
            }
        }
        Ok(())
    }
}

struct TrialOutcome {
    transmissions: Vec<u64>,
    receptions: Vec<u64>,
    counters: Vec<OpCounters>,
    relay_counters: OpCounters,
}

/// The generator for trial `index`: the master seed picks the key, the
/// trial index the stream.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_source<R: Rng>(n: usize, size: usize, rng: &mut R) -> Vec<Vec<u8>> {
    (0..n)
        .map(|_| {
            let mut s = vec![0u8; size];
            rng.fill(s.as_mut_slice());
            s
        })
        .collect()
}

/// What a node can send or receive.
trait Stream {
    type Packet: Clone;
    type Relay;
    type Decoder;

    fn next(&mut self, rng: &mut ChaCha8Rng) -> Self::Packet;
    fn new_relay(&self) -> Self::Relay;
    fn relay_receive(&self, relay: &mut Self::Relay, p: &Self::Packet) -> Result<()>;
    fn relay_emit(
        &self,
        relay: &mut Self::Relay,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<Self::Packet>>;
    fn relay_counters(&self, relay: &Self::Relay) -> OpCounters;
    fn feed(&self, decoder: &mut Self::Decoder, p: &Self::Packet) -> Result<bool>;
    /// `(rank, required)`.
    fn progress(&self, decoder: &Self::Decoder) -> (usize, usize);
    fn finish(&self, decoder: &Self::Decoder, source: &[Vec<u8>]) -> Result<OpCounters>;
}

struct FulcrumStream {
    encoder: Encoder,
}

impl Stream for FulcrumStream {
    type Packet = CodedPacket;
    type Relay = Relay;
    type Decoder = Decoder;

    fn next(&mut self, rng: &mut ChaCha8Rng) -> CodedPacket {
        self.encoder.next_packet(rng)
    }

    fn new_relay(&self) -> Relay {
        Relay::new()
    }

    fn relay_receive(&self, relay: &mut Relay, p: &CodedPacket) -> Result<()> {
        relay.receive(p.clone()).map(|_| ())
    }

    fn relay_emit(&self, relay: &mut Relay, rng: &mut ChaCha8Rng) -> Result<Option<CodedPacket>> {
        Ok(relay.emit(rng))
    }

    fn relay_counters(&self, relay: &Relay) -> OpCounters {
        relay.counters()
    }

    fn feed(&self, decoder: &mut Decoder, p: &CodedPacket) -> Result<bool> {
        decoder.feed(p)?;
        Ok(decoder.is_complete())
    }

    fn progress(&self, decoder: &Decoder) -> (usize, usize) {
        (decoder.rank(), decoder.required_rank())
    }

    fn finish(&self, decoder: &Decoder, source: &[Vec<u8>]) -> Result<OpCounters> {
        check_decoded(decoder.decoded_symbols()?, source)?;
        Ok(decoder.counters())
    }
}

struct RlncStream {
    field_bits: u32,
    encoder: RlncEncoder,
}

#[derive(Default)]
struct RlncRelay {
    buffer: Vec<RlncPacket>,
    span: Option<RlncDecoder>,
    counters: OpCounters,
}

impl Stream for RlncStream {
    type Packet = RlncPacket;
    type Relay = RlncRelay;
    type Decoder = RlncDecoder;

    fn next(&mut self, rng: &mut ChaCha8Rng) -> RlncPacket {
        self.encoder.next_packet(rng)
    }

    fn new_relay(&self) -> RlncRelay {
        RlncRelay::default()
    }

    fn relay_receive(&self, relay: &mut RlncRelay, p: &RlncPacket) -> Result<()> {
        if relay.span.is_none() {
            relay.span = Some(RlncDecoder::new(self.field_bits, p.coeffs.len())?);
        }
        let probe = RlncPacket {
            coeffs: p.coeffs.clone(),
            payload: Vec::new(),
        };
        let span = relay.span.as_mut().expect("just set");
        let before = span.rank();
        span.feed(&probe)?;
        if span.rank() > before {
            relay.buffer.push(p.clone());
        }
        Ok(())
    }

    fn relay_emit(
        &self,
        relay: &mut RlncRelay,
        rng: &mut ChaCha8Rng,
    ) -> Result<Option<RlncPacket>> {
        if relay.buffer.is_empty() {
            return Ok(None);
        }
        recode_rlnc(self.field_bits, &relay.buffer, rng, &mut relay.counters).map(Some)
    }

    fn relay_counters(&self, relay: &RlncRelay) -> OpCounters {
        relay.counters
    }

    fn feed(&self, decoder: &mut RlncDecoder, p: &RlncPacket) -> Result<bool> {
        decoder.feed(p)?;
        Ok(decoder.is_complete())
    }

    fn progress(&self, decoder: &RlncDecoder) -> (usize, usize) {
        (decoder.rank(), self.encoder.n())
    }

    fn finish(&self, decoder: &RlncDecoder, source: &[Vec<u8>]) -> Result<OpCounters> {
        check_decoded(decoder.decoded_symbols()?, source)?;
        Ok(decoder.counters())
    }
}

fn check_decoded(decoded: Vec<Vec<u8>>, source: &[Vec<u8>]) -> Result<()> {
    if decoded != source {
        return Err(Error::State(
            "decoded payloads differ from the source".into(),
        ));
    }
    Ok(())
}

fn run_trial<S: Stream>(
    config: &SimConfig,
    stream: &mut S,
    mut decoders: Vec<S::Decoder>,
    source: &[Vec<u8>],
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    let links = config.topology.links();
    let relay_mode = match &config.topology {
        Topology::Broadcast { .. } => None,
        Topology::Line { relays, .. } => Some(*relays),
    };
    // Line nodes 1..links.len() - 1 are relays.
    let mut relays: Vec<S::Relay> = match relay_mode {
        Some(_) => (1..links.len()).map(|_| stream.new_relay()).collect(),
        None => Vec::new(),
    };
    let k = config.receivers.len();
    let mut done_at: Vec<Option<u64>> = vec![None; k];
    let mut heard = vec![0u64; k];
    let cap = config.slot_cap();
    let mut arrivals: Vec<Option<S::Packet>> = vec![None; links.len()];

    let mut slot = 0u64;
    while done_at.iter().any(Option::is_none) {
        slot += 1;
        if slot > cap {
            let stuck: Vec<String> = (0..k)
                .filter(|&j| done_at[j].is_none())
                .map(|j| {
                    let (rank, required) = stream.progress(&decoders[j]);
                    format!("receiver {j} at rank {rank} of {required}")
                })
                .collect();
            return Err(Error::State(format!(
                "trial did not finish within {cap} source transmissions ({})",
                stuck.join(", ")
            )));
        }
        let sent = stream.next(rng);
        match relay_mode {
            None => {
                for (i, link) in links.iter().enumerate() {
                    arrivals[i] = (!rng.random_bool(link.loss)).then(|| sent.clone());
                }
            }
            Some(mode) => {
                let mut carried = Some(sent);
                for (i, link) in links.iter().enumerate() {
                    let survived = match carried.take() {
                        Some(p) if !rng.random_bool(link.loss) => Some(p),
                        _ => None,
                    };
                    if let Some(relay) = relays.get_mut(i) {
                        if let Some(p) = &survived {
                            stream.relay_receive(relay, p)?;
                        }
                        carried = match mode {
                            RelayMode::Recode => stream.relay_emit(relay, rng)?,
                            RelayMode::Forward => survived.clone(),
                        };
                    }
                    arrivals[i] = survived;
                }
            }
        }
        for (j, rx) in config.receivers.iter().enumerate() {
            if done_at[j].is_some() {
                continue;
            }
            if let Some(p) = &arrivals[rx.link] {
                heard[j] += 1;
                if stream.feed(&mut decoders[j], p)? {
                    done_at[j] = Some(slot);
                }
            }
        }
    }

    let counters = decoders
        .iter()
        .map(|d| stream.finish(d, source))
        .collect::<Result<Vec<_>>>()?;
    let mut relay_counters = OpCounters::default();
    for relay in &relays {
        relay_counters += stream.relay_counters(relay);
    }
    Ok(TrialOutcome {
        transmissions: done_at.into_iter().map(|d| d.expect("all done")).collect(),
        receptions: heard,
        counters,
        relay_counters,
    })
}

fn one_trial(
    config: &SimConfig,
    mapping: Option<&Arc<OuterMapping>>,
    index: u64,
) -> Result<TrialOutcome> {
    let mut rng = trial_rng(config.seed, index);
    let source = random_source(config.n, config.symbol_size, &mut rng);
    match config.codec {
        Codec::Fulcrum => {
            let mapping = mapping.expect("built for fulcrum runs");
            let encoder =
                Encoder::new(mapping.clone(), index as u32, &source, config.inner.into())?;
            let decoders = config
                .receivers
                .iter()
                .map(|rx| Decoder::new(rx.decoder, mapping.clone()))
                .collect::<Result<Vec<_>>>()?;
            run_trial(
                config,
                &mut FulcrumStream { encoder },
                decoders,
                &source,
                &mut rng,
            )
        }
        Codec::Rlnc => {
            let encoder = RlncEncoder::new(config.field_bits, source.clone())?;
            let decoders = config
                .receivers
                .iter()
                .map(|_| RlncDecoder::new(config.field_bits, config.n))
                .collect::<Result<Vec<_>>>()?;
            let mut stream = RlncStream {
                field_bits: config.field_bits,
                encoder,
            };
            run_trial(config, &mut stream, decoders, &source, &mut rng)
        }
    }
}

/// Runs all trials. `jobs > 1` spreads trials over a thread pool; the
/// result does not depend on `jobs`.
pub fn run_with_jobs(config: &SimConfig, jobs: usize) -> Result<SimResult> {
    config.validate()?;
    let mapping = match config.codec {
        Codec::Fulcrum => Some(config.mapping()?),
        Codec::Rlnc => None,
    };
    let outcomes: Vec<TrialOutcome> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::param(format!("cannot start {jobs} worker threads: {e}")))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|t| one_trial(config, mapping.as_ref(), t))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        (0..config.trials)
            .map(|t| one_trial(config, mapping.as_ref(), t))
            .collect::<Result<Vec<_>>>()?
    };

    let mut receivers: Vec<ReceiverStats> = config
        .receivers
        .iter()
        .map(|rx| ReceiverStats {
            link: rx.link,
            decoder: rx.decoder,
            transmissions: Histogram::default(),
            receptions: Histogram::default(),
            counters: OpCounters::default(),
        })
        .collect();
    let mut session = Histogram::default();
    let mut relay_counters = OpCounters::default();
    for o in outcomes {
        for (j, stats) in receivers.iter_mut().enumerate() {
            stats.transmissions.record(o.transmissions[j]);
            stats.receptions.record(o.receptions[j]);
            stats.counters += o.counters[j];
        }
        session.record(*o.transmissions.iter().max().expect("at least one receiver"));
        relay_counters += o.relay_counters;
    }
    Ok(SimResult {
        trials: config.trials,
        receivers,
        session,
        relay_counters,
    })
}

pub fn run(config: &SimConfig) -> Result<SimResult> {
    run_with_jobs(config, 1)
}

/// The same experiment with plain RLNC over GF(2^`field_bits`) on `n`
/// dimensions in place of Fulcrum.
pub fn baseline_rlnc(config: &SimConfig, field_bits: u32) -> Result<SimResult> {
    baseline_rlnc_with_jobs(config, field_bits, 1)
}

pub fn baseline_rlnc_with_jobs(
    config: &SimConfig,
    field_bits: u32,
    jobs: usize,
) -> Result<SimResult> {
    let mut baseline = config.clone();
    baseline.codec = Codec::Rlnc;
    baseline.field_bits = field_bits;
    run_with_jobs(&baseline, jobs)
}
