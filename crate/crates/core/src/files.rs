//! Whole-file encoding to a directory of packet files plus a manifest, and
//! the reverse.
//!
//! The input is cut into generations of `n * symbol_size` bytes; the last
//! one is zero-padded. Each generation gets its systematic phase (`n + r`
//! packets) followed by `coded_extra` dense coded packets, written as
//! `gGGGGGG_pPPPPPP.pkt`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decoder::{Decoder, DecoderKind};
use crate::error::{Error, Result};
use crate::inner::{Encoder, InnerMode, SparsityMode};
use crate::outer::{CodeParams, MappingKind, OuterMapping};
use crate::packet::CodedPacket;
use crate::sim::MappingChoice;

pub const MANIFEST_NAME: &str = "manifest.json";
pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    pub n: usize,
    pub r: usize,
    pub symbol_size: usize,
    pub field_bits: u32,
    pub mapping: MappingChoice,
    /// Seeds the outer mapping and the coded packet stream.
    pub seed: u64,
    /// Coded packets per generation after the systematic phase.
    pub coded_extra: usize,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self {
            n: 16,
            r: 4,
            symbol_size: 1600,
            field_bits: 8,
            mapping: MappingChoice::SystematicRandom,
            seed: 0,
            coded_extra: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    pub original_length: u64,
    pub padding: u64,
    pub generations: u32,
    pub packets_per_generation: usize,
    pub params: CodeParams,
    pub symbol_size: usize,
    pub mapping: MappingKind,
    /// Hex of the binary mapping descriptor; this is what decoding uses.
    pub mapping_descriptor: String,
}

impl Manifest {
    pub fn mapping(&self) -> Result<OuterMapping> {
        let bytes = hex::decode(&self.mapping_descriptor)
            .map_err(|e| Error::Config(format!("mapping descriptor: {e}")))?;
        OuterMapping::from_descriptor(self.params, &bytes)
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST_NAME);
        let text = fs::read_to_string(&path).map_err(|e| Error::from(e).in_file(&path))?;
        let m: Self = serde_json::from_str(&text).map_err(|e| Error::from(e).in_file(&path))?;
        if m.version != MANIFEST_VERSION {
            return Err(
                Error::Config(format!("unsupported manifest version {}", m.version)).in_file(&path),
            );
        }
        Ok(m)
    }
}

pub fn packet_file_name(generation: u32, index: usize) -> String {
    format!("g{generation:06}_p{index:06}.pkt")
}

pub fn encode_file(input: &Path, out_dir: &Path, opts: &EncodeOptions) -> Result<Manifest> {
    let data = fs::read(input).map_err(|e| Error::from(e).in_file(input))?;
    encode_bytes(&data, out_dir, opts)
}

pub fn encode_bytes(data: &[u8], out_dir: &Path, opts: &EncodeOptions) -> Result<Manifest> {
    let params = CodeParams::new(opts.n, opts.r, opts.field_bits)?;
    params.field_spec().check_symbol_size(opts.symbol_size)?;
    if opts.symbol_size > u16::MAX as usize {
        return Err(Error::param(format!(
            "symbol size {} exceeds {}",
            opts.symbol_size,
            u16::MAX
        )));
    }
    let mapping = match opts.mapping {
        MappingChoice::SystematicRandom => OuterMapping::systematic_random(params, opts.seed)?,
        MappingChoice::ReedSolomon => OuterMapping::reed_solomon(params)?,
    }
    .into_shared();

    let gen_bytes = opts.n * opts.symbol_size;
    let generations = data.len().div_ceil(gen_bytes).max(1);
    let generations_u32 = u32::try_from(generations)
        .map_err(|_| Error::param("input needs more than 2^32 generations"))?;
    fs::create_dir_all(out_dir).map_err(|e| Error::from(e).in_file(out_dir))?;

    let mut padded = data.to_vec();
    padded.resize(generations * gen_bytes, 0);
    for (g, chunk) in padded.chunks(gen_bytes).enumerate() {
        let g = g as u32;
        let source: Vec<Vec<u8>> = chunk.chunks(opts.symbol_size).map(<[u8]>::to_vec).collect();
        let mut encoder = Encoder::new(
            mapping.clone(),
            g,
            &source,
            InnerMode::systematic_then(SparsityMode::Dense),
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(g as u64);
        for i in 0..params.expanded() + opts.coded_extra {
            let packet = encoder.next_packet(&mut rng);
            let path = out_dir.join(packet_file_name(g, i));
            fs::write(&path, packet.to_bytes()).map_err(|e| Error::from(e).in_file(&path))?;
        }
    }

    let manifest = Manifest {
        version: MANIFEST_VERSION,
        original_length: data.len() as u64,
        padding: (padded.len() - data.len()) as u64,
        generations: generations_u32,
        packets_per_generation: params.expanded() + opts.coded_extra,
        params,
        symbol_size: opts.symbol_size,
        mapping: mapping.kind(),
        mapping_descriptor: hex::encode(mapping.to_descriptor()),
    };
    let path = out_dir.join(MANIFEST_NAME);
    let text = serde_json::to_string_pretty(&manifest)?;
    fs::write(&path, text + "\n").map_err(|e| Error::from(e).in_file(&path))?;
    Ok(manifest)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub generations: u32,
    pub packets_read: usize,
    pub bytes_written: u64,
}

/// Decodes every `.pkt` file in `dir` and returns the original bytes.
pub fn decode_dir_to_bytes(dir: &Path, kind: DecoderKind) -> Result<(Vec<u8>, DecodeReport)> {
    let manifest = Manifest::read(dir)?;
    let mapping = manifest.mapping()?.into_shared();
    let params = manifest.params;

    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::from(e).in_file(dir))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<_>>()
        .map_err(|e| Error::from(e).in_file(dir))?;
    files.retain(|p| p.extension().is_some_and(|x| x == "pkt"));
    files.sort();

    let mut decoders: BTreeMap<u32, Decoder> = BTreeMap::new();
    for g in 0..manifest.generations {
        decoders.insert(g, Decoder::new(kind, mapping.clone())?);
    }
    for path in &files {
        let bytes = fs::read(path).map_err(|e| Error::from(e).in_file(path))?;
        let packet = CodedPacket::from_bytes(&bytes).map_err(|e| e.in_file(path))?;
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::contract(format!("{what} does not match the manifest")).in_file(path))
            }
        };
        check(
            packet.n() == params.n() && packet.r() == params.r(),
            "code dimensions",
        )?;
        check(packet.symbol_size() == manifest.symbol_size, "symbol size")?;
        let decoder = decoders.get_mut(&packet.generation_id()).ok_or_else(|| {
            Error::contract(format!(
                "generation {} beyond the manifest's {}",
                packet.generation_id(),
                manifest.generations
            ))
            .in_file(path)
        })?;
        decoder.feed(&packet).map_err(|e| e.in_file(path))?;
    }

    let mut out =
        Vec::with_capacity(manifest.generations as usize * params.n() * manifest.symbol_size);
    for decoder in decoders.values() {
        if !decoder.is_complete() {
            return Err(Error::Rank {
                achieved: decoder.rank(),
                required: decoder.required_rank(),
            });
        }
        for symbol in decoder.decoded_symbols()? {
            out.extend_from_slice(&symbol);
        }
    }
    let length = usize::try_from(manifest.original_length)
        .ok()
        .filter(|&l| l <= out.len())
        .ok_or_else(|| {
            Error::Config("manifest length exceeds decoded data".into())
                .in_file(dir.join(MANIFEST_NAME))
        })?;
    out.truncate(length);
    let report = DecodeReport {
        generations: manifest.generations,
        packets_read: files.len(),
        bytes_written: length as u64,
    };
    Ok((out, report))
}

pub fn decode_dir(dir: &Path, kind: DecoderKind, output: &Path) -> Result<DecodeReport> {
    let (data, report) = decode_dir_to_bytes(dir, kind)?;
    fs::write(output, &data).map_err(|e| Error::from(e).in_file(output))?;
    Ok(report)
}
