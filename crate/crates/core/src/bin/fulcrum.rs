use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fulcrum::analysis::{parse_range, write_report, ReportSpec};
use fulcrum::bench::{run_bench_with_jobs, BenchConfig};
use fulcrum::decoder::DecoderKind;
use fulcrum::error::{Error, Result};
use fulcrum::files::{decode_dir, decode_dir_to_bytes, encode_file, EncodeOptions};
use fulcrum::sim::{run_with_jobs, MappingChoice, SimConfig};

#[derive(Parser)]
#[command(name = "fulcrum", version, about = "Fulcrum network coding toolkit")]
struct Cli {
    /// Seed for every random choice (simulate: overrides the config's seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for simulation trials and bench repetitions.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output path: a directory for encode, a file otherwise (default stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MappingArg {
    SystematicRandom,
    ReedSolomon,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecoderArg {
    Inner,
    Outer,
    Combined,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Inner => DecoderKind::Inner,
            DecoderArg::Outer => DecoderKind::Outer,
            DecoderArg::Combined => DecoderKind::Combined,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Split a file into generations and write packet files plus a manifest.
    Encode {
        input: PathBuf,
        #[arg(short, long, default_value_t = 16)]
        n: usize,
        #[arg(short, long, default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 1600)]
        symbol_size: usize,
        #[arg(long, default_value_t = 8)]
        field_bits: u32,
        #[arg(long, value_enum, default_value_t = MappingArg::SystematicRandom)]
        mapping: MappingArg,
        /// Coded packets per generation after the systematic ones.
        #[arg(long, default_value_t = 0)]
        coded_extra: usize,
    },
    /// Rebuild the original file from a packet directory.
    Decode {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = DecoderArg::Combined)]
        decoder: DecoderArg,
    },
    /// Run a simulation described by a JSON config; writes a CSV histogram.
    Simulate { config: PathBuf },
    /// Decoding probabilities, expectations and bounds as CSV.
    Analyze {
        /// e.g. "64", "16..=128" or "8,16,32"
        #[arg(short, long)]
        n: String,
        #[arg(short, long, default_value = "0..=10")]
        r: String,
        /// CDF/PMF rows for m = n ..= n + extra.
        #[arg(long, default_value_t = 4)]
        extra: usize,
        #[arg(long, default_value_t = 8)]
        field_bits: u32,
    },
    /// Time encode/decode for each codec and count field operations.
    Bench {
        #[arg(short, long, default_value_t = 64)]
        n: usize,
        #[arg(short, long, default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 8)]
        field_bits: u32,
        #[arg(long, default_value_t = 1600)]
        symbol_size: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::from(e).in_file(p))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Encode {
            input,
            n,
            r,
            symbol_size,
            field_bits,
            mapping,
            coded_extra,
        } => {
            let out = cli
                .out
                .ok_or_else(|| Error::Param("encode needs --out <dir>".into()))?;
            let opts = EncodeOptions {
                n,
                r,
                symbol_size,
                field_bits,
                mapping: match mapping {
                    MappingArg::SystematicRandom => MappingChoice::SystematicRandom,
                    MappingArg::ReedSolomon => MappingChoice::ReedSolomon,
                },
                seed,
                coded_extra,
            };
            let m = encode_file(&input, &out, &opts)?;
            eprintln!(
                "{} generation(s), {} packets each, {} padding bytes",
                m.generations, m.packets_per_generation, m.padding
            );
        }
        Command::Decode { dir, decoder } => {
            let report = match &cli.out {
                Some(path) => decode_dir(&dir, decoder.into(), path)?,
                None => {
                    let (data, report) = decode_dir_to_bytes(&dir, decoder.into())?;
                    let mut stdout = io::stdout().lock();
                    stdout.write_all(&data)?;
                    stdout.flush()?;
                    report
                }
            };
            eprintln!(
                "decoded {} bytes from {} packets in {} generation(s)",
                report.bytes_written, report.packets_read, report.generations
            );
        }
        Command::Simulate { config } => {
            let mut config = SimConfig::from_path(&config)?;
            if let Some(s) = cli.seed {
                config.seed = s;
            }
            let result = run_with_jobs(&config, cli.jobs)?;
            let mut out = output(cli.out.as_deref())?;
            result.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::Analyze {
            n,
            r,
            extra,
            field_bits,
        } => {
            let spec = ReportSpec {
                n: parse_range(&n)?,
                r: parse_range(&r)?,
                extra,
                field_bits,
            };
            let mut out = output(cli.out.as_deref())?;
            write_report(&spec, &mut out)?;
            out.flush()?;
        }
        Command::Bench {
            n,
            r,
            field_bits,
            symbol_size,
            trials,
        } => {
            let config = BenchConfig {
                n,
                r,
                field_bits,
                symbol_size,
                trials,
                seed,
            };
            let result = run_bench_with_jobs(&config, cli.jobs)?;
            let mut out = output(cli.out.as_deref())?;
            result.write_csv(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
