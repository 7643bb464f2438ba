use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hdseed::encode::ItemMemory;
use hdseed::seqgen::PointSet;
use hdseed_bench::config::{
    EncoderKind, LevelEncoderKind, MetricArg, OutputFormat, PosEncoder, RunConfig, SeqKind, Task,
};
use hdseed_bench::{report_orthogonality, run, source_discrepancy, DATA_DIR_ENV};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hdseed", version, about = "Hypervector source benchmarks")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train and test a classifier, then print a report.
    Bench(BenchArgs),
    /// Generate sequences or code words.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Print diagnostics for a generated memory.
    Inspect {
        #[command(subcommand)]
        what: InspectCommand,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    task: Task,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = SeqKind::Sobol)]
    seq: SeqKind,
    /// Defaults: record (mnist), ngram (lang), rbf (synth).
    #[arg(long, value_enum)]
    encoder: Option<EncoderKind>,
    /// Quantization levels for the flip-chain level encoder.
    #[arg(long, default_value_t = 256)]
    levels: usize,
    #[arg(long, default_value_t = 4)]
    ngram: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repetitions; only stochastic sources change between them.
    #[arg(long, default_value_t = 1)]
    iterations: usize,
    /// Retraining passes after the single training pass.
    #[arg(long, default_value_t = 0)]
    epochs: usize,
    /// Training samples to use (per language for lang, per class for synth).
    #[arg(long)]
    train_limit: Option<usize>,
    #[arg(long)]
    test_limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = MetricArg::Hamming)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t = PosEncoder::Item)]
    pos_encoder: PosEncoder,
    #[arg(long, value_enum, default_value_t = LevelEncoderKind::Sequence)]
    level_encoder: LevelEncoderKind,
    /// Item-memory bit is set when the sequence value is below this.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero wall-clock fields so reports compare byte for byte.
    #[arg(long)]
    mask_timing: bool,
    #[arg(long, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// First `count` points of a source (CSV; `x,y` header when `dims` is 2).
    /// Binary code sources print one 0/1 code word of length `dim` per line.
    Seq {
        #[arg(long, value_enum)]
        seq: SeqKind,
        #[arg(long, default_value_t = 1024)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        /// Code word length for binary code sources.
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum InspectCommand {
    /// Orthogonality of an item memory built from a source.
    Memory {
        #[arg(long, value_enum)]
        seq: SeqKind,
        #[arg(long, default_value_t = 1024)]
        dim: usize,
        #[arg(long, default_value_t = 27)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        /// Also write the memory as an HDIM1 file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

fn bench(args: BenchArgs, threads: Option<usize>) -> Result<()> {
    let mut cfg = RunConfig::new(args.task);
    if let Some(d) = args.dim {
        cfg.dim = d;
    }
    if let Some(e) = args.encoder {
        cfg.encoder = e;
    }
    cfg.seq = args.seq;
    cfg.levels = args.levels;
    cfg.ngram = args.ngram;
    cfg.seed = args.seed;
    cfg.iterations = args.iterations;
    cfg.epochs = args.epochs;
    cfg.train_limit = args.train_limit;
    cfg.test_limit = args.test_limit;
    cfg.metric = args.metric;
    cfg.pos_encoder = args.pos_encoder;
    cfg.level_encoder = args.level_encoder;
    cfg.threshold = args.threshold;
    cfg.threads = threads;
    cfg.data_dir = args.data_dir;
    let mut report = run(&cfg)?;
    if args.mask_timing {
        report.mask_timing();
    }
    report.emit(args.output, args.out.as_deref())
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn gen_seq(seq: SeqKind, count: usize, dims: usize, dim: usize, seed: u64, out: Option<PathBuf>) -> Result<()> {
    if let Some(code) = seq.code_family() {
        let words = code.hypervectors(count, dim)?;
        let text: String = words
            .iter()
            .map(|hv| hv.iter_bits().map(|b| if b { '1' } else { '0' }).collect::<String>() + "\n")
            .collect();
        return write_out(&text, out.as_ref());
    }
    let family = seq.sequence_family(seed).expect("unit-interval family");
    let ps = family.point_set(count, dims)?;
    if dims == 2 {
        if let Some(p) = &out {
            return Ok(ps.write_scatter_csv(p)?);
        }
    }
    write_out(&points_csv(&ps), out.as_ref())
}

fn points_csv(ps: &PointSet) -> String {
    let header: Vec<String> = if ps.dims() == 2 {
        vec!["x".into(), "y".into()]
    } else {
        (1..=ps.dims()).map(|k| format!("x{k}")).collect()
    };
    let mut text = header.join(",") + "\n";
    for p in ps.points() {
        let row: Vec<String> = p.iter().map(|v| format!("{v:.17e}")).collect();
        text += &(row.join(",") + "\n");
    }
    text
}

#[derive(Serialize)]
struct MemoryInspection {
    seq: String,
    dim: usize,
    count: usize,
    orthogonality: hdseed_bench::report::OrthogonalityStats,
    discrepancy: Option<f64>,
}

fn inspect_memory(
    seq: SeqKind,
    dim: usize,
    count: usize,
    seed: u64,
    threshold: f64,
    save: Option<PathBuf>,
) -> Result<()> {
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let symbols: Vec<String> = (0..count).map(|k| k.to_string()).collect();
    let mem = ItemMemory::build(&symbols, dim, &seq.memory_source(seed, threshold))?;
    if let Some(p) = save {
        mem.save(&p)?;
    }
    let mut cfg = RunConfig::new(Task::Synth);
    cfg.seq = seq;
    cfg.seed = seed;
    let report = MemoryInspection {
        seq: seq.to_string(),
        dim,
        count,
        orthogonality: report_orthogonality(&mem)?,
        discrepancy: source_discrepancy(&cfg)?,
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Bench(args) => bench(args, cli.threads),
        Command::Gen {
            what:
                GenCommand::Seq {
                    seq,
                    count,
                    dims,
                    dim,
                    seed,
                    out,
                },
        } => gen_seq(seq, count, dims, dim, seed, out),
        Command::Inspect {
            what:
                InspectCommand::Memory {
                    seq,
                    dim,
                    count,
                    seed,
                    threshold,
                    save,
                },
        } => inspect_memory(seq, dim, count, seed, threshold, save),
    }
}
