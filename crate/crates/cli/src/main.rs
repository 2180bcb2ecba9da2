//! Command-line front end for the temperedness engine.
//!
//! Exit codes: 0 the input was analyzed (whatever the verdict), 2 the
//! input was rejected, 3 an internal invariant broke.  Scripts must read
//! verdicts from the JSON output, never from the exit code.

mod analyze;
mod pairfile;
mod sweep;
mod volume_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tempered::Error;

#[derive(Parser)]
#[command(
    name = "tempered",
    version,
    about = "Exact temperedness verdicts for reductive homogeneous spaces",
    after_help = "Catalog refs look like catalog:sl_over_product:C:8=3+3+2; \
                  see the README for the full grammar and the pair-file format."
)]
struct Cli {
    /// Worker threads for the parallel engine paths (default: all cores,
    /// or RAYON_NUM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one pair: a catalog ref or a pair-file path.
    Analyze(AnalyzeArgs),
    /// Verdict table for a parameter family, with the closed-form
    /// criterion recomputed per row.
    Sweep(SweepArgs),
    /// Flowed-box volume lab.
    Volume(VolumeArgs),
    /// Write a pair in canonical JSON (stdout or --out).
    Export(ExportArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// catalog:FAMILY:PARAMS or a pair-file path.
    target: String,
    /// Emit the report as JSON instead of prose.
    #[arg(long)]
    json: bool,
    /// Print per-ray certificates for the verdict.
    #[arg(long)]
    certificates: bool,
    /// Cross-check p_exact with a randomized hill climb of this many samples.
    #[arg(long, value_name = "N")]
    oracle: Option<usize>,
    /// Seed for the oracle sampler.
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Refuse charts of rank above this cap.
    #[arg(long, value_name = "R")]
    max_rank: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Family pattern plus optional range, e.g. `sl_over_product:C n=2..8`
    /// or `so_pq_over_product p+q<=7`.
    #[arg(required = true)]
    pattern: Vec<String>,
    /// CSV output (header: params,p_exact,tempered,expected,match).
    #[arg(long)]
    csv: bool,
    /// JSON output.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Skip rows whose chart rank exceeds this cap.
    #[arg(long, value_name = "R")]
    max_rank: Option<usize>,
}

#[derive(Args)]
struct VolumeArgs {
    #[command(subcommand)]
    cmd: VolumeCmd,
}

#[derive(Subcommand)]
enum VolumeCmd {
    /// Exact volume ratio of a flowed box, line by line.
    Box(BoxArgs),
    /// Monte Carlo volume of a flowed solid, deterministic per seed.
    Mc(McArgs),
}

#[derive(Args)]
struct BoxArgs {
    /// Weights file (multiset JSON); default is the rank-one +1/-1 model.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Uniform half-width of the box (rational).
    #[arg(long, default_value = "1")]
    half_width: String,
    /// Chart point, comma-separated rationals; repeatable.
    #[arg(long = "Y", value_name = "POINT", allow_hyphen_values = true)]
    y: Vec<String>,
    /// Grid size when no --Y is given (rank-one charts only).
    #[arg(long, default_value_t = 20)]
    grid: usize,
    /// CSV output (header: y,exponent,vol_b).
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct McArgs {
    /// Weights file (multiset JSON); default is the rank-one +1/-1 model.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// ball, box, or cloud.
    #[arg(long, default_value = "ball")]
    shape: String,
    /// Ball radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Per-axis half-widths for --shape box, comma-separated.
    #[arg(long)]
    half_widths: Option<String>,
    /// Point-cloud JSON file for --shape cloud.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Chart point, comma-separated rationals; repeatable.
    #[arg(long = "Y", value_name = "POINT", allow_hyphen_values = true)]
    y: Vec<String>,
    /// Grid size when no --Y is given (rank-one charts only).
    #[arg(long, default_value_t = 20)]
    grid: usize,
    /// Sample count.
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    /// Sampler seed.
    #[arg(long, default_value_t = 17)]
    seed: u64,
}

#[derive(Args)]
struct ExportArgs {
    /// catalog:FAMILY:PARAMS or a pair-file path.
    target: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn dispatch(cmd: &Cmd) -> tempered::Result<()> {
    match cmd {
        Cmd::Analyze(args) => analyze::run(
            &args.target,
            &analyze::Opts {
                json: args.json,
                certificates: args.certificates,
                oracle: args.oracle,
                seed: args.seed,
                max_rank: args.max_rank,
            },
        ),
        Cmd::Sweep(args) => {
            let rows = sweep::table(&args.pattern, args.max_rank)?;
            let output = if args.csv {
                sweep::Output::Csv
            } else if args.json {
                sweep::Output::Json
            } else {
                sweep::Output::Human
            };
            sweep::render(&rows, &output)
        }
        Cmd::Volume(args) => match &args.cmd {
            VolumeCmd::Box(b) => {
                volume_cmd::run_box(b.weights.as_ref(), &b.half_width, &b.y, b.grid, b.csv)
            }
            VolumeCmd::Mc(m) => volume_cmd::run_mc(
                m.weights.as_ref(),
                &volume_cmd::McShape {
                    shape: &m.shape,
                    radius: m.radius,
                    half_widths: m.half_widths.as_deref(),
                    points: m.points.as_ref(),
                },
                &m.y,
                m.grid,
                m.n,
                m.seed,
            ),
        },
        Cmd::Export(args) => {
            let pair = analyze::resolve(&args.target)?;
            let text = pairfile::canonical_json(&pair)?;
            match &args.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| Error::Schema {
                    pointer: String::new(),
                    message: format!("cannot write {}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Ignore a second initialization; the pool is process-global.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match dispatch(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
