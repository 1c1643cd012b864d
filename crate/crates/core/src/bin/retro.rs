use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use retrodiction::harness::{self, FigureSettings, TrialSettings};
use retrodiction::{
    enumerate_candidates, locate_true, rank, MapSpec, Method, PrecisionConfig, Result, RetroError,
};

#[derive(Parser)]
#[command(name = "retro", version, about = "Exact retrodiction of chaotic maps")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Working precision in decimal digits
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,
    /// Guard digits dropped from output strings
    #[arg(long, global = true, default_value_t = 10)]
    guard: u32,
    /// Working precision for the quadratic map in figure runs
    #[arg(long, global = true, default_value_t = 90)]
    julia_precision: u32,
    /// Guard digits for the quadratic map in figure runs
    #[arg(long, global = true, default_value_t = 50)]
    julia_guard: u32,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Samples per panel (each figure has its own default)
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Maximum number of inverse-tree leaves
    #[arg(long, global = true, default_value_t = retrodiction::DEFAULT_CANDIDATE_BUDGET)]
    budget: u64,
    /// Worker threads (defaults to available cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the candidate set of Y under N inverse steps
    Enumerate {
        #[arg(long)]
        map: MapSpec,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        n: u32,
    },
    /// Rank the true start value among the candidates of its N-th iterate
    Rank {
        #[arg(long)]
        map: MapSpec,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "complexity")]
        method: Method,
        /// Also write per-candidate scores as CSV
        #[arg(long)]
        scores: Option<PathBuf>,
    },
    /// Run a figure experiment and write its CSV files
    Figure {
        which: FigureId,
        #[arg(long)]
        out: PathBuf,
        /// Iteration counts, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureId {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    #[value(name = "4")]
    Four,
    JuliaSweep,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &RetroError) -> u8 {
    match e {
        RetroError::ResourceLimit { .. } => 3,
        RetroError::InvalidPrecision(_)
        | RetroError::InvalidConfig(_)
        | RetroError::InvalidParam(_)
        | RetroError::Parse { .. }
        | RetroError::Domain { .. } => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    let precision = PrecisionConfig::new(c.precision, c.guard)?;
    match cli.command {
        Command::Enumerate { map, y, n } => {
            let y = map.parse_point(&y)?;
            let cs = enumerate_candidates(&map, &y, n, &precision, c.budget)?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            cs.write_dump(&mut out)?;
            out.flush()?;
        }
        Command::Rank {
            map,
            x0,
            n,
            method,
            scores,
        } => {
            let x0 = map.parse_point(&x0)?;
            if n == 0 {
                return Err(RetroError::InvalidConfig(
                    "iteration count must be at least 1".into(),
                ));
            }
            let settings = TrialSettings {
                precision,
                match_tol: None,
                budget: c.budget,
            };
            let y = map.iterate(&x0, n, &precision)?.last().clone();
            let cs = enumerate_candidates(&map, &y, n, &precision, settings.budget)?;
            let index = locate_true(&cs, &x0, &precision.default_match_tolerance())?;
            let result = rank(&cs, method, index)?;
            println!("y = {}", y.canonical_string(&precision));
            println!("m = {}", result.m);
            println!("r = {}", result.true_rank);
            println!("log2_m = {}", harness::fmt_bits(result.log2_m));
            println!("log2_r = {}", harness::fmt_bits(result.log2_r));
            println!("bits_saved = {}", harness::fmt_bits(result.bits_saved));
            if let Some(path) = scores {
                result.write_scores(&cs, std::fs::File::create(path)?)?;
            }
        }
        Command::Figure { which, out, n } => {
            let settings = FigureSettings {
                seed: c.seed,
                samples: c.samples,
                n_values: n,
                precision,
                julia_precision: PrecisionConfig::new(c.julia_precision, c.julia_guard)?,
                match_tol: None,
                budget: c.budget,
                workers: c.workers.unwrap_or_else(rayon::current_num_threads),
            };
            let written = match which {
                FigureId::One => harness::run_figure1(&settings)?.write(&out)?,
                FigureId::Two => harness::run_figure2(&settings)?.write(&out)?,
                FigureId::Three => harness::run_figure3(&settings)?.write(&out)?,
                FigureId::Four => harness::run_figure4(&settings)?.write(&out)?,
                FigureId::JuliaSweep => harness::run_julia_sweep(&settings)?.write(&out)?,
            };
            for path in written {
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
