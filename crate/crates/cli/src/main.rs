use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lotto_core::oracle::{DiscreteGame, YGrid, DEFAULT_ITERS};
use lotto_core::sweep::write_csv;
use lotto_core::{
    bounds_report, fictitious_play, multi_report, simulate, sweep, GameInstance, InstanceFile, LottoError,
    NormalizeMode, YRange,
};

mod plot;

/// Security-value bounds for Lotto games against a single-contest attacker.
#[derive(Parser)]
#[command(name = "lotto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classic value and the lower/upper security bounds.
    Value {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Aligned text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Trace the bounds over a range of Y budgets as CSV.
    Sweep {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Budgets to visit, as lo:hi:step.
        #[arg(long, value_name = "LO:HI:STEP")]
        y_range: YRange,
        /// Also trace the K-contest bounds for this K (repeatable).
        #[arg(long = "k", value_name = "K")]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo check of the constructed strategy pair.
    Simulate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bounds when the attacker targets exactly K contests.
    Multi {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force values of a discretized game by fictitious play.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Grid step; defaults to 0.05 * min(X, Y, 1).
        #[arg(long)]
        grid: Option<f64>,
        /// Per-contest cap on the grid; defaults to 4 * max(X, Y).
        #[arg(long)]
        cap: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Let Y spread resources over several contests.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Render a sweep CSV as an SVG line chart.
    Plot {
        #[arg(long = "in", value_name = "CSV")]
        input: PathBuf,
        #[arg(long, value_name = "SVG")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// JSON file {"X": .., "Y": .., "v": [..]}.
    instance: Option<PathBuf>,
    /// Contest valuations, overriding the file.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    /// Budgets X,Y, overriding the file.
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "X,Y")]
    budgets: Option<Vec<f64>>,
    /// Rescale valuations to sum to one instead of rejecting them.
    #[arg(long)]
    normalize: bool,
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn io(path: &Path, err: impl std::fmt::Display) -> Self {
        Self { code: 4, message: format!("{}: {err}", path.display()) }
    }
}

impl From<LottoError> for Failure {
    fn from(e: LottoError) -> Self {
        let code = match e {
            LottoError::InvalidArgument(_) | LottoError::Normalization { .. } => 3,
            LottoError::Io(_) => 4,
            LottoError::UnsupportedSize(_) => 5,
            LottoError::Internal(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

impl InstanceArgs {
    fn load(&self) -> CliResult<GameInstance> {
        let mut file = match &self.instance {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
                let parsed: InstanceFile = serde_json::from_str(&text)
                    .map_err(|e| Failure::parse(format!("{}: malformed instance: {e}", path.display())))?;
                Some(parsed)
            }
            None => None,
        };
        if let Some(v) = &self.values {
            let (x, y) = file.as_ref().map_or((1.0, 1.0), |f| (f.x, f.y));
            file = Some(InstanceFile { x, y, v: v.clone() });
        }
        let mut file = file.ok_or_else(|| Failure::parse("give an instance file or --values"))?;
        if let Some(b) = &self.budgets {
            let [x, y] = b[..] else {
                return Err(Failure::parse("--budgets takes exactly two numbers X,Y"));
            };
            file.x = x;
            file.y = y;
        }
        let mode = if self.normalize { NormalizeMode::Normalize } else { NormalizeMode::Strict };
        let inst = file.into_instance(mode)?;
        if inst.has_tied_values() {
            eprintln!("warning: tied valuations; contests are ranked by input position");
        }
        Ok(inst)
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure { code: 1, message: e.to_string() })?;
    println!("{text}");
    Ok(())
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:.9}")).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Value { instance, text } => {
            let report = bounds_report(&instance.load()?)?;
            if text {
                println!("{:<10} {:.9}", "gl", report.gl);
                println!("{:<10} {:.9}", "lb", report.lb);
                println!("{:<10} {:.9}", "ub", report.ub);
                println!("{:<10} {:.9}", "gap", report.gap);
                println!("{:<10} {}", "k_star", report.k_star);
                println!("{:<10} {}", "alpha_star", join(&report.alpha_star));
                println!("{:<10} {}", "p_star", join(&report.p_star));
                Ok(())
            } else {
                print_json(&report)
            }
        }
        Command::Sweep { instance, y_range, ks, restarts, seed, out } => {
            let rows = sweep(&instance.load()?, y_range, &ks, restarts, seed)?;
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| Failure::io(&path, e))?;
                    write_csv(&rows, BufWriter::new(file)).map_err(|e| Failure::io(&path, e))
                }
                None => Ok(write_csv(&rows, io::stdout().lock())?),
            }
        }
        Command::Simulate { instance, samples, seed } => print_json(&simulate(&instance.load()?, samples, seed)?),
        Command::Multi { instance, k, restarts, seed } => {
            print_json(&multi_report(&instance.load()?, k, restarts, seed)?)
        }
        Command::Oracle { instance, grid, cap, iters, seed, unrestricted } => {
            let inst = instance.load()?;
            let step = grid.unwrap_or(0.05 * inst.x().min(inst.y()).min(1.0));
            let cap = cap.unwrap_or(4.0 * inst.x().max(inst.y()));
            let y_grid = if unrestricted { YGrid::Unrestricted } else { YGrid::SingleContest };
            let game = DiscreteGame::new(&inst, step, cap, y_grid)?;
            print_json(&fictitious_play(&game, &inst, iters, seed)?)
        }
        Command::Plot { input, out } => {
            let file = File::open(&input).map_err(|e| Failure::parse(format!("{}: {e}", input.display())))?;
            let chart = plot::Chart::from_csv(file).map_err(|e| Failure::parse(format!("{}: {e}", input.display())))?;
            let mut w = BufWriter::new(File::create(&out).map_err(|e| Failure::io(&out, e))?);
            w.write_all(chart.to_svg().as_bytes()).and_then(|_| w.flush()).map_err(|e| Failure::io(&out, e))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
