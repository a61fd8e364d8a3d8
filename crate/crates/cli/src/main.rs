mod commands;
mod error;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zqspin::{DecompositionStrategy, Limits, Method};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "zqspin", version, about = "Exact partition functions of Z_q edge-difference spin models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z at one beta or over a beta range.
    Partition(PartitionArgs),
    /// Write the planar dual graph, Fourier-dual weights and scalar certificate.
    Dual(DualArgs),
    /// Check that sampled stabilizer symmetries leave Z unchanged.
    Symcheck(SymcheckArgs),
    /// Describe the cut and cycle codes of a graph.
    Codeinfo(CodeinfoArgs),
    /// Describe a tree decomposition of a graph.
    Tdinfo(TdinfoArgs),
}

#[derive(Args)]
struct Common {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
    /// Table entries a single contraction bag may allocate.
    #[arg(long, default_value_t = Limits::default().memory_budget)]
    mem_budget: u64,
    /// Elimination heuristic for contraction.
    #[arg(long, value_enum, default_value_t = StrategyArg::MinFill)]
    strategy: StrategyArg,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits { memory_budget: self.mem_budget, strategy: self.strategy.into(), ..Limits::default() }
    }
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    common: Common,
    /// Model JSON file.
    #[arg(long)]
    model: PathBuf,
    /// Inverse temperature; overrides the model file.
    #[arg(long, conflicts_with = "beta_range")]
    beta: Option<f64>,
    /// Sweep as start:stop:steps, both ends included.
    #[arg(long)]
    beta_range: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DualArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    beta: Option<f64>,
    /// Directory for dual_graph.json, dual_model.json and certificate.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Evaluate both sides and report the relative error.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SymcheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    beta: Option<f64>,
    /// Number of group elements to sample.
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shift every sampled u off the cut code (negative control).
    #[arg(long, hide = true)]
    inject_invalid: bool,
}

#[derive(Args)]
struct CodeinfoArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Alphabet size; taken from --model when omitted.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Args)]
struct TdinfoArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::MinFill)]
    strategy: StrategyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Overlap,
    Contract,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Brute => Method::Brute,
            MethodArg::Overlap => Method::Overlap,
            MethodArg::Contract => Method::Contract,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    MinFill,
    MinDegree,
    ExactSmall,
}

impl From<StrategyArg> for DecompositionStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::MinFill => DecompositionStrategy::MinFill,
            StrategyArg::MinDegree => DecompositionStrategy::MinDegree,
            StrategyArg::ExactSmall => DecompositionStrategy::ExactSmall,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Partition(a) => {
            let g = commands::load_graph(&a.common.graph)?;
            let model = commands::load_model(&a.model, &g)?;
            let betas: Vec<Option<f64>> = match &a.beta_range {
                Some(range) => commands::parse_beta_range(range)?.into_iter().map(Some).collect(),
                None => vec![a.beta.or(model.default_beta())],
            };
            let rows = commands::partition_rows(&g, &model, &betas, a.method.into(), &a.common.limits())?;
            Ok(match a.format {
                Format::Json => to_json(&rows),
                Format::Csv => commands::render_csv(&rows),
            })
        }
        Command::Dual(a) => {
            let g = commands::load_graph(&a.common.graph)?;
            let model = commands::load_model(&a.model, &g)?;
            let beta = a.beta.or(model.default_beta());
            let report = commands::dual(&g, &model, beta, &a.out, a.verify, &a.common.limits())?;
            let text = to_json(&report);
            match report.relative_error {
                Some(err) if !(err < commands::DUALITY_TOLERANCE) => {
                    print!("{text}");
                    Err(CliError::Invariant(format!(
                        "duality relative error {err:e} exceeds {:e}",
                        commands::DUALITY_TOLERANCE
                    )))
                }
                _ => Ok(text),
            }
        }
        Command::Symcheck(a) => {
            let g = commands::load_graph(&a.common.graph)?;
            let model = commands::load_model(&a.model, &g)?;
            let beta = a.beta.or(model.default_beta());
            let report =
                commands::symcheck(&g, &model, beta, a.count, a.seed, a.inject_invalid, &a.common.limits())?;
            let text = to_json(&report);
            if report.max_relative_deviation < report.tolerance {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Invariant(format!(
                    "symmetry changed Z by {:e}, tolerance {:e}",
                    report.max_relative_deviation, report.tolerance
                )))
            }
        }
        Command::Codeinfo(a) => {
            let g = commands::load_graph(&a.graph)?;
            let q = match (a.q, &a.model) {
                (Some(q), _) => q,
                (None, Some(path)) => commands::load_model(path, &g)?.q(),
                (None, None) => return Err(CliError::Parse("give --q or --model".into())),
            };
            Ok(to_json(&commands::codeinfo(&g, q)?))
        }
        Command::Tdinfo(a) => {
            let g = commands::load_graph(&a.graph)?;
            Ok(to_json(&commands::tdinfo(&g, a.strategy.into())?))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
