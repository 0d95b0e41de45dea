//! `salsa`: reproducible evolutionary-computation runs and benchmark sweeps.

mod error;
mod exec;
mod registry;
mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use exec::{execute_spec, Record, BENCHMARK_CSV_HEADER, RUN_CSV_HEADER};
use spec::{ResolvedSpec, SuiteEntry};

#[derive(Parser)]
#[command(
    name = "salsa",
    about = "Evolutionary computation harness: seeded, reproducible runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one configured run and print its result record.
    Run(RunArgs),
    /// Execute a suite file (JSON list of specs with seed lists) into a CSV.
    Benchmark(BenchmarkArgs),
    /// List every problem, algorithm, and operator with parameter syntax.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    /// Problem name (see `salsa list`).
    #[arg(long)]
    problem: String,
    /// Genome length / instance size.
    #[arg(long, default_value_t = 32)]
    n: usize,
    /// Royal road block size.
    #[arg(long)]
    block: Option<usize>,
    /// Enable royal road stepping stones.
    #[arg(long)]
    stepping_stones: bool,
    /// Bin packing capacity (for generated instances).
    #[arg(long, default_value_t = 100)]
    capacity: i64,
    /// Path to a JSON problem instance (tsp/qap/binpacking).
    #[arg(long)]
    instance: Option<String>,
    /// Seed for generated instances and haystack targets.
    #[arg(long, default_value_t = 1)]
    instance_seed: u64,
    /// Algorithm: generational, mutationonly, adaptive, mupluslambda, oneplusone.
    #[arg(long)]
    algo: String,
    /// Population size for generational algorithms.
    #[arg(long, default_value_t = 100)]
    pop_size: usize,
    /// Probability a consecutive offspring pair is crossed.
    #[arg(long, default_value_t = 1.0)]
    crossover_rate: f64,
    /// Probability an offspring is mutated.
    #[arg(long, default_value_t = 1.0)]
    mutation_rate: f64,
    /// Number of elites copied unchanged each generation.
    #[arg(long, default_value_t = 1)]
    elitism: usize,
    /// Parent population size for (mu+lambda).
    #[arg(long, default_value_t = 10)]
    mu: usize,
    /// Offspring count for (mu+lambda).
    #[arg(long, default_value_t = 10)]
    lambda: usize,
    /// Stop after this many generations.
    #[arg(long)]
    generations: Option<u64>,
    /// Stop after this many cost evaluations.
    #[arg(long)]
    max_evals: Option<u64>,
    /// Stop when best cost reaches this value.
    #[arg(long)]
    target_cost: Option<f64>,
    /// Selection scheme, e.g. tournament:2.
    #[arg(long)]
    selection: Option<String>,
    /// Crossover operator, e.g. uniformx:0.5 or pmx.
    #[arg(long)]
    crossover: Option<String>,
    /// Mutation operator, e.g. bitflip:0.03125 or swap.
    #[arg(long)]
    mutation: Option<String>,
    /// Apply sigma scaling with this factor before selection.
    #[arg(long)]
    sigma_scale: Option<f64>,
    /// Shift fitness positive before selection.
    #[arg(long)]
    shift_fitness: bool,
    /// Std dev of per-generation adaptive rate perturbation.
    #[arg(long)]
    sigma_rate: Option<f64>,
    /// Master seed. Falls back to SALSA_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent replicas sharing one progress tracker.
    #[arg(long, default_value_t = 1)]
    replicas: usize,
    /// Worker-thread cap for replicas (0 = one per replica). Never affects results.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output format for the result record.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Suite file: JSON list of run specs, each with a `seeds` array.
    suite: String,
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    output: Option<String>,
    /// Worker-thread cap passed to every cell.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn default_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("SALSA_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(0)
}

impl RunArgs {
    fn to_spec(&self) -> ResolvedSpec {
        ResolvedSpec {
            problem: self.problem.clone(),
            n: self.n,
            block: self.block,
            stepping_stones: self.stepping_stones,
            capacity: self.capacity,
            instance: self.instance.clone(),
            instance_seed: self.instance_seed,
            algo: self.algo.clone(),
            pop_size: self.pop_size,
            crossover_rate: self.crossover_rate,
            mutation_rate: self.mutation_rate,
            elitism: self.elitism,
            mu: self.mu,
            lambda: self.lambda,
            generations: self.generations,
            max_evals: self.max_evals,
            target_cost: self.target_cost,
            selection: self.selection.clone(),
            crossover: self.crossover.clone(),
            mutation: self.mutation.clone(),
            sigma_scale: self.sigma_scale,
            shift_fitness: self.shift_fitness,
            sigma_rate: self.sigma_rate,
            seed: default_seed(self.seed),
            replicas: self.replicas,
            threads: self.threads,
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let spec = args.to_spec();
    let record = execute_spec(&spec)?;
    match args.format {
        OutputFormat::Json => println!("{}", record.to_json()),
        OutputFormat::Csv => {
            println!("{RUN_CSV_HEADER}");
            println!("{}", record.run_csv_row());
        }
    }
    Ok(())
}

fn cmd_benchmark(args: &BenchmarkArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.suite)
        .map_err(|e| CliError::config(format!("cannot read suite file '{}': {e}", args.suite)))?;
    let entries: Vec<SuiteEntry> = serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("invalid suite file: {e}")))?;

    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(std::fs::File::create(path).map_err(|e| {
            CliError::config(format!("cannot create output file '{path}': {e}"))
        })?),
        None => Box::new(std::io::stdout()),
    };
    let write_row = |out: &mut dyn Write, row: &str| -> Result<(), CliError> {
        writeln!(out, "{row}")
            .and_then(|_| out.flush())
            .map_err(|e| CliError::Run(format!("cannot write output: {e}")))
    };

    write_row(&mut *out, BENCHMARK_CSV_HEADER)?;
    let mut any_failed = false;
    for entry in &entries {
        for &seed in &entry.seeds {
            let spec = entry.resolve(seed, args.threads);
            match execute_spec(&spec) {
                Ok(record) => write_row(&mut *out, &record.benchmark_csv_row("ok"))?,
                Err(e) => {
                    any_failed = true;
                    let status = e.to_string().replace([',', '\n'], ";");
                    let record = Record {
                        problem: spec.problem.clone(),
                        algo: spec.algo.clone(),
                        operators: String::new(),
                        seed,
                        best_cost: f64::NAN,
                        evaluations: 0,
                        generations: 0,
                        elapsed_ms: 0,
                        solution: String::new(),
                    };
                    write_row(&mut *out, &record.benchmark_csv_row(&status))?;
                }
            }
        }
    }
    if any_failed {
        Err(CliError::Run("one or more benchmark cells failed".into()))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::List => {
            print!("{}", registry::render_catalog());
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
