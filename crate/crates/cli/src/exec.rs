//! Spec execution: problem construction, operator assembly, engine dispatch,
//! and result records.

use std::time::Duration;

use serde::Serialize;

use salsa_core::engines::{
    run_adaptive, run_generational, run_mu_plus_lambda, run_mutation_only_generational,
    run_one_plus_one, run_parallel, AdaptiveConfig, EngineConfig, RunResult, StoppingCriteria,
};
use salsa_core::operators::{CrossoverOperator, MutationOperator, SelectionOperator};
use salsa_core::problems::{
    BinPackingInstance, Haystack, Mix, OneMax, Plateaus, Porcupine, ProblemInstance, QapInstance,
    RoyalRoad, Sphere, Trap, TspInstance, TwoMax,
};
use salsa_core::{
    BitVector, FitnessFunction, Permutation, Problem, ProgressTracker, RandomStream, RealVector,
};

use crate::error::CliError;
use crate::spec::{
    check_compat, crossover_reprs, mutation_reprs, parse_bit_mutation, parse_perm_crossover,
    parse_perm_mutation, parse_real_mutation, parse_selection, parse_vector_crossover,
    problem_repr, split_spec, Repr, ResolvedSpec,
};

pub const REAL_INIT_BOUNDS: (f64, f64) = (-5.12, 5.12);
const DEFAULT_GENERATIONS: u64 = 100;
const DEFAULT_ROYAL_ROAD_BLOCK: usize = 4;

// ---------------------------------------------------------------------------
// Problem wrappers with a unified real-valued cost
// ---------------------------------------------------------------------------

pub enum BitProblem {
    OneMax(OneMax),
    TwoMax(TwoMax),
    Trap(Trap),
    Porcupine(Porcupine),
    Plateaus(Plateaus),
    Mix(Mix),
    RoyalRoad(RoyalRoad),
}

impl Problem<BitVector> for BitProblem {
    type Cost = f64;

    fn cost(&self, g: &BitVector) -> f64 {
        match self {
            BitProblem::OneMax(p) => p.cost_as_double(g),
            BitProblem::TwoMax(p) => p.cost_as_double(g),
            BitProblem::Trap(p) => p.cost_as_double(g),
            BitProblem::Porcupine(p) => p.cost_as_double(g),
            BitProblem::Plateaus(p) => p.cost_as_double(g),
            BitProblem::Mix(p) => p.cost_as_double(g),
            BitProblem::RoyalRoad(p) => p.cost_as_double(g),
        }
    }

    fn min_cost(&self) -> Option<f64> {
        Some(0.0)
    }
}

pub enum PermProblem {
    Haystack(Haystack),
    Tsp(TspInstance),
    Qap(QapInstance),
    BinPacking(BinPackingInstance),
}

impl Problem<Permutation> for PermProblem {
    type Cost = f64;

    fn cost(&self, g: &Permutation) -> f64 {
        match self {
            PermProblem::Haystack(p) => p.cost_as_double(g),
            PermProblem::Tsp(p) => p.cost_as_double(g),
            PermProblem::Qap(p) => p.cost_as_double(g),
            PermProblem::BinPacking(p) => p.cost_as_double(g),
        }
    }

    fn min_cost(&self) -> Option<f64> {
        match self {
            PermProblem::Haystack(p) => p.min_cost().map(|c| c as f64),
            _ => None,
        }
    }
}

/// A constructed problem together with its effective genome length.
pub enum BuiltProblem {
    Bits(BitProblem, usize),
    Real(Sphere, usize),
    Perm(PermProblem, usize),
}

impl BuiltProblem {
    pub fn n(&self) -> usize {
        match self {
            BuiltProblem::Bits(_, n) | BuiltProblem::Real(_, n) | BuiltProblem::Perm(_, n) => *n,
        }
    }
}

pub fn build_problem(spec: &ResolvedSpec) -> Result<BuiltProblem, CliError> {
    let n = spec.n;
    if n < 1 {
        return Err(CliError::config("genome length n must be >= 1"));
    }
    let instance = match &spec.instance {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::config(format!("cannot read instance file '{path}': {e}"))
            })?;
            Some(ProblemInstance::from_json(&text)?)
        }
        None => None,
    };
    let kind_mismatch = |found: &str| {
        CliError::Config(format!(
            "instance file has kind '{found}' but the requested problem is '{}'",
            spec.problem
        ))
    };
    let built = match spec.problem.as_str() {
        "onemax" => BuiltProblem::Bits(BitProblem::OneMax(OneMax { n }), n),
        "twomax" => BuiltProblem::Bits(BitProblem::TwoMax(TwoMax { n }), n),
        "trap" => BuiltProblem::Bits(BitProblem::Trap(Trap { n }), n),
        "porcupine" => BuiltProblem::Bits(BitProblem::Porcupine(Porcupine { n }), n),
        "plateaus" => BuiltProblem::Bits(BitProblem::Plateaus(Plateaus { n }), n),
        "mix" => BuiltProblem::Bits(BitProblem::Mix(Mix { n }), n),
        "royalroad" => {
            let block = spec.block.unwrap_or(DEFAULT_ROYAL_ROAD_BLOCK);
            BuiltProblem::Bits(
                BitProblem::RoyalRoad(RoyalRoad::new(n, block, spec.stepping_stones)?),
                n,
            )
        }
        "sphere" => BuiltProblem::Real(Sphere, n),
        "haystack" => {
            let mut rng = RandomStream::from_seed(spec.instance_seed);
            let target = Permutation::random(&mut rng, n)?;
            BuiltProblem::Perm(PermProblem::Haystack(Haystack::new(target)), n)
        }
        "tsp" => {
            let inst = match instance {
                Some(ProblemInstance::Tsp(i)) => i,
                Some(ProblemInstance::Qap(_)) => return Err(kind_mismatch("qap")),
                Some(ProblemInstance::BinPacking(_)) => return Err(kind_mismatch("binpacking")),
                None => {
                    TspInstance::random(n, &mut RandomStream::from_seed(spec.instance_seed))?
                }
            };
            let n = inst.n;
            BuiltProblem::Perm(PermProblem::Tsp(inst), n)
        }
        "qap" => {
            let inst = match instance {
                Some(ProblemInstance::Qap(i)) => i,
                Some(ProblemInstance::Tsp(_)) => return Err(kind_mismatch("tsp")),
                Some(ProblemInstance::BinPacking(_)) => return Err(kind_mismatch("binpacking")),
                None => {
                    QapInstance::random(n, &mut RandomStream::from_seed(spec.instance_seed))?
                }
            };
            let n = inst.n;
            BuiltProblem::Perm(PermProblem::Qap(inst), n)
        }
        "binpacking" => {
            let inst = match instance {
                Some(ProblemInstance::BinPacking(i)) => i,
                Some(ProblemInstance::Tsp(_)) => return Err(kind_mismatch("tsp")),
                Some(ProblemInstance::Qap(_)) => return Err(kind_mismatch("qap")),
                None => BinPackingInstance::random(
                    n,
                    spec.capacity,
                    &mut RandomStream::from_seed(spec.instance_seed),
                )?,
            };
            let n = inst.n;
            BuiltProblem::Perm(PermProblem::BinPacking(inst), n)
        }
        other => return Err(CliError::config(format!("unknown problem '{other}'"))),
    };
    Ok(built)
}

// ---------------------------------------------------------------------------
// Operator resolution
// ---------------------------------------------------------------------------

/// Operator micro-syntax strings after defaults are applied.
pub struct OpStrings {
    pub selection: Option<String>,
    pub crossover: Option<String>,
    pub mutation: String,
}

impl OpStrings {
    /// Space-separated summary for result records. Commas inside operator
    /// parameters are rendered as ';' so the column stays CSV-safe.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(s) = &self.selection {
            parts.push(format!("sel={}", s.replace(',', ";")));
        }
        if let Some(c) = &self.crossover {
            parts.push(format!("cross={}", c.replace(',', ";")));
        }
        parts.push(format!("mut={}", self.mutation.replace(',', ";")));
        parts.join(" ")
    }
}

/// Applies per-representation defaults and drops operators the chosen
/// algorithm never uses.
pub fn resolve_ops(spec: &ResolvedSpec, repr: Repr, n: usize) -> OpStrings {
    let uses_selection = matches!(spec.algo.as_str(), "generational" | "mutationonly" | "adaptive");
    let uses_crossover = matches!(
        spec.algo.as_str(),
        "generational" | "adaptive" | "mupluslambda"
    );
    let selection = if uses_selection {
        Some(
            spec.selection
                .clone()
                .unwrap_or_else(|| "tournament:2".to_string()),
        )
    } else if spec.algo == "mupluslambda" {
        // (μ+λ) defaults to uniform parent choice; selection only when asked.
        spec.selection.clone()
    } else {
        None
    };
    let crossover = if uses_crossover {
        Some(spec.crossover.clone().unwrap_or_else(|| {
            match repr {
                Repr::Permutation => "pmx".to_string(),
                _ => "uniformx:0.5".to_string(),
            }
        }))
    } else {
        None
    };
    let mutation = spec.mutation.clone().unwrap_or_else(|| match repr {
        Repr::Bits => format!("bitflip:{}", 1.0 / n as f64),
        Repr::Real => "gaussian:0.1".to_string(),
        _ => "swap".to_string(),
    });
    OpStrings {
        selection,
        crossover,
        mutation,
    }
}

/// Full up-front validation: names, operator syntax, and representation
/// compatibility. Returns the resolved operator strings. Nothing is
/// evaluated before this passes.
pub fn validate_spec(spec: &ResolvedSpec) -> Result<OpStrings, CliError> {
    spec.validate_names()?;
    let repr = problem_repr(&spec.problem)?;
    let ops = resolve_ops(spec, repr, spec.n.max(1));

    if let Some(sel) = &ops.selection {
        parse_selection(sel, spec.sigma_scale, spec.shift_fitness)?;
    }
    if let Some(cross) = &ops.crossover {
        let (name, _) = split_spec(cross);
        check_compat("crossover", cross, crossover_reprs(name)?, &spec.problem, repr)?;
        match repr {
            Repr::Permutation => {
                parse_perm_crossover(cross)?;
            }
            _ => {
                parse_vector_crossover::<BitVector>(cross)?;
            }
        }
    }
    {
        let m = &ops.mutation;
        let (name, _) = split_spec(m);
        check_compat("mutation", m, mutation_reprs(name)?, &spec.problem, repr)?;
        match repr {
            Repr::Bits => {
                parse_bit_mutation(m)?;
            }
            Repr::Real => {
                parse_real_mutation(m)?;
            }
            Repr::Permutation => {
                parse_perm_mutation(m)?;
            }
            Repr::Integer => {
                return Err(CliError::config(
                    "no built-in problem uses integer-vector genomes",
                ))
            }
        }
    }
    Ok(ops)
}

// ---------------------------------------------------------------------------
// Engine dispatch
// ---------------------------------------------------------------------------

fn engine_config(spec: &ResolvedSpec) -> EngineConfig {
    let mut stopping = StoppingCriteria {
        max_generations: spec.generations,
        max_evaluations: spec.max_evals,
        target_cost: spec.target_cost,
    };
    if stopping.max_generations.is_none()
        && stopping.max_evaluations.is_none()
        && stopping.target_cost.is_none()
    {
        stopping.max_generations = Some(DEFAULT_GENERATIONS);
    }
    let mut cfg = EngineConfig::new(spec.pop_size, spec.seed);
    cfg.crossover_rate = spec.crossover_rate;
    cfg.mutation_rate = spec.mutation_rate;
    cfg.elitism = spec.elitism;
    cfg.mu = spec.mu;
    cfg.lambda = spec.lambda;
    cfg.stopping = stopping;
    cfg
}

struct ReplicaOps<G> {
    select: Option<Box<dyn SelectionOperator>>,
    cross: Option<Box<dyn CrossoverOperator<G>>>,
    mutate: Box<dyn MutationOperator<G>>,
}

fn cfg_err(e: CliError) -> salsa_core::Error {
    salsa_core::Error::invalid_argument(e.to_string())
}

fn drive<G, P>(
    spec: &ResolvedSpec,
    fitness: &FitnessFunction<P>,
    mut ops: ReplicaOps<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> salsa_core::Result<RunResult<G>>
where
    G: Clone + 'static,
    P: Problem<G>,
{
    let cfg = engine_config(spec);
    let missing = || salsa_core::Error::invalid_argument("operator missing for algorithm");
    match spec.algo.as_str() {
        "generational" => run_generational(
            &cfg,
            fitness,
            ops.select.as_deref_mut().ok_or_else(missing)?,
            ops.cross.as_deref_mut().ok_or_else(missing)?,
            &mut *ops.mutate,
            init,
            rng,
            tracker,
        ),
        "mutationonly" => run_mutation_only_generational(
            &cfg,
            fitness,
            ops.select.as_deref_mut().ok_or_else(missing)?,
            &mut *ops.mutate,
            init,
            rng,
            tracker,
        ),
        "adaptive" => {
            let mut adaptive = AdaptiveConfig::defaults(fitness_len(spec));
            if let Some(s) = spec.sigma_rate {
                adaptive.sigma_rate = s;
            }
            run_adaptive(
                &cfg,
                &adaptive,
                fitness,
                ops.select.as_deref_mut().ok_or_else(missing)?,
                ops.cross.as_deref_mut().ok_or_else(missing)?,
                &mut *ops.mutate,
                init,
                rng,
                tracker,
            )
        }
        "mupluslambda" => run_mu_plus_lambda(
            &cfg,
            fitness,
            ops.select.as_deref_mut(),
            ops.cross.as_deref_mut(),
            &mut *ops.mutate,
            init,
            rng,
            tracker,
        ),
        "oneplusone" => run_one_plus_one(&cfg, fitness, &mut *ops.mutate, init, rng, tracker),
        other => Err(salsa_core::Error::invalid_argument(format!(
            "unknown algorithm '{other}'"
        ))),
    }
}

fn fitness_len(spec: &ResolvedSpec) -> usize {
    spec.n.max(1)
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub problem: String,
    pub algo: String,
    pub operators: String,
    pub seed: u64,
    pub best_cost: f64,
    pub evaluations: u64,
    pub generations: u64,
    pub elapsed_ms: u64,
    pub solution: String,
}

pub const BENCHMARK_CSV_HEADER: &str =
    "problem,algo,operators,seed,best_cost,evaluations,generations,elapsed_ms,status";

pub const RUN_CSV_HEADER: &str =
    "problem,algo,operators,seed,best_cost,evaluations,generations,elapsed_ms,solution";

impl Record {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn run_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.problem,
            self.algo,
            self.operators,
            self.seed,
            self.best_cost,
            self.evaluations,
            self.generations,
            self.elapsed_ms,
            self.solution
        )
    }

    pub fn benchmark_csv_row(&self, status: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.problem,
            self.algo,
            self.operators,
            self.seed,
            self.best_cost,
            self.evaluations,
            self.generations,
            self.elapsed_ms,
            status
        )
    }
}

fn format_real(values: &[f64]) -> String {
    let rendered: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
    format!("[{}]", rendered.join(" "))
}

// ---------------------------------------------------------------------------
// Top-level execution
// ---------------------------------------------------------------------------

fn finish<G>(
    spec: &ResolvedSpec,
    ops: &OpStrings,
    result: RunResult<G>,
    render: impl Fn(&G) -> String,
) -> Record {
    Record {
        problem: spec.problem.clone(),
        algo: spec.algo.clone(),
        operators: ops.summary(),
        seed: spec.seed,
        best_cost: result.best.cost,
        evaluations: result.evaluations,
        generations: result.generations,
        elapsed_ms: duration_ms(result.elapsed),
        solution: render(&result.best.solution),
    }
}

fn duration_ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

/// Validates, builds, and executes one spec, returning its result record.
/// All configuration errors surface before the first cost evaluation.
pub fn execute_spec(spec: &ResolvedSpec) -> Result<Record, CliError> {
    let ops = validate_spec(spec)?;
    let built = build_problem(spec)?;
    let n = built.n();
    let run_err = |e: salsa_core::Error| CliError::Run(e.to_string());

    match built {
        BuiltProblem::Bits(problem, _) => {
            let tracker = ProgressTracker::new();
            let problem = &problem;
            let ops_ref = &ops;
            let result = run_parallel(spec.replicas, spec.threads, spec.seed, &tracker, {
                move |_, mut stream, tracker| {
                    let fitness = FitnessFunction::inverse_cost(problem);
                    let replica = ReplicaOps {
                        select: ops_ref
                            .selection
                            .as_deref()
                            .map(|s| parse_selection(s, spec.sigma_scale, spec.shift_fitness))
                            .transpose()
                            .map_err(cfg_err)?,
                        cross: ops_ref
                            .crossover
                            .as_deref()
                            .map(parse_vector_crossover::<BitVector>)
                            .transpose()
                            .map_err(cfg_err)?,
                        mutate: parse_bit_mutation(&ops_ref.mutation).map_err(cfg_err)?,
                    };
                    let mut init =
                        |rng: &mut RandomStream| BitVector::random(rng, n).expect("n >= 1");
                    drive(spec, &fitness, replica, &mut init, &mut stream, Some(tracker))
                }
            })
            .map_err(run_err)?;
            Ok(finish(spec, &ops, result, |g| g.to_string()))
        }
        BuiltProblem::Real(problem, _) => {
            let tracker = ProgressTracker::new();
            let problem = &problem;
            let ops_ref = &ops;
            let result = run_parallel(spec.replicas, spec.threads, spec.seed, &tracker, {
                move |_, mut stream, tracker| {
                    let fitness = FitnessFunction::inverse_cost(problem);
                    let replica = ReplicaOps {
                        select: ops_ref
                            .selection
                            .as_deref()
                            .map(|s| parse_selection(s, spec.sigma_scale, spec.shift_fitness))
                            .transpose()
                            .map_err(cfg_err)?,
                        cross: ops_ref
                            .crossover
                            .as_deref()
                            .map(parse_vector_crossover::<RealVector>)
                            .transpose()
                            .map_err(cfg_err)?,
                        mutate: parse_real_mutation(&ops_ref.mutation).map_err(cfg_err)?,
                    };
                    let (lo, hi) = REAL_INIT_BOUNDS;
                    let mut init = |rng: &mut RandomStream| {
                        RealVector::random(rng, n, lo, hi).expect("n >= 1")
                    };
                    drive(spec, &fitness, replica, &mut init, &mut stream, Some(tracker))
                }
            })
            .map_err(run_err)?;
            Ok(finish(spec, &ops, result, |g| format_real(&g.values)))
        }
        BuiltProblem::Perm(problem, _) => {
            let tracker = ProgressTracker::new();
            let problem = &problem;
            let ops_ref = &ops;
            let result = run_parallel(spec.replicas, spec.threads, spec.seed, &tracker, {
                move |_, mut stream, tracker| {
                    let fitness = FitnessFunction::inverse_cost(problem);
                    let replica = ReplicaOps {
                        select: ops_ref
                            .selection
                            .as_deref()
                            .map(|s| parse_selection(s, spec.sigma_scale, spec.shift_fitness))
                            .transpose()
                            .map_err(cfg_err)?,
                        cross: ops_ref
                            .crossover
                            .as_deref()
                            .map(parse_perm_crossover)
                            .transpose()
                            .map_err(cfg_err)?,
                        mutate: parse_perm_mutation(&ops_ref.mutation).map_err(cfg_err)?,
                    };
                    let mut init =
                        |rng: &mut RandomStream| Permutation::random(rng, n).expect("n >= 1");
                    drive(spec, &fitness, replica, &mut init, &mut stream, Some(tracker))
                }
            })
            .map_err(run_err)?;
            Ok(finish(spec, &ops, result, |g| g.to_string()))
        }
    }
}
