//! Run specifications: problem/operator name tables, the operator parameter
//! micro-syntax (`name:val1,val2`), and representation compatibility checks.

use serde::Deserialize;

use salsa_core::operators::{CrossoverOperator, MutationOperator, SelectionOperator};
use salsa_core::ops_bits::{BitFlipMutation, KPointCrossover, UniformCrossover, VectorGenome};
use salsa_core::ops_perm::{
    AdjacentSwapMutation, BlockMoveMutation, BlockSwapMutation, CycleCrossover, CycleMutation,
    EdgeRecombination, EnhancedEdgeRecombination, InsertionMutation, NonWrappingOrderCrossover,
    OrderCrossover, OrderCrossover2, Pmx, PositionBasedCrossover, Ppx, ReversalMutation,
    ScrambleMutation, SwapMutation, ThreeOptMutation, UniformOrderBasedCrossover,
    UniformScrambleMutation, Upmx, Uppx, WindowLimitedMutation, WindowedBase,
};
use salsa_core::ops_vectors::{CauchyMutation, GaussianMutation, UniformMutation};
use salsa_core::selection::{
    Boltzmann, ExponentialRank, FitnessProportionate, LinearRank, RandomSelection, SamplingKind,
    ScaledSelection, StochasticUniversalSampling, TemperatureSchedule, Tournament, Truncation,
};
use salsa_core::{Permutation, RealVector};

use crate::error::CliError;

/// Genome representation of a problem or operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    Bits,
    Integer,
    Real,
    Permutation,
}

impl Repr {
    pub fn describe(self) -> &'static str {
        match self {
            Repr::Bits => "bit-vector",
            Repr::Integer => "integer-vector",
            Repr::Real => "real-vector",
            Repr::Permutation => "permutation",
        }
    }
}

pub const PROBLEMS: &[(&str, Repr)] = &[
    ("onemax", Repr::Bits),
    ("twomax", Repr::Bits),
    ("trap", Repr::Bits),
    ("porcupine", Repr::Bits),
    ("plateaus", Repr::Bits),
    ("mix", Repr::Bits),
    ("royalroad", Repr::Bits),
    ("sphere", Repr::Real),
    ("haystack", Repr::Permutation),
    ("tsp", Repr::Permutation),
    ("qap", Repr::Permutation),
    ("binpacking", Repr::Permutation),
];

pub const ALGOS: &[&str] = &[
    "generational",
    "mutationonly",
    "adaptive",
    "mupluslambda",
    "oneplusone",
];

pub fn problem_repr(name: &str) -> Result<Repr, CliError> {
    PROBLEMS
        .iter()
        .find(|(p, _)| *p == name)
        .map(|&(_, r)| r)
        .ok_or_else(|| CliError::config(format!("unknown problem '{name}'")))
}

/// Representations an operator named `name` can act on. The name is the part
/// of the micro-syntax before the first ':'.
pub fn mutation_reprs(name: &str) -> Result<&'static [Repr], CliError> {
    const BITS: &[Repr] = &[Repr::Bits];
    const REAL: &[Repr] = &[Repr::Real];
    const INT: &[Repr] = &[Repr::Integer];
    const PERM: &[Repr] = &[Repr::Permutation];
    match name {
        "bitflip" => Ok(BITS),
        "gaussian" | "cauchy" | "uniform" => Ok(REAL),
        "randomchange" => Ok(INT),
        "swap" | "adjswap" | "insertion" | "reversal" | "scramble" | "uscramble" | "cycle"
        | "threeopt" | "blockmove" | "blockswap" | "windowed" => Ok(PERM),
        _ => Err(CliError::config(format!(
            "unknown mutation operator '{name}'"
        ))),
    }
}

pub fn crossover_reprs(name: &str) -> Result<&'static [Repr], CliError> {
    const VECTOR: &[Repr] = &[Repr::Bits, Repr::Integer, Repr::Real];
    const PERM: &[Repr] = &[Repr::Permutation];
    match name {
        "onepoint" | "twopoint" | "kpoint" | "uniformx" => Ok(VECTOR),
        "cx" | "pmx" | "upmx" | "ox" | "nwox" | "ox2" | "uobx" | "pbx" | "er" | "eer" | "ppx"
        | "uppx" => Ok(PERM),
        _ => Err(CliError::config(format!(
            "unknown crossover operator '{name}'"
        ))),
    }
}

/// Splits `name:val1,val2` into the name and its parameter list.
pub fn split_spec(spec: &str) -> (&str, Vec<&str>) {
    match spec.split_once(':') {
        Some((name, params)) => (name, params.split(',').collect()),
        None => (spec, Vec::new()),
    }
}

fn param<T: std::str::FromStr>(
    params: &[&str],
    idx: usize,
    what: &str,
    owner: &str,
) -> Result<T, CliError> {
    let raw = params.get(idx).ok_or_else(|| {
        CliError::config(format!("operator '{owner}' is missing its {what} parameter"))
    })?;
    raw.parse().map_err(|_| {
        CliError::config(format!("operator '{owner}': cannot parse {what} from '{raw}'"))
    })
}

fn no_params(params: &[&str], owner: &str) -> Result<(), CliError> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(CliError::config(format!(
            "operator '{owner}' takes no parameters"
        )))
    }
}

/// Checks that the operator (by its micro-syntax `spec`) can act on the
/// problem's representation. The diagnostic names both sides.
pub fn check_compat(
    kind: &str,
    spec: &str,
    reprs: &'static [Repr],
    problem: &str,
    problem_repr: Repr,
) -> Result<(), CliError> {
    if reprs.contains(&problem_repr) {
        return Ok(());
    }
    let wants: Vec<&str> = reprs.iter().map(|r| r.describe()).collect();
    Err(CliError::config(format!(
        "{kind} operator '{spec}' operates on {} genomes, but problem '{problem}' uses {} genomes",
        wants.join("/"),
        problem_repr.describe()
    )))
}

// ---------------------------------------------------------------------------
// Operator construction
// ---------------------------------------------------------------------------

pub fn parse_selection(
    spec: &str,
    sigma_scale: Option<f64>,
    shift_fitness: bool,
) -> Result<Box<dyn SelectionOperator>, CliError> {
    let (name, params) = split_spec(spec);
    let inner: Box<dyn SelectionOperator> = match name {
        "proportionate" => {
            no_params(&params, name)?;
            Box::new(FitnessProportionate)
        }
        "sus" => {
            no_params(&params, name)?;
            Box::new(StochasticUniversalSampling)
        }
        "tournament" => Box::new(Tournament::new(param(&params, 0, "k", name)?)?),
        "truncation" => Box::new(Truncation::new(param(&params, 0, "k", name)?)?),
        "linear-rank" => Box::new(LinearRank::new(
            param(&params, 0, "eta", name)?,
            SamplingKind::Roulette,
        )?),
        "exp-rank" => Box::new(ExponentialRank::new(
            param(&params, 0, "c", name)?,
            SamplingKind::Roulette,
        )?),
        "boltzmann" => {
            let t0: f64 = param(&params, 0, "t0", name)?;
            let tmin: f64 = param(&params, 1, "tmin", name)?;
            let schedule = match params.get(2).copied() {
                Some("constant") | None => TemperatureSchedule::Constant,
                Some("linear") => TemperatureSchedule::Linear,
                Some("exponential") => TemperatureSchedule::Exponential,
                Some(other) => {
                    return Err(CliError::config(format!(
                        "boltzmann schedule must be constant, linear, or exponential (got '{other}')"
                    )))
                }
            };
            Box::new(Boltzmann::new(t0, tmin, schedule, SamplingKind::Roulette)?)
        }
        "random" => {
            no_params(&params, name)?;
            Box::new(RandomSelection)
        }
        _ => {
            return Err(CliError::config(format!(
                "unknown selection scheme '{name}'"
            )))
        }
    };
    if sigma_scale.is_some() || shift_fitness {
        Ok(Box::new(ScaledSelection::new(
            inner,
            sigma_scale,
            shift_fitness,
        )))
    } else {
        Ok(inner)
    }
}

pub fn parse_bit_mutation(
    spec: &str,
) -> Result<Box<dyn MutationOperator<salsa_core::BitVector>>, CliError> {
    let (name, params) = split_spec(spec);
    match name {
        "bitflip" => Ok(Box::new(BitFlipMutation::new(param(
            &params, 0, "rate", name,
        )?)?)),
        _ => Err(CliError::config(format!(
            "mutation operator '{spec}' cannot act on bit vectors"
        ))),
    }
}

pub fn parse_real_mutation(spec: &str) -> Result<Box<dyn MutationOperator<RealVector>>, CliError> {
    let (name, params) = split_spec(spec);
    match name {
        "gaussian" => Ok(Box::new(GaussianMutation::new(param(
            &params, 0, "sigma", name,
        )?)?)),
        "cauchy" => Ok(Box::new(CauchyMutation::new(param(
            &params, 0, "scale", name,
        )?)?)),
        "uniform" => Ok(Box::new(UniformMutation::new(param(
            &params, 0, "width", name,
        )?)?)),
        _ => Err(CliError::config(format!(
            "mutation operator '{spec}' cannot act on real vectors"
        ))),
    }
}

pub fn parse_perm_mutation(spec: &str) -> Result<Box<dyn MutationOperator<Permutation>>, CliError> {
    let (name, params) = split_spec(spec);
    let op: Box<dyn MutationOperator<Permutation>> = match name {
        "swap" => {
            no_params(&params, name)?;
            Box::new(SwapMutation)
        }
        "adjswap" => {
            no_params(&params, name)?;
            Box::new(AdjacentSwapMutation)
        }
        "insertion" => {
            no_params(&params, name)?;
            Box::new(InsertionMutation)
        }
        "reversal" => {
            no_params(&params, name)?;
            Box::new(ReversalMutation)
        }
        "scramble" => {
            no_params(&params, name)?;
            Box::new(ScrambleMutation)
        }
        "uscramble" => Box::new(UniformScrambleMutation::new(param(&params, 0, "u", name)?)?),
        "cycle" => Box::new(CycleMutation::new(param(&params, 0, "kmax", name)?)?),
        "threeopt" => {
            no_params(&params, name)?;
            Box::new(ThreeOptMutation)
        }
        "blockmove" => {
            no_params(&params, name)?;
            Box::new(BlockMoveMutation)
        }
        "blockswap" => {
            no_params(&params, name)?;
            Box::new(BlockSwapMutation)
        }
        "windowed" => {
            let base = match params.first().copied() {
                Some("swap") => WindowedBase::Swap,
                Some("insertion") => WindowedBase::Insertion,
                Some("reversal") => WindowedBase::Reversal,
                Some("scramble") => WindowedBase::Scramble,
                Some("blockmove") => WindowedBase::BlockMove,
                other => {
                    return Err(CliError::config(format!(
                        "windowed base must be swap, insertion, reversal, scramble, or blockmove (got '{}')",
                        other.unwrap_or("")
                    )))
                }
            };
            Box::new(WindowLimitedMutation::new(
                base,
                param(&params, 1, "window width", name)?,
            )?)
        }
        _ => {
            return Err(CliError::config(format!(
                "mutation operator '{spec}' cannot act on permutations"
            )))
        }
    };
    Ok(op)
}

pub fn parse_vector_crossover<G: VectorGenome>(
    spec: &str,
) -> Result<Box<dyn CrossoverOperator<G>>, CliError> {
    let (name, params) = split_spec(spec);
    match name {
        "onepoint" => {
            no_params(&params, name)?;
            Ok(Box::new(KPointCrossover::one_point()))
        }
        "twopoint" => {
            no_params(&params, name)?;
            Ok(Box::new(KPointCrossover::two_point()))
        }
        "kpoint" => Ok(Box::new(KPointCrossover::new(param(&params, 0, "k", name)?)?)),
        "uniformx" => {
            let p = match params.first() {
                Some(_) => param(&params, 0, "p", name)?,
                None => 0.5,
            };
            Ok(Box::new(UniformCrossover::new(p)?))
        }
        _ => Err(CliError::config(format!(
            "crossover operator '{spec}' cannot act on vector genomes"
        ))),
    }
}

pub fn parse_perm_crossover(
    spec: &str,
) -> Result<Box<dyn CrossoverOperator<Permutation>>, CliError> {
    let (name, params) = split_spec(spec);
    let op: Box<dyn CrossoverOperator<Permutation>> = match name {
        "cx" => {
            no_params(&params, name)?;
            Box::new(CycleCrossover)
        }
        "pmx" => {
            no_params(&params, name)?;
            Box::new(Pmx)
        }
        "upmx" => match params.first() {
            Some(_) => Box::new(Upmx::new(param(&params, 0, "u", name)?)?),
            None => Box::<Upmx>::default(),
        },
        "ox" => {
            no_params(&params, name)?;
            Box::new(OrderCrossover)
        }
        "nwox" => {
            no_params(&params, name)?;
            Box::new(NonWrappingOrderCrossover)
        }
        "ox2" => {
            no_params(&params, name)?;
            Box::new(OrderCrossover2)
        }
        "uobx" => {
            no_params(&params, name)?;
            Box::new(UniformOrderBasedCrossover)
        }
        "pbx" => {
            no_params(&params, name)?;
            Box::new(PositionBasedCrossover)
        }
        "er" => {
            no_params(&params, name)?;
            Box::new(EdgeRecombination::new())
        }
        "eer" => {
            no_params(&params, name)?;
            Box::new(EnhancedEdgeRecombination::new())
        }
        "ppx" => {
            no_params(&params, name)?;
            Box::new(Ppx)
        }
        "uppx" => match params.first() {
            Some(_) => Box::new(Uppx::new(param(&params, 0, "u", name)?)?),
            None => Box::<Uppx>::default(),
        },
        _ => {
            return Err(CliError::config(format!(
                "crossover operator '{spec}' cannot act on permutations"
            )))
        }
    };
    Ok(op)
}

// ---------------------------------------------------------------------------
// Resolved run specification
// ---------------------------------------------------------------------------

/// Fully resolved single-run specification, assembled either from CLI flags
/// or from a suite file entry plus one seed.
#[derive(Clone, Debug)]
pub struct ResolvedSpec {
    pub problem: String,
    pub n: usize,
    pub block: Option<usize>,
    pub stepping_stones: bool,
    pub capacity: i64,
    pub instance: Option<String>,
    pub instance_seed: u64,
    pub algo: String,
    pub pop_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism: usize,
    pub mu: usize,
    pub lambda: usize,
    pub generations: Option<u64>,
    pub max_evals: Option<u64>,
    pub target_cost: Option<f64>,
    pub selection: Option<String>,
    pub crossover: Option<String>,
    pub mutation: Option<String>,
    pub sigma_scale: Option<f64>,
    pub shift_fitness: bool,
    pub sigma_rate: Option<f64>,
    pub seed: u64,
    pub replicas: usize,
    pub threads: usize,
}

impl ResolvedSpec {
    pub fn validate_names(&self) -> Result<(), CliError> {
        problem_repr(&self.problem)?;
        if !ALGOS.contains(&self.algo.as_str()) {
            return Err(CliError::config(format!("unknown algorithm '{}'", self.algo)));
        }
        if self.replicas < 1 {
            return Err(CliError::config("replicas must be >= 1"));
        }
        Ok(())
    }
}

/// One suite-file entry: a run spec with a list of seeds.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub problem: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub block: Option<usize>,
    #[serde(default)]
    pub stepping_stones: bool,
    #[serde(default)]
    pub capacity: Option<i64>,
    #[serde(default)]
    pub instance: Option<String>,
    #[serde(default)]
    pub instance_seed: Option<u64>,
    pub algo: String,
    #[serde(default)]
    pub pop_size: Option<usize>,
    #[serde(default)]
    pub crossover_rate: Option<f64>,
    #[serde(default)]
    pub mutation_rate: Option<f64>,
    #[serde(default)]
    pub elitism: Option<usize>,
    #[serde(default)]
    pub mu: Option<usize>,
    #[serde(default)]
    pub lambda: Option<usize>,
    #[serde(default)]
    pub generations: Option<u64>,
    #[serde(default)]
    pub max_evals: Option<u64>,
    #[serde(default)]
    pub target_cost: Option<f64>,
    #[serde(default)]
    pub selection: Option<String>,
    #[serde(default)]
    pub crossover: Option<String>,
    #[serde(default)]
    pub mutation: Option<String>,
    #[serde(default)]
    pub sigma_scale: Option<f64>,
    #[serde(default)]
    pub shift_fitness: bool,
    #[serde(default)]
    pub sigma_rate: Option<f64>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub replicas: Option<usize>,
}

impl SuiteEntry {
    pub fn resolve(&self, seed: u64, threads: usize) -> ResolvedSpec {
        ResolvedSpec {
            problem: self.problem.clone(),
            n: self.n.unwrap_or(32),
            block: self.block,
            stepping_stones: self.stepping_stones,
            capacity: self.capacity.unwrap_or(100),
            instance: self.instance.clone(),
            instance_seed: self.instance_seed.unwrap_or(1),
            algo: self.algo.clone(),
            pop_size: self.pop_size.unwrap_or(100),
            crossover_rate: self.crossover_rate.unwrap_or(1.0),
            mutation_rate: self.mutation_rate.unwrap_or(1.0),
            elitism: self.elitism.unwrap_or(1),
            mu: self.mu.unwrap_or(10),
            lambda: self.lambda.unwrap_or(10),
            generations: self.generations,
            max_evals: self.max_evals,
            target_cost: self.target_cost,
            selection: self.selection.clone(),
            crossover: self.crossover.clone(),
            mutation: self.mutation.clone(),
            sigma_scale: self.sigma_scale,
            shift_fitness: self.shift_fitness,
            sigma_rate: self.sigma_rate,
            seed,
            replicas: self.replicas.unwrap_or(1),
            threads,
        }
    }
}
