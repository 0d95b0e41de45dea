//! Evolutionary engines: generational (with elitism, fixed or self-adaptive
//! rates, optional crossover), (μ+λ) / (μ+1), (1+1), and a parallel
//! multi-replica runner.
//!
//! Every engine is a pure function of (config, stream): identical inputs give
//! identical results, including evaluation counts. Probability coins are only
//! drawn when the governing rate is nonzero, so a zero-rate configuration has
//! the same random trajectory as omitting the operator entirely.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::operators::{CrossoverOperator, MutationOperator, SelectionOperator};
use crate::problem::{CostValue, FitnessFunction, Problem, ProgressTracker, SolutionCostPair};
use crate::rng::RandomStream;
use crate::selection::FitnessVector;

/// When to end a run. At least one criterion must be set. Generation-based
/// engines check budgets at generation boundaries; per-step engines check
/// every step. The target-cost stop triggers at the end of the generation in
/// which the cost is reached.
#[derive(Clone, Copy, Debug, Default)]
pub struct StoppingCriteria {
    pub max_generations: Option<u64>,
    pub max_evaluations: Option<u64>,
    pub target_cost: Option<f64>,
}

impl StoppingCriteria {
    pub fn generations(g: u64) -> Self {
        Self {
            max_generations: Some(g),
            ..Self::default()
        }
    }

    pub fn evaluations(e: u64) -> Self {
        Self {
            max_evaluations: Some(e),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_generations.is_none()
            && self.max_evaluations.is_none()
            && self.target_cost.is_none()
        {
            return Err(Error::invalid_argument(
                "at least one stopping criterion is required",
            ));
        }
        Ok(())
    }

    fn met(&self, generations: u64, evaluations: u64, best_cost: f64) -> bool {
        self.max_generations.is_some_and(|g| generations >= g)
            || self.max_evaluations.is_some_and(|e| evaluations >= e)
            || self.target_cost.is_some_and(|t| best_cost <= t)
    }
}

/// Shared engine configuration. Generational engines use `population_size`,
/// `crossover_rate`, `mutation_rate`, and `elitism`; the (μ+λ) family uses
/// `mu` and `lambda`; (1+1) uses only `stopping` and `seed`.
#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub population_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism: usize,
    pub mu: usize,
    pub lambda: usize,
    pub stopping: StoppingCriteria,
    pub seed: u64,
}

impl EngineConfig {
    pub fn new(population_size: usize, seed: u64) -> Self {
        Self {
            population_size,
            crossover_rate: 1.0,
            mutation_rate: 1.0,
            elitism: 0,
            mu: population_size.max(1),
            lambda: population_size.max(1),
            stopping: StoppingCriteria::default(),
            seed,
        }
    }

    fn validate_generational(&self) -> Result<()> {
        if self.population_size < 1 {
            return Err(Error::invalid_argument("population size must be >= 1"));
        }
        if self.elitism >= self.population_size {
            return Err(Error::invalid_argument(
                "elite count must be smaller than the population",
            ));
        }
        for (name, rate) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::invalid_argument(format!("{name} must be in [0, 1]")));
            }
        }
        self.stopping.validate()
    }

    fn validate_mu_lambda(&self) -> Result<()> {
        if self.mu < 1 || self.lambda < 1 {
            return Err(Error::invalid_argument("mu and lambda must both be >= 1"));
        }
        for (name, rate) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::invalid_argument(format!("{name} must be in [0, 1]")));
            }
        }
        self.stopping.validate()
    }
}

/// Self-adaptation settings: per-member (mutation rate, crossover rate)
/// genes, inherited and then perturbed by `N(0, sigma_rate)` each
/// generation, clamped to the bounds. `initial = None` draws starting rates
/// uniformly within the bounds.
#[derive(Clone, Copy, Debug)]
pub struct AdaptiveConfig {
    pub m_bounds: (f64, f64),
    pub c_bounds: (f64, f64),
    pub sigma_rate: f64,
    pub initial: Option<(f64, f64)>,
}

impl AdaptiveConfig {
    /// Default bounds for a genome of length `n`: mutation rate in
    /// `[1/(10n), 0.5]`, crossover rate in `[0, 1]`, `sigma_rate = 0.05`.
    pub fn defaults(n: usize) -> Self {
        Self {
            m_bounds: (1.0 / (10.0 * n.max(1) as f64), 0.5),
            c_bounds: (0.0, 1.0),
            sigma_rate: 0.05,
            initial: None,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("mutation", self.m_bounds), ("crossover", self.c_bounds)] {
            if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(Error::invalid_argument(format!(
                    "adaptive {name} rate bounds must satisfy 0 <= lo <= hi <= 1"
                )));
            }
        }
        if !(self.sigma_rate >= 0.0) {
            return Err(Error::invalid_argument("sigma_rate must be >= 0"));
        }
        if let Some((m, c)) = self.initial {
            if !(self.m_bounds.0..=self.m_bounds.1).contains(&m)
                || !(self.c_bounds.0..=self.c_bounds.1).contains(&c)
            {
                return Err(Error::invalid_argument(
                    "initial adaptive rates must lie within their bounds",
                ));
            }
        }
        Ok(())
    }
}

/// A population member with its cached evaluation and optional adaptive
/// rate genes `(m, c)`.
#[derive(Clone, Debug)]
pub struct Individual<G> {
    pub genome: G,
    pub cost: f64,
    pub fitness: f64,
    pub is_optimal: bool,
    pub rates: Option<(f64, f64)>,
}

/// Minimum and maximum adaptive rates ever observed during a run, plus the
/// final population variance of the mutation rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateSpan {
    pub m_min: f64,
    pub m_max: f64,
    pub c_min: f64,
    pub c_max: f64,
    pub final_m_variance: f64,
}

/// Outcome of one engine run.
#[derive(Clone, Debug)]
pub struct RunResult<G> {
    pub best: SolutionCostPair<G>,
    pub evaluations: u64,
    pub generations: u64,
    pub elapsed: Duration,
    pub seed: u64,
    /// Present only for adaptive runs.
    pub rate_span: Option<RateSpan>,
}

/// Per-run bookkeeping: local best (strict improvement), evaluation count,
/// and optional mirror into a shared tracker.
struct RunState<'a, G> {
    best: Option<SolutionCostPair<G>>,
    evaluations: u64,
    tracker: Option<&'a ProgressTracker<G>>,
}

impl<'a, G: Clone> RunState<'a, G> {
    fn new(tracker: Option<&'a ProgressTracker<G>>) -> Self {
        Self {
            best: None,
            evaluations: 0,
            tracker,
        }
    }

    fn evaluate<P: Problem<G>>(&mut self, fitness: &FitnessFunction<P>, ind: &mut Individual<G>) {
        let cost = fitness.problem().cost(&ind.genome);
        ind.cost = cost.to_f64();
        ind.is_optimal = fitness.problem().is_min_cost(cost);
        ind.fitness = fitness.transform().fitness_of_cost(ind.cost);
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|b| ind.cost < b.cost) {
            self.best = Some(SolutionCostPair {
                solution: ind.genome.clone(),
                cost: ind.cost,
                contains_known_optimal: ind.is_optimal,
            });
        }
        if let Some(t) = self.tracker {
            t.update(&ind.genome, ind.cost, ind.is_optimal);
            t.add_evaluations(1);
        }
    }

    fn best_cost(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.cost)
    }

    fn finish(
        self,
        generations: u64,
        seed: u64,
        started: Instant,
        rate_span: Option<RateSpan>,
    ) -> RunResult<G> {
        RunResult {
            best: self.best.expect("at least one evaluation"),
            evaluations: self.evaluations,
            generations,
            elapsed: started.elapsed(),
            seed,
            rate_span,
        }
    }
}

/// Indices of the `e` fittest members, ties broken by lowest index.
fn elite_indices<G>(pop: &[Individual<G>], e: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.sort_by(|&a, &b| {
        pop[b]
            .fitness
            .partial_cmp(&pop[a].fitness)
            .unwrap()
            .then(a.cmp(&b))
    });
    order.truncate(e);
    order
}

fn clamp(v: f64, (lo, hi): (f64, f64)) -> f64 {
    v.clamp(lo, hi)
}

fn initial_rates(adaptive: &AdaptiveConfig, rng: &mut RandomStream) -> (f64, f64) {
    match adaptive.initial {
        Some(r) => r,
        None => {
            let m = adaptive.m_bounds.0
                + rng.next_double() * (adaptive.m_bounds.1 - adaptive.m_bounds.0);
            let c = adaptive.c_bounds.0
                + rng.next_double() * (adaptive.c_bounds.1 - adaptive.c_bounds.0);
            (m, c)
        }
    }
}

/// Shared loop behind the generational engines. `cross = None` skips the
/// crossover step with no random draws, so a mutation-only run has the same
/// trajectory as a zero-crossover run. `adaptive = Some` reads rates from
/// the individuals instead of the config and, when `sigma_rate > 0`,
/// perturbs each child's rates after variation.
#[allow(clippy::too_many_arguments)]
fn run_generational_inner<G, P>(
    cfg: &EngineConfig,
    adaptive: Option<&AdaptiveConfig>,
    fitness: &FitnessFunction<P>,
    select: &mut dyn SelectionOperator,
    mut cross: Option<&mut dyn CrossoverOperator<G>>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
    mut observer: Option<&mut dyn FnMut(u64, &[Individual<G>])>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    cfg.validate_generational()?;
    if let Some(a) = adaptive {
        a.validate()?;
    }
    let started = Instant::now();
    let n = cfg.population_size;
    let mut state = RunState::new(tracker);
    let mut span: Option<RateSpan> = None;

    let mut pop: Vec<Individual<G>> = Vec::with_capacity(n);
    for _ in 0..n {
        let genome = init(rng);
        let rates = adaptive.map(|a| initial_rates(a, rng));
        let mut ind = Individual {
            genome,
            cost: 0.0,
            fitness: 0.0,
            is_optimal: false,
            rates,
        };
        state.evaluate(fitness, &mut ind);
        pop.push(ind);
    }
    observe_rates(&mut span, &pop, adaptive);
    if let Some(obs) = observer.as_deref_mut() {
        obs(0, &pop);
    }

    select.init(cfg.stopping.max_generations.unwrap_or(0) as usize);

    let mut generations = 0u64;
    while !cfg
        .stopping
        .met(generations, state.evaluations, state.best_cost())
    {
        let fv = FitnessVector::new(pop.iter().map(|i| i.fitness).collect())?;
        let parents = n - cfg.elitism;
        let mut selected = vec![0usize; parents];
        select.select(&fv, rng, &mut selected)?;

        let mut next: Vec<Individual<G>> = elite_indices(&pop, cfg.elitism)
            .into_iter()
            .map(|i| pop[i].clone())
            .collect();
        let mut offspring: Vec<Individual<G>> =
            selected.iter().map(|&i| pop[i].clone()).collect();
        let mut changed = vec![false; parents];

        if let Some(cross_op) = cross.as_deref_mut() {
            let mut pair = 0;
            // Consecutive pairing; an odd leftover passes through untouched.
            while pair + 1 < parents {
                let c_rate = match adaptive {
                    Some(_) => offspring[pair].rates.expect("adaptive individual").1,
                    None => cfg.crossover_rate,
                };
                if c_rate > 0.0 && rng.next_bool(c_rate) {
                    let (left, right) = offspring.split_at_mut(pair + 1);
                    cross_op.cross(&mut left[pair].genome, &mut right[0].genome, rng);
                    changed[pair] = true;
                    changed[pair + 1] = true;
                }
                pair += 2;
            }
        }

        for (i, child) in offspring.iter_mut().enumerate() {
            let m_rate = match adaptive {
                Some(_) => child.rates.expect("adaptive individual").0,
                None => cfg.mutation_rate,
            };
            if m_rate > 0.0 && rng.next_bool(m_rate) {
                mutate.mutate(&mut child.genome, rng);
                changed[i] = true;
            }
        }

        if let Some(a) = adaptive {
            if a.sigma_rate > 0.0 {
                for child in offspring.iter_mut() {
                    let (m, c) = child.rates.expect("adaptive individual");
                    child.rates = Some((
                        clamp(m + rng.next_gaussian(a.sigma_rate), a.m_bounds),
                        clamp(c + rng.next_gaussian(a.sigma_rate), a.c_bounds),
                    ));
                }
            }
        }

        for (i, child) in offspring.iter_mut().enumerate() {
            if changed[i] {
                state.evaluate(fitness, child);
            }
        }

        next.append(&mut offspring);
        pop = next;
        observe_rates(&mut span, &pop, adaptive);
        generations += 1;
        if let Some(obs) = observer.as_deref_mut() {
            obs(generations, &pop);
        }
    }

    if let (Some(span), Some(_)) = (&mut span, adaptive) {
        let ms: Vec<f64> = pop.iter().map(|i| i.rates.unwrap().0).collect();
        let mean = ms.iter().sum::<f64>() / ms.len() as f64;
        span.final_m_variance =
            ms.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>() / ms.len() as f64;
    }
    Ok(state.finish(generations, cfg.seed, started, span))
}

fn observe_rates<G>(
    span: &mut Option<RateSpan>,
    pop: &[Individual<G>],
    adaptive: Option<&AdaptiveConfig>,
) {
    if adaptive.is_none() {
        return;
    }
    let span = span.get_or_insert(RateSpan {
        m_min: f64::INFINITY,
        m_max: f64::NEG_INFINITY,
        c_min: f64::INFINITY,
        c_max: f64::NEG_INFINITY,
        final_m_variance: 0.0,
    });
    for ind in pop {
        let (m, c) = ind.rates.expect("adaptive individual");
        span.m_min = span.m_min.min(m);
        span.m_max = span.m_max.max(m);
        span.c_min = span.c_min.min(c);
        span.c_max = span.c_max.max(c);
    }
}

/// Generational EA with elitism and fixed crossover/mutation rates.
#[allow(clippy::too_many_arguments)]
pub fn run_generational<G, P>(
    cfg: &EngineConfig,
    fitness: &FitnessFunction<P>,
    select: &mut dyn SelectionOperator,
    cross: &mut dyn CrossoverOperator<G>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    run_generational_inner(
        cfg,
        None,
        fitness,
        select,
        Some(cross),
        mutate,
        init,
        rng,
        tracker,
        None,
    )
}

/// [`run_generational`] with a per-generation observer: called with the
/// generation number and the full population after initialization
/// (generation 0) and after every completed generation.
#[allow(clippy::too_many_arguments)]
pub fn run_generational_observed<G, P>(
    cfg: &EngineConfig,
    fitness: &FitnessFunction<P>,
    select: &mut dyn SelectionOperator,
    cross: &mut dyn CrossoverOperator<G>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
    observer: &mut dyn FnMut(u64, &[Individual<G>]),
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    run_generational_inner(
        cfg,
        None,
        fitness,
        select,
        Some(cross),
        mutate,
        init,
        rng,
        tracker,
        Some(observer),
    )
}

/// Generational EA without a crossover step.
#[allow(clippy::too_many_arguments)]
pub fn run_mutation_only_generational<G, P>(
    cfg: &EngineConfig,
    fitness: &FitnessFunction<P>,
    select: &mut dyn SelectionOperator,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    run_generational_inner(
        cfg, None, fitness, select, None, mutate, init, rng, tracker, None,
    )
}

/// Generational EA with self-adaptive per-member rates: crossover for a pair
/// is governed by the first member's `c`, mutation of member `i` by its own
/// `m`, and children's rates are Gaussian-perturbed and clamped.
#[allow(clippy::too_many_arguments)]
pub fn run_adaptive<G, P>(
    cfg: &EngineConfig,
    adaptive: &AdaptiveConfig,
    fitness: &FitnessFunction<P>,
    select: &mut dyn SelectionOperator,
    cross: &mut dyn CrossoverOperator<G>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    run_generational_inner(
        cfg,
        Some(adaptive),
        fitness,
        select,
        Some(cross),
        mutate,
        init,
        rng,
        tracker,
        None,
    )
}

/// (μ+λ)-EA: λ offspring cloned from parents (selection operator if given,
/// uniform otherwise), varied, then the μ best of parents ∪ offspring
/// survive with ties favoring incumbents. λ = 1 gives the (μ+1)-EA with the
/// crossover step skipped.
#[allow(clippy::too_many_arguments)]
pub fn run_mu_plus_lambda<G, P>(
    cfg: &EngineConfig,
    fitness: &FitnessFunction<P>,
    mut select: Option<&mut (dyn SelectionOperator + 'static)>,
    mut cross: Option<&mut (dyn CrossoverOperator<G> + 'static)>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    cfg.validate_mu_lambda()?;
    let started = Instant::now();
    let (mu, lambda) = (cfg.mu, cfg.lambda);
    let mut state = RunState::new(tracker);

    let mut pop: Vec<Individual<G>> = Vec::with_capacity(mu);
    for _ in 0..mu {
        let mut ind = Individual {
            genome: init(rng),
            cost: 0.0,
            fitness: 0.0,
            is_optimal: false,
            rates: None,
        };
        state.evaluate(fitness, &mut ind);
        pop.push(ind);
    }
    if let Some(sel) = select.as_deref_mut() {
        sel.init(cfg.stopping.max_generations.unwrap_or(0) as usize);
    }

    let mut generations = 0u64;
    while !cfg
        .stopping
        .met(generations, state.evaluations, state.best_cost())
    {
        let mut chosen = vec![0usize; lambda];
        match select.as_deref_mut() {
            Some(sel) => {
                let fv = FitnessVector::new(pop.iter().map(|i| i.fitness).collect())?;
                sel.select(&fv, rng, &mut chosen)?;
            }
            None => {
                for slot in chosen.iter_mut() {
                    *slot = rng.next_int(mu);
                }
            }
        }
        let mut offspring: Vec<Individual<G>> =
            chosen.iter().map(|&i| pop[i].clone()).collect();
        let mut changed = vec![false; lambda];

        if lambda >= 2 {
            if let Some(cross_op) = cross.as_deref_mut() {
                let mut pair = 0;
                while pair + 1 < lambda {
                    if cfg.crossover_rate > 0.0 && rng.next_bool(cfg.crossover_rate) {
                        let (left, right) = offspring.split_at_mut(pair + 1);
                        cross_op.cross(&mut left[pair].genome, &mut right[0].genome, rng);
                        changed[pair] = true;
                        changed[pair + 1] = true;
                    }
                    pair += 2;
                }
            }
        }
        for (i, child) in offspring.iter_mut().enumerate() {
            if cfg.mutation_rate > 0.0 && rng.next_bool(cfg.mutation_rate) {
                mutate.mutate(&mut child.genome, rng);
                changed[i] = true;
            }
        }
        for (i, child) in offspring.iter_mut().enumerate() {
            if changed[i] {
                state.evaluate(fitness, child);
            }
        }

        // Plus-selection: stable sort keeps incumbents ahead of equally fit
        // offspring.
        pop.append(&mut offspring);
        pop.sort_by(|a, b| b.fitness.partial_cmp(&a.fitness).unwrap());
        pop.truncate(mu);
        generations += 1;
    }
    Ok(state.finish(generations, cfg.seed, started, None))
}

/// (1+1)-EA: mutate a clone each step, accept when the child's fitness is at
/// least the parent's (ties accepted).
pub fn run_one_plus_one<G, P>(
    cfg: &EngineConfig,
    fitness: &FitnessFunction<P>,
    mutate: &mut dyn MutationOperator<G>,
    init: &mut dyn FnMut(&mut RandomStream) -> G,
    rng: &mut RandomStream,
    tracker: Option<&ProgressTracker<G>>,
) -> Result<RunResult<G>>
where
    G: Clone,
    P: Problem<G>,
{
    cfg.stopping.validate()?;
    let started = Instant::now();
    let mut state = RunState::new(tracker);
    let mut parent = Individual {
        genome: init(rng),
        cost: 0.0,
        fitness: 0.0,
        is_optimal: false,
        rates: None,
    };
    state.evaluate(fitness, &mut parent);

    let mut generations = 0u64;
    while !cfg
        .stopping
        .met(generations, state.evaluations, state.best_cost())
    {
        let mut child = parent.clone();
        mutate.mutate(&mut child.genome, rng);
        state.evaluate(fitness, &mut child);
        if child.fitness >= parent.fitness {
            parent = child;
        }
        generations += 1;
    }
    Ok(state.finish(generations, cfg.seed, started, None))
}

/// Runs `replicas` independent replicas, each single-threaded with a stream
/// split from the master seed, sharing one [`ProgressTracker`]. The result
/// is reduced over replica results in index order with strict-improvement
/// comparison, so it is bit-identical to running the same replicas
/// sequentially and independent of thread scheduling. `threads` caps the
/// number of worker threads (0 means one thread per replica).
pub fn run_parallel<G, F>(
    replicas: usize,
    threads: usize,
    master_seed: u64,
    tracker: &ProgressTracker<G>,
    runner: F,
) -> Result<RunResult<G>>
where
    G: Clone + Send,
    F: Fn(usize, RandomStream, &ProgressTracker<G>) -> Result<RunResult<G>> + Sync,
{
    if replicas < 1 {
        return Err(Error::invalid_argument("replica count must be >= 1"));
    }
    let started = Instant::now();
    let mut master = RandomStream::from_seed(master_seed);
    let streams: Vec<RandomStream> = (0..replicas).map(|_| master.split()).collect();

    let workers = if threads == 0 {
        replicas
    } else {
        threads.min(replicas)
    };
    let results: Mutex<Vec<Option<Result<RunResult<G>>>>> =
        Mutex::new((0..replicas).map(|_| None).collect());
    let jobs: Mutex<Vec<(usize, RandomStream)>> =
        Mutex::new(streams.into_iter().enumerate().rev().collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let job = jobs.lock().unwrap().pop();
                let Some((idx, stream)) = job else { break };
                let result = runner(idx, stream, tracker);
                results.lock().unwrap()[idx] = Some(result);
            });
        }
    });

    let results = results.into_inner().unwrap();
    let mut best: Option<SolutionCostPair<G>> = None;
    let mut evaluations = 0u64;
    let mut generations = 0u64;
    for result in results {
        let r = result.expect("every replica ran")?;
        evaluations += r.evaluations;
        generations = generations.max(r.generations);
        if best.as_ref().is_none_or(|b| r.best.cost < b.cost) {
            best = Some(r.best);
        }
    }
    Ok(RunResult {
        best: best.expect("replicas >= 1"),
        evaluations,
        generations,
        elapsed: started.elapsed(),
        seed: master_seed,
        rate_span: None,
    })
}
