//! Selection schemes: fitness proportionate, SUS, tournament, truncation,
//! linear and exponential rank, Boltzmann, and random selection, plus
//! sigma scaling and fitness shifting.
//!
//! Rank- and Boltzmann-based schemes come in a roulette form and an SUS
//! form. All schemes fill a caller-provided index slice.

use crate::error::{Error, Result};
use crate::operators::SelectionOperator;
use crate::rng::RandomStream;

/// Population-ordered fitness values. Integer fitness converts to real at
/// construction; all weighting is done in f64.
#[derive(Clone, Debug)]
pub struct FitnessVector {
    values: Vec<f64>,
}

impl FitnessVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid_argument("fitness vector must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_argument("fitness values must be finite"));
        }
        Ok(Self { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| v as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Sigma scaling: `f' = max(floor, 1 + (f - mean) / (c * sigma))`, all ones
/// when the population variance is zero. The floor of 0.1 keeps every member
/// selectable by proportionate schemes.
pub fn sigma_scaling(f: &FitnessVector, c: f64) -> Result<FitnessVector> {
    if !(c > 0.0) {
        return Err(Error::invalid_argument("sigma scaling c must be positive"));
    }
    const FLOOR: f64 = 0.1;
    let n = f.len() as f64;
    let mean = f.values.iter().sum::<f64>() / n;
    let var = f.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let sigma = var.sqrt();
    let scaled = if sigma == 0.0 {
        vec![1.0; f.len()]
    } else {
        f.values
            .iter()
            .map(|v| (1.0 + (v - mean) / (c * sigma)).max(FLOOR))
            .collect()
    };
    FitnessVector::new(scaled)
}

/// Shifts all fitnesses to be positive when any is non-positive:
/// `f' = f - min(f) + 1`; already-positive vectors pass through unchanged.
pub fn shifted_fitness(f: &FitnessVector) -> FitnessVector {
    let min = f.values.iter().cloned().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        return f.clone();
    }
    FitnessVector {
        values: f.values.iter().map(|v| v - min + 1.0).collect(),
    }
}

fn check_output(fitnesses: &FitnessVector, selected: &[usize]) -> Result<()> {
    if selected.is_empty() {
        return Err(Error::invalid_argument("selection output must be non-empty"));
    }
    if fitnesses.is_empty() {
        return Err(Error::invalid_argument("population must be non-empty"));
    }
    Ok(())
}

fn check_positive(fitnesses: &FitnessVector, scheme: &str) -> Result<()> {
    if fitnesses.values.iter().any(|&v| v <= 0.0) {
        return Err(Error::invalid_argument(format!(
            "{scheme} requires all fitness values positive; scale or shift first"
        )));
    }
    Ok(())
}

/// One independent roulette spin per output slot.
fn roulette_fill(weights: &[f64], rng: &mut RandomStream, selected: &mut [usize]) -> Result<()> {
    for slot in selected.iter_mut() {
        *slot = rng.weighted_index(weights)?;
    }
    Ok(())
}

/// Baker's stochastic universal sampling: M equally spaced pointers from a
/// single spin, so member i receives floor(e_i) or ceil(e_i) copies where
/// e_i = M * w_i / sum(w). The result is shuffled so downstream consecutive
/// pairing is unbiased.
fn sus_fill(weights: &[f64], rng: &mut RandomStream, selected: &mut [usize]) -> Result<()> {
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
        return Err(Error::invalid_argument(
            "SUS requires non-negative weights with positive sum",
        ));
    }
    let m = selected.len() as f64;
    let step = total / m;
    let mut pointer = rng.next_double() * step;
    let mut acc = 0.0;
    let mut idx = 0;
    for slot in selected.iter_mut() {
        while acc + weights[idx] <= pointer && idx + 1 < weights.len() {
            acc += weights[idx];
            idx += 1;
        }
        *slot = idx;
        pointer += step;
    }
    rng.shuffle(selected);
    Ok(())
}

/// Rank of each member, 1 = worst .. N = best, ties broken by stable sort
/// on (fitness, index) for deterministic rank assignment.
fn ranks(fitnesses: &FitnessVector) -> Vec<usize> {
    let n = fitnesses.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        fitnesses.values[a]
            .partial_cmp(&fitnesses.values[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r + 1;
    }
    rank
}

/// Weighted roulette wheel over raw fitness.
#[derive(Clone, Default)]
pub struct FitnessProportionate;

impl SelectionOperator for FitnessProportionate {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        check_positive(fitnesses, "fitness proportionate selection")?;
        roulette_fill(&fitnesses.values, rng, selected)
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Stochastic universal sampling over raw fitness.
#[derive(Clone, Default)]
pub struct StochasticUniversalSampling;

impl SelectionOperator for StochasticUniversalSampling {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        check_positive(fitnesses, "stochastic universal sampling")?;
        sus_fill(&fitnesses.values, rng, selected)
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// k entrants drawn uniformly with replacement; highest fitness wins,
/// ties to the lowest index.
#[derive(Clone)]
pub struct Tournament {
    k: usize,
}

impl Tournament {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid_argument("tournament size must be at least 1"));
        }
        Ok(Self { k })
    }
}

impl SelectionOperator for Tournament {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let n = fitnesses.len();
        for slot in selected.iter_mut() {
            let mut winner = rng.next_int(n);
            for _ in 1..self.k {
                let challenger = rng.next_int(n);
                let better = fitnesses.values[challenger] > fitnesses.values[winner]
                    || (fitnesses.values[challenger] == fitnesses.values[winner]
                        && challenger < winner);
                if better {
                    winner = challenger;
                }
            }
            *slot = winner;
        }
        Ok(())
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Each slot uniform over the k highest-fitness members (stable rank ties).
#[derive(Clone)]
pub struct Truncation {
    k: usize,
}

impl Truncation {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid_argument("truncation k must be at least 1"));
        }
        Ok(Self { k })
    }
}

impl SelectionOperator for Truncation {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let n = fitnesses.len();
        if self.k > n {
            return Err(Error::invalid_argument(format!(
                "truncation k={} exceeds population size {n}",
                self.k
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            fitnesses.values[b]
                .partial_cmp(&fitnesses.values[a])
                .unwrap()
                .then(a.cmp(&b))
        });
        let top = &order[..self.k];
        for slot in selected.iter_mut() {
            *slot = top[rng.next_int(self.k)];
        }
        Ok(())
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Roulette or SUS sampling over a weight vector derived from fitness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingKind {
    Roulette,
    Sus,
}

/// Linear rank selection: weight of rank r (1 = worst .. N = best) is
/// `2 - eta + 2(eta - 1)(r - 1)/(N - 1)` with `eta` in [1, 2].
#[derive(Clone)]
pub struct LinearRank {
    eta: f64,
    sampling: SamplingKind,
}

impl LinearRank {
    pub fn new(eta: f64, sampling: SamplingKind) -> Result<Self> {
        if !(1.0..=2.0).contains(&eta) {
            return Err(Error::invalid_argument("linear rank eta must be in [1, 2]"));
        }
        Ok(Self { eta, sampling })
    }

    fn weights(&self, fitnesses: &FitnessVector) -> Vec<f64> {
        let n = fitnesses.len();
        if n == 1 {
            return vec![1.0];
        }
        let rank = ranks(fitnesses);
        rank.iter()
            .map(|&r| 2.0 - self.eta + 2.0 * (self.eta - 1.0) * (r as f64 - 1.0) / (n as f64 - 1.0))
            .collect()
    }
}

impl SelectionOperator for LinearRank {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let weights = self.weights(fitnesses);
        match self.sampling {
            SamplingKind::Roulette => roulette_fill(&weights, rng, selected),
            SamplingKind::Sus => sus_fill(&weights, rng, selected),
        }
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Exponential rank selection: weight of rank r is `c^(N - r)`, `c` in (0, 1).
#[derive(Clone)]
pub struct ExponentialRank {
    c: f64,
    sampling: SamplingKind,
}

impl ExponentialRank {
    pub fn new(c: f64, sampling: SamplingKind) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::invalid_argument(
                "exponential rank c must be in (0, 1)",
            ));
        }
        Ok(Self { c, sampling })
    }

    fn weights(&self, fitnesses: &FitnessVector) -> Vec<f64> {
        let n = fitnesses.len();
        let rank = ranks(fitnesses);
        rank.iter().map(|&r| self.c.powi((n - r) as i32)).collect()
    }
}

impl SelectionOperator for ExponentialRank {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let weights = self.weights(fitnesses);
        match self.sampling {
            SamplingKind::Roulette => roulette_fill(&weights, rng, selected),
            SamplingKind::Sus => sus_fill(&weights, rng, selected),
        }
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Temperature schedule for Boltzmann selection, annealed from `t_init`
/// toward `t_min` across the generations announced via `init`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemperatureSchedule {
    Constant,
    Linear,
    Exponential,
}

/// Boltzmann selection: weight `exp(f_i / T)`. One `select` call advances
/// the schedule by one generation.
#[derive(Clone)]
pub struct Boltzmann {
    t_init: f64,
    t_min: f64,
    schedule: TemperatureSchedule,
    sampling: SamplingKind,
    generation: usize,
    total_generations: usize,
}

impl Boltzmann {
    pub fn new(
        t_init: f64,
        t_min: f64,
        schedule: TemperatureSchedule,
        sampling: SamplingKind,
    ) -> Result<Self> {
        if !(t_init > 0.0 && t_min > 0.0) {
            return Err(Error::invalid_argument("temperatures must be positive"));
        }
        if t_min > t_init {
            return Err(Error::invalid_argument("t_min must not exceed t_init"));
        }
        Ok(Self {
            t_init,
            t_min,
            schedule,
            sampling,
            generation: 0,
            total_generations: 0,
        })
    }

    fn temperature(&self) -> f64 {
        if self.total_generations == 0 {
            return self.t_init;
        }
        let g = self.generation.min(self.total_generations) as f64;
        let total = self.total_generations as f64;
        match self.schedule {
            TemperatureSchedule::Constant => self.t_init,
            TemperatureSchedule::Linear => {
                self.t_init - g * (self.t_init - self.t_min) / total
            }
            TemperatureSchedule::Exponential => {
                self.t_init * (self.t_min / self.t_init).powf(g / total)
            }
        }
    }

    fn weights(&self, fitnesses: &FitnessVector) -> Vec<f64> {
        let t = self.temperature();
        // Subtract the max before exponentiating to avoid overflow; the
        // selection distribution is unchanged.
        let max = fitnesses
            .values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        fitnesses
            .values
            .iter()
            .map(|&f| ((f - max) / t).exp())
            .collect()
    }
}

impl SelectionOperator for Boltzmann {
    fn init(&mut self, generations: usize) {
        self.total_generations = generations;
        self.generation = 0;
    }

    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let weights = self.weights(fitnesses);
        self.generation += 1;
        match self.sampling {
            SamplingKind::Roulette => roulette_fill(&weights, rng, selected),
            SamplingKind::Sus => sus_fill(&weights, rng, selected),
        }
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Uniform random selection; fitness is ignored.
#[derive(Clone, Default)]
pub struct RandomSelection;

impl SelectionOperator for RandomSelection {
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        check_output(fitnesses, selected)?;
        let n = fitnesses.len();
        for slot in selected.iter_mut() {
            *slot = rng.next_int(n);
        }
        Ok(())
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(self.clone())
    }
}

/// Applies sigma scaling and/or fitness shifting before delegating to an
/// inner scheme. Shifting runs first so scaling sees the shifted values.
pub struct ScaledSelection {
    inner: Box<dyn SelectionOperator>,
    sigma_c: Option<f64>,
    shift: bool,
}

impl ScaledSelection {
    pub fn new(inner: Box<dyn SelectionOperator>, sigma_c: Option<f64>, shift: bool) -> Self {
        Self {
            inner,
            sigma_c,
            shift,
        }
    }
}

impl SelectionOperator for ScaledSelection {
    fn init(&mut self, generations: usize) {
        self.inner.init(generations);
    }

    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()> {
        let mut f = fitnesses.clone();
        if self.shift {
            f = shifted_fitness(&f);
        }
        if let Some(c) = self.sigma_c {
            f = sigma_scaling(&f, c)?;
        }
        self.inner.select(&f, rng, selected)
    }

    fn split(&self) -> Box<dyn SelectionOperator> {
        Box::new(ScaledSelection {
            inner: self.inner.split(),
            sigma_c: self.sigma_c,
            shift: self.shift,
        })
    }
}
