//! Problem and fitness abstractions, cost-to-fitness transforms, and the
//! shared best-so-far tracker.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

/// Scalar cost type: problems are either integer-cost or real-cost.
pub trait CostValue: Copy + PartialOrd + Send + Sync + std::fmt::Display + 'static {
    fn to_f64(self) -> f64;
}

impl CostValue for i64 {
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl CostValue for f64 {
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

/// An optimization problem over genome type `G`. Cost is minimized;
/// `value` is the raw objective and may equal the cost.
pub trait Problem<G>: Send + Sync {
    type Cost: CostValue;

    fn cost(&self, genome: &G) -> Self::Cost;

    fn value(&self, genome: &G) -> Self::Cost {
        self.cost(genome)
    }

    #[inline]
    fn cost_as_double(&self, genome: &G) -> f64 {
        self.cost(genome).to_f64()
    }

    /// Known lower bound on cost, when the optimum is known.
    fn min_cost(&self) -> Option<Self::Cost> {
        None
    }

    fn is_min_cost(&self, cost: Self::Cost) -> bool {
        self.min_cost().is_some_and(|m| cost == m)
    }

    fn solution_cost_pair(&self, genome: &G) -> SolutionCostPair<G>
    where
        G: Clone,
    {
        let cost = self.cost(genome);
        SolutionCostPair {
            solution: genome.clone(),
            cost: cost.to_f64(),
            contains_known_optimal: self.is_min_cost(cost),
        }
    }
}

impl<G, P: Problem<G> + ?Sized> Problem<G> for &P {
    type Cost = P::Cost;

    fn cost(&self, genome: &G) -> Self::Cost {
        (**self).cost(genome)
    }

    fn value(&self, genome: &G) -> Self::Cost {
        (**self).value(genome)
    }

    fn min_cost(&self) -> Option<Self::Cost> {
        (**self).min_cost()
    }
}

/// A solution together with the cost it had when evaluated.
#[derive(Clone, Debug)]
pub struct SolutionCostPair<G> {
    pub solution: G,
    pub cost: f64,
    pub contains_known_optimal: bool,
}

/// Maps a cost function (minimized) to a fitness function (maximized).
#[derive(Clone, Copy, Debug)]
pub enum CostToFitness {
    /// `fitness = offset - cost`. The offset is an explicit parameter; choose
    /// it so typical fitness is positive when a scheme requires that.
    Negative { offset: f64 },
    /// `fitness = 1 / (1 + cost)`. Requires non-negative costs; negative
    /// costs produce mathematically valid but out-of-contract values.
    Inverse,
}

impl CostToFitness {
    #[inline]
    pub fn fitness_of_cost(&self, cost: f64) -> f64 {
        match *self {
            CostToFitness::Negative { offset } => offset - cost,
            CostToFitness::Inverse => 1.0 / (1.0 + cost),
        }
    }
}

/// A fitness view over a problem: higher is better, argmax fitness equals
/// argmin cost.
pub struct FitnessFunction<P> {
    problem: P,
    transform: CostToFitness,
}

impl<P> FitnessFunction<P> {
    pub fn negative_cost(problem: P, offset: f64) -> Self {
        Self {
            problem,
            transform: CostToFitness::Negative { offset },
        }
    }

    pub fn inverse_cost(problem: P) -> Self {
        Self {
            problem,
            transform: CostToFitness::Inverse,
        }
    }

    pub fn problem(&self) -> &P {
        &self.problem
    }

    pub fn transform(&self) -> CostToFitness {
        self.transform
    }

    pub fn fitness<G>(&self, genome: &G) -> f64
    where
        P: Problem<G>,
    {
        self.transform.fitness_of_cost(self.problem.cost_as_double(genome))
    }
}

/// Shared run bookkeeping: monotone best-so-far, evaluation counter, and
/// found-optimal flag. The one object parallel replicas share.
pub struct ProgressTracker<G> {
    best: Mutex<Option<SolutionCostPair<G>>>,
    evaluations: AtomicU64,
    found_optimal: AtomicBool,
}

impl<G: Clone> ProgressTracker<G> {
    pub fn new() -> Self {
        Self {
            best: Mutex::new(None),
            evaluations: AtomicU64::new(0),
            found_optimal: AtomicBool::new(false),
        }
    }

    /// Records a candidate; the stored best changes only on strict cost
    /// improvement.
    pub fn update(&self, candidate: &G, cost: f64, is_known_optimal: bool) {
        let mut best = self.best.lock().unwrap();
        let improves = best.as_ref().is_none_or(|b| cost < b.cost);
        if improves {
            *best = Some(SolutionCostPair {
                solution: candidate.clone(),
                cost,
                contains_known_optimal: is_known_optimal,
            });
            if is_known_optimal {
                self.found_optimal.store(true, Ordering::Release);
            }
        }
    }

    pub fn add_evaluations(&self, n: u64) {
        self.evaluations.fetch_add(n, Ordering::Relaxed);
    }

    pub fn total_evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn found_optimal(&self) -> bool {
        self.found_optimal.load(Ordering::Acquire)
    }

    pub fn best(&self) -> Option<SolutionCostPair<G>> {
        self.best.lock().unwrap().clone()
    }
}

impl<G: Clone> Default for ProgressTracker<G> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Table(Vec<f64>);

    impl Problem<usize> for Table {
        type Cost = f64;
        fn cost(&self, g: &usize) -> f64 {
            self.0[*g]
        }
    }

    #[test]
    fn negative_cost_reverses_order() {
        // costs {a:5, b:2}, offset 10 -> fitness {a:5, b:8}
        let f = FitnessFunction::negative_cost(Table(vec![5.0, 2.0]), 10.0);
        assert_eq!(f.fitness(&0), 5.0);
        assert_eq!(f.fitness(&1), 8.0);
    }

    #[test]
    fn negative_cost_at_offset_is_zero() {
        let f = FitnessFunction::negative_cost(Table(vec![10.0]), 10.0);
        assert_eq!(f.fitness(&0), 0.0);
    }

    #[test]
    fn inverse_cost_values() {
        let f = FitnessFunction::inverse_cost(Table(vec![0.0, 1.0]));
        assert_eq!(f.fitness(&0), 1.0);
        assert_eq!(f.fitness(&1), 0.5);
    }

    #[test]
    fn transforms_reverse_cost_ranking() {
        // Sort-and-compare oracle on 100 random values.
        let mut rng = crate::rng::RandomStream::from_seed(5);
        let costs: Vec<f64> = (0..100).map(|_| rng.next_double() * 50.0).collect();
        for transform in [CostToFitness::Negative { offset: 7.0 }, CostToFitness::Inverse] {
            let mut by_cost: Vec<usize> = (0..costs.len()).collect();
            by_cost.sort_by(|&a, &b| costs[a].partial_cmp(&costs[b]).unwrap());
            let mut by_fitness: Vec<usize> = (0..costs.len()).collect();
            by_fitness.sort_by(|&a, &b| {
                transform
                    .fitness_of_cost(costs[b])
                    .partial_cmp(&transform.fitness_of_cost(costs[a]))
                    .unwrap()
            });
            assert_eq!(by_cost, by_fitness);
        }
    }

    #[test]
    fn tracker_monotone_best() {
        let tracker = ProgressTracker::new();
        let mut last = f64::INFINITY;
        let mut rng = crate::rng::RandomStream::from_seed(6);
        for _ in 0..1000 {
            let cost = rng.next_double() * 100.0;
            tracker.update(&0u8, cost, false);
            let best = tracker.best().unwrap().cost;
            assert!(best <= last && best <= cost);
            last = best;
        }
    }

    #[test]
    fn tracker_ignores_equal_cost() {
        let tracker = ProgressTracker::new();
        tracker.update(&1u8, 5.0, false);
        tracker.update(&2u8, 5.0, false);
        assert_eq!(tracker.best().unwrap().solution, 1);
    }

    #[test]
    fn solution_cost_pair_flags_optimal() {
        struct Zero;
        impl Problem<u8> for Zero {
            type Cost = i64;
            fn cost(&self, g: &u8) -> i64 {
                *g as i64
            }
            fn min_cost(&self) -> Option<i64> {
                Some(0)
            }
        }
        let pair = Zero.solution_cost_pair(&0);
        assert!(pair.contains_known_optimal);
        let pair = Zero.solution_cost_pair(&3);
        assert!(!pair.contains_known_optimal);
    }
}
