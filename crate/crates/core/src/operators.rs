//! Operator contracts shared by every representation, plus hybrid
//! combinators that pick among several operators at random.
//!
//! Operators mutate genomes in place. Randomness is always drawn from a
//! caller-supplied [`RandomStream`]; `split` produces an independent
//! functional copy sharing no mutable state (scratch buffers, schedule
//! position) with the original.

use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::selection::FitnessVector;

pub trait MutationOperator<G>: Send {
    fn mutate(&mut self, genome: &mut G, rng: &mut RandomStream);

    fn split(&self) -> Box<dyn MutationOperator<G>>;
}

pub trait CrossoverOperator<G>: Send {
    /// Transforms both genomes in place: the parents become the children.
    fn cross(&mut self, a: &mut G, b: &mut G, rng: &mut RandomStream);

    fn split(&self) -> Box<dyn CrossoverOperator<G>>;
}

pub trait SelectionOperator: Send {
    /// Called once before a run with the total generation count. A no-op for
    /// stateless schemes; annealed schemes reset their schedule here.
    fn init(&mut self, _generations: usize) {}

    /// Fills `selected` with population indices drawn according to the
    /// scheme. One call corresponds to one generation for scheduled schemes.
    fn select(
        &mut self,
        fitnesses: &FitnessVector,
        rng: &mut RandomStream,
        selected: &mut [usize],
    ) -> Result<()>;

    fn split(&self) -> Box<dyn SelectionOperator>;
}

fn validate_hybrid(count: usize, weights: &Option<Vec<f64>>) -> Result<()> {
    if count == 0 {
        return Err(Error::invalid_argument("hybrid operator needs at least one op"));
    }
    if let Some(w) = weights {
        if w.len() != count {
            return Err(Error::invalid_argument(
                "hybrid weights length must match op count",
            ));
        }
        if w.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::invalid_argument("hybrid weights must be positive"));
        }
    }
    Ok(())
}

fn pick(weights: &Option<Vec<f64>>, count: usize, rng: &mut RandomStream) -> usize {
    match weights {
        Some(w) => rng.weighted_index(w).expect("validated at construction"),
        None => rng.next_int(count),
    }
}

/// Applies one of several mutation operators per call, chosen uniformly or
/// by weight.
pub struct HybridMutation<G> {
    ops: Vec<Box<dyn MutationOperator<G>>>,
    weights: Option<Vec<f64>>,
}

impl<G: 'static> HybridMutation<G> {
    pub fn new(ops: Vec<Box<dyn MutationOperator<G>>>, weights: Option<Vec<f64>>) -> Result<Self> {
        validate_hybrid(ops.len(), &weights)?;
        Ok(Self { ops, weights })
    }
}

impl<G: 'static> MutationOperator<G> for HybridMutation<G> {
    fn mutate(&mut self, genome: &mut G, rng: &mut RandomStream) {
        let i = pick(&self.weights, self.ops.len(), rng);
        self.ops[i].mutate(genome, rng);
    }

    fn split(&self) -> Box<dyn MutationOperator<G>> {
        Box::new(HybridMutation {
            ops: self.ops.iter().map(|op| op.split()).collect(),
            weights: self.weights.clone(),
        })
    }
}

/// Applies one of several crossover operators per call, chosen uniformly or
/// by weight.
pub struct HybridCrossover<G> {
    ops: Vec<Box<dyn CrossoverOperator<G>>>,
    weights: Option<Vec<f64>>,
}

impl<G: 'static> HybridCrossover<G> {
    pub fn new(ops: Vec<Box<dyn CrossoverOperator<G>>>, weights: Option<Vec<f64>>) -> Result<Self> {
        validate_hybrid(ops.len(), &weights)?;
        Ok(Self { ops, weights })
    }
}

impl<G: 'static> CrossoverOperator<G> for HybridCrossover<G> {
    fn cross(&mut self, a: &mut G, b: &mut G, rng: &mut RandomStream) {
        let i = pick(&self.weights, self.ops.len(), rng);
        self.ops[i].cross(a, b, rng);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<G>> {
        Box::new(HybridCrossover {
            ops: self.ops.iter().map(|op| op.split()).collect(),
            weights: self.weights.clone(),
        })
    }
}
