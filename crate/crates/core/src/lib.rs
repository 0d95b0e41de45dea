//! Evolutionary computation library: seedable splittable randomness, bit
//! vector / integer vector / real vector / permutation representations, a
//! catalog of selection, mutation, and crossover operators, generational and
//! steady-state engines with optional self-adaptive rates and parallel
//! multi-population execution, and a suite of benchmark problems.
//!
//! Every run is a pure function of its configuration and seed.

pub mod engines;
pub mod error;
pub mod operators;
pub mod ops_bits;
pub mod ops_perm;
pub mod ops_vectors;
pub mod problem;
pub mod problems;
pub mod representations;
pub mod rng;
pub mod selection;

pub use error::{Error, Result};
pub use problem::{CostToFitness, CostValue, FitnessFunction, Problem, ProgressTracker, SolutionCostPair};
pub use representations::{BitVector, IntegerVector, Permutation, RealVector};
pub use rng::RandomStream;
