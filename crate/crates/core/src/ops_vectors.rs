//! Mutation operators for real and integer vectors.
//!
//! Gaussian, Cauchy, and uniform mutation perturb every component on each
//! call; per-component-probability behavior can be composed via the hybrid
//! combinators. Bounded vectors are hard-clamped after perturbation.

use crate::error::{Error, Result};
use crate::operators::MutationOperator;
use crate::representations::{IntegerVector, RealVector};
use crate::rng::RandomStream;

/// Adds `N(0, sigma)` noise to every component.
#[derive(Clone)]
pub struct GaussianMutation {
    sigma: f64,
}

impl GaussianMutation {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::invalid_argument("gaussian sigma must be positive"));
        }
        Ok(Self { sigma })
    }
}

impl MutationOperator<RealVector> for GaussianMutation {
    fn mutate(&mut self, genome: &mut RealVector, rng: &mut RandomStream) {
        for v in &mut genome.values {
            *v += rng.next_gaussian(self.sigma);
        }
        genome.clamp_to_bounds();
    }

    fn split(&self) -> Box<dyn MutationOperator<RealVector>> {
        Box::new(self.clone())
    }
}

/// Adds `Cauchy(0, scale)` noise to every component.
#[derive(Clone)]
pub struct CauchyMutation {
    scale: f64,
}

impl CauchyMutation {
    pub fn new(scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::invalid_argument("cauchy scale must be positive"));
        }
        Ok(Self { scale })
    }
}

impl MutationOperator<RealVector> for CauchyMutation {
    fn mutate(&mut self, genome: &mut RealVector, rng: &mut RandomStream) {
        for v in &mut genome.values {
            *v += rng.next_cauchy(self.scale);
        }
        genome.clamp_to_bounds();
    }

    fn split(&self) -> Box<dyn MutationOperator<RealVector>> {
        Box::new(self.clone())
    }
}

/// Adds a uniform deviate from `[-w, w]` to every component.
#[derive(Clone)]
pub struct UniformMutation {
    w: f64,
}

impl UniformMutation {
    pub fn new(w: f64) -> Result<Self> {
        if !(w > 0.0) {
            return Err(Error::invalid_argument("uniform mutation width must be positive"));
        }
        Ok(Self { w })
    }
}

impl MutationOperator<RealVector> for UniformMutation {
    fn mutate(&mut self, genome: &mut RealVector, rng: &mut RandomStream) {
        for v in &mut genome.values {
            *v += (2.0 * rng.next_double() - 1.0) * self.w;
        }
        genome.clamp_to_bounds();
    }

    fn split(&self) -> Box<dyn MutationOperator<RealVector>> {
        Box::new(self.clone())
    }
}

/// Adds a uniform integer from `[-w, w]` to every component.
#[derive(Clone)]
pub struct UniformIntegerMutation {
    w: i64,
}

impl UniformIntegerMutation {
    pub fn new(w: i64) -> Result<Self> {
        if w <= 0 {
            return Err(Error::invalid_argument("uniform mutation width must be positive"));
        }
        Ok(Self { w })
    }
}

impl MutationOperator<IntegerVector> for UniformIntegerMutation {
    fn mutate(&mut self, genome: &mut IntegerVector, rng: &mut RandomStream) {
        let span = (2 * self.w + 1) as usize;
        for v in &mut genome.values {
            *v += rng.next_int(span) as i64 - self.w;
        }
        genome.clamp_to_domain();
    }

    fn split(&self) -> Box<dyn MutationOperator<IntegerVector>> {
        Box::new(self.clone())
    }
}

/// With probability `m` per component, replaces the value with a different
/// uniform value from the vector's domain. Requires a domain of size >= 2.
#[derive(Clone)]
pub struct RandomValueChangeMutation {
    m: f64,
}

impl RandomValueChangeMutation {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= 1.0) {
            return Err(Error::invalid_argument("change rate must be in (0, 1]"));
        }
        Ok(Self { m })
    }
}

impl MutationOperator<IntegerVector> for RandomValueChangeMutation {
    fn mutate(&mut self, genome: &mut IntegerVector, rng: &mut RandomStream) {
        let (lo, hi) = genome
            .domain()
            .expect("random value change requires a bounded integer vector");
        assert!(hi > lo, "random value change requires a domain of size >= 2");
        let span = (hi - lo) as usize; // size of domain minus one
        for v in &mut genome.values {
            if rng.next_bool(self.m) {
                // Draw from the domain excluding the current value.
                let mut pick = lo + rng.next_int(span) as i64;
                if pick >= *v {
                    pick += 1;
                }
                *v = pick;
            }
        }
    }

    fn split(&self) -> Box<dyn MutationOperator<IntegerVector>> {
        Box::new(self.clone())
    }
}
