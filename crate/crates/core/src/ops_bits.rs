//! Bit-flip mutation and the k-point / uniform crossover family.
//!
//! The crossovers are generic over any fixed-length vector genome whose
//! elements can be exchanged index-wise, so the same operators serve bit,
//! integer, and real vectors.

use crate::error::{Error, Result};
use crate::operators::{CrossoverOperator, MutationOperator};
use crate::representations::{BitVector, IntegerVector, RealVector};
use crate::rng::RandomStream;

/// Fixed-length genome supporting index-wise element exchange with a peer.
pub trait VectorGenome: Clone + Send + 'static {
    fn length(&self) -> usize;
    fn swap_at(&mut self, other: &mut Self, i: usize);
}

impl VectorGenome for BitVector {
    fn length(&self) -> usize {
        self.len()
    }
    fn swap_at(&mut self, other: &mut Self, i: usize) {
        self.swap_bit_with(other, i);
    }
}

impl VectorGenome for IntegerVector {
    fn length(&self) -> usize {
        self.len()
    }
    fn swap_at(&mut self, other: &mut Self, i: usize) {
        std::mem::swap(&mut self.values[i], &mut other.values[i]);
    }
}

impl VectorGenome for RealVector {
    fn length(&self) -> usize {
        self.len()
    }
    fn swap_at(&mut self, other: &mut Self, i: usize) {
        std::mem::swap(&mut self.values[i], &mut other.values[i]);
    }
}

/// Each bit flipped independently with probability `m`.
#[derive(Clone)]
pub struct BitFlipMutation {
    m: f64,
}

impl BitFlipMutation {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= 1.0) {
            return Err(Error::invalid_argument("bit flip rate must be in (0, 1]"));
        }
        Ok(Self { m })
    }
}

impl MutationOperator<BitVector> for BitFlipMutation {
    fn mutate(&mut self, genome: &mut BitVector, rng: &mut RandomStream) {
        for i in 0..genome.len() {
            if rng.next_bool(self.m) {
                genome.flip(i);
            }
        }
    }

    fn split(&self) -> Box<dyn MutationOperator<BitVector>> {
        Box::new(self.clone())
    }
}

/// Exchanges segments between the cut points, alternating. Cut point `c`
/// means "cut before index c", so cuts lie in `[1, n-1]`.
pub fn k_point_core<G: VectorGenome>(a: &mut G, b: &mut G, cuts: &[usize]) {
    let n = a.length();
    debug_assert_eq!(n, b.length());
    let mut sorted = cuts.to_vec();
    sorted.sort_unstable();
    let mut exchanging = false;
    let mut next_cut = 0;
    for i in 0..n {
        while next_cut < sorted.len() && sorted[next_cut] == i {
            exchanging = !exchanging;
            next_cut += 1;
        }
        if exchanging {
            a.swap_at(b, i);
        }
    }
}

/// k-point crossover: k distinct cut points chosen uniformly from `[1, n-1]`.
#[derive(Clone)]
pub struct KPointCrossover {
    k: usize,
}

impl KPointCrossover {
    pub fn new(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid_argument("k-point crossover needs k >= 1"));
        }
        Ok(Self { k })
    }

    pub fn one_point() -> Self {
        Self { k: 1 }
    }

    pub fn two_point() -> Self {
        Self { k: 2 }
    }
}

impl<G: VectorGenome> CrossoverOperator<G> for KPointCrossover {
    fn cross(&mut self, a: &mut G, b: &mut G, rng: &mut RandomStream) {
        let n = a.length();
        assert_eq!(n, b.length(), "crossover requires equal-length genomes");
        assert!(self.k < n, "k-point crossover requires k <= n-1");
        // Distinct cuts in [1, n-1].
        let cuts: Vec<usize> = rng
            .sample_distinct(n - 1, self.k)
            .expect("k <= n-1 checked above")
            .into_iter()
            .map(|c| c + 1)
            .collect();
        k_point_core(a, b, &cuts);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<G>> {
        Box::new(self.clone())
    }
}

/// Each index exchanged independently with probability `p`.
#[derive(Clone)]
pub struct UniformCrossover {
    p: f64,
}

impl UniformCrossover {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::invalid_argument(
                "uniform crossover rate must be in (0, 1)",
            ));
        }
        Ok(Self { p })
    }
}

impl Default for UniformCrossover {
    fn default() -> Self {
        Self { p: 0.5 }
    }
}

impl<G: VectorGenome> CrossoverOperator<G> for UniformCrossover {
    fn cross(&mut self, a: &mut G, b: &mut G, rng: &mut RandomStream) {
        let n = a.length();
        assert_eq!(n, b.length(), "crossover requires equal-length genomes");
        for i in 0..n {
            if rng.next_bool(self.p) {
                a.swap_at(b, i);
            }
        }
    }

    fn split(&self) -> Box<dyn CrossoverOperator<G>> {
        Box::new(self.clone())
    }
}
