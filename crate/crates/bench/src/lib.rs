//! Shared fixtures for the criterion benchmarks.

use salsa_core::{Permutation, RandomStream};

/// A deterministic permutation of length `n` for operator benchmarks.
pub fn fixture_permutation(n: usize, seed: u64) -> Permutation {
    Permutation::random(&mut RandomStream::from_seed(seed), n).expect("n >= 1")
}
