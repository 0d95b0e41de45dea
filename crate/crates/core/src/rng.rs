//! Deterministic, seedable, splittable randomness.
//!
//! Every stochastic operation in the library draws from a [`RandomStream`].
//! A stream is single-threaded by design; parallel code obtains a private
//! stream per worker via [`RandomStream::split`] before spawning.

use crate::error::Error;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256++ generator with SplitMix64 seeding.
///
/// 256-bit state, period 2^256 - 1. The algorithm identity is an internal
/// detail, fixed per release: seeds are stable within a library version but
/// not across versions.
#[derive(Clone, Debug)]
pub struct RandomStream {
    s: [u64; 4],
}

impl RandomStream {
    /// Creates a stream from a 64-bit seed. Equal seeds yield equal streams.
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    /// Derives a new stream whose future output is independent of any
    /// subsequent draws from `self`. The parent remains usable.
    pub fn split(&mut self) -> Self {
        // Draw fresh material from the parent, then re-diffuse it through
        // SplitMix64 so the child's trajectory is decorrelated from the
        // parent's continuation.
        let mut s = [0u64; 4];
        for slot in &mut s {
            let mut m = self.next_u64();
            *slot = splitmix64(&mut m);
        }
        if s == [0; 4] {
            s[0] = GOLDEN_GAMMA;
        }
        Self { s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform integer in `[0, bound)`. Panics if `bound` is zero.
    #[inline]
    pub fn next_int(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "next_int bound must be positive");
        // Fixed-point multiply; residual bias is O(bound / 2^64).
        (((self.next_u64() as u128) * (bound as u128)) >> 64) as usize
    }

    /// Uniform real in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_double(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p`.
    #[inline]
    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_double() < p
    }

    /// Gaussian deviate with mean 0 and standard deviation `sigma`,
    /// via the Marsaglia polar method.
    pub fn next_gaussian(&mut self, sigma: f64) -> f64 {
        loop {
            let u = 2.0 * self.next_double() - 1.0;
            let v = 2.0 * self.next_double() - 1.0;
            let r = u * u + v * v;
            if r > 0.0 && r < 1.0 {
                return sigma * u * (-2.0 * r.ln() / r).sqrt();
            }
        }
    }

    /// Cauchy deviate with median 0 and the given scale, via inverse CDF.
    pub fn next_cauchy(&mut self, scale: f64) -> f64 {
        loop {
            let u = self.next_double();
            if u > 0.0 {
                return scale * (std::f64::consts::PI * (u - 0.5)).tan();
            }
        }
    }

    /// `k` distinct integers from `[0, n)`, uniform over k-subsets,
    /// in random order (partial Fisher-Yates).
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Result<Vec<usize>, Error> {
        if k > n {
            return Err(Error::invalid_argument(format!(
                "sample_distinct: k={k} exceeds n={n}"
            )));
        }
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.next_int(n - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        Ok(pool)
    }

    /// Index `i` with probability `weights[i] / sum(weights)`.
    pub fn weighted_index(&mut self, weights: &[f64]) -> Result<usize, Error> {
        let mut total = 0.0;
        for &w in weights {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::invalid_argument(
                    "weighted_index: weights must be finite and non-negative",
                ));
            }
            total += w;
        }
        if total <= 0.0 {
            return Err(Error::invalid_argument(
                "weighted_index: at least one weight must be positive",
            ));
        }
        let spin = self.next_double() * total;
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                acc += w;
                last_positive = i;
                if spin < acc {
                    return Ok(i);
                }
            }
        }
        // Floating-point shortfall at the top of the wheel.
        Ok(last_positive)
    }

    /// Fisher-Yates shuffle of a slice.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_int(i + 1);
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_equal_streams() {
        let mut a = RandomStream::from_seed(42);
        let mut b = RandomStream::from_seed(42);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_differ() {
        let mut a = RandomStream::from_seed(42);
        let mut b = RandomStream::from_seed(43);
        let differs = (0..1000).any(|_| a.next_u64() != b.next_u64());
        assert!(differs);
    }

    #[test]
    fn zero_seed_not_degenerate() {
        let mut s = RandomStream::from_seed(0);
        let n = 10_000;
        let mean: f64 = (0..n).map(|_| s.next_double()).sum::<f64>() / n as f64;
        assert!((0.45..0.55).contains(&mean), "mean {mean}");
    }

    #[test]
    fn split_child_unaffected_by_parent_advance() {
        let mut p1 = RandomStream::from_seed(7);
        let mut p2 = RandomStream::from_seed(7);
        let mut c1 = p1.split();
        let mut c2 = p2.split();
        for _ in 0..100 {
            p1.next_u64();
        }
        for _ in 0..1000 {
            assert_eq!(c1.next_u64(), c2.next_u64());
        }
    }

    #[test]
    fn split_twice_children_differ() {
        let mut p = RandomStream::from_seed(9);
        let mut a = p.split();
        let mut b = p.split();
        let differs = (0..1000).any(|_| a.next_u64() != b.next_u64());
        assert!(differs);
    }

    #[test]
    fn split_chain_pairwise_distinct() {
        let mut streams = vec![RandomStream::from_seed(5)];
        for _ in 0..16 {
            let child = streams.last_mut().unwrap().split();
            streams.push(child);
        }
        let outputs: Vec<Vec<u64>> = streams
            .iter_mut()
            .map(|s| (0..1000).map(|_| s.next_u64()).collect())
            .collect();
        for i in 0..outputs.len() {
            for j in (i + 1)..outputs.len() {
                assert_ne!(outputs[i], outputs[j], "streams {i} and {j} collide");
            }
        }
    }

    #[test]
    fn next_int_uniformity_chi_square() {
        let mut s = RandomStream::from_seed(123);
        let bound = 7;
        let n = 100_000;
        let mut counts = [0u64; 7];
        for _ in 0..n {
            counts[s.next_int(bound)] += 1;
        }
        let expected = n as f64 / bound as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // Critical value for df=6 at p=0.001.
        assert!(chi2 < 22.458, "chi2 {chi2}");
    }

    #[test]
    fn gaussian_moments() {
        let mut s = RandomStream::from_seed(17);
        let sigma = 2.5;
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|_| s.next_gaussian(sigma)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        let std = var.sqrt();
        assert!(mean.abs() < 4.0 * sigma / (n as f64).sqrt(), "mean {mean}");
        assert!((std - sigma).abs() < 0.02 * sigma, "std {std}");
    }

    #[test]
    fn cauchy_quartiles() {
        let mut s = RandomStream::from_seed(31);
        let scale = 1.5;
        let n = 100_000;
        let mut samples: Vec<f64> = (0..n).map(|_| s.next_cauchy(scale)).collect();
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = samples[n / 2];
        assert!(median.abs() < 0.05 * scale, "median {median}");
        // |X| > scale with probability 1/2 (quartiles at +/- scale).
        let beyond = samples.iter().filter(|x| x.abs() > scale).count() as f64 / n as f64;
        assert!((beyond - 0.5).abs() < 0.01, "tail fraction {beyond}");
    }

    #[test]
    fn sample_distinct_full_is_permutation() {
        let mut s = RandomStream::from_seed(3);
        let mut got = s.sample_distinct(5, 5).unwrap();
        got.sort_unstable();
        assert_eq!(got, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn sample_distinct_empty_and_invalid() {
        let mut s = RandomStream::from_seed(3);
        assert!(s.sample_distinct(5, 0).unwrap().is_empty());
        assert!(s.sample_distinct(3, 4).is_err());
    }

    #[test]
    fn sample_distinct_uniform_over_pairs() {
        let mut s = RandomStream::from_seed(11);
        let trials = 100_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let mut pair = s.sample_distinct(4, 2).unwrap();
            pair.sort_unstable();
            *counts.entry((pair[0], pair[1])).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 6);
        for (&pair, &c) in &counts {
            let freq = c as f64 / trials as f64;
            assert!((freq - 1.0 / 6.0).abs() < 0.01, "pair {pair:?} freq {freq}");
        }
    }

    #[test]
    fn weighted_index_degenerate_mass() {
        let mut s = RandomStream::from_seed(1);
        for _ in 0..100 {
            assert_eq!(s.weighted_index(&[1.0, 0.0, 0.0]).unwrap(), 0);
        }
    }

    #[test]
    fn weighted_index_proportions() {
        let mut s = RandomStream::from_seed(2);
        let trials = 100_000;
        let mut c0 = 0u64;
        for _ in 0..trials {
            if s.weighted_index(&[1.0, 3.0]).unwrap() == 0 {
                c0 += 1;
            }
        }
        let f0 = c0 as f64 / trials as f64;
        assert!((f0 - 0.25).abs() < 0.01, "freq {f0}");
    }

    #[test]
    fn weighted_index_symmetric() {
        let mut s = RandomStream::from_seed(8);
        let trials = 100_000;
        let mut counts = [0u64; 3];
        for _ in 0..trials {
            counts[s.weighted_index(&[2.0, 2.0, 2.0]).unwrap()] += 1;
        }
        for &c in &counts {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.01);
        }
    }

    #[test]
    fn weighted_index_rejects_bad_input() {
        let mut s = RandomStream::from_seed(8);
        assert!(s.weighted_index(&[0.0, 0.0]).is_err());
        assert!(s.weighted_index(&[1.0, -1.0]).is_err());
        assert!(s.weighted_index(&[]).is_err());
    }
}
