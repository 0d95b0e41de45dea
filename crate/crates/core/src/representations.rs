//! Built-in genome types: bit vectors, integer vectors, real vectors,
//! and permutations.
//!
//! Genomes are plain values. Cloning produces an independent copy; engines
//! never alias a genome across individuals.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// Fixed-length packed sequence of bits, index 0 leftmost in the textual form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::invalid_argument("BitVector length must be positive"));
        }
        Ok(Self {
            len,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut v = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    /// Parses a 0/1 string, index 0 leftmost.
    pub fn from_str_bits(s: &str) -> Result<Self> {
        let bits: Result<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid_argument(format!(
                    "invalid bit character '{other}'"
                ))),
            })
            .collect();
        Self::from_bits(&bits?)
    }

    /// Each bit an independent fair coin.
    pub fn random(rng: &mut RandomStream, len: usize) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        for w in &mut v.words {
            *w = rng.next_u64();
        }
        v.clear_padding();
        Ok(v)
    }

    // Trailing pad bits are kept zero so count_ones can sum whole words.
    fn clear_padding(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Exchanges bit `i` between two vectors.
    pub fn swap_bit_with(&mut self, other: &mut Self, i: usize) {
        let a = self.get(i);
        let b = other.get(i);
        if a != b {
            self.set(i, b);
            other.set(i, a);
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Vector of integers with an optional shared per-instance domain `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerVector {
    pub values: Vec<i64>,
    domain: Option<(i64, i64)>,
}

impl IntegerVector {
    pub fn new(values: Vec<i64>, domain: Option<(i64, i64)>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid_argument("IntegerVector must be non-empty"));
        }
        if let Some((lo, hi)) = domain {
            if lo > hi {
                return Err(Error::invalid_argument("inverted integer domain"));
            }
            if values.iter().any(|&v| v < lo || v > hi) {
                return Err(Error::invalid_argument("value outside integer domain"));
            }
        }
        Ok(Self { values, domain })
    }

    /// Components i.i.d. uniform on `[lo, hi]`.
    pub fn random(rng: &mut RandomStream, n: usize, lo: i64, hi: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_argument("IntegerVector length must be positive"));
        }
        if lo > hi {
            return Err(Error::invalid_argument("inverted integer domain"));
        }
        let span = (hi - lo) as usize + 1;
        let values = (0..n).map(|_| lo + rng.next_int(span) as i64).collect();
        Ok(Self {
            values,
            domain: Some((lo, hi)),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn domain(&self) -> Option<(i64, i64)> {
        self.domain
    }

    pub fn clamp_to_domain(&mut self) {
        if let Some((lo, hi)) = self.domain {
            for v in &mut self.values {
                *v = (*v).clamp(lo, hi);
            }
        }
    }
}

/// Vector of finite reals with optional shared bounds `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealVector {
    pub values: Vec<f64>,
    bounds: Option<(f64, f64)>,
}

impl RealVector {
    pub fn new(values: Vec<f64>, bounds: Option<(f64, f64)>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid_argument("RealVector must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_argument("RealVector components must be finite"));
        }
        if let Some((lo, hi)) = bounds {
            if !(lo < hi) {
                return Err(Error::invalid_argument("inverted real bounds"));
            }
            if values.iter().any(|&v| v < lo || v > hi) {
                return Err(Error::invalid_argument("value outside real bounds"));
            }
        }
        Ok(Self { values, bounds })
    }

    /// Components i.i.d. uniform on `[lo, hi)`.
    pub fn random(rng: &mut RandomStream, n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_argument("RealVector length must be positive"));
        }
        if !(lo < hi) {
            return Err(Error::invalid_argument("inverted real bounds"));
        }
        let values = (0..n).map(|_| lo + rng.next_double() * (hi - lo)).collect();
        Ok(Self {
            values,
            bounds: Some((lo, hi)),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.bounds
    }

    pub fn clamp_to_bounds(&mut self) {
        if let Some((lo, hi)) = self.bounds {
            for v in &mut self.values {
                *v = v.clamp(lo, hi);
            }
        }
    }
}

/// Bijective arrangement of `0..n`, stored as the one-line array of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    elems: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_argument("Permutation length must be positive"));
        }
        Ok(Self {
            elems: (0..n).collect(),
        })
    }

    pub fn from_vec(elems: Vec<usize>) -> Result<Self> {
        let p = Self { elems };
        if p.elems.is_empty() {
            return Err(Error::invalid_argument("Permutation length must be positive"));
        }
        if !p.is_valid() {
            return Err(Error::invalid_argument("not a permutation of 0..n"));
        }
        Ok(p)
    }

    /// Uniform over the n! arrangements, via Fisher-Yates.
    pub fn random(rng: &mut RandomStream, n: usize) -> Result<Self> {
        let mut p = Self::identity(n)?;
        rng.shuffle(&mut p.elems);
        Ok(p)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.elems[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elems
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [usize] {
        &mut self.elems
    }

    /// The universal validity oracle: sorted contents equal `0..n`.
    pub fn is_valid(&self) -> bool {
        let n = self.elems.len();
        let mut seen = vec![false; n];
        for &e in &self.elems {
            if e >= n || seen[e] {
                return false;
            }
            seen[e] = true;
        }
        true
    }

    /// Positions of each element: `inverse[elems[i]] = i`.
    pub fn inverse_array(&self) -> Vec<usize> {
        let mut inv = vec![0; self.elems.len()];
        for (i, &e) in self.elems.iter().enumerate() {
            inv[e] = i;
        }
        inv
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
