//! Benchmark problems: the bit-vector landscape suite (one-max, two-max,
//! trap, porcupine, plateaus, mix), royal road, a real-valued sphere,
//! permutation-in-a-haystack, TSP, QAP, and bin packing, plus seeded
//! instance generators and a JSON instance format.
//!
//! All problems minimize cost. The bit-vector suite is expressed via a raw
//! value function maximized at all-ones with value `10n`; cost is
//! `10n - value` (one-max keeps its classic `n - ones` cost).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::representations::{BitVector, Permutation, RealVector};
use crate::rng::RandomStream;

// ---------------------------------------------------------------------------
// Bit-vector landscape suite
// ---------------------------------------------------------------------------

/// Cost `n - ones(v)`; optimum all-ones.
#[derive(Clone, Copy, Debug)]
pub struct OneMax {
    pub n: usize,
}

impl Problem<BitVector> for OneMax {
    type Cost = i64;
    fn cost(&self, g: &BitVector) -> i64 {
        (self.n - g.count_ones()) as i64
    }
    fn min_cost(&self) -> Option<i64> {
        Some(0)
    }
}

/// Value `|18u - 8n|` (u = ones): global optimum all-ones at `10n`, a
/// deceptive local optimum at all-zeros worth `8n`.
#[derive(Clone, Copy, Debug)]
pub struct TwoMax {
    pub n: usize,
}

impl TwoMax {
    pub fn value(&self, g: &BitVector) -> i64 {
        let u = g.count_ones() as i64;
        let n = self.n as i64;
        (18 * u - 8 * n).abs()
    }
}

impl Problem<BitVector> for TwoMax {
    type Cost = i64;
    fn cost(&self, g: &BitVector) -> i64 {
        10 * self.n as i64 - self.value(g)
    }
    fn value(&self, g: &BitVector) -> i64 {
        TwoMax::value(self, g)
    }
    fn min_cost(&self) -> Option<i64> {
        Some(0)
    }
}

/// With `z = floor(3n/4)`: value `(8n/z)(z-u)` for `u <= z`, else
/// `(10n/(n-z))(u-z)`. A fitness valley at `u = z` separates the deceptive
/// all-zeros slope from the all-ones optimum.
#[derive(Clone, Copy, Debug)]
pub struct Trap {
    pub n: usize,
}

impl Trap {
    pub fn value(&self, g: &BitVector) -> f64 {
        let n = self.n as f64;
        let z = (3.0 * n / 4.0).floor();
        let u = g.count_ones() as f64;
        if u <= z {
            (8.0 * n / z) * (z - u)
        } else {
            (10.0 * n / (n - z)) * (u - z)
        }
    }
}

impl Problem<BitVector> for Trap {
    type Cost = f64;
    fn cost(&self, g: &BitVector) -> f64 {
        10.0 * self.n as f64 - self.value(g)
    }
    fn value(&self, g: &BitVector) -> f64 {
        Trap::value(self, g)
    }
    fn min_cost(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// Value `10u - 15 * (zeros mod 2)`: a one-max slope with every odd-zeros
/// hyperplane pushed down into a needle ridge. Optimum all-ones at `10n`.
#[derive(Clone, Copy, Debug)]
pub struct Porcupine {
    pub n: usize,
}

impl Porcupine {
    pub fn value(&self, g: &BitVector) -> i64 {
        let u = g.count_ones() as i64;
        let z = g.count_zeros() as i64;
        10 * u - 15 * (z % 2)
    }
}

impl Problem<BitVector> for Porcupine {
    type Cost = i64;
    fn cost(&self, g: &BitVector) -> i64 {
        10 * self.n as i64 - self.value(g)
    }
    fn value(&self, g: &BitVector) -> i64 {
        Porcupine::value(self, g)
    }
    fn min_cost(&self) -> Option<i64> {
        Some(0)
    }
}

/// Splits the genome into `k` nearly equal contiguous segments; returns the
/// segment boundaries.
fn segments(n: usize, k: usize) -> Vec<(usize, usize)> {
    let base = n / k;
    let extra = n % k;
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        out.push((start, start + len));
        start += len;
    }
    out
}

/// Four contiguous plateaus, each worth `10n/4` only when fully set: no
/// gradient inside a plateau. Optimum all-ones at `10n`.
#[derive(Clone, Copy, Debug)]
pub struct Plateaus {
    pub n: usize,
}

impl Plateaus {
    pub fn value(&self, g: &BitVector) -> f64 {
        let reward = 10.0 * self.n as f64 / 4.0;
        segments(self.n, 4)
            .into_iter()
            .filter(|&(s, e)| e > s && (s..e).all(|i| g.get(i)))
            .map(|_| reward)
            .sum()
    }
}

impl Problem<BitVector> for Plateaus {
    type Cost = f64;
    fn cost(&self, g: &BitVector) -> f64 {
        10.0 * self.n as f64 - self.value(g)
    }
    fn value(&self, g: &BitVector) -> f64 {
        Plateaus::value(self, g)
    }
    fn min_cost(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// Five contiguous segments, each scored by a different member of the suite
/// (one-max slope, two-max, trap, porcupine, all-or-nothing plateau), each
/// maximized at all-ones worth `10 * len`. Optimum all-ones at `10n`.
#[derive(Clone, Copy, Debug)]
pub struct Mix {
    pub n: usize,
}

impl Mix {
    pub fn value(&self, g: &BitVector) -> f64 {
        let segs = segments(self.n, 5);
        let mut total = 0.0;
        for (which, &(s, e)) in segs.iter().enumerate() {
            let len = (e - s) as f64;
            if e == s {
                continue;
            }
            let u = (s..e).filter(|&i| g.get(i)).count() as f64;
            let z = len - u;
            total += match which {
                0 => 10.0 * u,
                1 => (18.0 * u - 8.0 * len).abs(),
                2 => {
                    let zc = (3.0 * len / 4.0).floor();
                    if zc == 0.0 || zc == len {
                        10.0 * u
                    } else if u <= zc {
                        (8.0 * len / zc) * (zc - u)
                    } else {
                        (10.0 * len / (len - zc)) * (u - zc)
                    }
                }
                3 => 10.0 * u - 15.0 * (z as i64 % 2) as f64,
                _ => {
                    if u == len {
                        10.0 * len
                    } else {
                        0.0
                    }
                }
            };
        }
        total
    }
}

impl Problem<BitVector> for Mix {
    type Cost = f64;
    fn cost(&self, g: &BitVector) -> f64 {
        10.0 * self.n as f64 - self.value(g)
    }
    fn value(&self, g: &BitVector) -> f64 {
        Mix::value(self, g)
    }
    fn min_cost(&self) -> Option<f64> {
        Some(0.0)
    }
}

/// Royal road: reward `width` for every fully-set aligned block. With
/// stepping stones, additional levels with doubled block width are scored as
/// long as the width divides `n`.
#[derive(Clone, Copy, Debug)]
pub struct RoyalRoad {
    n: usize,
    block: usize,
    stepping_stones: bool,
}

impl RoyalRoad {
    pub fn new(n: usize, block: usize, stepping_stones: bool) -> Result<Self> {
        if block < 1 || block > n || n % block != 0 {
            return Err(Error::invalid_argument(
                "royal road block size must divide the genome length",
            ));
        }
        Ok(Self {
            n,
            block,
            stepping_stones,
        })
    }

    pub fn value(&self, g: &BitVector) -> i64 {
        let mut total = 0i64;
        let mut width = self.block;
        loop {
            for start in (0..self.n).step_by(width) {
                if (start..start + width).all(|i| g.get(i)) {
                    total += width as i64;
                }
            }
            width *= 2;
            if !self.stepping_stones || width > self.n || self.n % width != 0 {
                break;
            }
        }
        total
    }

    pub fn max_value(&self) -> i64 {
        let mut total = 0i64;
        let mut width = self.block;
        loop {
            total += self.n as i64;
            width *= 2;
            if !self.stepping_stones || width > self.n || self.n % width != 0 {
                break;
            }
        }
        total
    }
}

impl Problem<BitVector> for RoyalRoad {
    type Cost = i64;
    fn cost(&self, g: &BitVector) -> i64 {
        self.max_value() - self.value(g)
    }
    fn value(&self, g: &BitVector) -> i64 {
        RoyalRoad::value(self, g)
    }
    fn min_cost(&self) -> Option<i64> {
        Some(0)
    }
}

// ---------------------------------------------------------------------------
// Real-valued
// ---------------------------------------------------------------------------

/// Cost `sum(v_i^2)`; minimum 0 at the origin.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sphere;

impl Problem<RealVector> for Sphere {
    type Cost = f64;
    fn cost(&self, g: &RealVector) -> f64 {
        g.values.iter().map(|v| v * v).sum()
    }
    fn min_cost(&self) -> Option<f64> {
        Some(0.0)
    }
}

// ---------------------------------------------------------------------------
// Permutation problems
// ---------------------------------------------------------------------------

/// Distance between a candidate and the haystack target.
pub trait PermutationMetric: Send + Sync {
    fn distance(&self, a: &Permutation, b: &Permutation) -> i64;
}

/// Count of positions where the two permutations differ.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactMatchDistance;

impl PermutationMetric for ExactMatchDistance {
    fn distance(&self, a: &Permutation, b: &Permutation) -> i64 {
        (0..a.len()).filter(|&i| a.get(i) != b.get(i)).count() as i64
    }
}

/// Permutation in a haystack: cost is the distance to a hidden target
/// permutation, zero exactly at the target.
pub struct Haystack {
    target: Permutation,
    metric: Box<dyn PermutationMetric>,
}

impl Haystack {
    pub fn new(target: Permutation) -> Self {
        Self {
            target,
            metric: Box::new(ExactMatchDistance),
        }
    }

    pub fn with_metric(target: Permutation, metric: Box<dyn PermutationMetric>) -> Self {
        Self { target, metric }
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }
}

impl Problem<Permutation> for Haystack {
    type Cost = i64;
    fn cost(&self, g: &Permutation) -> i64 {
        self.metric.distance(g, &self.target)
    }
    fn min_cost(&self) -> Option<i64> {
        Some(0)
    }
}

/// Euclidean TSP instance: city coordinates in the plane, closed-tour cost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    pub n: usize,
    pub coords: Vec<[f64; 2]>,
}

impl TspInstance {
    pub fn new(coords: Vec<[f64; 2]>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::invalid_argument("TSP needs at least 2 cities"));
        }
        Ok(Self {
            n: coords.len(),
            coords,
        })
    }

    /// `n` cities uniform in the unit square.
    pub fn random(n: usize, rng: &mut RandomStream) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid_argument("TSP needs at least 2 cities"));
        }
        let coords = (0..n)
            .map(|_| [rng.next_double(), rng.next_double()])
            .collect();
        Self::new(coords)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n != self.coords.len() || self.n < 2 {
            return Err(Error::config("TSP instance n must match coordinate count"));
        }
        if self
            .coords
            .iter()
            .any(|c| !c[0].is_finite() || !c[1].is_finite())
        {
            return Err(Error::config("TSP coordinates must be finite"));
        }
        Ok(())
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let [x1, y1] = self.coords[i];
        let [x2, y2] = self.coords[j];
        ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt()
    }
}

impl Problem<Permutation> for TspInstance {
    type Cost = f64;
    fn cost(&self, g: &Permutation) -> f64 {
        let n = g.len();
        (0..n)
            .map(|i| self.distance(g.get(i), g.get((i + 1) % n)))
            .sum()
    }
}

/// QAP instance: non-negative integer flow and distance matrices;
/// cost `sum_{i,j} flow[i][j] * distance[p(i)][p(j)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QapInstance {
    pub n: usize,
    pub flow: Vec<Vec<i64>>,
    pub distance: Vec<Vec<i64>>,
}

impl QapInstance {
    pub fn new(flow: Vec<Vec<i64>>, distance: Vec<Vec<i64>>) -> Result<Self> {
        let n = flow.len();
        let inst = Self { n, flow, distance };
        inst.validate()?;
        Ok(inst)
    }

    /// Matrix entries uniform integers in `[0, 50]`.
    pub fn random(n: usize, rng: &mut RandomStream) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid_argument("QAP needs n >= 1"));
        }
        let matrix = |rng: &mut RandomStream| -> Vec<Vec<i64>> {
            (0..n)
                .map(|_| (0..n).map(|_| rng.next_int(51) as i64).collect())
                .collect()
        };
        let flow = matrix(rng);
        let distance = matrix(rng);
        Self::new(flow, distance)
    }

    pub fn validate(&self) -> Result<()> {
        let square =
            |m: &Vec<Vec<i64>>| m.len() == self.n && m.iter().all(|row| row.len() == self.n);
        if self.n < 1 || !square(&self.flow) || !square(&self.distance) {
            return Err(Error::config(
                "QAP matrices must be square with matching dimension n",
            ));
        }
        if self
            .flow
            .iter()
            .chain(self.distance.iter())
            .flatten()
            .any(|&v| v < 0)
        {
            return Err(Error::config("QAP matrix entries must be non-negative"));
        }
        Ok(())
    }
}

impl Problem<Permutation> for QapInstance {
    type Cost = i64;
    fn cost(&self, g: &Permutation) -> i64 {
        let mut total = 0i64;
        for i in 0..self.n {
            for j in 0..self.n {
                total += self.flow[i][j] * self.distance[g.get(i)][g.get(j)];
            }
        }
        total
    }
}

/// Bin packing instance decoded by first-fit in permutation order; cost is
/// the number of bins used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinPackingInstance {
    pub n: usize,
    pub capacity: i64,
    pub sizes: Vec<i64>,
}

impl BinPackingInstance {
    pub fn new(capacity: i64, sizes: Vec<i64>) -> Result<Self> {
        let inst = Self {
            n: sizes.len(),
            capacity,
            sizes,
        };
        inst.validate()?;
        Ok(inst)
    }

    /// Item sizes uniform integers in `[1, capacity]`.
    pub fn random(n: usize, capacity: i64, rng: &mut RandomStream) -> Result<Self> {
        if capacity < 1 {
            return Err(Error::invalid_argument("bin capacity must be positive"));
        }
        let sizes = (0..n)
            .map(|_| 1 + rng.next_int(capacity as usize) as i64)
            .collect();
        Self::new(capacity, sizes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.capacity < 1 {
            return Err(Error::config("bin capacity must be positive"));
        }
        if self.n != self.sizes.len() {
            return Err(Error::config("bin packing n must match item count"));
        }
        if self.sizes.iter().any(|&s| s < 1 || s > self.capacity) {
            return Err(Error::config(
                "every item size must be in [1, capacity]",
            ));
        }
        Ok(())
    }
}

impl Problem<Permutation> for BinPackingInstance {
    type Cost = i64;
    fn cost(&self, g: &Permutation) -> i64 {
        let mut bins: Vec<i64> = Vec::new();
        for i in 0..g.len() {
            let size = self.sizes[g.get(i)];
            match bins.iter_mut().find(|b| **b + size <= self.capacity) {
                Some(b) => *b += size,
                None => bins.push(size),
            }
        }
        bins.len() as i64
    }
}

/// Tagged union for the JSON instance format:
/// `{"kind": "tsp"|"qap"|"binpacking", "n": ..., ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemInstance {
    Tsp(TspInstance),
    Qap(QapInstance),
    #[serde(rename = "binpacking")]
    BinPacking(BinPackingInstance),
}

impl ProblemInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: ProblemInstance = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("invalid instance JSON: {e}")))?;
        match &inst {
            ProblemInstance::Tsp(i) => i.validate()?,
            ProblemInstance::Qap(i) => i.validate()?,
            ProblemInstance::BinPacking(i) => i.validate()?,
        }
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }
}
