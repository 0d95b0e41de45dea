//! Mutation and crossover operators for permutations.
//!
//! Every operator has a deterministic core taking its random choices as
//! explicit parameters, plus a randomized wrapper drawing those choices from
//! a stream. The cores make forced-choice verification possible without
//! stubbing the generator. All outputs satisfy the bijectivity oracle.

use crate::error::{Error, Result};
use crate::operators::{CrossoverOperator, MutationOperator};
use crate::representations::Permutation;
use crate::rng::RandomStream;

// ---------------------------------------------------------------------------
// Mutation cores
// ---------------------------------------------------------------------------

/// Exchanges the elements at positions `i` and `j`.
pub fn swap_core(p: &mut Permutation, i: usize, j: usize) {
    p.as_mut_slice().swap(i, j);
}

/// Exchanges positions `i` and `i + 1`.
pub fn adjacent_swap_core(p: &mut Permutation, i: usize) {
    p.as_mut_slice().swap(i, i + 1);
}

/// Removes the element at `i` and reinserts it so it ends at index `j`,
/// shifting the segment in between.
pub fn insertion_core(p: &mut Permutation, i: usize, j: usize) {
    let s = p.as_mut_slice();
    if i < j {
        s[i..=j].rotate_left(1);
    } else if j < i {
        s[j..=i].rotate_right(1);
    }
}

/// Reverses the segment between `i` and `j`, inclusive.
pub fn reversal_core(p: &mut Permutation, i: usize, j: usize) {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    p.as_mut_slice()[lo..=hi].reverse();
}

/// Uniformly shuffles the segment between `i` and `j`, inclusive.
pub fn scramble_core(p: &mut Permutation, i: usize, j: usize, rng: &mut RandomStream) {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    rng.shuffle(&mut p.as_mut_slice()[lo..=hi]);
}

/// Uniformly permutes the elements at the marked positions among those
/// positions; everything else stays put. `marked` must be ascending.
pub fn uniform_scramble_core(p: &mut Permutation, marked: &[usize], rng: &mut RandomStream) {
    let mut elems: Vec<usize> = marked.iter().map(|&i| p.get(i)).collect();
    rng.shuffle(&mut elems);
    let s = p.as_mut_slice();
    for (&i, &e) in marked.iter().zip(&elems) {
        s[i] = e;
    }
}

/// Cyclically rotates the elements along the listed positions: the element
/// at `positions[k]` moves to `positions[k + 1]`, wrapping around.
pub fn cycle_core(p: &mut Permutation, positions: &[usize]) {
    debug_assert!(positions.len() >= 2);
    let s = p.as_mut_slice();
    let last = s[positions[positions.len() - 1]];
    for k in (1..positions.len()).rev() {
        s[positions[k]] = s[positions[k - 1]];
    }
    s[positions[0]] = last;
}

/// Reconnection variants for a 3-opt move over the two segments
/// `[a, b)` and `[b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeOptVariant {
    ReverseFirst,
    ReverseSecond,
    ReverseBoth,
    SwapSegments,
    SwapReverseFirst,
    SwapReverseSecond,
    SwapReverseBoth,
}

impl ThreeOptVariant {
    pub const ALL: [ThreeOptVariant; 7] = [
        ThreeOptVariant::ReverseFirst,
        ThreeOptVariant::ReverseSecond,
        ThreeOptVariant::ReverseBoth,
        ThreeOptVariant::SwapSegments,
        ThreeOptVariant::SwapReverseFirst,
        ThreeOptVariant::SwapReverseSecond,
        ThreeOptVariant::SwapReverseBoth,
    ];

    /// Whether this variant is guaranteed to change the permutation for
    /// segment lengths `len1` and `len2`.
    pub fn applicable(self, len1: usize, len2: usize) -> bool {
        match self {
            ThreeOptVariant::ReverseFirst => len1 >= 2,
            ThreeOptVariant::ReverseSecond => len2 >= 2,
            ThreeOptVariant::ReverseBoth => len1 >= 2 || len2 >= 2,
            _ => true,
        }
    }
}

/// Applies one 3-opt reconnection to the segments `[a, b)` and `[b, c)`
/// with `a < b < c <= n`. Variants that only reverse degenerate to 2-opt.
pub fn three_opt_core(p: &mut Permutation, a: usize, b: usize, c: usize, variant: ThreeOptVariant) {
    let s = p.as_mut_slice();
    let seg = &mut s[a..c];
    let cut = b - a;
    match variant {
        ThreeOptVariant::ReverseFirst => seg[..cut].reverse(),
        ThreeOptVariant::ReverseSecond => seg[cut..].reverse(),
        ThreeOptVariant::ReverseBoth => {
            seg[..cut].reverse();
            seg[cut..].reverse();
        }
        ThreeOptVariant::SwapSegments => seg.rotate_left(cut),
        ThreeOptVariant::SwapReverseFirst => {
            seg[..cut].reverse();
            seg.rotate_left(cut);
        }
        ThreeOptVariant::SwapReverseSecond => {
            seg[cut..].reverse();
            seg.rotate_left(cut);
        }
        ThreeOptVariant::SwapReverseBoth => {
            seg[..cut].reverse();
            seg[cut..].reverse();
            seg.rotate_left(cut);
        }
    }
}

/// Removes the block `[i, j]` (inclusive) and reinserts it before original
/// index `k`, which must lie outside `[i, j + 1]`. The block's internal
/// order is preserved.
pub fn block_move_core(p: &mut Permutation, i: usize, j: usize, k: usize) {
    debug_assert!(i <= j);
    debug_assert!(k < i || k > j + 1);
    let s = p.as_mut_slice();
    let len = j - i + 1;
    if k > j + 1 {
        s[i..k].rotate_left(len);
    } else {
        s[k..=j].rotate_right(len);
    }
}

/// Exchanges the non-overlapping blocks `[i, j]` and `[k, l]` (inclusive,
/// `j < k`), preserving the internal order of each.
pub fn block_swap_core(p: &mut Permutation, i: usize, j: usize, k: usize, l: usize) {
    debug_assert!(i <= j && j < k && k <= l);
    let s = p.as_mut_slice();
    let mut rebuilt = Vec::with_capacity(l - i + 1);
    rebuilt.extend_from_slice(&s[k..=l]);
    rebuilt.extend_from_slice(&s[j + 1..k]);
    rebuilt.extend_from_slice(&s[i..=j]);
    s[i..=l].copy_from_slice(&rebuilt);
}

// ---------------------------------------------------------------------------
// Mutation wrappers
// ---------------------------------------------------------------------------

/// Two distinct uniform indices in `[0, n)`.
fn distinct_pair(rng: &mut RandomStream, n: usize) -> (usize, usize) {
    debug_assert!(n >= 2);
    let i = rng.next_int(n);
    let mut j = rng.next_int(n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

macro_rules! simple_mutation {
    ($name:ident, $doc:expr, |$p:ident, $rng:ident| $body:expr) => {
        #[doc = $doc]
        #[derive(Clone, Default)]
        pub struct $name;

        impl MutationOperator<Permutation> for $name {
            fn mutate(&mut self, $p: &mut Permutation, $rng: &mut RandomStream) {
                if $p.len() < 2 {
                    return;
                }
                $body
            }

            fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
                Box::new(self.clone())
            }
        }
    };
}

simple_mutation!(SwapMutation, "Swap at two distinct uniform indices.", |p, rng| {
    let (i, j) = distinct_pair(rng, p.len());
    swap_core(p, i, j);
});

simple_mutation!(
    AdjacentSwapMutation,
    "Swap at (i, i+1) for uniform i.",
    |p, rng| {
        let i = rng.next_int(p.len() - 1);
        adjacent_swap_core(p, i);
    }
);

simple_mutation!(
    InsertionMutation,
    "Remove one element and reinsert it elsewhere.",
    |p, rng| {
        let (i, j) = distinct_pair(rng, p.len());
        insertion_core(p, i, j);
    }
);

simple_mutation!(
    ReversalMutation,
    "Reverse the segment between two distinct uniform indices.",
    |p, rng| {
        let (i, j) = distinct_pair(rng, p.len());
        reversal_core(p, i, j);
    }
);

simple_mutation!(
    ScrambleMutation,
    "Shuffle the segment between two distinct uniform indices.",
    |p, rng| {
        let (i, j) = distinct_pair(rng, p.len());
        scramble_core(p, i, j, rng);
    }
);

/// Marks each index with probability `u` (re-drawing until at least two are
/// marked) and uniformly permutes the marked elements among those positions.
#[derive(Clone)]
pub struct UniformScrambleMutation {
    u: f64,
}

impl UniformScrambleMutation {
    pub fn new(u: f64) -> Result<Self> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::invalid_argument("uniform scramble u must be in (0, 1)"));
        }
        Ok(Self { u })
    }
}

impl MutationOperator<Permutation> for UniformScrambleMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        if p.len() < 2 {
            return;
        }
        let marked = loop {
            let m: Vec<usize> = (0..p.len()).filter(|_| rng.next_bool(self.u)).collect();
            if m.len() >= 2 {
                break m;
            }
        };
        uniform_scramble_core(p, &marked, rng);
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Rotates the elements of a random k-cycle, k uniform in `[2, min(k_max, n)]`.
#[derive(Clone)]
pub struct CycleMutation {
    k_max: usize,
}

impl CycleMutation {
    pub fn new(k_max: usize) -> Result<Self> {
        if k_max < 2 {
            return Err(Error::invalid_argument("cycle mutation k_max must be >= 2"));
        }
        Ok(Self { k_max })
    }
}

impl MutationOperator<Permutation> for CycleMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        if p.len() < 2 {
            return;
        }
        let hi = self.k_max.min(p.len());
        let k = 2 + rng.next_int(hi - 1);
        let positions = rng.sample_distinct(p.len(), k).expect("k <= n");
        cycle_core(p, &positions);
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// One uniformly chosen 3-opt move, including 2-opt (pure reversal)
/// degenerates.
#[derive(Clone, Default)]
pub struct ThreeOptMutation;

impl MutationOperator<Permutation> for ThreeOptMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        let n = p.len();
        if n < 2 {
            return;
        }
        let mut cuts = rng.sample_distinct(n + 1, 3).expect("n + 1 >= 3");
        cuts.sort_unstable();
        let (a, b, c) = (cuts[0], cuts[1], cuts[2]);
        let (len1, len2) = (b - a, c - b);
        let applicable: Vec<ThreeOptVariant> = ThreeOptVariant::ALL
            .iter()
            .copied()
            .filter(|v| v.applicable(len1, len2))
            .collect();
        let variant = applicable[rng.next_int(applicable.len())];
        three_opt_core(p, a, b, c, variant);
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

fn draw_block_move(rng: &mut RandomStream, n: usize) -> (usize, usize, usize) {
    loop {
        let a = rng.next_int(n);
        let b = rng.next_int(n);
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        if j - i + 1 == n {
            continue;
        }
        let k = rng.next_int(n + 1);
        if k < i || k > j + 1 {
            return (i, j, k);
        }
    }
}

/// Moves a contiguous block to another position (generalized insertion).
#[derive(Clone, Default)]
pub struct BlockMoveMutation;

impl MutationOperator<Permutation> for BlockMoveMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        if p.len() < 2 {
            return;
        }
        let (i, j, k) = draw_block_move(rng, p.len());
        block_move_core(p, i, j, k);
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Exchanges two non-overlapping contiguous blocks of possibly unequal
/// lengths.
#[derive(Clone, Default)]
pub struct BlockSwapMutation;

impl MutationOperator<Permutation> for BlockSwapMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        let n = p.len();
        if n < 2 {
            return;
        }
        loop {
            let mut v = [
                rng.next_int(n),
                rng.next_int(n),
                rng.next_int(n),
                rng.next_int(n),
            ];
            v.sort_unstable();
            if v[1] < v[2] {
                block_swap_core(p, v[0], v[1], v[2], v[3]);
                return;
            }
        }
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Base operators admitting a window-limited form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowedBase {
    Swap,
    Insertion,
    Reversal,
    Scramble,
    BlockMove,
}

/// Same as the base operator, but all chosen indices are constrained to lie
/// within a window of width `w` (rejection-sampled, so at `w = n - 1` the
/// distribution matches the unrestricted base exactly).
#[derive(Clone)]
pub struct WindowLimitedMutation {
    base: WindowedBase,
    w: usize,
}

impl WindowLimitedMutation {
    pub fn new(base: WindowedBase, w: usize) -> Result<Self> {
        if w < 1 {
            return Err(Error::invalid_argument("window width must be >= 1"));
        }
        Ok(Self { base, w })
    }
}

impl MutationOperator<Permutation> for WindowLimitedMutation {
    fn mutate(&mut self, p: &mut Permutation, rng: &mut RandomStream) {
        let n = p.len();
        if n < 2 {
            return;
        }
        match self.base {
            WindowedBase::Swap | WindowedBase::Insertion | WindowedBase::Reversal
            | WindowedBase::Scramble => {
                let (i, j) = loop {
                    let (i, j) = distinct_pair(rng, n);
                    if i.abs_diff(j) <= self.w {
                        break (i, j);
                    }
                };
                match self.base {
                    WindowedBase::Swap => swap_core(p, i, j),
                    WindowedBase::Insertion => insertion_core(p, i, j),
                    WindowedBase::Reversal => reversal_core(p, i, j),
                    WindowedBase::Scramble => scramble_core(p, i, j, rng),
                    WindowedBase::BlockMove => unreachable!(),
                }
            }
            WindowedBase::BlockMove => {
                let (i, j, k) = loop {
                    let (i, j, k) = draw_block_move(rng, n);
                    let span = j.max(k.saturating_sub(1)) - i.min(k);
                    if span <= self.w {
                        break (i, j, k);
                    }
                };
                block_move_core(p, i, j, k);
            }
        }
    }

    fn split(&self) -> Box<dyn MutationOperator<Permutation>> {
        Box::new(self.clone())
    }
}

// ---------------------------------------------------------------------------
// Crossover cores
// ---------------------------------------------------------------------------

fn inverse_of(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &e) in p.iter().enumerate() {
        inv[e] = i;
    }
    inv
}

/// Cycle crossover: cycles of the two parents' element mapping are found in
/// order of smallest unvisited index; even-numbered cycles are exchanged.
pub fn cycle_crossover_core(a: &mut Permutation, b: &mut Permutation) {
    let n = a.len();
    let inv_a = a.inverse_array();
    let mut visited = vec![false; n];
    let mut cycle_number = 0usize;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        cycle_number += 1;
        let mut cycle = Vec::new();
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            cycle.push(i);
            i = inv_a[b.get(i)];
        }
        if cycle_number % 2 == 0 {
            for &idx in &cycle {
                let tmp = a.get(idx);
                a.as_mut_slice()[idx] = b.get(idx);
                b.as_mut_slice()[idx] = tmp;
            }
        }
    }
}

fn pmx_child(keeper: &[usize], donor: &[usize], start: usize, end: usize) -> Vec<usize> {
    let n = keeper.len();
    let inv_donor = inverse_of(donor);
    let mut in_segment = vec![false; n];
    for i in start..=end {
        in_segment[donor[i]] = true;
    }
    let mut child = keeper.to_vec();
    child[start..=end].copy_from_slice(&donor[start..=end]);
    for i in (0..start).chain(end + 1..n) {
        let mut v = keeper[i];
        while in_segment[v] {
            v = keeper[inv_donor[v]];
        }
        child[i] = v;
    }
    child
}

/// Partially matched crossover on the inclusive segment `[start, end]`:
/// each child takes the other parent's segment and repairs the outside via
/// the induced element mapping.
pub fn pmx_core(a: &mut Permutation, b: &mut Permutation, start: usize, end: usize) {
    let c1 = pmx_child(a.as_slice(), b.as_slice(), start, end);
    let c2 = pmx_child(b.as_slice(), a.as_slice(), start, end);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn upmx_child(keeper: &[usize], donor: &[usize], indices: &[usize]) -> Vec<usize> {
    let mut child = keeper.to_vec();
    let mut inv = inverse_of(keeper);
    for &i in indices {
        let wanted = donor[i];
        let j = inv[wanted];
        let displaced = child[i];
        child.swap(i, j);
        inv[wanted] = i;
        inv[displaced] = j;
    }
    child
}

/// Uniform PMX: for each chosen index, the child swaps in the other
/// parent's element at that index via a transposition.
pub fn upmx_core(a: &mut Permutation, b: &mut Permutation, indices: &[usize]) {
    let c1 = upmx_child(a.as_slice(), b.as_slice(), indices);
    let c2 = upmx_child(b.as_slice(), a.as_slice(), indices);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn ox_child(keeper: &[usize], donor: &[usize], start: usize, end: usize) -> Vec<usize> {
    let n = keeper.len();
    let mut kept = vec![false; n];
    for i in start..=end {
        kept[keeper[i]] = true;
    }
    let mut child = vec![0; n];
    child[start..=end].copy_from_slice(&keeper[start..=end]);
    // Fill starts just after the segment, scanning the donor from the same
    // point, both wrapping.
    let mut write = (end + 1) % n;
    let mut read = (end + 1) % n;
    while write != start {
        while kept[donor[read]] {
            read = (read + 1) % n;
        }
        child[write] = donor[read];
        read = (read + 1) % n;
        write = (write + 1) % n;
    }
    child
}

/// Order crossover: each child keeps its own inclusive segment and fills the
/// rest with the other parent's elements in relative order, starting after
/// the segment and wrapping.
pub fn ox_core(a: &mut Permutation, b: &mut Permutation, start: usize, end: usize) {
    let c1 = ox_child(a.as_slice(), b.as_slice(), start, end);
    let c2 = ox_child(b.as_slice(), a.as_slice(), start, end);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn nwox_child(keeper: &[usize], donor: &[usize], start: usize, end: usize) -> Vec<usize> {
    let n = keeper.len();
    let mut kept = vec![false; n];
    for i in start..=end {
        kept[keeper[i]] = true;
    }
    let mut child = vec![0; n];
    child[start..=end].copy_from_slice(&keeper[start..=end]);
    // Fill proceeds left to right from position 0, skipping the kept
    // segment; the donor is scanned from its start, no wrap.
    let mut read = 0;
    for (write, slot) in child.iter_mut().enumerate() {
        if (start..=end).contains(&write) {
            continue;
        }
        while kept[donor[read]] {
            read += 1;
        }
        *slot = donor[read];
        read += 1;
    }
    child
}

/// Non-wrapping order crossover: as OX but the fill proceeds left to right
/// from position 0, skipping the copied segment.
pub fn nwox_core(a: &mut Permutation, b: &mut Permutation, start: usize, end: usize) {
    let c1 = nwox_child(a.as_slice(), b.as_slice(), start, end);
    let c2 = nwox_child(b.as_slice(), a.as_slice(), start, end);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn ox2_child(keeper: &[usize], donor: &[usize], indices: &[usize]) -> Vec<usize> {
    let n = keeper.len();
    // Elements at the chosen positions of the donor, in donor order.
    let mut chosen = vec![false; n];
    for &i in indices {
        chosen[donor[i]] = true;
    }
    let donor_order: Vec<usize> = donor.iter().copied().filter(|&e| chosen[e]).collect();
    let mut child = keeper.to_vec();
    let mut next = donor_order.into_iter();
    for slot in child.iter_mut() {
        if chosen[*slot] {
            *slot = next.next().expect("counts match");
        }
    }
    child
}

/// Order crossover 2: the elements appearing at a chosen index subset of the
/// other parent are reordered within each child to match that parent's
/// relative order.
pub fn ox2_core(a: &mut Permutation, b: &mut Permutation, indices: &[usize]) {
    let c1 = ox2_child(a.as_slice(), b.as_slice(), indices);
    let c2 = ox2_child(b.as_slice(), a.as_slice(), indices);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn uobx_child(keeper: &[usize], donor: &[usize], mask: &[bool]) -> Vec<usize> {
    let n = keeper.len();
    let mut kept = vec![false; n];
    for i in 0..n {
        if mask[i] {
            kept[keeper[i]] = true;
        }
    }
    let mut fill = donor.iter().copied().filter(|&e| !kept[e]);
    let mut child = keeper.to_vec();
    for i in 0..n {
        if !mask[i] {
            child[i] = fill.next().expect("counts match");
        }
    }
    child
}

/// Uniform order-based crossover: each child keeps its elements at mask-true
/// positions and fills the rest with the remaining elements in the other
/// parent's relative order.
pub fn uobx_core(a: &mut Permutation, b: &mut Permutation, mask: &[bool]) {
    let c1 = uobx_child(a.as_slice(), b.as_slice(), mask);
    let c2 = uobx_child(b.as_slice(), a.as_slice(), mask);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn pbx_child(keeper: &[usize], donor: &[usize], indices: &[usize]) -> Vec<usize> {
    let n = keeper.len();
    let mut child = vec![usize::MAX; n];
    let mut placed = vec![false; n];
    for &i in indices {
        child[i] = donor[i];
        placed[donor[i]] = true;
    }
    let mut fill = keeper.iter().copied().filter(|&e| !placed[e]);
    for slot in child.iter_mut() {
        if *slot == usize::MAX {
            *slot = fill.next().expect("counts match");
        }
    }
    child
}

/// Position-based crossover: each child inherits the other parent's elements
/// at the chosen positions exactly, filling the remaining positions with its
/// own leftover elements in their original order.
pub fn position_based_core(a: &mut Permutation, b: &mut Permutation, indices: &[usize]) {
    let c1 = pbx_child(a.as_slice(), b.as_slice(), indices);
    let c2 = pbx_child(b.as_slice(), a.as_slice(), indices);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

fn ppx_child(p1: &[usize], p2: &[usize], coins: &[bool]) -> Vec<usize> {
    let n = p1.len();
    let mut used = vec![false; n];
    let mut child = Vec::with_capacity(n);
    let (mut i1, mut i2) = (0usize, 0usize);
    for &take_first in coins {
        let donor_elem = if take_first {
            while used[p1[i1]] {
                i1 += 1;
            }
            p1[i1]
        } else {
            while used[p2[i2]] {
                i2 += 1;
            }
            p2[i2]
        };
        used[donor_elem] = true;
        child.push(donor_elem);
    }
    child
}

/// Precedence preservative crossover: at each position a coin chooses which
/// parent donates its leftmost not-yet-used element.
pub fn ppx_core(a: &mut Permutation, b: &mut Permutation, coins: &[bool]) {
    let c1 = ppx_child(a.as_slice(), b.as_slice(), coins);
    let inverted: Vec<bool> = coins.iter().map(|c| !c).collect();
    let c2 = ppx_child(a.as_slice(), b.as_slice(), &inverted);
    a.as_mut_slice().copy_from_slice(&c1);
    b.as_mut_slice().copy_from_slice(&c2);
}

/// Neighbor sets from both parents, treating each permutation as a cyclic
/// tour. `shared[x]` holds neighbors adjacent to `x` in both parents.
struct AdjacencyMap {
    neighbors: Vec<Vec<usize>>,
    shared: Vec<Vec<usize>>,
}

fn build_adjacency(p1: &[usize], p2: &[usize], cyclic: bool) -> AdjacencyMap {
    let n = p1.len();
    let mut sets: Vec<Vec<usize>> = vec![Vec::with_capacity(4); n];
    let mut add_edges = |p: &[usize]| {
        for i in 0..n {
            let next = (i + 1) % n;
            if next == 0 && !cyclic {
                continue;
            }
            let (x, y) = (p[i], p[next]);
            if x != y {
                sets[x].push(y);
                sets[y].push(x);
            }
        }
    };
    add_edges(p1);
    add_edges(p2);
    let mut neighbors = Vec::with_capacity(n);
    let mut shared = Vec::with_capacity(n);
    for set in sets {
        let mut uniq: Vec<usize> = Vec::with_capacity(4);
        let mut dup: Vec<usize> = Vec::new();
        for x in set {
            if uniq.contains(&x) {
                if !dup.contains(&x) {
                    dup.push(x);
                }
            } else {
                uniq.push(x);
            }
        }
        neighbors.push(uniq);
        shared.push(dup);
    }
    AdjacencyMap { neighbors, shared }
}

fn er_child(
    adj: &AdjacencyMap,
    n: usize,
    rng: &mut RandomStream,
    prefer_shared: bool,
) -> Vec<usize> {
    let mut remaining: Vec<Vec<usize>> = adj.neighbors.clone();
    let mut used = vec![false; n];
    let mut child = Vec::with_capacity(n);
    let mut current = rng.next_int(n);
    for _ in 0..n {
        used[current] = true;
        child.push(current);
        for list in &mut remaining {
            list.retain(|&x| x != current);
        }
        if child.len() == n {
            break;
        }
        let mut candidates: Vec<usize> = remaining[current].clone();
        if prefer_shared {
            let shared_live: Vec<usize> = adj.shared[current]
                .iter()
                .copied()
                .filter(|&x| !used[x])
                .collect();
            if !shared_live.is_empty() {
                candidates = shared_live;
            }
        }
        current = if candidates.is_empty() {
            // Dead end: uniform restart among unvisited.
            let unvisited: Vec<usize> = (0..n).filter(|&x| !used[x]).collect();
            unvisited[rng.next_int(unvisited.len())]
        } else {
            let min_deg = candidates.iter().map(|&x| remaining[x].len()).min().unwrap();
            let best: Vec<usize> = candidates
                .into_iter()
                .filter(|&x| remaining[x].len() == min_deg)
                .collect();
            best[rng.next_int(best.len())]
        };
    }
    child
}

// ---------------------------------------------------------------------------
// Crossover wrappers
// ---------------------------------------------------------------------------

fn check_lengths(a: &Permutation, b: &Permutation) {
    assert_eq!(a.len(), b.len(), "crossover requires equal-length permutations");
}

/// Two distinct uniform indices, ordered, defining an inclusive segment.
/// For n = 1 the segment is the whole permutation.
fn random_segment(rng: &mut RandomStream, n: usize) -> (usize, usize) {
    if n == 1 {
        return (0, 0);
    }
    let (i, j) = distinct_pair(rng, n);
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

fn random_subset(rng: &mut RandomStream, n: usize, u: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.next_bool(u)).collect()
}

#[derive(Clone, Default)]
pub struct CycleCrossover;

impl CrossoverOperator<Permutation> for CycleCrossover {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, _rng: &mut RandomStream) {
        check_lengths(a, b);
        cycle_crossover_core(a, b);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

#[derive(Clone, Default)]
pub struct Pmx;

impl CrossoverOperator<Permutation> for Pmx {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let (s, e) = random_segment(rng, a.len());
        pmx_core(a, b, s, e);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Uniform PMX with per-index exchange probability `u` (default 1/3).
#[derive(Clone)]
pub struct Upmx {
    u: f64,
}

impl Upmx {
    pub fn new(u: f64) -> Result<Self> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::invalid_argument("upmx u must be in (0, 1)"));
        }
        Ok(Self { u })
    }
}

impl Default for Upmx {
    fn default() -> Self {
        Self { u: 1.0 / 3.0 }
    }
}

impl CrossoverOperator<Permutation> for Upmx {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let indices = random_subset(rng, a.len(), self.u);
        upmx_core(a, b, &indices);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

#[derive(Clone, Default)]
pub struct OrderCrossover;

impl CrossoverOperator<Permutation> for OrderCrossover {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let (s, e) = random_segment(rng, a.len());
        ox_core(a, b, s, e);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

#[derive(Clone, Default)]
pub struct NonWrappingOrderCrossover;

impl CrossoverOperator<Permutation> for NonWrappingOrderCrossover {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let (s, e) = random_segment(rng, a.len());
        nwox_core(a, b, s, e);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Order crossover 2 with per-index selection probability 0.5.
#[derive(Clone, Default)]
pub struct OrderCrossover2;

impl CrossoverOperator<Permutation> for OrderCrossover2 {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let indices = random_subset(rng, a.len(), 0.5);
        ox2_core(a, b, &indices);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Uniform order-based crossover with a fair-coin mask.
#[derive(Clone, Default)]
pub struct UniformOrderBasedCrossover;

impl CrossoverOperator<Permutation> for UniformOrderBasedCrossover {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let mask: Vec<bool> = (0..a.len()).map(|_| rng.next_bool(0.5)).collect();
        uobx_core(a, b, &mask);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Position-based crossover with per-index selection probability 0.5.
#[derive(Clone, Default)]
pub struct PositionBasedCrossover;

impl CrossoverOperator<Permutation> for PositionBasedCrossover {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let indices = random_subset(rng, a.len(), 0.5);
        position_based_core(a, b, &indices);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Edge recombination. Permutations are treated as cyclic tours (wraparound
/// edge included) by default, matching the operator's TSP provenance.
#[derive(Clone)]
pub struct EdgeRecombination {
    cyclic: bool,
}

impl EdgeRecombination {
    pub fn new() -> Self {
        Self { cyclic: true }
    }

    pub fn acyclic() -> Self {
        Self { cyclic: false }
    }
}

impl Default for EdgeRecombination {
    fn default() -> Self {
        Self::new()
    }
}

impl CrossoverOperator<Permutation> for EdgeRecombination {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let n = a.len();
        let adj = build_adjacency(a.as_slice(), b.as_slice(), self.cyclic);
        let c1 = er_child(&adj, n, rng, false);
        let c2 = er_child(&adj, n, rng, false);
        a.as_mut_slice().copy_from_slice(&c1);
        b.as_mut_slice().copy_from_slice(&c2);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Edge recombination with shared-edge priority: neighbors adjacent in both
/// parents are preferred during construction.
#[derive(Clone)]
pub struct EnhancedEdgeRecombination {
    cyclic: bool,
}

impl EnhancedEdgeRecombination {
    pub fn new() -> Self {
        Self { cyclic: true }
    }
}

impl Default for EnhancedEdgeRecombination {
    fn default() -> Self {
        Self::new()
    }
}

impl CrossoverOperator<Permutation> for EnhancedEdgeRecombination {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let n = a.len();
        let adj = build_adjacency(a.as_slice(), b.as_slice(), self.cyclic);
        let c1 = er_child(&adj, n, rng, true);
        let c2 = er_child(&adj, n, rng, true);
        a.as_mut_slice().copy_from_slice(&c1);
        b.as_mut_slice().copy_from_slice(&c2);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Precedence preservative crossover with fair donor coins.
#[derive(Clone, Default)]
pub struct Ppx;

impl CrossoverOperator<Permutation> for Ppx {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let coins: Vec<bool> = (0..a.len()).map(|_| rng.next_bool(0.5)).collect();
        ppx_core(a, b, &coins);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

/// Uniform PPX: per-position probability `u` of drawing from the first
/// parent.
#[derive(Clone)]
pub struct Uppx {
    u: f64,
}

impl Uppx {
    pub fn new(u: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::invalid_argument("uppx u must be in [0, 1]"));
        }
        Ok(Self { u })
    }
}

impl Default for Uppx {
    fn default() -> Self {
        Self { u: 0.5 }
    }
}

impl CrossoverOperator<Permutation> for Uppx {
    fn cross(&mut self, a: &mut Permutation, b: &mut Permutation, rng: &mut RandomStream) {
        check_lengths(a, b);
        let coins: Vec<bool> = (0..a.len()).map(|_| rng.next_bool(self.u)).collect();
        ppx_core(a, b, &coins);
    }

    fn split(&self) -> Box<dyn CrossoverOperator<Permutation>> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_vec(v.to_vec()).unwrap()
    }

    // ----- mutation cores -----

    #[test]
    fn swap_core_examples() {
        let mut p = perm(&[0, 1, 2, 3]);
        swap_core(&mut p, 1, 3);
        assert_eq!(p.as_slice(), &[0, 3, 2, 1]);
        swap_core(&mut p, 1, 3);
        assert_eq!(p.as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn swap_mutation_n2() {
        let mut op = SwapMutation;
        let mut rng = RandomStream::from_seed(1);
        for _ in 0..20 {
            let mut p = perm(&[0, 1]);
            op.mutate(&mut p, &mut rng);
            assert_eq!(p.as_slice(), &[1, 0]);
        }
    }

    #[test]
    fn adjacent_swap_examples() {
        let mut p = perm(&[0, 1, 2]);
        adjacent_swap_core(&mut p, 0);
        assert_eq!(p.as_slice(), &[1, 0, 2]);

        let mut op = AdjacentSwapMutation;
        let mut rng = RandomStream::from_seed(2);
        for _ in 0..50 {
            let before = Permutation::random(&mut rng, 6).unwrap();
            let mut after = before.clone();
            op.mutate(&mut after, &mut rng);
            let diff = before
                .as_slice()
                .iter()
                .zip(after.as_slice())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(diff, 2);
        }
    }

    #[test]
    fn insertion_core_hand_trace() {
        let mut p = perm(&[0, 1, 2, 3]);
        insertion_core(&mut p, 0, 2);
        assert_eq!(p.as_slice(), &[1, 2, 0, 3]);

        let mut p = perm(&[0, 1, 2, 3]);
        insertion_core(&mut p, 3, 1);
        assert_eq!(p.as_slice(), &[0, 3, 1, 2]);
    }

    #[test]
    fn insertion_preserves_multiset() {
        let mut op = InsertionMutation;
        let mut rng = RandomStream::from_seed(3);
        for _ in 0..10_000 {
            let mut p = Permutation::random(&mut rng, 8).unwrap();
            let before = p.clone();
            op.mutate(&mut p, &mut rng);
            assert!(p.is_valid());
            assert_ne!(p, before);
        }
    }

    #[test]
    fn reversal_core_examples() {
        let mut p = perm(&[0, 1, 2, 3, 4]);
        reversal_core(&mut p, 1, 3);
        assert_eq!(p.as_slice(), &[0, 3, 2, 1, 4]);
        reversal_core(&mut p, 1, 3);
        assert_eq!(p.as_slice(), &[0, 1, 2, 3, 4]);
        reversal_core(&mut p, 0, 4);
        assert_eq!(p.as_slice(), &[4, 3, 2, 1, 0]);
    }

    #[test]
    fn scramble_locality_and_uniformity() {
        let mut rng = RandomStream::from_seed(4);
        // Elements outside [1, 3] unchanged; each of 3! orders ~1/6.
        let trials = 60_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let mut p = perm(&[0, 1, 2, 3, 4, 5]);
            scramble_core(&mut p, 1, 3, &mut rng);
            assert_eq!(p.get(0), 0);
            assert_eq!(p.get(4), 4);
            assert_eq!(p.get(5), 5);
            *counts
                .entry((p.get(1), p.get(2), p.get(3)))
                .or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 6.0).abs() < 0.01, "freq {f}");
        }
    }

    #[test]
    fn uniform_scramble_unmarked_unchanged() {
        let mut rng = RandomStream::from_seed(5);
        let mut p = perm(&[0, 1, 2, 3, 4]);
        uniform_scramble_core(&mut p, &[0, 2, 4], &mut rng);
        assert_eq!(p.get(1), 1);
        assert_eq!(p.get(3), 3);
        assert!(p.is_valid());
    }

    #[test]
    fn uniform_scramble_near_one_is_full_shuffle() {
        let mut op = UniformScrambleMutation::new(0.999).unwrap();
        let mut rng = RandomStream::from_seed(6);
        let trials = 60_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..trials {
            let mut p = perm(&[0, 1, 2]);
            op.mutate(&mut p, &mut rng);
            *counts.entry(p.as_slice().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 6);
        for &c in counts.values() {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 6.0).abs() < 0.01, "freq {f}");
        }
    }

    #[test]
    fn cycle_core_hand_trace() {
        // Cycle 0 -> 1 -> 2 -> 0 over positions (0, 1, 2).
        let mut p = perm(&[0, 1, 2, 3]);
        cycle_core(&mut p, &[0, 1, 2]);
        assert_eq!(p.as_slice(), &[2, 0, 1, 3]);
    }

    #[test]
    fn cycle_two_positions_equals_swap() {
        let mut a = perm(&[3, 1, 4, 0, 2]);
        let mut b = a.clone();
        cycle_core(&mut a, &[1, 3]);
        swap_core(&mut b, 1, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn cycle_mutation_changes_exactly_k_positions() {
        let mut rng = RandomStream::from_seed(7);
        for _ in 0..1000 {
            let before = Permutation::random(&mut rng, 10).unwrap();
            let mut after = before.clone();
            let k = 2 + rng.next_int(4);
            let positions = rng.sample_distinct(10, k).unwrap();
            cycle_core(&mut after, &positions);
            let changed = before
                .as_slice()
                .iter()
                .zip(after.as_slice())
                .filter(|(a, b)| a != b)
                .count();
            assert_eq!(changed, k);
            assert!(after.is_valid());
        }
    }

    #[test]
    fn three_opt_pure_reversal_matches_reversal_core() {
        let mut a = perm(&[4, 2, 0, 3, 1]);
        let mut b = a.clone();
        three_opt_core(&mut a, 1, 4, 5, ThreeOptVariant::ReverseFirst);
        reversal_core(&mut b, 1, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn three_opt_full_neighborhood_n5() {
        let input = perm(&[0, 1, 2, 3, 4]);
        let n = 5;
        let mut outputs = 0;
        for a in 0..=n {
            for b in (a + 1)..=n {
                for c in (b + 1)..=n {
                    let (len1, len2) = (b - a, c - b);
                    for v in ThreeOptVariant::ALL {
                        if !v.applicable(len1, len2) {
                            continue;
                        }
                        let mut p = input.clone();
                        three_opt_core(&mut p, a, b, c, v);
                        assert!(p.is_valid(), "{a},{b},{c} {v:?}");
                        assert_ne!(p, input, "{a},{b},{c} {v:?} produced identity");
                        outputs += 1;
                    }
                }
            }
        }
        assert!(outputs > 0);
    }

    #[test]
    fn three_opt_mutation_fuzz() {
        let mut op = ThreeOptMutation;
        let mut rng = RandomStream::from_seed(8);
        for n in [5usize, 8, 13, 32] {
            for _ in 0..2500 {
                let mut p = Permutation::random(&mut rng, n).unwrap();
                let before = p.clone();
                op.mutate(&mut p, &mut rng);
                assert!(p.is_valid());
                assert_ne!(p, before);
            }
        }
    }

    #[test]
    fn block_move_hand_trace() {
        let mut p = perm(&[0, 1, 2, 3, 4]);
        block_move_core(&mut p, 1, 2, 4);
        assert_eq!(p.as_slice(), &[0, 3, 1, 2, 4]);
    }

    #[test]
    fn block_move_length_one_equals_insertion() {
        let mut a = perm(&[0, 1, 2, 3, 4]);
        let mut b = a.clone();
        block_move_core(&mut a, 1, 1, 4);
        insertion_core(&mut b, 1, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn block_move_preserves_block_order() {
        let mut rng = RandomStream::from_seed(9);
        let mut op = BlockMoveMutation;
        for _ in 0..5000 {
            let mut p = Permutation::random(&mut rng, 9).unwrap();
            let before = p.clone();
            op.mutate(&mut p, &mut rng);
            assert!(p.is_valid());
            assert_ne!(p, before);
        }
    }

    #[test]
    fn block_swap_hand_trace() {
        let mut p = perm(&[0, 1, 2, 3, 4]);
        block_swap_core(&mut p, 0, 0, 2, 4);
        assert_eq!(p.as_slice(), &[2, 3, 4, 1, 0]);
    }

    #[test]
    fn block_swap_adjacent_single_elements_equals_adjacent_swap() {
        let mut a = perm(&[4, 0, 3, 1, 2]);
        let mut b = a.clone();
        block_swap_core(&mut a, 2, 2, 3, 3);
        adjacent_swap_core(&mut b, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn block_swap_mutation_always_changes() {
        let mut rng = RandomStream::from_seed(10);
        let mut op = BlockSwapMutation;
        for _ in 0..5000 {
            let mut p = Permutation::random(&mut rng, 7).unwrap();
            let before = p.clone();
            op.mutate(&mut p, &mut rng);
            assert!(p.is_valid());
            assert_ne!(p, before);
        }
    }

    #[test]
    fn window_limit_one_swap_matches_adjacent_swap() {
        // w = 1 on swap: only adjacent pairs are legal.
        let mut op = WindowLimitedMutation::new(WindowedBase::Swap, 1).unwrap();
        let mut rng = RandomStream::from_seed(11);
        for _ in 0..1000 {
            let before = Permutation::random(&mut rng, 6).unwrap();
            let mut after = before.clone();
            op.mutate(&mut after, &mut rng);
            let changed: Vec<usize> = (0..6)
                .filter(|&i| before.get(i) != after.get(i))
                .collect();
            assert_eq!(changed.len(), 2);
            assert_eq!(changed[1] - changed[0], 1);
        }
    }

    #[test]
    fn window_full_width_matches_unrestricted_swap_distribution() {
        let n = 5;
        let trials = 10_000;
        let run = |op: &mut dyn MutationOperator<Permutation>, seed: u64| {
            let mut rng = RandomStream::from_seed(seed);
            let mut counts = std::collections::HashMap::new();
            for _ in 0..trials {
                let mut p = perm(&[0, 1, 2, 3, 4]);
                op.mutate(&mut p, &mut rng);
                *counts.entry(p.as_slice().to_vec()).or_insert(0u64) += 1;
            }
            counts
        };
        let mut base = SwapMutation;
        let mut windowed = WindowLimitedMutation::new(WindowedBase::Swap, n - 1).unwrap();
        let c1 = run(&mut base, 12);
        let c2 = run(&mut windowed, 13);
        assert_eq!(c1.len(), 10);
        assert_eq!(c2.len(), 10);
        for (k, &v) in &c1 {
            let f1 = v as f64 / trials as f64;
            let f2 = *c2.get(k).unwrap_or(&0) as f64 / trials as f64;
            assert!((f1 - f2).abs() < 0.02, "{k:?}: {f1} vs {f2}");
        }
    }

    #[test]
    fn window_constraint_respected() {
        for base in [
            WindowedBase::Swap,
            WindowedBase::Insertion,
            WindowedBase::Reversal,
            WindowedBase::Scramble,
            WindowedBase::BlockMove,
        ] {
            let w = 2;
            let mut op = WindowLimitedMutation::new(base, w).unwrap();
            let mut rng = RandomStream::from_seed(14);
            for _ in 0..2000 {
                let before = Permutation::random(&mut rng, 10).unwrap();
                let mut after = before.clone();
                op.mutate(&mut after, &mut rng);
                assert!(after.is_valid());
                let changed: Vec<usize> = (0..10)
                    .filter(|&i| before.get(i) != after.get(i))
                    .collect();
                if let (Some(&first), Some(&last)) = (changed.first(), changed.last()) {
                    assert!(last - first <= w, "{base:?}: changed span {changed:?}");
                }
            }
        }
    }

    // ----- crossover cores -----

    #[test]
    fn cycle_crossover_hand_trace() {
        let mut a = perm(&[0, 1, 2, 3]);
        let mut b = perm(&[1, 0, 3, 2]);
        cycle_crossover_core(&mut a, &mut b);
        assert_eq!(a.as_slice(), &[0, 1, 3, 2]);
        assert_eq!(b.as_slice(), &[1, 0, 2, 3]);
    }

    #[test]
    fn cycle_crossover_position_inheritance() {
        let mut rng = RandomStream::from_seed(15);
        for _ in 0..1000 {
            let p1 = Permutation::random(&mut rng, 8).unwrap();
            let p2 = Permutation::random(&mut rng, 8).unwrap();
            let mut a = p1.clone();
            let mut b = p2.clone();
            cycle_crossover_core(&mut a, &mut b);
            for i in 0..8 {
                assert!(a.get(i) == p1.get(i) || a.get(i) == p2.get(i));
                assert!(b.get(i) == p1.get(i) || b.get(i) == p2.get(i));
            }
            assert!(a.is_valid() && b.is_valid());
        }
    }

    /// Naive O(n^2) PMX used as an independent reference.
    fn pmx_reference(p1: &[usize], p2: &[usize], s: usize, e: usize) -> Vec<usize> {
        let n = p1.len();
        let mut child: Vec<Option<usize>> = vec![None; n];
        for i in s..=e {
            child[i] = Some(p2[i]);
        }
        for i in (0..s).chain(e + 1..n) {
            let mut candidate = p1[i];
            loop {
                let conflict = (s..=e).find(|&j| p2[j] == candidate);
                match conflict {
                    Some(j) => candidate = p1[j],
                    None => break,
                }
            }
            child[i] = Some(candidate);
        }
        child.into_iter().map(Option::unwrap).collect()
    }

    #[test]
    fn pmx_matches_reference() {
        let mut rng = RandomStream::from_seed(16);
        for _ in 0..1000 {
            let n = 2 + rng.next_int(5);
            let p1 = Permutation::random(&mut rng, n).unwrap();
            let p2 = Permutation::random(&mut rng, n).unwrap();
            let (s, e) = random_segment(&mut rng, n);
            let mut a = p1.clone();
            let mut b = p2.clone();
            pmx_core(&mut a, &mut b, s, e);
            assert_eq!(a.as_slice(), &pmx_reference(p1.as_slice(), p2.as_slice(), s, e)[..]);
            assert_eq!(b.as_slice(), &pmx_reference(p2.as_slice(), p1.as_slice(), s, e)[..]);
        }
    }

    #[test]
    fn pmx_segment_exchange_contract() {
        let mut rng = RandomStream::from_seed(17);
        for _ in 0..200 {
            let p1 = Permutation::random(&mut rng, 9).unwrap();
            let p2 = Permutation::random(&mut rng, 9).unwrap();
            let mut a = p1.clone();
            let mut b = p2.clone();
            pmx_core(&mut a, &mut b, 2, 5);
            for i in 2..=5 {
                assert_eq!(a.get(i), p2.get(i));
                assert_eq!(b.get(i), p1.get(i));
            }
            assert!(a.is_valid() && b.is_valid());
        }
    }

    #[test]
    fn upmx_single_index_equals_pmx_length_one_segment() {
        let mut rng = RandomStream::from_seed(18);
        for _ in 0..500 {
            let p1 = Permutation::random(&mut rng, 6).unwrap();
            let p2 = Permutation::random(&mut rng, 6).unwrap();
            let i = rng.next_int(6);
            let mut a1 = p1.clone();
            let mut b1 = p2.clone();
            upmx_core(&mut a1, &mut b1, &[i]);
            let mut a2 = p1.clone();
            let mut b2 = p2.clone();
            pmx_core(&mut a2, &mut b2, i, i);
            assert_eq!(a1, a2);
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn upmx_empty_subset_unchanged() {
        let mut a = perm(&[2, 0, 1]);
        let mut b = perm(&[1, 2, 0]);
        let (a0, b0) = (a.clone(), b.clone());
        upmx_core(&mut a, &mut b, &[]);
        assert_eq!(a, a0);
        assert_eq!(b, b0);
    }

    /// Naive OX reference: collect donor elements outside the kept segment
    /// starting after the segment, then write them back after the segment.
    fn ox_reference(keeper: &[usize], donor: &[usize], s: usize, e: usize) -> Vec<usize> {
        let n = keeper.len();
        let kept: Vec<usize> = keeper[s..=e].to_vec();
        let mut fill = Vec::new();
        for step in 1..=n {
            let idx = (e + step) % n;
            if !kept.contains(&donor[idx]) {
                fill.push(donor[idx]);
            }
        }
        let mut child = vec![0; n];
        child[s..=e].copy_from_slice(&kept);
        for (offset, &v) in fill.iter().enumerate() {
            child[(e + 1 + offset) % n] = v;
        }
        child
    }

    #[test]
    fn ox_matches_reference() {
        let mut rng = RandomStream::from_seed(19);
        for _ in 0..1000 {
            let n = 2 + rng.next_int(5);
            let p1 = Permutation::random(&mut rng, n).unwrap();
            let p2 = Permutation::random(&mut rng, n).unwrap();
            let (s, e) = random_segment(&mut rng, n);
            let mut a = p1.clone();
            let mut b = p2.clone();
            ox_core(&mut a, &mut b, s, e);
            assert_eq!(a.as_slice(), &ox_reference(p1.as_slice(), p2.as_slice(), s, e)[..]);
            assert_eq!(b.as_slice(), &ox_reference(p2.as_slice(), p1.as_slice(), s, e)[..]);
        }
    }

    #[test]
    fn ox_whole_segment_unchanged() {
        let mut a = perm(&[3, 1, 0, 2]);
        let mut b = perm(&[0, 2, 3, 1]);
        let (a0, b0) = (a.clone(), b.clone());
        ox_core(&mut a, &mut b, 0, 3);
        assert_eq!(a, a0);
        assert_eq!(b, b0);
    }

    #[test]
    fn nwox_matches_ox_for_suffix_segments() {
        // Segment ending at n-1: the OX fill wraps to position 0
        // immediately and its donor scan also starts at 0, which is exactly
        // the NWOX left-to-right fill.
        let mut rng = RandomStream::from_seed(20);
        for _ in 0..500 {
            let n = 3 + rng.next_int(5);
            let p1 = Permutation::random(&mut rng, n).unwrap();
            let p2 = Permutation::random(&mut rng, n).unwrap();
            let s = 1 + rng.next_int(n - 1);
            let mut a1 = p1.clone();
            let mut b1 = p2.clone();
            ox_core(&mut a1, &mut b1, s, n - 1);
            let mut a2 = p1.clone();
            let mut b2 = p2.clone();
            nwox_core(&mut a2, &mut b2, s, n - 1);
            assert_eq!(a1, a2);
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn nwox_fill_is_left_to_right() {
        // keeper [0,1,2,3,4] keeps [2,3] at positions 2..3; donor
        // [4,3,2,1,0] contributes 4,1,0 in donor order to positions 0,1,4.
        let mut a = perm(&[0, 1, 2, 3, 4]);
        let mut b = perm(&[4, 3, 2, 1, 0]);
        nwox_core(&mut a, &mut b, 2, 3);
        assert_eq!(a.as_slice(), &[4, 1, 2, 3, 0]);
        assert!(b.is_valid());
    }

    #[test]
    fn ox2_limits() {
        let mut rng = RandomStream::from_seed(21);
        for _ in 0..200 {
            let p1 = Permutation::random(&mut rng, 7).unwrap();
            let p2 = Permutation::random(&mut rng, 7).unwrap();
            // Empty subset: unchanged.
            let mut a = p1.clone();
            let mut b = p2.clone();
            ox2_core(&mut a, &mut b, &[]);
            assert_eq!(a, p1);
            assert_eq!(b, p2);
            // Full subset: child1 = parent2, child2 = parent1.
            let all: Vec<usize> = (0..7).collect();
            let mut a = p1.clone();
            let mut b = p2.clone();
            ox2_core(&mut a, &mut b, &all);
            assert_eq!(a, p2);
            assert_eq!(b, p1);
        }
    }

    #[test]
    fn ox2_reorders_to_donor_order() {
        // p1=[0,1,2,3,4], p2=[4,2,0,3,1], indices {1, 4} pick donor
        // elements {2, 1}; in child1 those elements are reordered to
        // p2's relative order (2 before 1 already) -> unchanged; use
        // indices {0, 2}: elements {4, 0}, p2 order 4 then 0, so child1
        // positions of {0,4} = {0,4} receive 4 then 0.
        let mut a = perm(&[0, 1, 2, 3, 4]);
        let mut b = perm(&[4, 2, 0, 3, 1]);
        ox2_core(&mut a, &mut b, &[0, 2]);
        assert_eq!(a.as_slice(), &[4, 1, 2, 3, 0]);
        assert!(b.is_valid());
    }

    #[test]
    fn uobx_mask_limits() {
        let mut rng = RandomStream::from_seed(22);
        for _ in 0..200 {
            let p1 = Permutation::random(&mut rng, 6).unwrap();
            let p2 = Permutation::random(&mut rng, 6).unwrap();
            let mut a = p1.clone();
            let mut b = p2.clone();
            uobx_core(&mut a, &mut b, &[true; 6]);
            assert_eq!(a, p1);
            assert_eq!(b, p2);
            let mut a = p1.clone();
            let mut b = p2.clone();
            uobx_core(&mut a, &mut b, &[false; 6]);
            assert_eq!(a, p2);
            assert_eq!(b, p1);
        }
    }

    #[test]
    fn pbx_subset_limits() {
        let mut rng = RandomStream::from_seed(23);
        for _ in 0..200 {
            let p1 = Permutation::random(&mut rng, 6).unwrap();
            let p2 = Permutation::random(&mut rng, 6).unwrap();
            let mut a = p1.clone();
            let mut b = p2.clone();
            position_based_core(&mut a, &mut b, &[]);
            assert_eq!(a, p1);
            assert_eq!(b, p2);
            let all: Vec<usize> = (0..6).collect();
            let mut a = p1.clone();
            let mut b = p2.clone();
            position_based_core(&mut a, &mut b, &all);
            assert_eq!(a, p2);
            assert_eq!(b, p1);
        }
    }

    fn tour_edges(p: &Permutation) -> std::collections::HashSet<(usize, usize)> {
        let n = p.len();
        let mut edges = std::collections::HashSet::new();
        for i in 0..n {
            let (x, y) = (p.get(i), p.get((i + 1) % n));
            edges.insert((x.min(y), x.max(y)));
        }
        edges
    }

    #[test]
    fn er_identical_parents_preserves_edges() {
        let parent = perm(&[0, 1, 2, 3]);
        let parent_edges = tour_edges(&parent);
        let mut op = EdgeRecombination::new();
        let mut rng = RandomStream::from_seed(24);
        for _ in 0..500 {
            let mut a = parent.clone();
            let mut b = parent.clone();
            op.cross(&mut a, &mut b, &mut rng);
            for child in [&a, &b] {
                assert!(child.is_valid());
                assert!(
                    tour_edges(child).is_subset(&parent_edges),
                    "child {child} has foreign edges"
                );
            }
        }
    }

    #[test]
    fn eer_shared_edges_preserved() {
        let parent = perm(&[2, 0, 3, 1, 4]);
        let parent_edges = tour_edges(&parent);
        let mut op = EnhancedEdgeRecombination::new();
        let mut rng = RandomStream::from_seed(25);
        for _ in 0..500 {
            let mut a = parent.clone();
            let mut b = parent.clone();
            op.cross(&mut a, &mut b, &mut rng);
            assert!(tour_edges(&a).is_subset(&parent_edges));
        }
    }

    #[test]
    fn er_n2() {
        let mut op = EdgeRecombination::new();
        let mut rng = RandomStream::from_seed(26);
        for _ in 0..50 {
            let mut a = perm(&[0, 1]);
            let mut b = perm(&[1, 0]);
            op.cross(&mut a, &mut b, &mut rng);
            assert!(a.is_valid() && b.is_valid());
        }
    }

    #[test]
    fn er_and_eer_bijective_fuzz() {
        let mut rng = RandomStream::from_seed(27);
        let mut er = EdgeRecombination::new();
        let mut eer = EnhancedEdgeRecombination::new();
        for n in [2usize, 5, 12, 32] {
            for _ in 0..500 {
                let mut a = Permutation::random(&mut rng, n).unwrap();
                let mut b = Permutation::random(&mut rng, n).unwrap();
                er.cross(&mut a, &mut b, &mut rng);
                assert!(a.is_valid() && b.is_valid());
                eer.cross(&mut a, &mut b, &mut rng);
                assert!(a.is_valid() && b.is_valid());
            }
        }
    }

    #[test]
    fn ppx_all_coins_one_parent() {
        let p1 = perm(&[3, 0, 2, 1]);
        let p2 = perm(&[1, 2, 3, 0]);
        let mut a = p1.clone();
        let mut b = p2.clone();
        ppx_core(&mut a, &mut b, &[true; 4]);
        assert_eq!(a, p1);
        // child2 uses inverted coins: all from parent2.
        assert_eq!(b, p2);
    }

    fn precedes(p: &[usize], x: usize, y: usize) -> bool {
        let px = p.iter().position(|&e| e == x).unwrap();
        let py = p.iter().position(|&e| e == y).unwrap();
        px < py
    }

    #[test]
    fn ppx_precedence_preservation() {
        let mut rng = RandomStream::from_seed(28);
        let mut op = Ppx;
        for _ in 0..10_000 {
            let p1 = Permutation::random(&mut rng, 7).unwrap();
            let p2 = Permutation::random(&mut rng, 7).unwrap();
            let mut a = p1.clone();
            let mut b = p2.clone();
            op.cross(&mut a, &mut b, &mut rng);
            for x in 0..7 {
                for y in 0..7 {
                    if x != y
                        && precedes(p1.as_slice(), x, y)
                        && precedes(p2.as_slice(), x, y)
                    {
                        assert!(precedes(a.as_slice(), x, y));
                        assert!(precedes(b.as_slice(), x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn uppx_extremes() {
        let mut rng = RandomStream::from_seed(29);
        let p1 = perm(&[2, 4, 1, 0, 3]);
        let p2 = perm(&[0, 1, 2, 3, 4]);
        let mut a = p1.clone();
        let mut b = p2.clone();
        Uppx::new(1.0).unwrap().cross(&mut a, &mut b, &mut rng);
        assert_eq!(a, p1);
        let mut a = p1.clone();
        let mut b = p2.clone();
        Uppx::new(0.0).unwrap().cross(&mut a, &mut b, &mut rng);
        assert_eq!(a, p2);
    }

    fn all_crossovers() -> Vec<(&'static str, Box<dyn CrossoverOperator<Permutation>>)> {
        vec![
            ("cx", Box::new(CycleCrossover)),
            ("pmx", Box::new(Pmx)),
            ("upmx", Box::new(Upmx::default())),
            ("ox", Box::new(OrderCrossover)),
            ("nwox", Box::new(NonWrappingOrderCrossover)),
            ("ox2", Box::new(OrderCrossover2)),
            ("uobx", Box::new(UniformOrderBasedCrossover)),
            ("pbx", Box::new(PositionBasedCrossover)),
            ("er", Box::new(EdgeRecombination::new())),
            ("eer", Box::new(EnhancedEdgeRecombination::new())),
            ("ppx", Box::new(Ppx)),
            ("uppx", Box::new(Uppx::default())),
        ]
    }

    #[test]
    fn identity_parent_fixpoint() {
        // Holds for every crossover except er/eer, whose children are
        // reconstructed from the (identical) edge sets.
        let mut rng = RandomStream::from_seed(30);
        for (name, mut op) in all_crossovers() {
            if name == "er" || name == "eer" {
                continue;
            }
            for _ in 0..1000 {
                let p = Permutation::random(&mut rng, 6).unwrap();
                let mut a = p.clone();
                let mut b = p.clone();
                op.cross(&mut a, &mut b, &mut rng);
                assert_eq!(a, p, "{name}");
                assert_eq!(b, p, "{name}");
            }
        }
    }

    #[test]
    fn all_crossovers_bijective_fuzz() {
        let mut rng = RandomStream::from_seed(31);
        for (name, mut op) in all_crossovers() {
            for n in [1usize, 2, 3, 8, 16] {
                for _ in 0..200 {
                    let mut a = Permutation::random(&mut rng, n).unwrap();
                    let mut b = Permutation::random(&mut rng, n).unwrap();
                    op.cross(&mut a, &mut b, &mut rng);
                    assert!(a.is_valid() && b.is_valid(), "{name} n={n}");
                }
            }
        }
    }

    #[test]
    fn all_mutations_bijective_and_changing_fuzz() {
        let mut rng = RandomStream::from_seed(32);
        let always_change: Vec<(&str, Box<dyn MutationOperator<Permutation>>)> = vec![
            ("swap", Box::new(SwapMutation)),
            ("adjswap", Box::new(AdjacentSwapMutation)),
            ("insertion", Box::new(InsertionMutation)),
            ("reversal", Box::new(ReversalMutation)),
            ("cycle", Box::new(CycleMutation::new(4).unwrap())),
            ("blockmove", Box::new(BlockMoveMutation)),
            ("blockswap", Box::new(BlockSwapMutation)),
            ("threeopt", Box::new(ThreeOptMutation)),
        ];
        for (name, mut op) in always_change {
            for n in [2usize, 3, 5, 16] {
                for _ in 0..500 {
                    let mut p = Permutation::random(&mut rng, n).unwrap();
                    let before = p.clone();
                    op.mutate(&mut p, &mut rng);
                    assert!(p.is_valid(), "{name} n={n}");
                    assert_ne!(p, before, "{name} n={n}");
                }
            }
        }
        let may_fix: Vec<(&str, Box<dyn MutationOperator<Permutation>>)> = vec![
            ("scramble", Box::new(ScrambleMutation)),
            ("uscramble", Box::new(UniformScrambleMutation::new(0.5).unwrap())),
        ];
        for (name, mut op) in may_fix {
            for n in [2usize, 3, 5, 16] {
                for _ in 0..500 {
                    let mut p = Permutation::random(&mut rng, n).unwrap();
                    op.mutate(&mut p, &mut rng);
                    assert!(p.is_valid(), "{name} n={n}");
                }
            }
        }
    }

    #[test]
    fn deterministic_cores_bit_identical() {
        let mut r1 = RandomStream::from_seed(33);
        let mut r2 = RandomStream::from_seed(33);
        let mut a1 = perm(&[0, 1, 2, 3, 4, 5]);
        let mut a2 = a1.clone();
        scramble_core(&mut a1, 1, 4, &mut r1);
        scramble_core(&mut a2, 1, 4, &mut r2);
        assert_eq!(a1, a2);
    }
}
