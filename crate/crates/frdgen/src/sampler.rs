//! Weighted vertex selection over per-degree pools.
//!
//! For a degree histogram {n_d} with mass m = Σ d·n_d, every degree d ≥ 1
//! with n_d > 0 gets a pool of n_d slots (b·n_1 slots for d = 1, where b
//! is the blowup factor). A pool is selected with probability
//! w_d = d·n_d / m and a slot uniformly within it, so a degree-d slot is
//! drawn d times in expectation over m draws. The blowup enlarges the
//! degree-1 pool without changing its weight, dropping the per-slot rate
//! from 1 to 1/b so most degree-1 slots are drawn at most once.
//!
//! Drawing uses a precomputed alias table over individual slots, giving
//! exactly one random number per endpoint. After drawing, the distinct
//! slots are mapped injectively to uniformly-random node labels.

use std::collections::HashMap;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::hist::DegreeHistogram;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("no positive-degree nodes in histogram")]
    NoPositiveDegreeNodes,
    #[error("blowup factor must be a positive integer, got {0}")]
    InvalidBlowup(u32),
}

/// A contiguous slot range representing the nodes of one target degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pool {
    pub degree: u32,
    pub slot_start: u32,
    pub slot_len: u32,
    /// Selection weight w_d = d·n_d / m. Independent of the blowup.
    pub weight: f64,
}

/// Per-degree pools plus the alias table used to draw slots in O(1).
#[derive(Debug, Clone)]
pub struct PoolTable {
    pools: Vec<Pool>,
    blowup: u32,
    total_slots: u32,
    draw_count: u64,
    slot_prob: Vec<f64>,
    slot_alias: Vec<u32>,
}

impl PoolTable {
    pub fn pools(&self) -> &[Pool] {
        &self.pools
    }

    pub fn blowup(&self) -> u32 {
        self.blowup
    }

    /// n* = b·n_1 + Σ_{d≥2} n_d.
    pub fn total_slots(&self) -> u32 {
        self.total_slots
    }

    /// m = Σ_{d≥1} d·n_d, the number of endpoints a full selection draws.
    pub fn draw_count(&self) -> u64 {
        self.draw_count
    }

    /// Target degree of the pool owning `slot`.
    pub fn degree_of_slot(&self, slot: u32) -> u32 {
        let i = self
            .pools
            .partition_point(|p| p.slot_start + p.slot_len <= slot);
        self.pools[i].degree
    }

    /// Draws one slot: pool d with probability w_d, uniform slot within.
    ///
    /// Consumes exactly one random number; the single uniform is split
    /// into the alias-table index and the acceptance coin.
    pub fn draw_slot<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let scaled = rng.random::<f64>() * self.total_slots as f64;
        let mut idx = scaled as u32;
        if idx >= self.total_slots {
            idx = self.total_slots - 1;
        }
        let frac = scaled - idx as f64;
        if frac < self.slot_prob[idx as usize] {
            idx
        } else {
            self.slot_alias[idx as usize]
        }
    }
}

/// Builds the pool table for a histogram with blowup factor `b ≥ 1`.
///
/// Degree-0 nodes contribute no slots; they can only receive labels that
/// are never drawn.
pub fn build_pools(hist: &DegreeHistogram, b: u32) -> Result<PoolTable, SamplerError> {
    if b < 1 {
        return Err(SamplerError::InvalidBlowup(b));
    }
    let m = hist.edge_mass();
    if m == 0 {
        return Err(SamplerError::NoPositiveDegreeNodes);
    }

    let mut pools = Vec::new();
    let mut start: u64 = 0;
    for (d, n_d) in hist.positive() {
        let slots = if d == 1 { b as u64 * n_d } else { n_d };
        pools.push(Pool {
            degree: d as u32,
            slot_start: u32::try_from(start).expect("slot space exceeds u32"),
            slot_len: u32::try_from(slots).expect("pool size exceeds u32"),
            weight: d as f64 * n_d as f64 / m as f64,
        });
        start += slots;
    }
    let total_slots = u32::try_from(start).expect("slot space exceeds u32");

    let (slot_prob, slot_alias) = build_alias(&pools, total_slots);
    Ok(PoolTable {
        pools,
        blowup: b,
        total_slots,
        draw_count: m,
        slot_prob,
        slot_alias,
    })
}

/// Vose alias construction over per-slot probabilities w_d / |P_d|.
fn build_alias(pools: &[Pool], total_slots: u32) -> (Vec<f64>, Vec<u32>) {
    let n = total_slots as usize;
    // Scaled weights: per-slot probability times n.
    let mut scaled = vec![0.0f64; n];
    for p in pools {
        let per_slot = p.weight / p.slot_len as f64 * n as f64;
        let range = p.slot_start as usize..(p.slot_start + p.slot_len) as usize;
        scaled[range].fill(per_slot);
    }

    let mut prob = vec![0.0f64; n];
    let mut alias: Vec<u32> = (0..total_slots).collect();
    let mut small: Vec<u32> = Vec::new();
    let mut large: Vec<u32> = Vec::new();
    for (i, &w) in scaled.iter().enumerate() {
        if w < 1.0 {
            small.push(i as u32);
        } else {
            large.push(i as u32);
        }
    }
    while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
        small.pop();
        prob[s as usize] = scaled[s as usize];
        alias[s as usize] = l;
        scaled[l as usize] -= 1.0 - scaled[s as usize];
        if scaled[l as usize] < 1.0 {
            large.pop();
            small.push(l);
        }
    }
    for &l in &large {
        prob[l as usize] = 1.0;
    }
    for &s in &small {
        // Leftovers from floating rounding.
        prob[s as usize] = 1.0;
    }
    (prob, alias)
}

/// Draws `count` slot ids independently from the pool table.
pub fn draw_endpoints<R: Rng + ?Sized>(pt: &PoolTable, rng: &mut R, count: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        out.push(pt.draw_slot(rng));
    }
    out
}

/// Outcome of a full vertex selection: node labels for each draw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    pub labels: Vec<u32>,
    /// Number of distinct slots drawn (equals the number of distinct labels).
    pub distinct_count: u32,
    /// Labels lie in [0, label_space). Normally `n`; widened to
    /// `distinct_count` when more distinct slots were drawn than `n`.
    pub label_space: u32,
}

/// Maps the distinct slots appearing in `slots` injectively to
/// uniformly-random distinct labels in [0, max(n, distinct)).
pub fn relabel<R: Rng + ?Sized>(slots: &[u32], n: u32, rng: &mut R) -> SelectionResult {
    let mut index_of: HashMap<u32, u32> = HashMap::new();
    for &s in slots {
        let next = index_of.len() as u32;
        index_of.entry(s).or_insert(next);
    }
    let distinct_count = index_of.len() as u32;
    let label_space = n.max(distinct_count);

    // Partial Fisher-Yates: the first `distinct_count` entries of `perm`
    // become a uniform random sample of distinct labels.
    let mut perm: Vec<u32> = (0..label_space).collect();
    for k in 0..distinct_count as usize {
        let j = rng.random_range(k..label_space as usize);
        perm.swap(k, j);
    }

    let labels = slots
        .iter()
        .map(|s| perm[index_of[s] as usize])
        .collect();
    SelectionResult {
        labels,
        distinct_count,
        label_space,
    }
}

/// Full weighted vertex selection: builds pools, draws m = Σ d·n_d
/// endpoints, and relabels. A histogram with zero edge mass yields an
/// empty selection.
pub fn vertex_select<R: Rng + ?Sized>(
    hist: &DegreeHistogram,
    b: u32,
    n: u32,
    rng: &mut R,
) -> Result<SelectionResult, SamplerError> {
    if b < 1 {
        return Err(SamplerError::InvalidBlowup(b));
    }
    if hist.edge_mass() == 0 {
        return Ok(SelectionResult {
            labels: Vec::new(),
            distinct_count: 0,
            label_space: n,
        });
    }
    let pt = build_pools(hist, b)?;
    let slots = draw_endpoints(&pt, rng, pt.draw_count());
    Ok(relabel(&slots, n, rng))
}

/// RNG wrapper that counts how many random words are consumed.
///
/// Used to verify the O(m) random-number budget of the generators.
pub struct CountingRng<R> {
    inner: R,
    count: u64,
}

impl<R: RngCore> CountingRng<R> {
    pub fn new(inner: R) -> Self {
        CountingRng { inner, count: 0 }
    }

    /// Number of `next_u32`/`next_u64` calls (words of randomness) so far.
    pub fn draws(&self) -> u64 {
        self.count
    }
}

impl<R: RngCore> RngCore for CountingRng<R> {
    fn next_u32(&mut self) -> u32 {
        self.count += 1;
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.count += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.count += dest.len().div_ceil(8) as u64;
        self.inner.fill_bytes(dest);
    }
}
