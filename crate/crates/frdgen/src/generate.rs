//! The FD and FRD graph generators.
//!
//! FD pairs weighted vertex selections over the total-out and total-in
//! histograms, so edge (i,j) appears with probability approximately
//! d_t_out(i)·d_t_in(j)/m. FRD first emits reciprocal pairs from two
//! selections over the halved reciprocal histogram (both directions per
//! pair), then one-way edges from the out/in histograms, and finally
//! removes self-loops and duplicates.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::DiGraph;
use crate::hist::{DegreeHistogram, DegreeKind};
use crate::sampler::{vertex_select, CountingRng, SamplerError};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("in/out edge-mass mismatch: in mass {in_mass}, out mass {out_mass}")]
    MassMismatch { in_mass: u64, out_mass: u64 },
    #[error("reciprocal edge mass {0} is odd (reciprocated directed edges come in pairs)")]
    OddReciprocalMass(u64),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

/// Generation parameters: target label space, per-channel blowup factors,
/// and the random seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationConfig {
    /// Target node count (the label space for generated node ids).
    pub n: u32,
    /// Blowup factor for the reciprocal channel.
    pub b_rec: u32,
    /// Blowup factor for the (one-way or total) in channel.
    pub b_in: u32,
    /// Blowup factor for the (one-way or total) out channel.
    pub b_out: u32,
    pub seed: u64,
}

pub const DEFAULT_BLOWUP: u32 = 10;

impl GenerationConfig {
    /// Config with the default blowup of 10 on every channel.
    pub fn new(n: u32, seed: u64) -> Self {
        GenerationConfig {
            n,
            b_rec: DEFAULT_BLOWUP,
            b_in: DEFAULT_BLOWUP,
            b_out: DEFAULT_BLOWUP,
            seed,
        }
    }

    pub fn with_blowup(mut self, b: u32) -> Self {
        self.b_rec = b;
        self.b_in = b;
        self.b_out = b;
        self
    }
}

/// What happened during one generation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    /// Edge budget implied by the input distributions, before cleanup.
    pub requested_edges: u64,
    /// |E| of the returned simple graph.
    pub emitted_edges: u64,
    pub removed_self_loops: u64,
    pub removed_duplicates: u64,
    /// Reciprocal endpoints dropped because the two halved selections
    /// had unequal length (odd per-side masses); zero for FD.
    pub removed_unpaired: u64,
    /// Random words consumed, for the O(m) budget check.
    pub rng_draws: u64,
    pub seed: u64,
    pub elapsed: Duration,
}

/// Removes self-loops and duplicate edges, first occurrence winning.
pub fn cleanup(edges: Vec<(u32, u32)>, node_count: u32) -> (DiGraph, u64, u64) {
    let mut set = HashSet::with_capacity(edges.len());
    let mut self_loops = 0u64;
    let mut duplicates = 0u64;
    for (u, v) in edges {
        if u == v {
            self_loops += 1;
        } else if !set.insert((u, v)) {
            duplicates += 1;
        }
    }
    (DiGraph::from_edge_set(node_count, set), self_loops, duplicates)
}

// Sub-stream ids of the seeded generator. FD shares the one-way streams
// with FRD so an FRD run with an empty reciprocal histogram reproduces
// the FD output bit-for-bit.
const STREAM_REC_SRC: u64 = 0;
const STREAM_REC_DST: u64 = 1;
const STREAM_ONE_SRC: u64 = 2;
const STREAM_ONE_DST: u64 = 3;

fn stream(seed: u64, id: u64) -> CountingRng<ChaCha8Rng> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    CountingRng::new(rng)
}

/// Fast Directed model: matches total in- and out-degree distributions.
pub fn fd_generate(
    hist_t_in: &DegreeHistogram,
    hist_t_out: &DegreeHistogram,
    cfg: &GenerationConfig,
) -> Result<(DiGraph, GenerationReport), GenerateError> {
    let start = Instant::now();
    let in_mass = hist_t_in.edge_mass();
    let out_mass = hist_t_out.edge_mass();
    if in_mass != out_mass {
        return Err(GenerateError::MassMismatch { in_mass, out_mass });
    }

    let mut rng_src = stream(cfg.seed, STREAM_ONE_SRC);
    let mut rng_dst = stream(cfg.seed, STREAM_ONE_DST);
    let sources = vertex_select(hist_t_out, cfg.b_out, cfg.n, &mut rng_src)?;
    let dests = vertex_select(hist_t_in, cfg.b_in, cfg.n, &mut rng_dst)?;

    let edges: Vec<(u32, u32)> = sources
        .labels
        .iter()
        .zip(dests.labels.iter())
        .map(|(&i, &j)| (i, j))
        .collect();
    let node_count = cfg.n.max(sources.label_space).max(dests.label_space);
    let (graph, self_loops, duplicates) = cleanup(edges, node_count);

    let report = GenerationReport {
        requested_edges: out_mass,
        emitted_edges: graph.edge_count(),
        removed_self_loops: self_loops,
        removed_duplicates: duplicates,
        removed_unpaired: 0,
        rng_draws: rng_src.draws() + rng_dst.draws(),
        seed: cfg.seed,
        elapsed: start.elapsed(),
    };
    Ok((graph, report))
}

/// Splits the reciprocal histogram into the two per-side halves.
///
/// For odd n_d the extra node alternates between the source and
/// destination side as degrees ascend, so the halves always sum to n_d
/// exactly and the two sides stay balanced.
fn halve_reciprocal(hist: &DegreeHistogram) -> (DegreeHistogram, DegreeHistogram) {
    let mut src = DegreeHistogram::new(DegreeKind::Rec);
    let mut dst = DegreeHistogram::new(DegreeKind::Rec);
    let mut src_gets_extra = true;
    for (d, n_d) in hist.positive() {
        let half = n_d / 2;
        let extra = n_d % 2;
        let (s, t) = if extra == 1 && src_gets_extra {
            src_gets_extra = false;
            (half + 1, half)
        } else if extra == 1 {
            src_gets_extra = true;
            (half, half + 1)
        } else {
            (half, half)
        };
        if s > 0 {
            src.set_count(d, s);
        }
        if t > 0 {
            dst.set_count(d, t);
        }
    }
    (src, dst)
}

/// Fast Reciprocal Directed model: matches reciprocal, one-way in, and
/// one-way out degree distributions.
pub fn frd_generate(
    hist_rec: &DegreeHistogram,
    hist_in: &DegreeHistogram,
    hist_out: &DegreeHistogram,
    cfg: &GenerationConfig,
) -> Result<(DiGraph, GenerationReport), GenerateError> {
    let start = Instant::now();
    let rec_mass = hist_rec.edge_mass();
    if rec_mass % 2 != 0 {
        return Err(GenerateError::OddReciprocalMass(rec_mass));
    }
    let in_mass = hist_in.edge_mass();
    let out_mass = hist_out.edge_mass();
    if in_mass != out_mass {
        return Err(GenerateError::MassMismatch { in_mass, out_mass });
    }

    let (rec_src_hist, rec_dst_hist) = halve_reciprocal(hist_rec);

    let mut rng_rec_src = stream(cfg.seed, STREAM_REC_SRC);
    let mut rng_rec_dst = stream(cfg.seed, STREAM_REC_DST);
    let mut rng_one_src = stream(cfg.seed, STREAM_ONE_SRC);
    let mut rng_one_dst = stream(cfg.seed, STREAM_ONE_DST);

    let rec_src = vertex_select(&rec_src_hist, cfg.b_rec, cfg.n, &mut rng_rec_src)?;
    let rec_dst = vertex_select(&rec_dst_hist, cfg.b_rec, cfg.n, &mut rng_rec_dst)?;
    let one_src = vertex_select(hist_out, cfg.b_out, cfg.n, &mut rng_one_src)?;
    let one_dst = vertex_select(hist_in, cfg.b_in, cfg.n, &mut rng_one_dst)?;

    let pairs = rec_src.labels.len().min(rec_dst.labels.len());
    let unpaired =
        (rec_src.labels.len() - pairs) as u64 + (rec_dst.labels.len() - pairs) as u64;

    let requested = rec_mass + in_mass;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(requested as usize);
    let mut self_loops = 0u64;
    // E1: both directions of each reciprocal pair. A self-pair would be
    // two self-loops; drop it whole.
    for k in 0..pairs {
        let (i, j) = (rec_src.labels[k], rec_dst.labels[k]);
        if i == j {
            self_loops += 2;
        } else {
            edges.push((i, j));
            edges.push((j, i));
        }
    }
    // E2 after E1: a one-way edge duplicating one direction of a
    // reciprocal pair is the one that gets dropped.
    edges.extend(
        one_src
            .labels
            .iter()
            .zip(one_dst.labels.iter())
            .map(|(&i, &j)| (i, j)),
    );

    let node_count = cfg
        .n
        .max(rec_src.label_space)
        .max(rec_dst.label_space)
        .max(one_src.label_space)
        .max(one_dst.label_space);
    let (graph, more_self_loops, duplicates) = cleanup(edges, node_count);
    self_loops += more_self_loops;

    let report = GenerationReport {
        requested_edges: requested,
        emitted_edges: graph.edge_count(),
        removed_self_loops: self_loops,
        removed_duplicates: duplicates,
        removed_unpaired: unpaired,
        rng_draws: rng_rec_src.draws()
            + rng_rec_dst.draws()
            + rng_one_src.draws()
            + rng_one_dst.draws(),
        seed: cfg.seed,
        elapsed: start.elapsed(),
    };
    Ok((graph, report))
}
