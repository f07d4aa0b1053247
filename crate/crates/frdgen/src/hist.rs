//! Degree histograms: for each degree `d`, the number of nodes `n_d`
//! with that degree, tagged by which degree notion is being counted.

use std::fmt;

/// Which degree a histogram counts.
///
/// `In` and `Out` exclude reciprocal edges; `TotalIn = In + Rec` and
/// `TotalOut = Out + Rec` include them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegreeKind {
    In,
    Out,
    Rec,
    TotalIn,
    TotalOut,
}

impl DegreeKind {
    pub const ALL: [DegreeKind; 5] = [
        DegreeKind::In,
        DegreeKind::Out,
        DegreeKind::Rec,
        DegreeKind::TotalIn,
        DegreeKind::TotalOut,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DegreeKind::In => "in",
            DegreeKind::Out => "out",
            DegreeKind::Rec => "rec",
            DegreeKind::TotalIn => "total-in",
            DegreeKind::TotalOut => "total-out",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s)
    }
}

impl fmt::Display for DegreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Map from degree `d` to node count `n_d`, stored densely up to the
/// maximum observed degree. Trailing zero counts are trimmed so `d_max`
/// tracks the largest degree actually present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    kind: DegreeKind,
    counts: Vec<u64>,
}

impl DegreeHistogram {
    pub fn new(kind: DegreeKind) -> Self {
        DegreeHistogram { kind, counts: Vec::new() }
    }

    /// Builds a histogram from explicit counts indexed by degree.
    pub fn from_counts(kind: DegreeKind, counts: Vec<u64>) -> Self {
        let mut h = DegreeHistogram { kind, counts };
        h.trim();
        h
    }

    /// Tallies one degree value per node.
    pub fn from_degrees<I: IntoIterator<Item = u32>>(kind: DegreeKind, degrees: I) -> Self {
        let mut h = DegreeHistogram::new(kind);
        for d in degrees {
            h.add(d as usize, 1);
        }
        h
    }

    pub fn kind(&self) -> DegreeKind {
        self.kind
    }

    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn set_count(&mut self, d: usize, count: u64) {
        if d >= self.counts.len() {
            self.counts.resize(d + 1, 0);
        }
        self.counts[d] = count;
        self.trim();
    }

    pub fn add(&mut self, d: usize, count: u64) {
        if d >= self.counts.len() {
            self.counts.resize(d + 1, 0);
        }
        self.counts[d] += count;
    }

    /// Largest degree with a nonzero count (0 for an empty histogram).
    pub fn d_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Total number of nodes, Σ_d n_d.
    pub fn node_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Total degree mass, m = Σ_d d·n_d.
    pub fn edge_mass(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c)
            .sum()
    }

    /// Iterates `(d, n_d)` over degrees d ≥ 1 with n_d > 0.
    pub fn positive(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(d, &c)| (d, c))
    }

    /// Dense counts indexed by degree, trailing zeros trimmed.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    fn trim(&mut self) {
        while self.counts.last() == Some(&0) {
            self.counts.pop();
        }
    }
}
