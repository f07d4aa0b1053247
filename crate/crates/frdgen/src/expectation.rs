//! Closed-form expectations for what a single vertex selection realizes.
//!
//! A slot in the degree-d pool is drawn a Poisson(d)-distributed number of
//! times; with blowup b the degree-1 pool's per-slot rate drops to 1/b.
//! Summing over pools gives the expected number of slots realized at each
//! multiplicity, which predicts the degree histogram a generated graph
//! will actually exhibit. The Poisson form is an approximation (the total
//! draw count is exact, so pool totals have slight multinomial coupling);
//! tolerances on checks against it are statistical, never exact.

use crate::hist::DegreeHistogram;

/// P(slot in the degree-d pool is drawn exactly x times) = d^x e^{-d} / x!.
pub fn poisson_realization_pmf(d: u32, x: u32) -> f64 {
    poisson_pmf(d as f64, x)
}

/// Per-slot pmf for the blown-up degree-1 pool:
/// P(drawn exactly x times) = e^{-1/b} / (b^x · x!).
pub fn blowup_realization_pmf(b: u32, x: u32) -> f64 {
    poisson_pmf(1.0 / b as f64, x)
}

fn poisson_pmf(lambda: f64, x: u32) -> f64 {
    // Log-space keeps large d and x finite.
    let x = x as f64;
    (-lambda + x * lambda.ln() - ln_factorial(x)).exp()
}

fn ln_factorial(x: f64) -> f64 {
    // ln Γ(x+1) via Stirling's series; exact enough (< 1e-10 relative)
    // for the integer arguments used here.
    if x < 10.0 {
        let mut acc = 0.0f64;
        let mut k = 2.0f64;
        while k <= x {
            acc += k.ln();
            k += 1.0;
        }
        return acc;
    }
    let z = x + 1.0;
    let inv = 1.0 / z;
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv / 12.0 - inv.powi(3) / 360.0 + inv.powi(5) / 1260.0
}

/// Expected number of slots drawn exactly x times, for x in [0, x_max].
#[derive(Debug, Clone, PartialEq)]
pub struct RealizedDegreeExpectation {
    /// counts[x] = E(n'_x).
    pub counts: Vec<f64>,
    /// Expected slots beyond x_max: total pool slots minus Σ_x counts[x].
    pub tail_mass: f64,
    /// b·n_1 + Σ_{d≥2} n_d, the mass `counts` + `tail_mass` accounts for.
    pub total_slots: f64,
}

pub const DEFAULT_X_MAX: u32 = 64;

/// E(n'_x) = b·n_1·pmf_blowup(b, x) + Σ_{d>1} n_d · d^x e^{-d} / x!.
///
/// With b = 1 this is exactly the unblown expectation Σ_d n_d d^x e^{-d}/x!.
/// Counts are over pool slots, so Σ_x E(n'_x) conserves the (blown-up)
/// slot total, and x = 0 includes blowup slots that exist only to dilute
/// the degree-1 pool.
pub fn expected_realized_counts(
    hist: &DegreeHistogram,
    b: u32,
    x_max: u32,
) -> RealizedDegreeExpectation {
    let n_1 = hist.count(1) as f64;
    let mut counts = vec![0.0f64; x_max as usize + 1];
    for (x, slot) in counts.iter_mut().enumerate() {
        let x = x as u32;
        let mut e = b as f64 * n_1 * blowup_realization_pmf(b, x);
        for (d, n_d) in hist.positive().filter(|&(d, _)| d > 1) {
            e += n_d as f64 * poisson_realization_pmf(d as u32, x);
        }
        *slot = e;
    }
    let total_slots = b as f64 * n_1
        + hist
            .positive()
            .filter(|&(d, _)| d > 1)
            .map(|(_, n_d)| n_d as f64)
            .sum::<f64>();
    let tail_mass = total_slots - counts.iter().sum::<f64>();
    RealizedDegreeExpectation {
        counts,
        tail_mass,
        total_slots,
    }
}
