//! Shared helpers for integration tests.
#![allow(dead_code)]

use frdgen::hist::{DegreeHistogram, DegreeKind};

/// Power-law-ish histogram: n_d = round(coeff / d^exponent) for
/// d in 1..=d_max, with the remainder of `n` (if any) left at degree 0.
pub fn power_law_hist(
    kind: DegreeKind,
    n: u64,
    coeff: f64,
    exponent: f64,
    d_max: usize,
) -> DegreeHistogram {
    let mut h = DegreeHistogram::new(kind);
    let mut assigned = 0u64;
    for d in 1..=d_max {
        let c = (coeff / (d as f64).powf(exponent)).round() as u64;
        if c > 0 && assigned + c <= n {
            h.set_count(d, c);
            assigned += c;
        }
    }
    if assigned < n {
        h.set_count(0, n - assigned);
    }
    h
}

/// Tweaks the degree-1 count so Σ d·n_d is even.
pub fn make_mass_even(h: &mut DegreeHistogram) {
    if h.edge_mass() % 2 == 1 {
        h.set_count(1, h.count(1) + 1);
    }
}
