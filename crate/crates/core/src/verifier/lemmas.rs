//! Grid scans of `h_p` and `g_{p,q}` against the monotonicity statements they
//! are expected to satisfy.
//!
//! A step between neighbouring grid points counts as a rise or a fall only if
//! it exceeds the rounding noise of the two values; smaller steps are ties.
//! `h_p` is scanned through `h_p − p` (see [`h_p_offset`]) and `g_{p,q}`
//! through its logarithm, with the sign of `g′` cross-checked at every grid
//! point via `(q − h_p(r)) / (r(W + 1))`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, Result};
use crate::hpq_theory::{c_of_p, h_p, h_p_argmax, h_p_offset};
use crate::lambert_w::lambert_w0;

pub const LEMMA_GRID_MIN: f64 = 1e-9;
pub const LEMMA_GRID_MAX: f64 = 1e9;

/// Allowed excess of the grid maximum of `h_p` over `C(p)`.
const MAX_SLACK: f64 = 1e-8;
/// Steps within this many ulps of the operands are ties.
const TIE_ULPS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    NonMonotone,
}

/// Counts of rising, falling and tied steps along a grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepScan {
    pub rises: usize,
    pub falls: usize,
    pub ties: usize,
}

impl StepScan {
    fn record(&mut self, delta: f64, noise: f64) {
        if delta > noise {
            self.rises += 1;
        } else if delta < -noise {
            self.falls += 1;
        } else {
            self.ties += 1;
        }
    }

    /// `None` when every step is a tie.
    pub fn shape(&self) -> Option<Monotonicity> {
        match (self.rises > 0, self.falls > 0) {
            (true, false) => Some(Monotonicity::StrictlyIncreasing),
            (false, true) => Some(Monotonicity::StrictlyDecreasing),
            (true, true) => Some(Monotonicity::NonMonotone),
            (false, false) => None,
        }
    }
}

/// `n` log-spaced points from `lo` to `hi`, both endpoints exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| (a + step * i as f64).exp()).collect();
    grid[0] = lo;
    grid[n - 1] = hi;
    grid
}

fn check_grid_size(grid_size: usize) -> Result<()> {
    if grid_size < 3 {
        return Err(domain(
            "grid_size",
            grid_size as f64,
            "at least 3 grid points are required",
        ));
    }
    Ok(())
}

/// Shape of `h_p` on `(0, ∞)`.
pub fn expected_h_shape(p: f64) -> Monotonicity {
    if p >= 0.0 {
        Monotonicity::StrictlyIncreasing
    } else if p <= -1.0 {
        Monotonicity::StrictlyDecreasing
    } else {
        Monotonicity::NonMonotone
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HLemmaCheck {
    pub p: f64,
    pub grid_size: usize,
    pub expected: Monotonicity,
    pub observed: Option<Monotonicity>,
    pub scan: StepScan,
    /// Whether every grid value lies in the stated range of `h_p`.
    pub range_ok: bool,
    pub grid_max: f64,
    pub grid_argmax: f64,
    /// `C(p)` and the analytic maximiser, for `−1 < p < 0`.
    pub c_of_p: Option<f64>,
    pub argmax: Option<f64>,
    pub passed: bool,
}

/// Scans `h_p` on a log grid over `[1e-9, 1e9]`.
pub fn check_h_lemma(p: f64, grid_size: usize) -> Result<HLemmaCheck> {
    let p = finite("p", p)?;
    check_grid_size(grid_size)?;
    let grid = log_grid(LEMMA_GRID_MIN, LEMMA_GRID_MAX, grid_size);

    let offsets = grid
        .iter()
        .map(|&r| h_p_offset(p, r))
        .collect::<Result<Vec<_>>>()?;
    let mut scan = StepScan::default();
    for w in offsets.windows(2) {
        scan.record(
            w[1] - w[0],
            TIE_ULPS * f64::EPSILON * w[0].abs().max(w[1].abs()),
        );
    }

    let mut grid_max = f64::NEG_INFINITY;
    let mut grid_argmax = grid[0];
    for &r in &grid {
        let h = h_p(p, r)?;
        if h > grid_max {
            grid_max = h;
            grid_argmax = r;
        }
    }

    let expected = expected_h_shape(p);
    let (c, argmax, range_ok) = match expected {
        Monotonicity::NonMonotone => {
            let c = c_of_p(p)?;
            (Some(c), Some(h_p_argmax(p)?), grid_max <= c + MAX_SLACK)
        }
        // range (p, +inf) for p > 0, (0, 1) for p = 0, (-inf, p) for p <= -1
        Monotonicity::StrictlyIncreasing => {
            let above_p = offsets.iter().all(|&o| o > 0.0);
            (None, None, above_p && (p > 0.0 || grid_max < 1.0))
        }
        Monotonicity::StrictlyDecreasing => (None, None, offsets.iter().all(|&o| o < 0.0)),
    };

    let observed = scan.shape();
    Ok(HLemmaCheck {
        p,
        grid_size,
        expected,
        observed,
        scan,
        range_ok,
        grid_max,
        grid_argmax,
        c_of_p: c,
        argmax,
        passed: observed == Some(expected) && range_ok,
    })
}

/// Which of the four `p` ranges governs `g_{p,q}`.
fn g_clause(p: f64) -> u8 {
    if p > 0.0 {
        1
    } else if p == 0.0 {
        2
    } else if p <= -1.0 {
        3
    } else {
        4
    }
}

/// Shape of `g_{p,q}` on `(0, ∞)`.
pub fn expected_g_shape(p: f64, q: f64) -> Monotonicity {
    use Monotonicity::*;
    match g_clause(p) {
        1 if q <= p => StrictlyDecreasing,
        2 if q >= 1.0 => StrictlyIncreasing,
        2 if q <= 0.0 => StrictlyDecreasing,
        3 if q >= p => StrictlyIncreasing,
        4 if q >= 1.0 - 2.0 * (-p).sqrt() => StrictlyIncreasing,
        _ => NonMonotone,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GLemmaCheck {
    pub p: f64,
    pub q: f64,
    pub grid_size: usize,
    /// 1: `p > 0`; 2: `p = 0`; 3: `p ≤ −1`; 4: `−1 < p < 0`.
    pub clause: u8,
    pub expected: Monotonicity,
    pub observed: Option<Monotonicity>,
    /// Steps of `ln g_{p,q}` along the grid.
    pub scan: StepScan,
    /// Signs of `g′` at the grid points.
    pub derivative_positive: usize,
    pub derivative_negative: usize,
    pub derivative_zero: usize,
    pub passed: bool,
}

/// Scans `g_{p,q}` on a log grid over `[1e-9, 1e9]`.
pub fn check_g_lemma(p: f64, q: f64, grid_size: usize) -> Result<GLemmaCheck> {
    let p = finite("p", p)?;
    let q = finite("q", q)?;
    check_grid_size(grid_size)?;
    let grid = log_grid(LEMMA_GRID_MIN, LEMMA_GRID_MAX, grid_size);

    let mut scan = StepScan::default();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut prev: Option<(f64, f64)> = None;
    for &r in &grid {
        let w = lambert_w0(r)?;
        let q_term = if q == 0.0 { 0.0 } else { q * w.ln() };
        let p_term = if p == 0.0 { 0.0 } else { p * r.ln() };
        let ln_g = q_term - p_term - w.ln_1p();
        let magnitude = q_term.abs() + p_term.abs() + w.ln_1p() + 1.0;
        if let Some((prev_g, prev_mag)) = prev {
            let noise = TIE_ULPS * f64::EPSILON * magnitude.max(prev_mag);
            scan.record(ln_g - prev_g, noise);
        }
        prev = Some((ln_g, magnitude));

        let offset = h_p_offset(p, r)?;
        let numerator = (q - p) - offset;
        let noise = TIE_ULPS * f64::EPSILON * (q - p).abs().max(offset.abs());
        if numerator > noise {
            pos += 1;
        } else if numerator < -noise {
            neg += 1;
        } else {
            zero += 1;
        }
    }

    let expected = expected_g_shape(p, q);
    let observed = scan.shape();
    let derivative_agrees = match expected {
        Monotonicity::StrictlyIncreasing => neg == 0 && pos > 0,
        Monotonicity::StrictlyDecreasing => pos == 0 && neg > 0,
        Monotonicity::NonMonotone => pos > 0 && neg > 0,
    };
    Ok(GLemmaCheck {
        p,
        q,
        grid_size,
        clause: g_clause(p),
        expected,
        observed,
        scan,
        derivative_positive: pos,
        derivative_negative: neg,
        derivative_zero: zero,
        passed: observed == Some(expected) && derivative_agrees,
    })
}
