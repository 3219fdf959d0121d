//! Hölder (power) means of two positive reals.
//!
//! `H_p(r, s) = ((rᵖ + sᵖ)/2)^(1/p)` for `p ≠ 0` and `H_0(r, s) = √(rs)`.
//!
//! Three evaluation paths:
//! * `|p| < SMALL_ORDER`: the exact identity `H_p = G·exp(ln cosh(pL/2)/p)`
//!   with `G = √(rs)` and `L = ln(r/s)`. Its Taylor expansion starts
//!   `G·exp(pL²/8)`, and it has no `0/0` cancellation near the geometric limit.
//! * `|p·ln r|` or `|p·ln s|` above `LOG_SPACE_THRESHOLD`: log-sum-exp, because
//!   `rᵖ` would leave the double range.
//! * otherwise the defining formula.

use std::f64::consts::LN_2;

use crate::error::{domain, positive, Result};

/// Below this `|p|` the log-cosh form replaces the defining formula.
pub const SMALL_ORDER: f64 = 1e-3;

/// Above this `|p·ln x|` the mean is evaluated in log space.
pub const LOG_SPACE_THRESHOLD: f64 = 700.0;

/// A finite mean order `p`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeanOrder(f64);

impl MeanOrder {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() {
            Ok(Self(p))
        } else {
            Err(domain("p", p, "mean order must be finite"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The Hölder mean `H_p(r, s)` for finite `p` and positive `r`, `s`.
///
/// The result is symmetric bit for bit, equals `r` exactly when `r == s`, and
/// is clamped into `[min(r, s), max(r, s)]`.
pub fn holder_mean(p: f64, r: f64, s: f64) -> Result<f64> {
    let p = MeanOrder::new(p)?.get();
    let r = positive("r", r)?;
    let s = positive("s", s)?;
    if r == s {
        return Ok(r);
    }
    let (lo, hi) = if r < s { (r, s) } else { (s, r) };
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());

    let value = if p == 0.0 {
        geometric(lo, hi)
    } else if p.abs() < SMALL_ORDER {
        near_geometric(p, lo, hi)
    } else if (p * ln_lo).abs().max((p * ln_hi).abs()) > LOG_SPACE_THRESHOLD {
        log_space(p, ln_lo, ln_hi)
    } else {
        direct(p, lo, hi)
    };
    Ok(value.clamp(lo, hi))
}

fn direct(p: f64, lo: f64, hi: f64) -> f64 {
    (0.5 * (lo.powf(p) + hi.powf(p))).powf(1.0 / p)
}

fn near_geometric(p: f64, lo: f64, hi: f64) -> f64 {
    let half_spread = 0.5 * p * (hi.ln() - lo.ln());
    geometric(lo, hi) * (ln_cosh(half_spread) / p).exp()
}

fn log_space(p: f64, ln_lo: f64, ln_hi: f64) -> f64 {
    ((log_sum_exp(p * ln_lo, p * ln_hi) - LN_2) / p).exp()
}

/// `(2·⁴√(xy) / (⁴√x + ⁴√y))⁴`, an algebraic rewrite of `H_{-1/4}(x, y)`.
pub fn quartic_harmonic_form(x: f64, y: f64) -> Result<f64> {
    let x = positive("x", x)?;
    let y = positive("y", y)?;
    if x == y {
        // the root-and-power round trip is not exact
        return Ok(x);
    }
    let a = x.sqrt().sqrt();
    let b = y.sqrt().sqrt();
    Ok((2.0 * a * b / (a + b)).powi(4))
}

fn geometric(lo: f64, hi: f64) -> f64 {
    let prod = lo * hi;
    if prod.is_normal() {
        prod.sqrt()
    } else {
        lo.sqrt() * hi.sqrt()
    }
}

fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        let sh = (0.5 * x).sinh();
        (2.0 * sh * sh).ln_1p()
    } else {
        x + (-2.0 * x).exp().ln_1p() - LN_2
    }
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    let (m, n) = if a >= b { (a, b) } else { (b, a) };
    m + (n - m).exp().ln_1p()
}
