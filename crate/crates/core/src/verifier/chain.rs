use serde::{Deserialize, Serialize};

use super::compare::{compare_at, ComparisonRecord};
use crate::error::Result;
use crate::holder_means::{holder_mean, quartic_harmonic_form};
use crate::lambert_w::lambert_w0;

/// The four members of the chain
/// `W(H_{-1/4}(x, y)) ≤ √(W(x)W(y)) ≤ W(√(xy)) ≤ (W(x) + W(y))/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainValues {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ChainValues {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Each consecutive pair satisfies `next − prev ≥ −tol·max(|prev|, |next|)`.
    pub fn is_ordered(&self, tol: f64) -> bool {
        self.as_array()
            .windows(2)
            .all(|w| w[1] - w[0] >= -tol * w[0].abs().max(w[1].abs()))
    }

    /// Each consecutive pair satisfies `next − prev > margin·max(|prev|, |next|)`.
    pub fn is_strictly_ordered(&self, margin: f64) -> bool {
        self.as_array()
            .windows(2)
            .all(|w| w[1] - w[0] > margin * w[0].abs().max(w[1].abs()))
    }

    /// Largest relative spread between the members.
    pub fn relative_spread(&self) -> f64 {
        let v = self.as_array();
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (hi - lo) / hi.abs().max(f64::MIN_POSITIVE)
    }
}

/// Evaluates the four chain members at `(x, y)`.
pub fn check_chain(x: f64, y: f64) -> Result<ChainValues> {
    let a = lambert_w0(quartic_harmonic_form(x, y)?)?;
    let (wx, wy) = (lambert_w0(x)?, lambert_w0(y)?);
    let b = holder_mean(0.0, wx, wy)?;
    let c = lambert_w0(holder_mean(0.0, x, y)?)?;
    let d = holder_mean(1.0, wx, wy)?;
    Ok(ChainValues { a, b, c, d })
}

/// `W(2xy/(x + y))` against `2W(x)W(y)/(W(x) + W(y))`.
pub fn check_harmonic_inequality(x: f64, y: f64) -> Result<ComparisonRecord> {
    compare_at(-1.0, -1.0, x, y)
}
