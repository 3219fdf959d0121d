use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::holder_means::holder_mean;
use crate::lambert_w::lambert_w0;

/// Relative significance threshold for the sign of a gap.
pub const SIGNIFICANCE: f64 = 1e-12;

/// One evaluation of `W(H_p(x, y))` against `H_q(W(x), W(y))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub x: f64,
    pub y: f64,
    pub p: f64,
    pub q: f64,
    /// `W(H_p(x, y))`
    pub lhs: f64,
    /// `H_q(W(x), W(y))`
    pub rhs: f64,
    /// `lhs − rhs`; negative on the convex side, positive on the concave side.
    pub gap: f64,
}

/// Sign of a gap after discarding rounding-level ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapSign {
    Positive,
    Negative,
    Tie,
}

impl ComparisonRecord {
    pub fn scale(&self) -> f64 {
        gap_scale(self.lhs, self.rhs)
    }

    /// Gap divided by its significance scale.
    pub fn normalized_gap(&self) -> f64 {
        self.gap / self.scale()
    }

    pub fn sign(&self) -> GapSign {
        if !is_significant(self.gap, self.lhs, self.rhs) {
            GapSign::Tie
        } else if self.gap > 0.0 {
            GapSign::Positive
        } else {
            GapSign::Negative
        }
    }
}

/// `max(|lhs|, |rhs|, 1)`.
pub fn gap_scale(lhs: f64, rhs: f64) -> f64 {
    lhs.abs().max(rhs.abs()).max(1.0)
}

/// `|gap| > SIGNIFICANCE · max(|lhs|, |rhs|, 1)`.
pub fn is_significant(gap: f64, lhs: f64, rhs: f64) -> bool {
    gap.abs() > SIGNIFICANCE * gap_scale(lhs, rhs)
}

/// Compares both sides of the `H_{p,q}` inequality at `(x, y)`.
pub fn compare_at(p: f64, q: f64, x: f64, y: f64) -> Result<ComparisonRecord> {
    let lhs = lambert_w0(holder_mean(p, x, y)?)?;
    let rhs = holder_mean(q, lambert_w0(x)?, lambert_w0(y)?)?;
    Ok(ComparisonRecord {
        x,
        y,
        p,
        q,
        lhs,
        rhs,
        gap: lhs - rhs,
    })
}
