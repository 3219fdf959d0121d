//! Auxiliary functions behind the `H_{p,q}`-convexity classification of `W`,
//! and the classification itself.
//!
//! With `W = W₀(r)`:
//!
//! * `h_p(r) = p(W + 1) + W/(W + 1)`
//! * `f₁(r) = −1/(W + 1)²`, so that `h_p′(r) = W′(r)·(p − f₁(r))`
//! * `g_{p,q}(r) = W^q / (rᵖ(W + 1))`, whose logarithmic derivative is
//!   `(q − h_p(r)) / (r(W + 1))`
//! * `C(p) = 1 − 2√(−p)` on `[−1, 0]`, the supremum of `h_p` for `−1 < p < 0`
//!
//! The regions in the `(p, q)` plane are
//!
//! * `D1 = {p ≤ −1, q ≥ p}`
//! * `D2 = {−1 < p ≤ 0, q ≥ C(p)}`
//! * `D3 = {p ≥ 0, q ≤ p}`
//!
//! `W` is strictly `H_{p,q}`-convex on `(0, ∞)` exactly on `D1 ∪ D2` and
//! strictly `H_{p,q}`-concave exactly on `D3`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, finite, positive, Error, Result};
use crate::lambert_w::lambert_w0;

/// A point of the `(p, q)` classification plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HpqParams {
    pub p: f64,
    pub q: f64,
}

impl HpqParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self {
            p: finite("p", p)?,
            q: finite("q", q)?,
        })
    }
}

impl fmt::Display for HpqParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Verdict of the classification for one `(p, q)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvexityClass {
    #[serde(rename = "convex")]
    StrictlyConvex,
    #[serde(rename = "concave")]
    StrictlyConcave,
    Neither,
}

impl ConvexityClass {
    /// Short label used by the CLI and the raster CSV.
    pub fn label(self) -> &'static str {
        match self {
            ConvexityClass::StrictlyConvex => "convex",
            ConvexityClass::StrictlyConcave => "concave",
            ConvexityClass::Neither => "neither",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "convex" => Some(ConvexityClass::StrictlyConvex),
            "concave" => Some(ConvexityClass::StrictlyConcave),
            "neither" => Some(ConvexityClass::Neither),
            _ => None,
        }
    }
}

impl fmt::Display for ConvexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn w_of(r: f64) -> Result<f64> {
    lambert_w0(positive("r", r)?)
}

/// `h_p(r) = p(W(r) + 1) + W(r)/(W(r) + 1)`.
pub fn h_p(p: f64, r: f64) -> Result<f64> {
    let p = finite("p", p)?;
    let w = w_of(r)?;
    Ok(p * (w + 1.0) + w / (w + 1.0))
}

/// `h_p(r) − p`, evaluated as `W·(pW + (p + 1))/(W + 1)`.
///
/// Same shape as [`h_p`] but keeps full relative precision as `r → 0⁺`, where
/// `h_p` itself rounds to `p`.
pub fn h_p_offset(p: f64, r: f64) -> Result<f64> {
    let p = finite("p", p)?;
    let w = w_of(r)?;
    Ok(w * p.mul_add(w, p + 1.0) / (w + 1.0))
}

/// `f₁(r) = −1/(W(r) + 1)²`.
pub fn f1(r: f64) -> Result<f64> {
    let w = w_of(r)?;
    Ok(-1.0 / ((w + 1.0) * (w + 1.0)))
}

/// `ln g_{p,q}(r) = q·ln W − p·ln r − ln(1 + W)`.
pub fn ln_g_pq(p: f64, q: f64, r: f64) -> Result<f64> {
    let p = finite("p", p)?;
    let q = finite("q", q)?;
    let w = w_of(r)?;
    let q_term = if q == 0.0 { 0.0 } else { q * w.ln() };
    let p_term = if p == 0.0 { 0.0 } else { p * r.ln() };
    Ok(q_term - p_term - w.ln_1p())
}

/// `g_{p,q}(r) = W^q(r) / (rᵖ(W(r) + 1))`.
///
/// Fails with [`Error::Range`] when the value overflows or underflows the
/// double range instead of returning `∞` or `0`.
pub fn g_pq(p: f64, q: f64, r: f64) -> Result<f64> {
    let ln_g = ln_g_pq(p, q, r)?;
    let g = ln_g.exp();
    if g.is_finite() && g.is_normal() {
        Ok(g)
    } else {
        Err(Error::Range(format!(
            "g_(p={p}, q={q})({r}) = exp({ln_g}) is outside the double range"
        )))
    }
}

/// `(q − h_p(r)) / (r(W(r) + 1))`, the logarithmic derivative of `g_{p,q}`.
///
/// `q − h_p` is formed as `(q − p) − (h_p − p)` so its sign stays exact near
/// `r = 0` where `h_p → p`.
pub fn g_log_derivative(p: f64, q: f64, r: f64) -> Result<f64> {
    let q = finite("q", q)?;
    let offset = h_p_offset(p, r)?;
    let w = lambert_w0(r)?;
    Ok(((q - p) - offset) / (r * (w + 1.0)))
}

/// `C(p) = 1 − 2√(−p)` for `p ∈ [−1, 0]`.
pub fn c_of_p(p: f64) -> Result<f64> {
    if !(-1.0..=0.0).contains(&p) {
        return Err(domain("p", p, "C(p) is defined on [-1, 0]"));
    }
    Ok(1.0 - 2.0 * (-p).sqrt())
}

/// The maximiser of `h_p` for `−1 < p < 0`: `W(r*) + 1 = 1/√(−p)`, so
/// `r* = (z − 1)e^(z−1)` with `z = 1/√(−p)`.
pub fn h_p_argmax(p: f64) -> Result<f64> {
    if !(p > -1.0 && p < 0.0) {
        return Err(domain(
            "p",
            p,
            "h_p has an interior maximum only for -1 < p < 0",
        ));
    }
    let w = 1.0 / (-p).sqrt() - 1.0;
    Ok(w * w.exp())
}

/// Membership in `D1 ∪ D2`.
pub fn in_convex_region(p: f64, q: f64) -> bool {
    if p <= -1.0 {
        q >= p
    } else if p <= 0.0 {
        q >= 1.0 - 2.0 * (-p).sqrt()
    } else {
        false
    }
}

/// Membership in `D3`.
pub fn in_concave_region(p: f64, q: f64) -> bool {
    p >= 0.0 && q <= p
}

/// Classifies `W` on `(0, ∞)` for the given `(p, q)`.
pub fn classify(params: HpqParams) -> Result<ConvexityClass> {
    let HpqParams { p, q } = HpqParams::new(params.p, params.q)?;
    let convex = in_convex_region(p, q);
    let concave = in_concave_region(p, q);
    debug_assert!(!(convex && concave), "regions overlap at ({p}, {q})");
    Ok(if convex {
        ConvexityClass::StrictlyConvex
    } else if concave {
        ConvexityClass::StrictlyConcave
    } else {
        ConvexityClass::Neither
    })
}

/// Shorthand for `classify(HpqParams::new(p, q)?)`.
pub fn classify_pq(p: f64, q: f64) -> Result<ConvexityClass> {
    classify(HpqParams::new(p, q)?)
}
