//! Principal branch `W₀` of the Lambert W function on `[0, +∞)`.
//!
//! `W₀(z)` is the unique `w ≥ 0` with `w·eʷ = z`. The kernel starts from a
//! piecewise initial guess and refines it with Halley's method, evaluating the
//! residual `w·eʷ − z` with a fused multiply-add so that the last correction
//! is not swamped by cancellation. A final neighbour polish picks whichever of
//! `w` and its two adjacent doubles has the smallest residual, which puts the
//! result within half an ulp (plus the `exp` rounding) of the true value.

use std::f64::consts::E;

use crate::error::{domain, Result};

/// Residual tolerance factor: `|w·eʷ − z| ≤ RESIDUAL_TOL · max(z, 1)`.
pub const RESIDUAL_TOL: f64 = 2.0e-15;

/// Iteration cap for the Halley refinement.
pub const MAX_ITERATIONS: usize = 30;

const E_SQUARED: f64 = E * E;

/// Above this, `eʷ` can overflow during iteration, so `w + ln w = ln z` is
/// solved instead.
const LOG_FORM_THRESHOLD: f64 = 1e300;

/// A finite, non-negative real accepted by [`w0`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NonNegReal(f64);

impl NonNegReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(domain("z", value, "NaN is not in the domain of W"));
        }
        if value.is_infinite() {
            return Err(domain(
                "z",
                value,
                "W is evaluated on finite arguments only",
            ));
        }
        if value < 0.0 {
            return Err(domain(
                "z",
                value,
                "only the principal branch on [0, +inf) is supported",
            ));
        }
        // normalises -0.0
        Ok(Self(value.max(0.0)))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for NonNegReal {
    type Error = crate::Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

/// A value of `W₀`; non-negative whenever its argument is.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct WValue(f64);

impl WValue {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<WValue> for f64 {
    fn from(w: WValue) -> f64 {
        w.0
    }
}

/// Evaluates the principal branch `W₀(z)`.
pub fn w0(z: NonNegReal) -> WValue {
    let z = z.get();
    if z == 0.0 {
        return WValue(0.0);
    }
    let guess = initial_guess(z);
    if z > LOG_FORM_THRESHOLD {
        WValue(refine_log(z, guess))
    } else {
        WValue(refine(z, guess))
    }
}

/// Convenience wrapper over [`w0`] for plain `f64` arguments.
pub fn lambert_w0(z: f64) -> Result<f64> {
    Ok(w0(NonNegReal::new(z)?).get())
}

/// `W₀′(z) = W(z) / (z·(W(z) + 1))` for `z > 0`.
pub fn w0_prime(z: f64) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(domain("z", z, "W' is evaluated on (0, +inf)"));
    }
    let w = lambert_w0(z)?;
    // W/z = e^{-W}; avoids the 0/0 at tiny z
    Ok((-w).exp() / (w + 1.0))
}

/// `|w·eʷ − z|`, computed with a single rounding in the product.
pub fn residual(w: f64, z: f64) -> f64 {
    w.mul_add(w.exp(), -z).abs()
}

fn initial_guess(z: f64) -> f64 {
    if z < 1.0 {
        z
    } else if z >= E_SQUARED {
        asymptotic_guess(z)
    } else {
        // straight line from the small-z guess at z = 1 to the asymptotic
        // guess at z = e²
        let t = (z - 1.0) / (E_SQUARED - 1.0);
        (1.0 - t) + t * asymptotic_guess(E_SQUARED)
    }
}

fn asymptotic_guess(z: f64) -> f64 {
    let l1 = z.ln();
    let l2 = l1.ln();
    l1 - l2 + l2 / l1
}

fn refine(z: f64, mut w: f64) -> f64 {
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w.mul_add(ew, -z);
        if f == 0.0 {
            return w;
        }
        let wp1 = w + 1.0;
        let fp = ew * wp1;
        let step = f / (fp - (w + 2.0) * f / (2.0 * wp1));
        let next = w - step;
        let converged = step.abs() <= 2.0 * f64::EPSILON * next.abs();
        w = next;
        if converged {
            break;
        }
    }
    polish(z, w)
}

fn refine_log(z: f64, mut w: f64) -> f64 {
    let ln_z = z.ln();
    for _ in 0..MAX_ITERATIONS {
        let step = (w + w.ln() - ln_z) / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * w {
            break;
        }
    }
    w
}

/// Picks the neighbouring double with the smallest residual.
fn polish(z: f64, w: f64) -> f64 {
    let mut best = w;
    let mut best_res = residual(w, z);
    for cand in [w.next_down(), w.next_up()] {
        if cand < 0.0 {
            continue;
        }
        let res = residual(cand, z);
        if res < best_res {
            best = cand;
            best_res = res;
        }
    }
    best
}
