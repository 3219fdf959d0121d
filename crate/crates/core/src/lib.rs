//! Lambert W on `[0, ∞)`, Hölder means, and the `H_{p,q}`-convexity
//! classification of `W` on `(0, ∞)`, with a sampling-based verifier for the
//! classification and its supporting inequalities.
//!
//! ```
//! use lambert_hpq::{classify_pq, lambert_w0, ConvexityClass};
//!
//! assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
//! assert_eq!(classify_pq(-1.0, -1.0).unwrap(), ConvexityClass::StrictlyConvex);
//! ```

pub mod cli;
pub mod error;
pub mod holder_means;
pub mod hpq_theory;
pub mod lambert_w;
pub mod verifier;

pub use error::{Error, Result};
pub use holder_means::{holder_mean, quartic_harmonic_form, MeanOrder};
pub use hpq_theory::{
    c_of_p, classify, classify_pq, f1, g_log_derivative, g_pq, h_p, h_p_argmax, h_p_offset,
    ln_g_pq, ConvexityClass, HpqParams,
};
pub use lambert_w::{lambert_w0, w0, w0_prime, NonNegReal, WValue};
