use thiserror::Error;

/// Errors raised by the numerical kernels and the verification engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {what} = {value} ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The mathematically finite result does not fit in a double.
    #[error("range error: {0}")]
    Range(String),

    /// Sampling did not witness both inequality directions within the budget.
    #[error(
        "search exhausted after {budget} samples for (p, q) = ({p}, {q}): \
         convexity violation {}, concavity violation {}",
        found(*.found_convexity_violation),
        found(*.found_concavity_violation)
    )]
    SearchExhausted {
        p: f64,
        q: f64,
        budget: u64,
        found_convexity_violation: bool,
        found_concavity_violation: bool,
    },
}

fn found(flag: bool) -> &'static str {
    if flag {
        "found"
    } else {
        "missing"
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        what,
        value,
        reason,
    }
}

/// Rejects NaN and infinities.
pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain(what, value, "must be finite"))
    }
}

/// Accepts only finite, strictly positive values.
pub(crate) fn positive(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(domain(what, value, "must be positive and finite"))
    }
}
