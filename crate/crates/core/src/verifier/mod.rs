//! Numerical confirmation of the classification, the two auxiliary lemmas and
//! the mean inequality chains.
//!
//! Everything here is evidence, not proof: sampling can confirm that `W` is
//! neither convex nor concave for a given `(p, q)` by exhibiting both
//! violation directions, but it can never certify a strict inequality on all
//! of `(0, ∞)`.

mod chain;
mod compare;
mod counterexample;
mod lemmas;
mod region;
mod sampling;

pub use chain::{check_chain, check_harmonic_inequality, ChainValues};
pub use compare::{compare_at, gap_scale, is_significant, ComparisonRecord, GapSign, SIGNIFICANCE};
pub use counterexample::{
    find_counterexamples, CounterexamplePair, DEFAULT_BUDGET, GOLDEN_ITERATIONS,
};
pub use lemmas::{
    check_g_lemma, check_h_lemma, expected_g_shape, expected_h_shape, log_grid, GLemmaCheck,
    HLemmaCheck, Monotonicity, StepScan, LEMMA_GRID_MAX, LEMMA_GRID_MIN,
};
pub use region::{
    verify_region, verify_region_against, verify_region_partitioned, Verdict, VerificationReport,
    DEFAULT_SAMPLES, MAX_WORST_RECORDS,
};
pub use sampling::{sample_pair, SAMPLE_MAX, SAMPLE_MIN};
