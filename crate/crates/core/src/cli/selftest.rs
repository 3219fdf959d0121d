//! End-to-end run of every verifier check over the fixture sets.

use std::io::Write;

use rayon::prelude::*;

use crate::error::Result;
use crate::hpq_theory::{classify, ConvexityClass, HpqParams};
use crate::verifier::{
    check_chain, check_g_lemma, check_h_lemma, check_harmonic_inequality, find_counterexamples,
    sample_pair, verify_region_against, DEFAULT_BUDGET,
};

pub const H_LEMMA_ORDERS: [f64; 10] = [-2.0, -1.0, -0.9, -0.75, -0.5, -0.25, -0.1, 0.0, 0.5, 2.0];

/// `(p, q)` pairs covering every clause of the `g_{p,q}` monotonicity statement.
pub const G_LEMMA_PAIRS: [(f64, f64); 12] = [
    (1.0, 1.0),
    (2.0, 0.5),
    (1.0, 2.0),
    (0.0, 1.0),
    (0.0, 0.0),
    (0.0, 0.5),
    (-1.0, -1.0),
    (-2.0, 1.0),
    (-2.0, -3.0),
    (-0.5, -0.3),
    (-0.5, -1.0),
    (-0.25, 0.0),
];

/// Axis values of the 11 × 11 region fixture grid.
pub const REGION_AXIS: [f64; 11] = [
    -3.0, -2.0, -1.0, -0.75, -0.5, -0.25, -0.1, 0.0, 0.25, 1.0, 2.0,
];

pub const NEITHER_FIXTURES: [(f64, f64); 4] = [(2.0, 3.0), (-2.0, -3.0), (0.0, 0.5), (-0.5, -1.0)];

pub const LEMMA_GRID: usize = 10_000;

/// Relative margin separating "strictly ordered" from rounding noise.
pub const CHAIN_MARGIN: f64 = 1e-13;

/// Pairs closer than this in `|ln(x/y)|` are not required to be strict.
pub const STRICT_SPREAD: f64 = 1e-2;

#[derive(Debug, Clone, Copy, Default)]
pub struct SelftestOptions {
    pub n_samples: u64,
    pub seed: u64,
    /// Expect `(1, 1)` to be convex; the harness must then fail.
    pub inject_fault: bool,
}

fn line(out: &mut dyn Write, ok: bool, name: &str, detail: &str) -> bool {
    let _ = writeln!(out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

/// Chain ordering and the harmonic inequality over sampled pairs; returns the
/// number of failing pairs.
pub fn chain_failures(n_pairs: u64, seed: u64) -> Result<u64> {
    (0..n_pairs)
        .into_par_iter()
        .map(|i| {
            let (x, y) = sample_pair(seed, i);
            let chain = check_chain(x, y)?;
            let harmonic = check_harmonic_inequality(x, y)?;
            let scale = harmonic.lhs.abs().max(harmonic.rhs.abs());
            // The harmonic gap shrinks like x²·ln²(x/y)/8 relative to W near
            // zero, so strictness there is only `lhs < rhs`, not a margin.
            let ok = if (x / y).ln().abs() > STRICT_SPREAD {
                chain.is_strictly_ordered(CHAIN_MARGIN) && harmonic.gap < 0.0
            } else {
                chain.is_ordered(CHAIN_MARGIN) && harmonic.gap <= CHAIN_MARGIN * scale
            };
            Ok(u64::from(!ok))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Runs all checks, writing one line per check. Returns `Ok(true)` iff all pass.
pub fn run_selftest(opts: SelftestOptions, out: &mut dyn Write) -> Result<bool> {
    let mut all = true;

    for p in H_LEMMA_ORDERS {
        let c = check_h_lemma(p, LEMMA_GRID)?;
        let detail = format!(
            "expected {:?}, observed {:?}, grid max {:.9}",
            c.expected, c.observed, c.grid_max
        );
        all &= line(out, c.passed, &format!("h-lemma p={p}"), &detail);
    }

    for (p, q) in G_LEMMA_PAIRS {
        let c = check_g_lemma(p, q, LEMMA_GRID)?;
        let detail = format!(
            "clause {}, expected {:?}, observed {:?}",
            c.clause, c.expected, c.observed
        );
        all &= line(out, c.passed, &format!("g-lemma (p,q)=({p},{q})"), &detail);
    }

    for p in REGION_AXIS {
        for q in REGION_AXIS {
            let params = HpqParams::new(p, q)?;
            let mut expected = classify(params)?;
            if opts.inject_fault && p == 1.0 && q == 1.0 {
                expected = ConvexityClass::StrictlyConvex;
            }
            let rep = verify_region_against(params, expected, opts.n_samples, opts.seed)?;
            let detail = format!(
                "expected {}, {} positive / {} negative of {}",
                rep.expected, rep.n_gap_positive, rep.n_gap_negative, rep.n_samples
            );
            all &= line(
                out,
                rep.verdict.passed(),
                &format!("region (p,q)=({p},{q})"),
                &detail,
            );
        }
    }

    for (p, q) in NEITHER_FIXTURES {
        let name = format!("counterexample (p,q)=({p},{q})");
        match find_counterexamples(HpqParams::new(p, q)?, DEFAULT_BUDGET, opts.seed) {
            Ok(pair) => {
                let detail = format!(
                    "gap +{:e} at ({}, {}), {:e} at ({}, {})",
                    pair.violates_convexity.gap,
                    pair.violates_convexity.x,
                    pair.violates_convexity.y,
                    pair.violates_concavity.gap,
                    pair.violates_concavity.x,
                    pair.violates_concavity.y
                );
                all &= line(out, true, &name, &detail);
            }
            Err(e) => all &= line(out, false, &name, &e.to_string()),
        }
    }

    let failures = chain_failures(opts.n_samples, opts.seed)?;
    all &= line(
        out,
        failures == 0,
        "mean chains",
        &format!("{failures} failing pairs of {}", opts.n_samples),
    );

    Ok(all)
}
