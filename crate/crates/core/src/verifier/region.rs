use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compare::{compare_at, ComparisonRecord, GapSign};
use super::sampling::sample_pair;
use crate::error::{domain, Result};
use crate::hpq_theory::{classify, ConvexityClass, HpqParams};

pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const MAX_WORST_RECORDS: usize = 10;

const CHUNK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of a randomized check of one `(p, q)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: HpqParams,
    pub expected: ConvexityClass,
    pub n_samples: u64,
    /// Samples with a significant `lhs > rhs` (violates convexity).
    pub n_gap_positive: u64,
    /// Samples with a significant `lhs < rhs` (violates concavity).
    pub n_gap_negative: u64,
    pub max_abs_gap: f64,
    /// Largest `|gap|` samples, most extreme first.
    pub worst_records: Vec<ComparisonRecord>,
    pub seed: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are finite")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn verdict_for(expected: ConvexityClass, positive: u64, negative: u64) -> Verdict {
    let ok = match expected {
        ConvexityClass::StrictlyConvex => positive == 0,
        ConvexityClass::StrictlyConcave => negative == 0,
        ConvexityClass::Neither => positive > 0 && negative > 0,
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Partial result over a slice of the sample index space.
#[derive(Debug, Clone, Default)]
struct Tally {
    n: u64,
    positive: u64,
    negative: u64,
    max_abs_gap: f64,
    worst: Vec<(u64, ComparisonRecord)>,
}

fn worse_first(a: &(u64, ComparisonRecord), b: &(u64, ComparisonRecord)) -> Ordering {
    b.1.gap.abs().total_cmp(&a.1.gap.abs()).then(a.0.cmp(&b.0))
}

impl Tally {
    fn push(&mut self, index: u64, rec: ComparisonRecord) {
        self.n += 1;
        match rec.sign() {
            GapSign::Positive => self.positive += 1,
            GapSign::Negative => self.negative += 1,
            GapSign::Tie => {}
        }
        self.max_abs_gap = self.max_abs_gap.max(rec.gap.abs());
        self.worst.push((index, rec));
        if self.worst.len() > 4 * MAX_WORST_RECORDS {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.worst.sort_by(worse_first);
        self.worst.truncate(MAX_WORST_RECORDS);
    }

    fn merge(mut self, mut other: Tally) -> Tally {
        self.n += other.n;
        self.positive += other.positive;
        self.negative += other.negative;
        self.max_abs_gap = self.max_abs_gap.max(other.max_abs_gap);
        self.worst.append(&mut other.worst);
        self.trim();
        self
    }
}

fn tally_range(params: HpqParams, seed: u64, start: u64, end: u64) -> Result<Tally> {
    let mut tally = Tally::default();
    for index in start..end {
        let (x, y) = sample_pair(seed, index);
        tally.push(index, compare_at(params.p, params.q, x, y)?);
    }
    tally.trim();
    Ok(tally)
}

fn finish(
    params: HpqParams,
    expected: ConvexityClass,
    seed: u64,
    tally: Tally,
) -> VerificationReport {
    VerificationReport {
        params,
        expected,
        n_samples: tally.n,
        n_gap_positive: tally.positive,
        n_gap_negative: tally.negative,
        max_abs_gap: tally.max_abs_gap,
        worst_records: tally.worst.into_iter().map(|(_, rec)| rec).collect(),
        seed,
        verdict: verdict_for(expected, tally.positive, tally.negative),
    }
}

fn check_inputs(params: HpqParams, n_samples: u64) -> Result<HpqParams> {
    if n_samples == 0 {
        return Err(domain("n_samples", 0.0, "at least one sample is required"));
    }
    HpqParams::new(params.p, params.q)
}

/// Samples `(x, y)` log-uniformly and checks the gap signs against
/// `classify(params)`.
///
/// Runs in parallel; the report is identical to a single-threaded run.
pub fn verify_region(params: HpqParams, n_samples: u64, seed: u64) -> Result<VerificationReport> {
    let expected = classify(params)?;
    verify_region_against(params, expected, n_samples, seed)
}

/// As [`verify_region`] but with an explicit expectation instead of the
/// classifier's verdict.
pub fn verify_region_against(
    params: HpqParams,
    expected: ConvexityClass,
    n_samples: u64,
    seed: u64,
) -> Result<VerificationReport> {
    let params = check_inputs(params, n_samples)?;
    let chunks = n_samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| tally_range(params, seed, c * CHUNK, ((c + 1) * CHUNK).min(n_samples)))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(finish(params, expected, seed, tally))
}

/// Sequential evaluation over explicit index blocks of `block` samples,
/// merged left to right.
pub fn verify_region_partitioned(
    params: HpqParams,
    n_samples: u64,
    seed: u64,
    block: u64,
) -> Result<VerificationReport> {
    let expected = classify(params)?;
    let params = check_inputs(params, n_samples)?;
    let block = block.max(1);
    let mut tally = Tally::default();
    let mut start = 0;
    while start < n_samples {
        let end = (start + block).min(n_samples);
        tally = tally.merge(tally_range(params, seed, start, end)?);
        start = end;
    }
    Ok(finish(params, expected, seed, tally))
}
