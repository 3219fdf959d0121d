use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::compare::{compare_at, ComparisonRecord, GapSign};
use super::sampling::{sample_pair, SAMPLE_MAX, SAMPLE_MIN};
use crate::error::{domain, Error, Result};
use crate::hpq_theory::{classify, ConvexityClass, HpqParams};

pub const DEFAULT_BUDGET: u64 = 100_000;

/// Golden-section iterations per coordinate line search.
pub const GOLDEN_ITERATIONS: usize = 20;

const CHUNK: u64 = 4096;
const SUB_CHUNK: u64 = 256;
const SWEEPS: usize = 2;
/// Half-width of each line-search bracket in `ln x`.
const BRACKET: f64 = 1.0;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// One witness for each failed inequality direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexamplePair {
    /// `gap > 0`: `W(H_p) > H_q(W)` somewhere, so `W` is not `H_{p,q}`-convex.
    pub violates_convexity: ComparisonRecord,
    /// `gap < 0`: `W` is not `H_{p,q}`-concave.
    pub violates_concavity: ComparisonRecord,
}

#[derive(Debug, Clone, Copy)]
struct Best {
    index: u64,
    score: f64,
    rec: ComparisonRecord,
}

fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(a), Some(b)) => {
            if b.score > a.score || (b.score == a.score && b.index < a.index) {
                Some(b)
            } else {
                Some(a)
            }
        }
        (a, None) => a,
        (None, b) => b,
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Extremes {
    positive: Option<Best>,
    negative: Option<Best>,
}

impl Extremes {
    fn merge(self, other: Extremes) -> Extremes {
        Extremes {
            positive: better(self.positive, other.positive),
            negative: better(self.negative, other.negative),
        }
    }

    fn observe(&mut self, index: u64, rec: ComparisonRecord) {
        let norm = rec.normalized_gap();
        match rec.sign() {
            GapSign::Positive => {
                self.positive = better(
                    self.positive,
                    Some(Best {
                        index,
                        score: norm,
                        rec,
                    }),
                )
            }
            GapSign::Negative => {
                self.negative = better(
                    self.negative,
                    Some(Best {
                        index,
                        score: -norm,
                        rec,
                    }),
                )
            }
            GapSign::Tie => {}
        }
    }
}

fn scan(params: HpqParams, seed: u64, start: u64, end: u64) -> Result<Extremes> {
    let mut ex = Extremes::default();
    for index in start..end {
        let (x, y) = sample_pair(seed, index);
        ex.observe(index, compare_at(params.p, params.q, x, y)?);
    }
    Ok(ex)
}

/// Maximises `f` on `[a, b]` by golden-section search; returns the best point
/// evaluated.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc >= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iterations {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best_f {
                best_x = d;
                best_f = fd;
            }
        }
    }
    (best_x, best_f)
}

/// Coordinate-wise golden-section polish in `(ln x, ln y)` that increases
/// `direction · normalized_gap`. Never returns a worse record than `start`.
fn refine(params: HpqParams, start: ComparisonRecord, direction: f64) -> ComparisonRecord {
    let score = |rec: &ComparisonRecord| direction * rec.normalized_gap();
    let eval = |u: f64, v: f64| compare_at(params.p, params.q, u.exp(), v.exp()).ok();
    let (lo, hi) = (SAMPLE_MIN.ln(), SAMPLE_MAX.ln());

    let mut best = start;
    for _ in 0..SWEEPS {
        for axis in 0..2 {
            let (u, v) = (best.x.ln(), best.y.ln());
            let centre = if axis == 0 { u } else { v };
            let line = |t: f64| {
                let rec = if axis == 0 { eval(t, v) } else { eval(u, t) };
                rec.map_or(f64::NEG_INFINITY, |r| score(&r))
            };
            let (a, b) = ((centre - BRACKET).max(lo), (centre + BRACKET).min(hi));
            let (t, _) = golden_max(line, a, b, GOLDEN_ITERATIONS);
            let cand = if axis == 0 { eval(t, v) } else { eval(u, t) };
            if let Some(cand) = cand {
                if score(&cand) > score(&best) {
                    best = cand;
                }
            }
        }
    }
    best
}

/// Searches for one significant violation in each direction for a `(p, q)`
/// pair in the neither region.
///
/// Samples are drawn in blocks of 4096 (each block evaluated in parallel)
/// until both directions have been seen or `budget` is spent; the most
/// extreme sample of each sign is then polished by golden-section line
/// searches.
pub fn find_counterexamples(
    params: HpqParams,
    budget: u64,
    seed: u64,
) -> Result<CounterexamplePair> {
    let class = classify(params)?;
    if class != ConvexityClass::Neither {
        return Err(domain(
            "q",
            params.q,
            "counterexamples exist only where W is neither convex nor concave",
        ));
    }
    if budget == 0 {
        return Err(domain("budget", 0.0, "at least one sample is required"));
    }

    let mut found = Extremes::default();
    let mut start = 0;
    while start < budget && (found.positive.is_none() || found.negative.is_none()) {
        let end = (start + CHUNK).min(budget);
        let sub = (end - start).div_ceil(SUB_CHUNK);
        let block = (0..sub)
            .into_par_iter()
            .map(|k| {
                let a = start + k * SUB_CHUNK;
                scan(params, seed, a, (a + SUB_CHUNK).min(end))
            })
            .try_reduce(Extremes::default, |a, b| Ok(a.merge(b)))?;
        found = found.merge(block);
        start = end;
    }

    match (found.positive, found.negative) {
        (Some(pos), Some(neg)) => Ok(CounterexamplePair {
            violates_convexity: refine(params, pos.rec, 1.0),
            violates_concavity: refine(params, neg.rec, -1.0),
        }),
        (pos, neg) => Err(Error::SearchExhausted {
            p: params.p,
            q: params.q,
            budget,
            found_convexity_violation: pos.is_some(),
            found_concavity_violation: neg.is_some(),
        }),
    }
}
