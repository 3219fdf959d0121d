mod common;

use std::f64::consts::E;

use common::Oracle;
use lambert_hpq::cli::{NEITHER_FIXTURES, REGION_AXIS};
use lambert_hpq::verifier::{
    check_chain, check_g_lemma, check_h_lemma, compare_at, find_counterexamples, sample_pair,
    verify_region, verify_region_partitioned, GapSign, Monotonicity, Verdict, VerificationReport,
    SIGNIFICANCE,
};
use lambert_hpq::{classify, lambert_w0, ConvexityClass, Error, HpqParams};

fn params(p: f64, q: f64) -> HpqParams {
    HpqParams::new(p, q).unwrap()
}

#[test]
fn compare_at_examples() {
    for (p, q) in [(1.0, 1.0), (-1.0, -1.0), (0.0, 0.5), (2.0, -3.0)] {
        let r = compare_at(p, q, 3.0, 3.0).unwrap();
        assert!(r.gap.abs() <= 1e-13, "({p},{q}): {}", r.gap);
    }

    // the relation is asserted against the oracle's sign, not a magnitude
    let mut oracle = Oracle::new();
    let r = compare_at(-1.0, -1.0, 1.0, E).unwrap();
    let (_, _, truth) = oracle.gap(-1.0, -1.0, 1.0, E);
    assert!(truth < 0.0);
    assert!(r.gap <= 0.0);
    assert_eq!(r.sign(), GapSign::Negative);

    let r = compare_at(1.0, 1.0, 1.0, E).unwrap();
    let (_, _, truth) = oracle.gap(1.0, 1.0, 1.0, E);
    assert!(truth > 0.0);
    assert!(r.gap >= 0.0);
}

#[test]
fn compare_at_matches_oracle_values() {
    let mut oracle = Oracle::new();
    for (p, q, x, y) in [
        (-1.0, -1.0, 0.3, 40.0),
        (0.5, 2.0, 1e-4, 7.0),
        (-3.0, 1.0, 1e5, 2e-3),
    ] {
        let r = compare_at(p, q, x, y).unwrap();
        let (lhs, rhs, _) = oracle.gap(p, q, x, y);
        assert!(
            (r.lhs - lhs).abs() <= 1e-14 * lhs,
            "{p},{q}: {} vs {lhs}",
            r.lhs
        );
        assert!(
            (r.rhs - rhs).abs() <= 1e-14 * rhs,
            "{p},{q}: {} vs {rhs}",
            r.rhs
        );
    }
}

#[test]
fn reports_are_deterministic_and_partition_free() {
    for (p, q) in [(-1.0, -1.0), (0.0, 0.5), (2.0, 3.0)] {
        let a = verify_region(params(p, q), 3000, 9).unwrap();
        let b = verify_region(params(p, q), 3000, 9).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        for block in [1, 7, 1000, 5000] {
            let c = verify_region_partitioned(params(p, q), 3000, 9, block).unwrap();
            assert_eq!(a, c, "block {block}");
        }
    }
}

#[test]
fn report_json_field_names_and_round_trip() {
    let rep = verify_region(params(0.0, 0.5), 2000, 3).unwrap();
    let json = rep.to_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let mut keys: Vec<_> = value.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "expected",
            "max_abs_gap",
            "n_gap_negative",
            "n_gap_positive",
            "n_samples",
            "params",
            "seed",
            "verdict",
            "worst_records"
        ]
    );
    let record = &value["worst_records"][0];
    for key in ["x", "y", "p", "q", "lhs", "rhs", "gap"] {
        assert!(record.get(key).is_some(), "{key}");
    }
    assert_eq!(VerificationReport::from_json(&json).unwrap(), rep);
}

#[test]
fn verify_region_examples() {
    let rep = verify_region(params(-1.0, -1.0), 100_000, 42).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert_eq!(rep.n_gap_positive, 0);

    for seed in [1, 42, 1234] {
        let rep = verify_region(params(1.0, 1.0), 100_000, seed).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.n_gap_negative, 0);
    }

    let rep = verify_region(params(0.0, 0.5), 100_000, 7).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
    assert!(rep.n_gap_positive > 0 && rep.n_gap_negative > 0);
    assert!(rep.n_gap_positive + rep.n_gap_negative <= rep.n_samples);
}

#[test]
fn verdicts_match_classify_on_the_fixture_grid() {
    for p in REGION_AXIS {
        for q in REGION_AXIS {
            let rep = verify_region(params(p, q), 10_000, 42).unwrap();
            assert_eq!(rep.expected, classify(params(p, q)).unwrap());
            assert!(
                rep.verdict.passed(),
                "({p},{q}) {}: +{} -{}",
                rep.expected,
                rep.n_gap_positive,
                rep.n_gap_negative
            );
        }
    }
}

/// For every convex or concave grid point, a sample with `|ln(x/y)| > 1e-2`
/// either clears the significance threshold on the expected side or its
/// exact gap is itself inside the threshold. In the latter case the computed
/// gap must still agree in sign with the exact one.
#[test]
fn strict_inequalities_are_strict_up_to_exact_ties() {
    let mut oracle = Oracle::new();
    let mut below_threshold = 0;
    for p in REGION_AXIS {
        for q in REGION_AXIS {
            let direction = match classify(params(p, q)).unwrap() {
                ConvexityClass::StrictlyConvex => -1.0,
                ConvexityClass::StrictlyConcave => 1.0,
                ConvexityClass::Neither => continue,
            };
            for i in 0..2000 {
                let (x, y) = sample_pair(42, i);
                if (x / y).ln().abs() <= 1e-2 {
                    continue;
                }
                let r = compare_at(p, q, x, y).unwrap();
                assert!(
                    direction * r.gap >= -SIGNIFICANCE * r.scale(),
                    "({p},{q}) at ({x},{y})"
                );
                if direction * r.gap > SIGNIFICANCE * r.scale() {
                    continue;
                }
                below_threshold += 1;
                let (lhs, rhs, truth) = oracle.gap(p, q, x, y);
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                assert!(
                    direction * truth > 0.0 && truth.abs() <= 2.0 * SIGNIFICANCE * scale,
                    "({p},{q}) at ({x},{y}): computed {:e}, exact {truth:e}",
                    r.gap
                );
                assert!(
                    direction * r.gap >= 0.0,
                    "({p},{q}) at ({x},{y}): sign flipped"
                );
            }
        }
    }
    // the exact-tie branch is exercised, not vacuous
    assert!(below_threshold > 0);
}

#[test]
fn equality_on_the_diagonal() {
    for p in REGION_AXIS {
        for q in REGION_AXIS {
            for i in 0..50 {
                let (x, _) = sample_pair(5, i);
                let r = compare_at(p, q, x, x).unwrap();
                assert!(r.gap.abs() <= 1e-13 * r.lhs.max(1.0), "({p},{q}) at {x}");
            }
        }
    }
}

#[test]
fn gap_tends_to_the_geometric_case_as_order_falls_to_zero() {
    for i in 0..200 {
        let (x, y) = sample_pair(11, i);
        let limit = compare_at(0.0, 0.0, x, y).unwrap();
        let dist: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&p| (compare_at(p, p, x, y).unwrap().gap - limit.gap).abs())
            .collect();
        let monotone = dist[0] >= dist[1] && dist[1] >= dist[2];
        let close = dist[2] <= 1e-6 * limit.lhs.max(1.0);
        assert!(monotone || close, "({x},{y}): {dist:?}");
    }
}

#[test]
fn counterexamples_in_every_neither_fixture() {
    for (p, q) in NEITHER_FIXTURES {
        let pair = find_counterexamples(params(p, q), 100_000, 1).unwrap();
        let (pos, neg) = (pair.violates_convexity, pair.violates_concavity);
        assert_eq!(pos.sign(), GapSign::Positive, "({p},{q})");
        assert_eq!(neg.sign(), GapSign::Negative, "({p},{q})");
        // the stored records reproduce when re-evaluated
        assert_eq!(compare_at(p, q, pos.x, pos.y).unwrap(), pos);
        assert_eq!(compare_at(p, q, neg.x, neg.y).unwrap(), neg);
        assert_eq!(
            find_counterexamples(params(p, q), 100_000, 1).unwrap(),
            pair
        );
    }
}

#[test]
fn counterexample_signs_agree_with_the_oracle() {
    let mut oracle = Oracle::new();
    for (p, q) in [(2.0, 3.0), (-2.0, -3.0), (-0.5, -1.0)] {
        let pair = find_counterexamples(params(p, q), 100_000, 1).unwrap();
        let r = pair.violates_convexity;
        assert!(oracle.gap(p, q, r.x, r.y).2 > 0.0);
        let r = pair.violates_concavity;
        assert!(oracle.gap(p, q, r.x, r.y).2 < 0.0);
    }
}

#[test]
fn counterexample_search_refuses_classified_pairs() {
    for (p, q) in [(1.0, 1.0), (-1.0, -1.0)] {
        assert!(matches!(
            find_counterexamples(params(p, q), 1000, 1),
            Err(Error::Domain { .. })
        ));
    }
    assert!(find_counterexamples(params(2.0, 3.0), 0, 1).is_err());
    // a single sample cannot show both directions
    assert!(matches!(
        find_counterexamples(params(2.0, 3.0), 1, 1),
        Err(Error::SearchExhausted { budget: 1, .. })
    ));
}

#[test]
fn chain_examples() {
    let c = check_chain(4.0, 4.0).unwrap();
    let w4 = lambert_w0(4.0).unwrap();
    assert_eq!(c.as_array(), [w4; 4]);

    let mut oracle = Oracle::new();
    for (x, y) in [(1.0, E), (1e-3, 1e3)] {
        let c = check_chain(x, y).unwrap();
        // a ≤ b from the (-1/4, 0) comparison, c ≤ d from (0, 1)
        let (a, b, _) = oracle.gap(-0.25, 0.0, x, y);
        let (cc, d, _) = oracle.gap(0.0, 1.0, x, y);
        let exact = [a, b, cc, d];
        for (got, want) in c.as_array().iter().zip(exact) {
            assert!(
                (got - want).abs() <= 1e-14 * want,
                "({x},{y}): {got} vs {want}"
            );
        }
        for w in exact.windows(2) {
            assert!(w[1] - w[0] > 1e-6, "({x},{y}): {exact:?}");
        }
        assert!(c.is_strictly_ordered(1e-6));
    }
}

#[test]
fn h_lemma_examples() {
    let c = check_h_lemma(2.0, 10_000).unwrap();
    assert!(c.passed);
    assert_eq!(c.observed, Some(Monotonicity::StrictlyIncreasing));

    let c = check_h_lemma(-2.0, 10_000).unwrap();
    assert!(c.passed);
    assert_eq!(c.observed, Some(Monotonicity::StrictlyDecreasing));

    let c = check_h_lemma(-0.25, 10_000).unwrap();
    assert!(c.passed);
    assert_eq!(c.observed, Some(Monotonicity::NonMonotone));
    assert!(c.grid_max.abs() < 1e-6);
    assert!((c.grid_argmax / E).ln().abs() < 0.01, "{}", c.grid_argmax);
    assert!((c.argmax.unwrap() - E).abs() < 1e-12);
}

#[test]
fn g_lemma_examples() {
    for (p, q, shape) in [
        (1.0, 1.0, Monotonicity::StrictlyDecreasing),
        (0.0, 1.0, Monotonicity::StrictlyIncreasing),
        (0.0, 0.5, Monotonicity::NonMonotone),
        (-0.5, -0.3, Monotonicity::StrictlyIncreasing),
        (-0.5, -1.0, Monotonicity::NonMonotone),
    ] {
        let c = check_g_lemma(p, q, 10_000).unwrap();
        assert!(c.passed, "({p},{q})");
        assert_eq!(c.expected, shape);
        assert_eq!(c.observed, Some(shape), "({p},{q})");
    }
}
