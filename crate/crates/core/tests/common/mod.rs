//! Test-only oracles, independent of the library's evaluation paths.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// Multiprecision helper; owns the constant cache.
pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constant cache"),
        }
    }

    fn big(v: f64) -> BigFloat {
        BigFloat::from_f64(v, PREC)
    }

    fn round(&mut self, v: &BigFloat) -> f64 {
        v.format(Radix::Dec, RM, &mut self.cc)
            .expect("finite value")
            .parse()
            .expect("decimal")
    }

    /// `w·eʷ` at 256 bits.
    fn w_exp_w(&mut self, w: &BigFloat) -> BigFloat {
        w.mul(&w.exp(PREC, RM, &mut self.cc), PREC, RM)
    }

    /// Exact `|w·eʷ − z|` for the double `w`, rounded to a double.
    pub fn residual(&mut self, w: f64, z: f64) -> f64 {
        let r = self.w_exp_w(&Self::big(w)).sub(&Self::big(z), PREC, RM);
        self.round(&r).abs()
    }

    /// Largest exact `|w·eʷ − z| / max(z, 1)` over `(w, z)` pairs; the
    /// comparison stays at 256 bits and only the winner is rounded.
    pub fn max_scaled_residual(
        &mut self,
        pairs: impl IntoIterator<Item = (f64, f64)>,
    ) -> (f64, f64) {
        let mut worst = (Self::big(0.0), 0.0);
        for (w, z) in pairs {
            let r = self
                .w_exp_w(&Self::big(w))
                .sub(&Self::big(z), PREC, RM)
                .abs()
                .div(&Self::big(z.max(1.0)), PREC, RM);
            if r.cmp(&worst.0).expect("comparable") > 0 {
                worst = (r, z);
            }
        }
        (self.round(&worst.0), worst.1)
    }

    /// `W₀(z)` by bisection on `w·eʷ = z` at 256 bits, `iterations` halvings
    /// of the bracket `[0, max(1, ln(1 + z))]`.
    pub fn w_bisect(&mut self, z: f64, iterations: usize) -> f64 {
        let target = Self::big(z);
        let mut lo = Self::big(0.0);
        let mut hi = Self::big(1.0_f64.max(z.ln_1p()));
        let half = Self::big(0.5);
        for _ in 0..iterations {
            let mid = lo.add(&hi, PREC, RM).mul(&half, PREC, RM);
            let v = self.w_exp_w(&mid);
            if v.cmp(&target).expect("comparable") > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mid = lo.add(&hi, PREC, RM).mul(&half, PREC, RM);
        self.round(&mid)
    }
}

impl Oracle {
    /// `W₀(z)` at 256 bits by Newton's method from `ln(1 + z)`, which bounds
    /// `W₀` from above; `w·eʷ` is convex there, so the iterates fall
    /// monotonically onto the root.
    fn w_big(&mut self, z: &BigFloat) -> BigFloat {
        let one = Self::big(1.0);
        let mut w = z.add(&one, PREC, RM).ln(PREC, RM, &mut self.cc);
        for _ in 0..40 {
            let ew = w.exp(PREC, RM, &mut self.cc);
            let f = w.mul(&ew, PREC, RM).sub(z, PREC, RM);
            let fp = ew.mul(&w.add(&one, PREC, RM), PREC, RM);
            w = w.sub(&f.div(&fp, PREC, RM), PREC, RM);
        }
        w
    }

    /// `H_p(x, y)` at 256 bits.
    fn holder_big(&mut self, p: f64, x: &BigFloat, y: &BigFloat) -> BigFloat {
        if p == 0.0 {
            return x.mul(y, PREC, RM).sqrt(PREC, RM);
        }
        let bp = Self::big(p);
        let pow = |o: &mut Self, v: &BigFloat| {
            v.ln(PREC, RM, &mut o.cc)
                .mul(&bp, PREC, RM)
                .exp(PREC, RM, &mut o.cc)
        };
        let mean = pow(self, x)
            .add(&pow(self, y), PREC, RM)
            .mul(&Self::big(0.5), PREC, RM);
        mean.ln(PREC, RM, &mut self.cc)
            .div(&bp, PREC, RM)
            .exp(PREC, RM, &mut self.cc)
    }

    /// `W₀(z)` at 256 bits, rounded to a double.
    pub fn w(&mut self, z: f64) -> f64 {
        let w = self.w_big(&Self::big(z));
        self.round(&w)
    }

    /// `(lhs, rhs, lhs − rhs)` of `W(H_p(x, y))` against `H_q(W(x), W(y))`,
    /// each evaluated at 256 bits and rounded once.
    pub fn gap(&mut self, p: f64, q: f64, x: f64, y: f64) -> (f64, f64, f64) {
        let (bx, by) = (Self::big(x), Self::big(y));
        let h = self.holder_big(p, &bx, &by);
        let lhs = self.w_big(&h);
        let (wx, wy) = (self.w_big(&bx), self.w_big(&by));
        let rhs = self.holder_big(q, &wx, &wy);
        let gap = lhs.sub(&rhs, PREC, RM);
        (self.round(&lhs), self.round(&rhs), self.round(&gap))
    }
}

/// Bisection for the Omega constant, driven until the bracket is below 1e-16.
pub fn omega_by_bisection() -> f64 {
    let mut oracle = Oracle::new();
    // bracket width 1 → 2^-60 < 1e-16 after 60 halvings
    oracle.w_bisect(1.0, 60)
}

/// `n` log-spaced points on `[lo, hi]`.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Central difference of `f` at `x` with step `h`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}
