//! Classification rasters over a rectangular `(p, q)` window, written as CSV
//! (the data) and optionally SVG (a picture of the three regions).

use std::fmt::Write as _;

use crate::error::{domain, finite, Result};
use crate::hpq_theory::{classify_pq, ConvexityClass};

pub const CONVEX_FILL: &str = "#4878d0";
pub const CONCAVE_FILL: &str = "#ee854a";
pub const NEITHER_FILL: &str = "#dcdcdc";
pub const BOUNDARY_STROKE: &str = "#000000";

pub const SVG_SIZE: f64 = 800.0;
const MARGIN: f64 = 70.0;
const MAX_CELLS: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterCell {
    pub p: f64,
    pub q: f64,
    pub class: ConvexityClass,
}

/// Classification of every `(p, q)` on a closed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionRaster {
    pub p_min: f64,
    pub p_max: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub step: f64,
    /// Row-major in `p`, then `q`.
    pub cells: Vec<RasterCell>,
}

/// Digits after the decimal point in the shortest representation of `v`.
fn decimals(v: f64) -> i32 {
    let text = format!("{v}");
    match text.split_once('.') {
        Some((_, frac)) => frac.len() as i32,
        None => 0,
    }
}

/// Grid coordinates from `lo` to `hi` inclusive, rounded to the decimal
/// precision of `lo` and `step` so that e.g. `-3 + 55·0.05` is exactly `-0.25`.
fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let digits = decimals(lo).max(decimals(step)).min(15);
    let scale = 10f64.powi(digits);
    let snap = |v: f64| {
        let s = (v * scale).round() / scale;
        if s == 0.0 {
            0.0
        } else {
            s
        }
    };
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut values: Vec<f64> = (0..=n).map(|i| snap(lo + step * i as f64)).collect();
    if let Some(&last) = values.last() {
        if last < hi - 1e-9 * step {
            values.push(hi);
        }
    }
    values
}

impl RegionRaster {
    pub fn build(p_min: f64, p_max: f64, q_min: f64, q_max: f64, step: f64) -> Result<Self> {
        for (name, v) in [
            ("p_min", p_min),
            ("p_max", p_max),
            ("q_min", q_min),
            ("q_max", q_max),
        ] {
            finite(name, v)?;
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(domain("step", step, "must be positive and finite"));
        }
        if p_min > p_max {
            return Err(domain("p_max", p_max, "must not be below p_min"));
        }
        if q_min > q_max {
            return Err(domain("q_max", q_max, "must not be below q_min"));
        }
        let steps = |lo: f64, hi: f64| (hi - lo) / step + 2.0;
        if steps(p_min, p_max) * steps(q_min, q_max) > MAX_CELLS as f64 {
            return Err(domain(
                "step",
                step,
                "window would exceed the raster cell limit",
            ));
        }
        let ps = axis(p_min, p_max, step);
        let qs = axis(q_min, q_max, step);
        let mut cells = Vec::with_capacity(ps.len() * qs.len());
        for &p in &ps {
            for &q in &qs {
                cells.push(RasterCell {
                    p,
                    q,
                    class: classify_pq(p, q)?,
                });
            }
        }
        Ok(Self {
            p_min,
            p_max,
            q_min,
            q_max,
            step,
            cells,
        })
    }

    pub fn get(&self, p: f64, q: f64) -> Option<ConvexityClass> {
        self.cells
            .iter()
            .find(|c| c.p == p && c.q == q)
            .map(|c| c.class)
    }

    /// `p,q,class` with shortest round-trip numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(24 * self.cells.len() + 16);
        out.push_str("p,q,class\n");
        for c in &self.cells {
            let _ = writeln!(out, "{},{},{}", c.p, c.q, c.class.label());
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let plot = SVG_SIZE - 2.0 * MARGIN;
        let p_span = (self.p_max - self.p_min).max(self.step);
        let q_span = (self.q_max - self.q_min).max(self.step);
        let sx = |p: f64| MARGIN + (p - self.p_min) / p_span * plot;
        let sy = |q: f64| SVG_SIZE - MARGIN - (q - self.q_min) / q_span * plot;
        let cw = self.step / p_span * plot;
        let ch = self.step / q_span * plot;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
            SVG_SIZE
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}"/></clipPath>"#
        );
        let _ = writeln!(
            s,
            r#"<g clip-path="url(#plot)" shape-rendering="crispEdges">"#
        );
        for c in &self.cells {
            let fill = match c.class {
                ConvexityClass::StrictlyConvex => CONVEX_FILL,
                ConvexityClass::StrictlyConcave => CONCAVE_FILL,
                ConvexityClass::Neither => NEITHER_FILL,
            };
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
                sx(c.p) - cw / 2.0,
                sy(c.q) - ch / 2.0,
                cw,
                ch
            );
        }

        // q = C(p) on (-1, 0)
        let (a, b) = (self.p_min.max(-1.0), self.p_max.min(0.0));
        if a < b {
            let mut pts = String::new();
            for i in 0..=200 {
                let p = a + (b - a) * i as f64 / 200.0;
                let q = 1.0 - 2.0 * (-p).sqrt();
                let _ = write!(pts, "{:.3},{:.3} ", sx(p), sy(q));
            }
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{BOUNDARY_STROKE}" stroke-width="2"/>"#,
                pts.trim_end()
            );
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}" fill="none" stroke="black"/>"#
        );
        for (v, x) in [(self.p_min, sx(self.p_min)), (self.p_max, sx(self.p_max))] {
            let _ = writeln!(
                s,
                r#"<text x="{x:.3}" y="{:.3}" font-size="14" text-anchor="middle">{v}</text>"#,
                SVG_SIZE - MARGIN + 20.0
            );
        }
        for (v, y) in [(self.q_min, sy(self.q_min)), (self.q_max, sy(self.q_max))] {
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="end">{v}</text>"#,
                MARGIN - 8.0,
                y + 5.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="18" text-anchor="middle">p</text>"#,
            SVG_SIZE / 2.0,
            SVG_SIZE - 20.0
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{:.3}" font-size="18" text-anchor="middle">q</text>"#,
            SVG_SIZE / 2.0
        );
        let legend = [
            (CONVEX_FILL, "strictly convex (D1 ∪ D2)"),
            (CONCAVE_FILL, "strictly concave (D3)"),
            (NEITHER_FILL, "neither"),
        ];
        for (i, (fill, label)) in legend.iter().enumerate() {
            let x = MARGIN + 200.0 * i as f64;
            let _ = writeln!(
                s,
                r#"<rect x="{x}" y="20" width="14" height="14" fill="{fill}" stroke="black"/><text x="{}" y="32" font-size="13">{label}</text>"#,
                x + 20.0
            );
        }
        let _ = writeln!(s, "</svg>");
        s
    }
}
