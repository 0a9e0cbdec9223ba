//! Adaptive Gauss-Kronrod quadrature and a golden-section minimizer.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod rule with its embedded 7-point Gauss estimate.
/// Returns (integral, error estimate).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Seg {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Seg {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Seg {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Result of an adaptive integration: value and a (conservative) error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

/// Globally adaptive Gauss-Kronrod integration on [a, b] to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quad> {
    integrate_limit(&mut f, a, b, tol, 2000)
}

pub fn integrate_limit<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    max_segments: usize,
) -> Result<Quad> {
    if a == b {
        return Ok(Quad { value: 0.0, error: 0.0 });
    }
    let (v, e) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Seg { a, b, val: v, err: e });
    let mut err = e;
    while err > tol {
        if heap.len() >= max_segments {
            return Err(Error::NonConvergence { tol, err });
        }
        let s = heap.pop().unwrap();
        let m = 0.5 * (s.a + s.b);
        if m <= s.a || m >= s.b {
            return Err(Error::NonConvergence { tol, err });
        }
        let (v1, e1) = gk15(f, s.a, m);
        let (v2, e2) = gk15(f, m, s.b);
        err += e1 + e2 - s.err;
        heap.push(Seg { a: s.a, b: m, val: v1, err: e1 });
        heap.push(Seg { a: m, b: s.b, val: v2, err: e2 });
    }
    // re-sum to shed accumulated rounding in the running totals
    let value = heap.iter().map(|s| s.val).sum();
    let error = heap.iter().map(|s| s.err).sum::<f64>() + f64::EPSILON * heap.iter().map(|s| s.val.abs()).sum::<f64>();
    Ok(Quad { value, error })
}

/// Integrate over consecutive panels [edges[i], edges[i+1]], sharing the tolerance
/// in proportion to panel width.
pub fn integrate_panels<F: FnMut(f64) -> f64>(f: &mut F, edges: &[f64], tol: f64) -> Result<Quad> {
    let span = edges[edges.len() - 1] - edges[0];
    let mut value = 0.0;
    let mut error = 0.0;
    for w in edges.windows(2) {
        let local = (tol * (w[1] - w[0]) / span).max(1e-16);
        let q = integrate_limit(f, w[0], w[1], local, 400)?;
        value += q.value;
        error += q.error;
    }
    Ok(Quad { value, error })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal function on [a, b].
/// Returns (argmin, min).
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, rel_tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > rel_tol * (c.abs() + d.abs()) + 1e-15 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
