//! Special functions not covered by `statrs`: complex log-gamma, trigamma and
//! the modified Bessel function of the first kind for small arguments.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT: f64 = 16.0;

/// Principal branch of log Γ(z) continued along the real direction.
///
/// Stirling series after shifting `Re z` past 16, reflection for `Re z < 1/2`.
pub fn ln_gamma_c(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // log Γ(z) = log π - log sin(πz) - log Γ(1-z)
        let s = (Complex64::new(PI, 0.0) * z).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_c(Complex64::new(1.0, 0.0) - z);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - acc
}

pub fn gamma_c(z: Complex64) -> Complex64 {
    ln_gamma_c(z).exp()
}

/// Trigamma ψ₁(x) = d²/dx² log Γ(x) for x > 0.
pub fn trigamma(x: f64) -> f64 {
    assert!(x > 0.0, "trigamma needs a positive argument");
    let mut x = x;
    let mut acc = 0.0;
    while x < 12.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let t = 1.0 / (x * x);
    // 1/x + 1/2x² + Σ B_{2k}/x^{2k+1}
    let tail = 1.0 / x
        + t / 2.0
        + (t / x)
            * (1.0 / 6.0
                + t * (-1.0 / 30.0 + t * (1.0 / 42.0 + t * (-1.0 / 30.0 + t * (5.0 / 66.0 + t * (-691.0 / 2730.0))))));
    acc + tail
}

/// Modified Bessel function I_ν(z) by its power series, ν > -1, z ≥ 0.
///
/// Meant for small z; terms are summed until they drop below 1e-18 of the partial sum.
pub fn bessel_i(nu: f64, z: f64) -> f64 {
    assert!(nu > -1.0 && z >= 0.0);
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let lh = (z / 2.0).ln();
    let mut sum = 0.0;
    for k in 0..10_000u32 {
        let kf = k as f64;
        let term = ((nu + 2.0 * kf) * lh - ln_gamma(kf + 1.0) - ln_gamma(nu + kf + 1.0)).exp();
        sum += term;
        if term < 1e-18 * sum && kf > z {
            break;
        }
    }
    sum
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_quantile(p: f64) -> f64 {
    -std::f64::consts::SQRT_2 * statrs::function::erf::erfc_inv(2.0 * p)
}
