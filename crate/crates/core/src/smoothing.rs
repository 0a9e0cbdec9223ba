//! The smoothing kernel ρ(x) = (3/8π) sinc⁴(x/4), whose Fourier transform is
//! supported in [−1, 1], the mollified Heaviside functions built from it, and the
//! smoothing inequality that turns a bound on smooth test functions into a
//! Kolmogorov bound.

use crate::error::Result;
use crate::quad::{self, Quad};
use std::f64::consts::PI;

const PERIOD: f64 = 4.0 * PI;
const FAR: f64 = 2000.0;

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

pub fn rho(x: f64) -> f64 {
    3.0 / (8.0 * PI) * sinc(x / 4.0).powi(4)
}

/// ρ_ε(x) = ρ(x/ε)/ε.
pub fn rho_eps(x: f64, eps: f64) -> f64 {
    rho(x / eps) / eps
}

/// min(3/8π, 96/(πK⁴)).
pub fn rho_envelope(k: f64) -> f64 {
    (3.0 / (8.0 * PI)).min(96.0 / (PI * k.powi(4)))
}

fn period_edges(a: f64, b: f64) -> Vec<f64> {
    let mut edges = vec![a];
    let mut x = (a / PERIOD).floor() * PERIOD + PERIOD;
    while x < b {
        edges.push(x);
        x += PERIOD;
    }
    edges.push(b);
    edges
}

/// ∫_a^b ρ, split at the zeros of ρ.
pub fn rho_integral(a: f64, b: f64, tol: f64) -> Result<Quad> {
    if a >= b {
        return Ok(Quad { value: 0.0, error: 0.0 });
    }
    quad::integrate_panels(&mut rho, &period_edges(a, b), tol)
}

/// Leading part 12/(πL³) of ∫_L^∞ ρ and a bound on what it leaves out.
pub fn rho_tail(l: f64) -> (f64, f64) {
    (12.0 / (PI * l.powi(3)), 96.0 / PI * 2.25 / l.powi(4))
}

/// f₁(y) = ∫_y^∞ ρ.
pub fn f1(y: f64, tol: f64) -> Result<f64> {
    if y < 0.0 {
        return Ok(1.0 - f1(-y, tol)?);
    }
    if y > FAR {
        return Ok(rho_tail(y).0);
    }
    Ok((0.5 - rho_integral(0.0, y, tol)?.value).max(0.0))
}

/// f_{a,ε}(x) = f₁((x−a)/ε), a smooth decreasing approximation of 1_{x ≤ a}.
pub fn f_smooth(a: f64, eps: f64, x: f64, tol: f64) -> Result<f64> {
    f1((x - a) / eps, tol)
}

/// ρ̂(ξ) = ∫ e^{ixξ} ρ(x) dx, computed by quadrature on [−L, L].
pub fn rho_hat(xi: f64, tol: f64) -> Result<Quad> {
    let l = PERIOD * 400.0;
    let pieces = 4.0 * (1.0 + xi.abs()).ceil();
    let w = PERIOD / pieces;
    let n = (l / w).round() as usize;
    let edges: Vec<f64> = (0..=n).map(|i| i as f64 * w).collect();
    let mut g = |x: f64| (x * xi).cos() * rho(x);
    let q = quad::integrate_panels(&mut g, &edges, tol / 2.0)?;
    let (tail, slack) = rho_tail(l);
    Ok(Quad { value: 2.0 * q.value, error: 2.0 * (q.error + tail + slack) })
}

/// ∫₀^∞ f₁(u − K) du = K + ∫_K^∞ (u − K) ρ(u) du.
pub fn f1_shifted_mass(k: f64, tol: f64) -> Result<f64> {
    let l = PERIOD * 1000.0;
    let mut g = |u: f64| (u - k) * rho(u);
    let q = quad::integrate_panels(&mut g, &period_edges(k, l), tol)?;
    Ok(k + q.value + 18.0 / (PI * l * l))
}

/// Smoothing inequality: (1+λ)(B + (m/π^{1/3})(4(1+1/λ)^{1/3} + 3·3^{1/3}))ε.
pub fn tao_bound(b: f64, eps: f64, m: f64, lambda: f64) -> f64 {
    (1.0 + lambda) * (b + m / PI.cbrt() * (4.0 * (1.0 + 1.0 / lambda).cbrt() + 3.0 * 3f64.cbrt())) * eps
}
