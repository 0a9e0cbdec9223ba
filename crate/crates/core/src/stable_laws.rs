//! Stable distributions φ_{c,α,β}: Lévy exponent, characteristic function,
//! density and distribution function by Fourier inversion, exact sampling.

use crate::error::{Error, Result};
use crate::quad::{self, Quad};
use crate::rng::Rng;
use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma, gamma_ur};
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableLaw {
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl StableLaw {
    pub fn new(c: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::BadParams(format!("scale c must be positive, got {c}")));
        }
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::BadParams(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::BadParams(format!("beta must lie in [-1, 1], got {beta}")));
        }
        Ok(StableLaw { c, alpha, beta })
    }

    /// Standard Gaussian: c = 1/√2, α = 2.
    pub fn gaussian() -> Self {
        StableLaw { c: 1.0 / SQRT_2, alpha: 2.0, beta: 0.0 }
    }

    /// Standard Cauchy.
    pub fn cauchy() -> Self {
        StableLaw { c: 1.0, alpha: 1.0, beta: 0.0 }
    }

    /// Standard Lévy law, supported on the positive half-line.
    pub fn levy() -> Self {
        StableLaw { c: 1.0, alpha: 0.5, beta: 1.0 }
    }

    fn skew_factor(&self, xi: f64) -> f64 {
        if self.alpha == 2.0 || self.beta == 0.0 {
            0.0
        } else if self.alpha == 1.0 {
            -(2.0 / PI) * xi.abs().ln()
        } else {
            (PI * self.alpha / 2.0).tan()
        }
    }

    /// η(iξ) = −|cξ|^α (1 − iβ h(α,ξ) sgn ξ).
    pub fn levy_exponent(&self, xi: f64) -> Complex64 {
        if xi == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let m = (self.c * xi.abs()).powf(self.alpha);
        let h = self.skew_factor(xi);
        Complex64::new(-m, m * self.beta * h * xi.signum())
    }

    pub fn char_fn(&self, xi: f64) -> Complex64 {
        self.levy_exponent(xi).exp()
    }

    /// m = Γ(1/α)/(απc), an upper bound on the density.
    pub fn density_sup_bound(&self) -> f64 {
        gamma(1.0 / self.alpha) / (self.alpha * PI * self.c)
    }

    /// (1/π)∫_Ξ^∞ |φ(ξ)| dξ.
    fn tail_mass(&self, xi_max: f64) -> f64 {
        let a = 1.0 / self.alpha;
        let y = (self.c * xi_max).powf(self.alpha);
        gamma(a) * gamma_ur(a, y) / (self.alpha * self.c * PI)
    }

    /// Truncation point of the inversion integrals: |φ| < tol/10 there and the
    /// neglected tail contributes less than tol/10.
    pub fn truncation(&self, tol: f64) -> f64 {
        let base = (10.0 / tol).ln().powf(1.0 / self.alpha) / self.c;
        let mut hi = base.max(1e-3);
        while self.tail_mass(hi) / hi.min(1.0) > tol / 10.0 {
            hi *= 1.5;
        }
        hi
    }

    /// Density by inversion, (1/π)∫₀^Ξ Re(e^{−iξx} φ(ξ)) dξ.
    pub fn density(&self, x: f64, tol: f64) -> Result<f64> {
        let q = self.density_quad(x, tol)?;
        Ok(q.value)
    }

    pub fn density_quad(&self, x: f64, tol: f64) -> Result<Quad> {
        let xi_max = self.truncation(tol);
        let mut g = |xi: f64| (Complex64::new(0.0, -xi * x).exp() * self.char_fn(xi)).re;
        let q = oscillatory(&mut g, x, xi_max, 0.5 * tol * PI)?;
        Ok(Quad { value: q.value / PI, error: q.error / PI + tol / 10.0 })
    }

    /// Distribution function by inversion,
    /// F(x) = 1/2 − (1/π)∫₀^Ξ Im(e^{−iξx} φ(ξ))/ξ dξ.
    pub fn cdf(&self, x: f64, tol: f64) -> Result<f64> {
        let q = self.cdf_quad(x, tol)?;
        Ok(q.value.clamp(0.0, 1.0))
    }

    pub fn cdf_quad(&self, x: f64, tol: f64) -> Result<Quad> {
        let xi_max = self.truncation(tol);
        let q = cdf_integral(&|xi| self.char_fn(xi), x, xi_max, 0.5 * tol * PI)?;
        Ok(Quad { value: 0.5 - q.value / PI, error: q.error / PI + tol / 10.0 })
    }

    /// Closed-form distribution function for the Gaussian, Cauchy and Lévy families.
    pub fn closed_form_cdf(&self, x: f64) -> Option<f64> {
        let c = self.c;
        if self.alpha == 2.0 {
            return Some(0.5 * erfc(-x / (2.0 * c)));
        }
        if self.alpha == 1.0 && self.beta == 0.0 {
            return Some(0.5 + (x / c).atan() / PI);
        }
        if self.alpha == 0.5 && self.beta.abs() == 1.0 {
            let y = x * self.beta;
            let f = if y <= 0.0 { 0.0 } else { erfc((c / (2.0 * y)).sqrt()) };
            return Some(if self.beta > 0.0 { f } else { 1.0 - f });
        }
        None
    }

    /// Closed-form density for the same three families.
    pub fn closed_form_density(&self, x: f64) -> Option<f64> {
        let c = self.c;
        if self.alpha == 2.0 {
            return Some((-x * x / (4.0 * c * c)).exp() / (2.0 * c * PI.sqrt()));
        }
        if self.alpha == 1.0 && self.beta == 0.0 {
            return Some(c / (PI * (c * c + x * x)));
        }
        if self.alpha == 0.5 && self.beta.abs() == 1.0 {
            let y = x * self.beta;
            if y <= 0.0 {
                return Some(0.0);
            }
            return Some((c / (2.0 * PI)).sqrt() * (-c / (2.0 * y)).exp() / y.powf(1.5));
        }
        None
    }

    /// Distribution function: closed form when one exists, inversion otherwise.
    pub fn cdf_any(&self, x: f64, tol: f64) -> Result<f64> {
        match self.closed_form_cdf(x) {
            Some(v) => Ok(v),
            None => self.cdf(x, tol),
        }
    }

    /// Quantile function; closed form where available, bisection on the inversion
    /// CDF otherwise.
    pub fn quantile(&self, p: f64, tol: f64) -> Result<f64> {
        assert!(p > 0.0 && p < 1.0);
        let c = self.c;
        if self.alpha == 2.0 {
            return Ok(SQRT_2 * c * crate::special::normal_quantile(p));
        }
        if self.alpha == 1.0 && self.beta == 0.0 {
            return Ok(c * (PI * (p - 0.5)).tan());
        }
        let (mut lo, mut hi) = (-1.0, 1.0);
        while self.cdf_any(lo, tol)? > p {
            lo *= 2.0;
        }
        while self.cdf_any(hi, tol)? < p {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf_any(mid, tol)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-12 * (1.0 + mid.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// One Chambers-Mallows-Stuck draw, in the (c, α, β) parameterization of
    /// [`levy_exponent`](Self::levy_exponent).
    pub fn draw(&self, rng: &mut Rng) -> f64 {
        let (a, b, c) = (self.alpha, self.beta, self.c);
        let v = PI * (rng.random::<f64>() - 0.5);
        let w = -(1.0 - rng.random::<f64>()).ln();
        if a == 1.0 {
            let pb = FRAC_PI_2 + b * v;
            let x = (2.0 / PI) * (pb * v.tan() - b * (FRAC_PI_2 * w * v.cos() / pb).ln());
            c * x + (2.0 / PI) * b * c * c.ln()
        } else {
            let t = b * (PI * a / 2.0).tan();
            let shift = t.atan() / a;
            let scale = (1.0 + t * t).powf(1.0 / (2.0 * a));
            let x = scale * (a * (v + shift)).sin() / v.cos().powf(1.0 / a)
                * ((v - a * (v + shift)).cos() / w).powf((1.0 - a) / a);
            c * x
        }
    }

    pub fn sample(&self, seed: u64, n: usize) -> Vec<f64> {
        let law = *self;
        crate::rng::par_generate(seed, n, move |rng| law.draw(rng))
    }

    /// Yₙ = Xₙ/tₙ^{1/α} (α ≠ 1) or Xₙ/tₙ − (2cβ/π) log tₙ (α = 1).
    pub fn renormalize(&self, x_n: f64, t_n: f64) -> f64 {
        if self.alpha == 1.0 {
            x_n / t_n - 2.0 * self.c * self.beta / PI * t_n.ln()
        } else {
            x_n / t_n.powf(1.0 / self.alpha)
        }
    }
}

/// ∫₀^Ξ g(ξ) dξ for an integrand oscillating like e^{−iξx}: panels of width
/// π/(1+|x|), the first one integrated in u = √ξ to absorb the power and log
/// singularities at the origin.
pub fn oscillatory<F: FnMut(f64) -> f64>(g: &mut F, x: f64, xi_max: f64, tol: f64) -> Result<Quad> {
    let w = PI / (1.0 + x.abs());
    let first = w.min(xi_max);
    let mut h = |u: f64| {
        let xi = u * u;
        if xi == 0.0 {
            0.0
        } else {
            2.0 * u * g(xi)
        }
    };
    let share = (tol * first / xi_max).max(1e-16);
    let q0 = quad::integrate_limit(&mut h, 0.0, first.sqrt(), share, 400)?;
    if first >= xi_max {
        return Ok(q0);
    }
    let n = ((xi_max - first) / w).ceil() as usize;
    let mut edges = Vec::with_capacity(n + 1);
    for i in 0..=n {
        edges.push((first + i as f64 * w).min(xi_max));
    }
    let q = quad::integrate_panels(g, &edges, tol - share)?;
    Ok(Quad { value: q0.value + q.value, error: q0.error + q.error })
}

/// ∫₀^Ξ Im(e^{−iξx} cf(ξ))/ξ dξ.
pub fn cdf_integral<F: Fn(f64) -> Complex64>(cf: &F, x: f64, xi_max: f64, tol: f64) -> Result<Quad> {
    let mut g = |xi: f64| (Complex64::new(0.0, -xi * x).exp() * cf(xi)).im / xi;
    oscillatory(&mut g, x, xi_max, tol)
}
