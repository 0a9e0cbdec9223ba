//! Zones of control and the explicit Kolmogorov-distance constants derived from them.

use crate::error::{Error, Result};
use crate::quad::golden_min;
use crate::stable_laws::StableLaw;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;
use std::f64::consts::PI;

/// A zone of control [−K tₙ^γ, K tₙ^γ] of index (v, w) on which the residue satisfies
/// |θₙ(ξ) − 1| ≤ K₁|ξ|^v exp(K₂|ξ|^w).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneOfControl {
    pub law: StableLaw,
    pub gamma: f64,
    pub k: f64,
    pub v: f64,
    pub w: f64,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KolmogorovConstant {
    pub c: f64,
    pub lambda_star: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound: f64,
    pub constant: f64,
    pub lambda_star: f64,
    /// γ actually used, after clamping to (v−1)/α.
    pub gamma_used: f64,
    pub clamped: bool,
    /// The bound is constant / tₙ^exponent.
    pub exponent: f64,
}

fn smoothing_term(lambda: f64) -> f64 {
    4.0 * (1.0 + 1.0 / lambda).cbrt() + 3.0 * 3f64.cbrt()
}

impl ZoneOfControl {
    /// Violated compatibility inequalities; empty when the zone is admissible.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let a = self.law.alpha;
        let vals = [self.gamma, self.k, self.v, self.w, self.k1, self.k2];
        if vals.iter().any(|x| !x.is_finite()) {
            out.push("non-finite parameter".to_string());
            return out;
        }
        if self.v <= 0.0 {
            out.push(format!("v = {} must be positive", self.v));
        }
        if self.w <= 0.0 {
            out.push(format!("w = {} must be positive", self.w));
        }
        if self.k1 <= 0.0 {
            out.push(format!("K1 = {} must be positive", self.k1));
        }
        if self.k2 < 0.0 {
            out.push(format!("K2 = {} must be nonnegative", self.k2));
        }
        if a > self.w {
            out.push(format!("alpha = {a} exceeds w = {}", self.w));
        }
        if self.gamma < -1.0 / a {
            out.push(format!("gamma = {} below -1/alpha = {}", self.gamma, -1.0 / a));
        }
        if self.w > a && self.gamma > 1.0 / (self.w - a) {
            out.push(format!("gamma = {} above 1/(w-alpha) = {}", self.gamma, 1.0 / (self.w - a)));
        }
        if self.k <= 0.0 {
            out.push(format!("K = {} must be positive", self.k));
        } else if self.k2 > 0.0 && self.w > a {
            let kmax = (self.law.c.powf(a) / (2.0 * self.k2)).powf(1.0 / (self.w - a));
            if self.k > kmax * (1.0 + 1e-12) {
                out.push(format!("K = {} above (c^alpha/(2 K2))^(1/(w-alpha)) = {kmax}", self.k));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// C/tₙ^{1/α+γ}, with γ first lowered to (v−1)/α when needed.
    pub fn kolmogorov_bound(&self, t_n: f64) -> Result<BoundReport> {
        let cap = (self.v - 1.0) / self.law.alpha;
        let clamped = self.gamma > cap;
        let mut z = *self;
        z.gamma = self.gamma.min(cap);
        let issues = z.validate();
        if !issues.is_empty() {
            return Err(Error::InvalidZone(issues.join("; ")));
        }
        let kc = kolmogorov_constant(&self.law, self.v, self.k, self.k1);
        let exponent = 1.0 / self.law.alpha + z.gamma;
        Ok(BoundReport {
            bound: kc.c / t_n.powf(exponent),
            constant: kc.c,
            lambda_star: kc.lambda_star,
            gamma_used: z.gamma,
            clamped,
            exponent,
        })
    }
}

/// Test-function constants (C₀, C₁):
/// C₀ = 2^{(v+1)/α}Γ((v+1)/α)/(παc^{v+1}), C₁ = 2^{v/α}Γ(v/α)/(παc^v).
pub fn test_fn_constants(law: &StableLaw, v: f64) -> (f64, f64) {
    let (a, c) = (law.alpha, law.c);
    let c0 = 2f64.powf((v + 1.0) / a) * gamma((v + 1.0) / a) / (PI * a * c.powf(v + 1.0));
    let c1 = 2f64.powf(v / a) * gamma(v / a) / (PI * a * c.powf(v));
    (c0, c1)
}

/// The Kolmogorov constant before minimization over λ.
pub fn kolmogorov_objective(law: &StableLaw, v: f64, k: f64, k1: f64, lambda: f64) -> f64 {
    let (a, c) = (law.alpha, law.c);
    let first = 2f64.powf(v / a) * gamma(v / a) * k1 / c.powf(v - 1.0);
    let second = gamma(1.0 / a) / (PI.cbrt() * k) * smoothing_term(lambda);
    (1.0 + lambda) / (a * PI * c) * (first + second)
}

/// Minimize the constant over λ > 0 by golden-section search on log λ ∈ [−40, 8].
pub fn kolmogorov_constant(law: &StableLaw, v: f64, k: f64, k1: f64) -> KolmogorovConstant {
    let (s, c) = golden_min(|s| kolmogorov_objective(law, v, k, k1, s.exp()), -40.0, 8.0, 1e-12);
    KolmogorovConstant { c, lambda_star: s.exp() }
}

/// The λ = 1/2 constant C₃ = (3/(2παc))(2^{v/α}Γ(v/α)K₁/c^{v−1} + 7Γ(1/α)/K).
pub fn simplified_constant(law: &StableLaw, v: f64, k: f64, k1: f64) -> f64 {
    let (a, c) = (law.alpha, law.c);
    3.0 / (2.0 * PI * a * c) * (2f64.powf(v / a) * gamma(v / a) * k1 / c.powf(v - 1.0) + 7.0 * gamma(1.0 / a) / k)
}

/// The same objective written directly for a standard Gaussian target and v = 3:
/// (1+λ)/√(2π) (2^{3/2}K₁ + (4(1+1/λ)^{1/3} + 3·3^{1/3})/(π^{1/3}K)).
pub fn mod_gaussian_objective(k: f64, k1: f64, lambda: f64) -> f64 {
    (1.0 + lambda) / (2.0 * PI).sqrt() * (2f64.powf(1.5) * k1 + smoothing_term(lambda) / (PI.cbrt() * k))
}
