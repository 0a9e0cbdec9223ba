//! Worked examples as self-describing models: target law, time parameter, exact
//! characteristic function and/or seeded sampler of the renormalized variable,
//! declared zone of control and the closed-form Kolmogorov bound.

use crate::error::{Error, Result};
use crate::rng::{par_generate, stream, Rng};
use crate::special::{ln_gamma_c, trigamma, ZETA3};
use crate::stable_laws::StableLaw;
use crate::zone_control::ZoneOfControl;
use num_complex::Complex64;
use rand::Rng as _;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{E, PI};

pub const KINDS: [&str; 9] = [
    "iid_sum",
    "analytic_zeros",
    "winding",
    "compound_poisson",
    "ou_process",
    "cue_logdet",
    "correlated_walk",
    "er_subgraph",
    "ising",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Steps {
    Rademacher,
    /// Uniform on [−√3, √3].
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IidParams {
    #[serde(default = "IidParams::default_steps")]
    pub steps: Steps,
}

impl IidParams {
    fn default_steps() -> Steps {
        Steps::Rademacher
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableParams {
    #[serde(default = "one")]
    pub c: f64,
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuParams {
    #[serde(default = "one")]
    pub c: f64,
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    /// Mean-reversion speed.
    #[serde(default = "one")]
    pub v: f64,
    /// Starting point.
    #[serde(default)]
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkParams {
    #[serde(rename = "D")]
    pub d: usize,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErParams {
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsingParams {
    #[serde(default = "two")]
    pub d: usize,
    pub beta: f64,
    #[serde(default)]
    pub h: f64,
    #[serde(default = "IsingParams::default_burn_in")]
    pub burn_in: usize,
    #[serde(default = "IsingParams::default_thin")]
    pub thin: usize,
    #[serde(default = "IsingParams::default_chains")]
    pub chains: usize,
}

impl IsingParams {
    fn default_burn_in() -> usize {
        200
    }
    fn default_thin() -> usize {
        10
    }
    fn default_chains() -> usize {
        32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoParams {}

fn one() -> f64 {
    1.0
}

fn two() -> usize {
    2
}

/// Model kind with its fixed parameters. The varying size (n, h, t, L) is passed to
/// each method separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    IidSum(IidParams),
    AnalyticZeros(NoParams),
    Winding(NoParams),
    CompoundPoisson(StableParams),
    OuProcess(OuParams),
    CueLogdet(NoParams),
    CorrelatedWalk(WalkParams),
    ErSubgraph(ErParams),
    Ising(IsingParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    pub name: String,
    pub kind: ModelKind,
    pub law: StableLaw,
    pub notes: String,
}

fn parse<T: DeserializeOwned>(params: &serde_json::Value) -> Result<T> {
    let v = if params.is_null() { serde_json::json!({}) } else { params.clone() };
    serde_json::from_value(v).map_err(|e| Error::BadParams(e.to_string()))
}

fn check_prob(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::BadParams(format!("p = {p} must lie in (0,1)")));
    }
    Ok(())
}

/// Build a model from its kind name and a JSON object of parameters.
pub fn make_model(kind: &str, params: &serde_json::Value) -> Result<Model> {
    let gaussian = StableLaw::gaussian();
    let (kind, law, notes) = match kind {
        "iid_sum" => (
            ModelKind::IidSum(parse(params)?),
            gaussian,
            "Sₙ/√n for i.i.d. steps; bound 4.815 b₃/(σ³√n)",
        ),
        "analytic_zeros" => {
            parse::<NoParams>(params)?;
            (
                ModelKind::AnalyticZeros(NoParams {}),
                gaussian,
                "zeros of a Gaussian analytic function in a disc of hyperbolic area h; bound 166/√h",
            )
        }
        "winding" => {
            parse::<NoParams>(params)?;
            (
                ModelKind::Winding(NoParams {}),
                StableLaw::cauchy(),
                "2φₜ/log 8t for planar Brownian winding; bound 4/log 8t",
            )
        }
        "compound_poisson" => {
            let p: StableParams = parse(params)?;
            let law = StableLaw::new(p.c, p.alpha, p.beta)?;
            (ModelKind::CompoundPoisson(p), law, "Poisson(n)-fold sum of stable(c/n^{1/α}) jumps; rate-only")
        }
        "ou_process" => {
            let p: OuParams = parse(params)?;
            let law = StableLaw::new(p.c, p.alpha, p.beta)?;
            if !(p.v > 0.0) {
                return Err(Error::BadParams("v must be positive".into()));
            }
            (ModelKind::OuProcess(p), law, "stable Ornstein-Uhlenbeck process at time t; rate-only")
        }
        "cue_logdet" => {
            parse::<NoParams>(params)?;
            (
                ModelKind::CueLogdet(NoParams {}),
                gaussian,
                "Re log det(I − U) for Haar unitary U, standardized; bound 18/(log n)^{3/2}",
            )
        }
        "correlated_walk" => {
            let p: WalkParams = parse(params)?;
            check_prob(p.p)?;
            if p.d == 0 {
                return Err(Error::BadParams("D must be at least 1".into()));
            }
            (ModelKind::CorrelatedWalk(p), gaussian, "windowed products on Z/NZ; bound from the dependency graph")
        }
        "er_subgraph" => {
            let p: ErParams = parse(params)?;
            check_prob(p.p)?;
            (ModelKind::ErSubgraph(p), gaussian, "triangle injections in G(n,p); bound 234/(p⁹(1/p−1)^{3/2} n)")
        }
        "ising" => {
            let p: IsingParams = parse(params)?;
            if p.d == 0 || p.chains == 0 || p.thin == 0 || !(p.beta >= 0.0) {
                return Err(Error::BadParams("ising needs d ≥ 1, beta ≥ 0, thin ≥ 1, chains ≥ 1".into()));
            }
            (ModelKind::Ising(p), gaussian, "magnetization of a box under Glauber dynamics; constant non-explicit")
        }
        other => return Err(Error::BadParams(format!("unknown model kind '{other}'"))),
    };
    Ok(Model { name: kind_name(&kind).to_string(), kind, law, notes: notes.to_string() })
}

fn kind_name(kind: &ModelKind) -> &'static str {
    match kind {
        ModelKind::IidSum(_) => "iid_sum",
        ModelKind::AnalyticZeros(_) => "analytic_zeros",
        ModelKind::Winding(_) => "winding",
        ModelKind::CompoundPoisson(_) => "compound_poisson",
        ModelKind::OuProcess(_) => "ou_process",
        ModelKind::CueLogdet(_) => "cue_logdet",
        ModelKind::CorrelatedWalk(_) => "correlated_walk",
        ModelKind::ErSubgraph(_) => "er_subgraph",
        ModelKind::Ising(_) => "ising",
    }
}

/// e^z − 1 without cancellation for small |z|.
pub fn exp_m1(z: Complex64) -> Complex64 {
    let (a, b) = (z.re, z.im);
    let s = (b / 2.0).sin();
    Complex64::new(a.exp_m1() * b.cos() - 2.0 * s * s, a.exp() * b.sin())
}

/// r² = h/(h+4π) for the disc of hyperbolic area h.
pub fn zeros_radius2(h: f64) -> f64 {
    h / (h + 4.0 * PI)
}

/// Var(Z_h)/h^{2/3} = h^{1/3}(h+4π)/(4π(2h+4π)).
pub fn zeros_time(h: f64) -> f64 {
    h.cbrt() * (h + 4.0 * PI) / (4.0 * PI * (2.0 * h + 4.0 * PI))
}

/// Bernoulli parameters r^{2k}, truncated once below 1e−16.
pub fn zeros_probabilities(h: f64) -> Vec<f64> {
    let r2 = zeros_radius2(h);
    let mut out = Vec::new();
    let mut q = r2;
    while q >= 1e-16 {
        out.push(q);
        q *= r2;
    }
    out
}

/// ½ Σ_{k=1}^n ψ₁(k), the variance of Re log det(I − U).
pub fn cue_time(n: usize) -> f64 {
    0.5 * (1..=n).map(|k| trigamma(k as f64)).sum::<f64>()
}

/// E[Re log det(I − U) e^{...}] = ∏_{k=1}^n Γ(k)Γ(k+iξ)/Γ(k+iξ/2)².
pub fn cue_cf(n: usize, xi: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let kk = k as f64;
        acc += ln_gamma_c(Complex64::new(kk, 0.0)) + ln_gamma_c(Complex64::new(kk, xi))
            - 2.0 * ln_gamma_c(Complex64::new(kk, xi / 2.0));
    }
    acc.exp()
}

/// E[e^{iξφₜ}] for the winding angle of planar Brownian motion started at distance 1:
/// √(π/8t) e^{−1/4t} (I_{(|ξ|−1)/2}(1/4t) + I_{(|ξ|+1)/2}(1/4t)), summed termwise.
pub fn winding_angle_cf(t: f64, xi: f64) -> f64 {
    let a = xi.abs();
    let z2 = 1.0 / (8.0 * t);
    let lz = z2.ln();
    let mut sum = 0.0;
    for k in 0..200 {
        let kf = k as f64;
        let base = 2.0 * kf * lz - ln_gamma(kf + 1.0);
        let term = (base - ln_gamma(kf + (a + 1.0) / 2.0)).exp() + (base + lz - ln_gamma(kf + (a + 3.0) / 2.0)).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    PI.sqrt() * (-1.0 / (4.0 * t)).exp() * (a / 2.0 * lz).exp() * sum
}

/// 4Np((1+q−2p)/(1−q) − (2D−1)p), q = p^{1/D}.
pub fn correlated_walk_variance(n: usize, d: usize, p: f64) -> f64 {
    let q = p.powf(1.0 / d as f64);
    4.0 * n as f64 * p * ((1.0 + q - 2.0 * p) / (1.0 - q) - (2.0 * d as f64 - 1.0) * p)
}

fn falling(n: f64, k: usize) -> f64 {
    (0..k).map(|i| n - i as f64).product()
}

/// (E[Tₙ], Var Tₙ) for triangle injections in G(n,p).
pub fn triangle_moments(n: usize, p: f64) -> (f64, f64) {
    let nf = n as f64;
    let mean = falling(nf, 3) * p.powi(3);
    let var = 18.0 * falling(nf, 4) * p.powi(5) * (1.0 - p) + 6.0 * falling(nf, 3) * p.powi(3) * (1.0 - p.powi(3));
    (mean, var)
}

/// tₙ with tₙ log tₙ = s, by Newton's method from above.
pub fn solve_t_log_t(s: f64) -> f64 {
    let mut t = s.max(E);
    for _ in 0..200 {
        let next = t - (t * t.ln() - s) / (t.ln() + 1.0);
        if (next - t).abs() <= 1e-15 * t {
            return next;
        }
        t = next;
    }
    t
}

fn count_triangles(n: usize, p: f64, rng: &mut Rng) -> u64 {
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                adj[i * words + j / 64] |= 1 << (j % 64);
                adj[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut count = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if adj[i * words + j / 64] >> (j % 64) & 1 == 0 {
                continue;
            }
            // common neighbours above j
            for w in j / 64..words {
                let mut m = adj[i * words + w] & adj[j * words + w];
                if w == j / 64 {
                    m &= if j % 64 == 63 { 0 } else { !0u64 << (j % 64 + 1) };
                }
                count += m.count_ones() as u64;
            }
        }
    }
    count
}

fn walk_sum(n: usize, d: usize, q: f64, rng: &mut Rng) -> f64 {
    let u: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < q).collect();
    // window sum over u[i+1..=i+D] cyclically
    let mut ones = (1..=d).filter(|&k| u[k % n]).count();
    let mut s = 0i64;
    for i in 0..n {
        s += if ones == d { 1 } else { -1 };
        ones -= u[(i + 1) % n] as usize;
        ones += u[(i + d + 1) % n] as usize;
    }
    s as f64
}

struct IsingBox {
    neighbours: Vec<Vec<usize>>,
}

impl IsingBox {
    fn new(side: usize, d: usize) -> Self {
        let sites = side.pow(d as u32);
        let neighbours = (0..sites)
            .map(|s| {
                let mut out = Vec::with_capacity(2 * d);
                let mut stride = 1;
                for _ in 0..d {
                    let coord = (s / stride) % side;
                    if coord > 0 {
                        out.push(s - stride);
                    }
                    if coord + 1 < side {
                        out.push(s + stride);
                    }
                    stride *= side;
                }
                out
            })
            .collect();
        IsingBox { neighbours }
    }

    fn sweep(&self, spins: &mut [i8], beta: f64, h: f64, rng: &mut Rng) {
        for s in 0..spins.len() {
            let field: i32 = self.neighbours[s].iter().map(|&t| spins[t] as i32).sum();
            let local = field as f64 + h;
            let up = 1.0 / (1.0 + (-2.0 * beta * local).exp());
            spins[s] = if rng.random::<f64>() < up { 1 } else { -1 };
        }
    }
}

/// Magnetization draws from `chains` independent heat-bath chains with free boundary.
pub fn ising_magnetizations(side: usize, p: &IsingParams, count: usize, seed: u64) -> Vec<f64> {
    use rayon::prelude::*;
    let bx = IsingBox::new(side, p.d);
    let sites = bx.neighbours.len();
    let per = count.div_ceil(p.chains);
    let parts: Vec<Vec<f64>> = (0..p.chains)
        .into_par_iter()
        .map(|ci| {
            let want = per.min(count.saturating_sub(ci * per));
            if want == 0 {
                return Vec::new();
            }
            let mut rng = stream(seed, ci as u64);
            let mut spins: Vec<i8> = (0..sites).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
            for _ in 0..p.burn_in {
                bx.sweep(&mut spins, p.beta, p.h, &mut rng);
            }
            let mut out = Vec::with_capacity(want);
            for _ in 0..want {
                for _ in 0..p.thin {
                    bx.sweep(&mut spins, p.beta, p.h, &mut rng);
                }
                out.push(spins.iter().map(|&s| s as f64).sum());
            }
            out
        })
        .collect();
    parts.into_iter().flatten().collect()
}

fn standardize(xs: &mut [f64]) {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let sd = var.sqrt();
    for x in xs.iter_mut() {
        *x = if sd > 0.0 { (*x - mean) / sd } else { 0.0 };
    }
}

fn compound_poisson_zone(law: &StableLaw) -> ZoneOfControl {
    let (c, a, b) = (law.c, law.alpha, law.beta);
    let (k, k12, gamma) = if a != 1.0 {
        let cos = (PI * a / 2.0).cos();
        (cos.abs().powf(2.0 / a) / c, 0.5 * (c.powf(a) / cos).powi(2), (1.0 / a).min((2.0 * a - 1.0) / a))
    } else if b == 0.0 {
        (1.0 / c, c * c / 2.0, 1.0)
    } else {
        (1.0 / (2.0 * c), c * c, 1.0)
    };
    ZoneOfControl { law: *law, gamma, k, v: 2.0 * a, w: 2.0 * a, k1: k12, k2: k12 }
}

impl Model {
    /// True when the renormalized variable has atoms dense enough that CF inversion
    /// is not used to measure its distance.
    pub fn is_lattice(&self) -> bool {
        matches!(
            self.kind,
            ModelKind::IidSum(IidParams { steps: Steps::Rademacher })
                | ModelKind::AnalyticZeros(_)
                | ModelKind::CorrelatedWalk(_)
                | ModelKind::ErSubgraph(_)
                | ModelKind::Ising(_)
        )
    }

    pub fn has_cf(&self) -> bool {
        !matches!(self.kind, ModelKind::CorrelatedWalk(_) | ModelKind::ErSubgraph(_) | ModelKind::Ising(_))
    }

    pub fn has_sampler(&self) -> bool {
        !matches!(self.kind, ModelKind::Winding(_) | ModelKind::OuProcess(_) | ModelKind::CueLogdet(_))
    }

    /// The parameter tₙ of the mod-stable convergence at this size.
    pub fn t_of(&self, size: f64) -> f64 {
        match self.kind {
            ModelKind::IidSum(_) => size.cbrt(),
            ModelKind::AnalyticZeros(_) => zeros_time(size),
            ModelKind::Winding(_) => (8.0 * size).ln() / 2.0,
            ModelKind::CompoundPoisson(p) => {
                if p.alpha == 1.0 && p.beta != 0.0 {
                    solve_t_log_t(size.sqrt())
                } else {
                    size.sqrt()
                }
            }
            ModelKind::OuProcess(_) => size,
            ModelKind::CueLogdet(_) => cue_time(size.round() as usize),
            ModelKind::CorrelatedWalk(_) | ModelKind::ErSubgraph(_) | ModelKind::Ising(_) => size,
        }
    }

    /// Declared zone of control, when the model comes with one.
    pub fn zone(&self) -> Option<ZoneOfControl> {
        let g = StableLaw::gaussian();
        match self.kind {
            ModelKind::IidSum(p) => {
                let (sigma, b3) = step_moments(p.steps);
                let s3 = sigma.powi(3);
                let law = StableLaw { c: sigma / 2f64.sqrt(), ..g };
                Some(ZoneOfControl {
                    law,
                    gamma: 1.0,
                    k: 1.5 / E.sqrt() * s3 / b3,
                    v: 3.0,
                    w: 3.0,
                    k1: 7.0 * E.sqrt() * b3 / (24.0 * s3),
                    k2: E.sqrt() * b3 / (6.0 * s3),
                })
            }
            ModelKind::AnalyticZeros(_) => Some(ZoneOfControl {
                law: g,
                gamma: 1.0,
                k: PI,
                v: 3.0,
                w: 3.0,
                k1: 1.0 / (4.0 * PI),
                k2: 1.0 / (4.0 * PI),
            }),
            ModelKind::Winding(_) => Some(ZoneOfControl {
                law: StableLaw::cauchy(),
                gamma: 0.0,
                k: 1e9,
                v: 1.0,
                w: 1.0,
                k1: 1.0,
                k2: 0.0,
            }),
            ModelKind::CompoundPoisson(_) => Some(compound_poisson_zone(&self.law)),
            // Σₖ ζ(3)/(2k²) = ζ(3)π²/12
            ModelKind::CueLogdet(_) => Some(ZoneOfControl {
                law: g,
                gamma: 1.0,
                k: 3.0 / (PI * PI * ZETA3),
                v: 3.0,
                w: 3.0,
                k1: ZETA3 * PI * PI / 12.0,
                k2: ZETA3 * PI * PI / 12.0,
            }),
            _ => None,
        }
    }

    /// Closed-form Kolmogorov bound at this size; `None` when the constant is not explicit.
    pub fn bound_of(&self, size: f64) -> Option<f64> {
        match self.kind {
            ModelKind::IidSum(p) => {
                let (sigma, b3) = step_moments(p.steps);
                Some(4.815 * b3 / (sigma.powi(3) * size.sqrt()))
            }
            ModelKind::AnalyticZeros(_) => Some(166.0 / size.sqrt()),
            ModelKind::Winding(_) => Some(4.0 / (8.0 * size).ln()),
            ModelKind::CompoundPoisson(_) => {
                self.zone().and_then(|z| z.kolmogorov_bound(self.t_of(size)).ok()).map(|r| r.bound)
            }
            ModelKind::OuProcess(_) | ModelKind::Ising(_) => None,
            ModelKind::CueLogdet(_) => Some(18.0 / size.ln().powf(1.5)),
            ModelKind::CorrelatedWalk(p) => {
                let pp = p.p;
                let core = pp * ((1.0 - pp) / (-pp.ln()) - pp);
                Some(6.0 / core.powf(1.5) * (p.d as f64 / size).sqrt())
            }
            ModelKind::ErSubgraph(p) => {
                let pp = p.p;
                Some(234.0 / (pp.powi(9) * (1.0 / pp - 1.0).powf(1.5)) / size)
            }
        }
    }

    /// Rate of convergence without the constant, for slope checks.
    pub fn rate_of(&self, size: f64) -> f64 {
        match self.kind {
            ModelKind::CompoundPoisson(p) => {
                if p.alpha > 1.0 {
                    size.powf(-1.0 / p.alpha)
                } else if p.alpha < 1.0 || p.beta == 0.0 {
                    1.0 / size
                } else {
                    size.ln().powi(2) / size
                }
            }
            ModelKind::OuProcess(p) => {
                let e = (-p.v * size).exp();
                if p.alpha == 1.0 && p.beta != 0.0 {
                    p.v * size * e
                } else if p.alpha > 1.0 && p.x != 0.0 {
                    e
                } else {
                    e.powf(p.alpha)
                }
            }
            ModelKind::Ising(p) => 1.0 / size.powf(p.d as f64 / 2.0),
            _ => self.bound_of(size).unwrap_or(f64::NAN),
        }
    }

    /// Exact characteristic function of the renormalized variable Yₙ.
    pub fn cf_of(&self, size: f64, xi: f64) -> Result<Complex64> {
        let i = Complex64::i();
        match self.kind {
            ModelKind::IidSum(p) => {
                let s = xi / size.sqrt();
                let single = match p.steps {
                    Steps::Rademacher => s.cos(),
                    Steps::Uniform => {
                        let a = 3f64.sqrt() * s;
                        if a == 0.0 { 1.0 } else { a.sin() / a }
                    }
                };
                Ok(Complex64::new(single.powi(size.round() as i32), 0.0))
            }
            ModelKind::AnalyticZeros(_) => {
                let sd = (zeros_time(size)).sqrt() * size.cbrt();
                let s = xi / sd;
                let mean = size / (4.0 * PI);
                let mut acc = Complex64::new(0.0, -s * mean);
                let e = (i * s).exp();
                for q in zeros_probabilities(size) {
                    acc += (1.0 + q * (e - 1.0)).ln();
                }
                Ok(acc.exp())
            }
            ModelKind::Winding(_) => {
                let scaled = xi / self.t_of(size);
                Ok(Complex64::new(winding_angle_cf(size, scaled), 0.0))
            }
            ModelKind::CompoundPoisson(_) => {
                let eta = self.law.levy_exponent(xi);
                Ok((size * exp_m1(eta / size)).exp())
            }
            ModelKind::OuProcess(p) => {
                let e = (-p.v * size).exp();
                let z = self.law.levy_exponent(xi) - self.law.levy_exponent(xi * e) + i * xi * e * p.x;
                Ok(z.exp())
            }
            ModelKind::CueLogdet(_) => {
                let n = size.round() as usize;
                Ok(cue_cf(n, xi / cue_time(n).sqrt()))
            }
            _ => Err(Error::Unsupported(format!("{} has no closed-form characteristic function", self.name))),
        }
    }

    /// Residue θₙ(ξ) = E[e^{iξXₙ}] e^{−tₙη(iξ)}, rebuilt from [`cf_of`](Self::cf_of).
    pub fn residue(&self, size: f64, xi: f64) -> Result<Complex64> {
        let z = self.zone().ok_or_else(|| Error::Unsupported(format!("{} declares no zone", self.name)))?;
        let law = z.law;
        let t = self.t_of(size);
        let a = law.alpha;
        let cf_x = if a == 1.0 {
            let shift = 2.0 * law.c * law.beta / PI * t.ln() * t;
            self.cf_of(size, xi * t)? * (Complex64::i() * xi * shift).exp()
        } else {
            self.cf_of(size, xi * t.powf(1.0 / a))?
        };
        Ok(cf_x * (-t * law.levy_exponent(xi)).exp())
    }

    /// Raw statistic before renormalization (Sₙ, Z_h, S, Tₙ or M_Δ).
    pub fn sample_raw(&self, size: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
        match self.kind {
            ModelKind::IidSum(p) => {
                let n = size.round() as u64;
                match p.steps {
                    Steps::Rademacher => {
                        let bin = Binomial::new(n, 0.5).map_err(|e| Error::BadParams(e.to_string()))?;
                        Ok(par_generate(seed, count, |rng| 2.0 * bin.sample(rng) as f64 - n as f64))
                    }
                    Steps::Uniform => {
                        let a = 3f64.sqrt();
                        Ok(par_generate(seed, count, |rng| (0..n).map(|_| rng.random_range(-a..a)).sum()))
                    }
                }
            }
            ModelKind::AnalyticZeros(_) => {
                let qs = zeros_probabilities(size);
                Ok(par_generate(seed, count, |rng| qs.iter().filter(|&&q| rng.random::<f64>() < q).count() as f64))
            }
            ModelKind::CompoundPoisson(p) => {
                let pois = Poisson::new(size).map_err(|e| Error::BadParams(e.to_string()))?;
                let law = self.law;
                Ok(par_generate(seed, count, |rng| {
                    let jumps: f64 = pois.sample(rng);
                    if jumps == 0.0 {
                        0.0
                    } else {
                        StableLaw { c: law.c * (jumps / size).powf(1.0 / p.alpha), ..law }.draw(rng)
                    }
                }))
            }
            ModelKind::CorrelatedWalk(p) => {
                let n = size.round() as usize;
                if n < p.d + 1 {
                    return Err(Error::BadParams("N must exceed D".into()));
                }
                let q = p.p.powf(1.0 / p.d as f64);
                Ok(par_generate(seed, count, |rng| walk_sum(n, p.d, q, rng)))
            }
            ModelKind::ErSubgraph(p) => {
                let n = size.round() as usize;
                Ok(par_generate(seed, count, |rng| 6.0 * count_triangles(n, p.p, rng) as f64))
            }
            ModelKind::Ising(p) => Ok(ising_magnetizations(size.round() as usize, &p, count, seed)),
            _ => Err(Error::Unsupported(format!("{} has no sampler", self.name))),
        }
    }

    /// Draws of the renormalized variable Yₙ. The Ising magnetization is standardized
    /// with its sample mean and deviation; every other model uses exact moments.
    pub fn sample(&self, size: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
        let mut xs = self.sample_raw(size, count, seed)?;
        let (shift, scale) = match self.kind {
            ModelKind::IidSum(_) => (0.0, size.sqrt()),
            ModelKind::AnalyticZeros(_) => (size / (4.0 * PI), zeros_time(size).sqrt() * size.cbrt()),
            ModelKind::CompoundPoisson(_) => (0.0, 1.0),
            ModelKind::CorrelatedWalk(p) => {
                let n = size.round() as usize;
                (n as f64 * (2.0 * p.p - 1.0), correlated_walk_variance(n, p.d, p.p).sqrt())
            }
            ModelKind::ErSubgraph(p) => {
                let (m, v) = triangle_moments(size.round() as usize, p.p);
                (m, v.sqrt())
            }
            ModelKind::Ising(_) => {
                standardize(&mut xs);
                (0.0, 1.0)
            }
            _ => unreachable!("sample_raw rejects models without a sampler"),
        };
        for x in xs.iter_mut() {
            *x = (*x - shift) / scale;
        }
        Ok(xs)
    }
}

/// (σ, E|X|³) of the step law.
pub fn step_moments(steps: Steps) -> (f64, f64) {
    match steps {
        Steps::Rademacher => (1.0, 1.0),
        Steps::Uniform => (1.0, 3f64.sqrt() * 3.0 / 4.0),
    }
}
