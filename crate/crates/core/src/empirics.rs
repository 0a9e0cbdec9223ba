//! Kolmogorov distances: empirical (with a DKW band) and numerical from a
//! characteristic function, plus the verification harness and its reports.

use crate::error::{Error, Result};
use crate::model_zoo::Model;
use crate::quad;
use crate::rng::derive_seed;
use crate::stable_laws::{cdf_integral, StableLaw};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// Confidence level of the DKW band.
pub const DKW_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DkolMethod {
    Empirical,
    CfInversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DkolEstimate {
    pub value: f64,
    pub method: DkolMethod,
    pub uncertainty: f64,
    /// Sample count or number of grid points.
    pub size: usize,
    /// Where the supremum was found.
    pub location: f64,
}

/// √(ln(2/δ)/(2m)).
pub fn dkw_radius(m: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * m as f64)).sqrt()
}

/// sup_s |F̂(s) − F(s)| over the sorted sample, with the DKW radius at δ = 1e−3.
pub fn empirical_dkol<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<DkolEstimate> {
    let m = samples.len();
    if m < 100 {
        return Err(Error::BadParams(format!("need at least 100 samples, got {m}")));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let mf = m as f64;
    let (mut value, mut location) = (0.0, xs[0]);
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let d = ((i + 1) as f64 / mf - f).abs().max((i as f64 / mf - f).abs());
        if d > value {
            value = d;
            location = x;
        }
    }
    Ok(DkolEstimate { value, method: DkolMethod::Empirical, uncertainty: dkw_radius(m, DKW_DELTA), size: m, location })
}

/// Grid and accuracy settings for [`cf_dkol`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub initial_points: usize,
    pub max_points: usize,
    /// Tail probability of the reference law left outside the grid.
    pub tail_prob: f64,
    /// Cap on the number of oscillation panels per evaluation; limits |x| for heavy tails.
    pub max_panels: usize,
    /// Fixed frequency cutoff; chosen from the decay of the characteristic functions when absent.
    pub xi_max: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { initial_points: 200, max_points: 2000, tail_prob: 1e-9, max_panels: 4000, xi_max: None }
    }
}

/// Lower/upper quantile estimate used to place the grid.
fn grid_range(law: &StableLaw, q: f64) -> (f64, f64) {
    if law.alpha == 2.0 || (law.alpha == 1.0 && law.beta == 0.0) {
        return (law.quantile(q, 1e-10).unwrap(), law.quantile(1.0 - q, 1e-10).unwrap());
    }
    // P(X > x) ≈ (1+β) Γ(α) sin(πα/2)/π (c/x)^α
    let a = law.alpha;
    let k = statrs::function::gamma::gamma(a) * (PI * a / 2.0).sin() / PI;
    let hi = law.c * ((1.0 + law.beta) * k / q).powf(1.0 / a);
    let lo = law.c * ((1.0 - law.beta) * k / q).powf(1.0 / a);
    (-lo.max(law.c), hi.max(law.c))
}

fn sup_on<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    (0..=n).into_par_iter().map(|i| f(a + (b - a) * i as f64 / n as f64)).reduce(|| 0.0, f64::max)
}

struct Pt {
    x: f64,
    d: f64,
    err: f64,
    f2: f64,
}

/// d_Kol between the law with characteristic function `cf1` and a stable law, by
/// inverting cf1 − φ directly on an adaptive grid.
///
/// The uncertainty combines quadrature error, a Lipschitz envelope between grid
/// points (|D′| ≤ (1/π)∫|cf1 − φ|), the mass outside the grid and the size of
/// cf1 − φ beyond the cutoff.
pub fn cf_dkol<F>(cf1: F, law: &StableLaw, grid: &GridSpec, tol: f64) -> Result<DkolEstimate>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let diff = |xi: f64| cf1(xi) - law.char_fn(xi);
    let abs_diff = |xi: f64| diff(xi).norm();

    // frequency cutoff: extend while cf1 − φ keeps decaying above tol/10
    let xi_max = match grid.xi_max {
        Some(v) => v,
        None => {
            let base = law.truncation(tol);
            let mut xi = base;
            let mut prev = sup_on(&abs_diff, xi, 4.0 * xi, 64);
            while prev > tol / 10.0 && xi < 64.0 * base {
                let next = sup_on(&abs_diff, 2.0 * xi, 8.0 * xi, 64);
                if next > 0.5 * prev {
                    break;
                }
                xi *= 2.0;
                prev = next;
            }
            xi
        }
    };
    let beyond = sup_on(&abs_diff, xi_max, 4.0 * xi_max, 256);

    // |f₁ − f₂| ≤ (1/π)∫₀^Ξ |cf1 − φ|
    let lip = {
        let q = quad::integrate_limit(&mut |xi: f64| abs_diff(xi), 0.0, xi_max, 1e-9, 4000)?;
        (q.value + q.error) / PI
    };

    let x_cap = grid.max_panels as f64 * PI / xi_max;
    let (lo, hi) = grid_range(law, grid.tail_prob);
    let (lo, hi) = (lo.max(-x_cap), hi.min(x_cap));

    // (D(x), quadrature error, F₂(x))
    let eval = |x: f64| -> Result<Pt> {
        let q = cdf_integral(&diff, x, xi_max, 0.5 * tol * PI)?;
        Ok(Pt { x, d: -q.value / PI, err: q.error / PI, f2: law.cdf_any(x, tol)? })
    };
    // sup |D| between neighbours, from the Lipschitz bound and from monotonicity of F₁, F₂
    let envelope = |a: &Pt, b: &Pt| -> f64 {
        let dens = 0.5 * (a.d.abs() + b.d.abs() + lip * (b.x - a.x));
        let mono = (b.f2 - a.f2) + b.d.max(-a.d);
        dens.min(mono)
    };

    let scale = law.c;
    let (ua, ub) = ((lo / scale).asinh(), (hi / scale).asinh());
    let n0 = grid.initial_points.max(2);
    let xs: Vec<f64> = (0..n0).map(|i| scale * (ua + (ub - ua) * i as f64 / (n0 - 1) as f64).sinh()).collect();
    let mut pts: Vec<Pt> = xs.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?;

    loop {
        let value = pts.iter().map(|p| p.d.abs()).fold(0.0, f64::max);
        let target = value + (1e-3 * value).max(10.0 * tol);
        let mut wide: Vec<(f64, f64)> = pts
            .windows(2)
            .map(|w| (envelope(&w[0], &w[1]), 0.5 * (w[0].x + w[1].x)))
            .filter(|(env, _)| *env > target)
            .collect();
        let room = grid.max_points.saturating_sub(pts.len());
        if wide.is_empty() || room == 0 {
            break;
        }
        wide.sort_by(|a, b| b.0.total_cmp(&a.0));
        wide.truncate(room);
        let new: Vec<Pt> = wide.par_iter().map(|&(_, x)| eval(x)).collect::<Result<_>>()?;
        pts.extend(new);
        pts.sort_by(|a, b| a.x.total_cmp(&b.x));
    }

    let best = pts.iter().max_by(|a, b| a.d.abs().total_cmp(&b.d.abs())).unwrap();
    let (value, location) = (best.d.abs(), best.x);
    let quad_err = pts.iter().map(|p| p.err).fold(0.0, f64::max);
    let mut upper = value;
    for w in pts.windows(2) {
        upper = upper.max(envelope(&w[0], &w[1]));
    }
    // outside the grid |F₁ − F₂| ≤ max(F₁, F₂) on the left and the same for 1 − F on the right
    let (first, last) = (&pts[0], &pts[pts.len() - 1]);
    let left = first.f2.max(first.f2 + first.d);
    let right = (1.0 - last.f2).max(1.0 - last.f2 - last.d);
    upper = upper.max(left).max(right);
    let uncertainty = (upper - value) + quad_err + beyond;
    let xs_len = pts.len();
    Ok(DkolEstimate {
        value: value.min(1.0),
        method: DkolMethod::CfInversion,
        uncertainty,
        size: xs_len,
        location,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub model: String,
    pub size: f64,
    pub t_n: f64,
    /// `None` when the model only has a rate.
    pub bound: Option<f64>,
    pub dkol: DkolEstimate,
    pub pass: bool,
}

impl VerificationRow {
    pub fn new(model: &str, size: f64, t_n: f64, bound: Option<f64>, dkol: DkolEstimate) -> Self {
        let pass = bound.is_none_or(|b| dkol.value - dkol.uncertainty <= b);
        VerificationRow { model: model.to_string(), size, t_n, bound, dkol, pass }
    }
}

/// Tolerance used by the harness for CF inversion.
pub const HARNESS_TOL: f64 = 1e-10;

/// Measure d_Kol at every size: CF inversion when the model has a non-lattice
/// characteristic function, otherwise `budget` samples against the target law.
pub fn verify_model(m: &Model, sizes: &[f64], seed: u64, budget: usize) -> Result<Vec<VerificationRow>> {
    if sizes.is_empty() {
        return Err(Error::BadParams("no sizes given".into()));
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut rows = Vec::with_capacity(sorted.len());
    for (i, &size) in sorted.iter().enumerate() {
        let dkol = if m.has_cf() && !m.is_lattice() {
            cf_dkol(|xi| m.cf_of(size, xi).unwrap(), &m.law, &GridSpec::default(), HARNESS_TOL)?
        } else {
            let xs = m.sample(size, budget, derive_seed(seed, i as u64))?;
            let law = m.law;
            empirical_dkol(&xs, |x| law.cdf_any(x, 1e-10).unwrap_or(f64::NAN))?
        };
        rows.push(VerificationRow::new(&m.name, size, m.t_of(size), m.bound_of(size), dkol));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::BadParams(format!("unknown format '{other}'"))),
        }
    }
}

/// Flat record written to reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub model: String,
    pub size: f64,
    pub t_n: f64,
    pub bound: Option<f64>,
    pub dkol: f64,
    pub uncertainty: f64,
    pub pass: bool,
}

impl From<&VerificationRow> for ReportRecord {
    fn from(r: &VerificationRow) -> Self {
        ReportRecord {
            model: r.model.clone(),
            size: r.size,
            t_n: r.t_n,
            bound: r.bound,
            dkol: r.dkol.value,
            uncertainty: r.dkol.uncertainty,
            pass: r.pass,
        }
    }
}

pub const CSV_HEADER: &str = "model,size,t_n,bound,dkol,uncertainty,pass";

/// Render rows as CSV or JSON, and write them to `path` when given.
pub fn emit_report(rows: &[VerificationRow], format: ReportFormat, path: Option<&Path>) -> Result<String> {
    let records: Vec<ReportRecord> = rows.iter().map(ReportRecord::from).collect();
    let text = match format {
        ReportFormat::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in &records {
                let bound = r.bound.map(|b| b.to_string()).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.model, r.size, r.t_n, bound, r.dkol, r.uncertainty, r.pass
                ));
            }
            s
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&records).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    if let Some(p) = path {
        std::fs::write(p, &text)?;
    }
    Ok(text)
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Smallest size whose row passes, with every larger size passing too.
pub fn smallest_passing_size(rows: &[VerificationRow]) -> Option<f64> {
    let mut out = None;
    for r in rows.iter().rev() {
        if !r.pass {
            break;
        }
        out = Some(r.size);
    }
    out
}
