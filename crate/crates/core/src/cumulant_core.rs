//! Joint and Boolean cumulants, the bridge between them, uniform cumulant bounds
//! and the Kolmogorov bounds they imply for a Gaussian target.

use crate::error::{Error, Result};
use crate::quad::golden_min;
use crate::stable_laws::StableLaw;
use crate::zone_control::ZoneOfControl;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const MAX_CLASSICAL_ARITY: usize = 9;
pub const MAX_BOOLEAN_ARITY: usize = 12;

/// Arithmetic needed by the cumulant formulas; implemented for `f64` and exact rationals.
pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;
    /// Magnitude used for pivot selection.
    fn magnitude(&self) -> f64;
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn magnitude(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

/// Solve A x = b by Gaussian elimination with partial pivoting; `None` if singular.
pub fn solve<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].magnitude().total_cmp(&a[j][col].magnitude()))?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / a[col][col].clone();
            for c in col..n {
                let t = f.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - t;
            }
            let t = f * b[col].clone();
            b[r] = b[r].clone() - t;
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for j in i + 1..n {
            s = s - a[i][j].clone() * x[j].clone();
        }
        x[i] = s / a[i][i].clone();
    }
    Some(x)
}

/// Exact or floating joint moments E[∏ A_i] of a family indexed by `usize`.
pub trait MomentOracle<T> {
    fn moment(&self, vars: &[usize]) -> T;
}

impl<T, F: Fn(&[usize]) -> T> MomentOracle<T> for F {
    fn moment(&self, vars: &[usize]) -> T {
        self(vars)
    }
}

/// All set partitions of {0..r-1}, via restricted growth strings. Blocks are sorted.
pub fn set_partitions(r: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut a = vec![0usize; r];
    let mut b = vec![1usize; r]; // b[i] = 1 + max(a[0..i])
    loop {
        let blocks = 1 + *a.iter().max().unwrap();
        let mut p = vec![Vec::new(); blocks];
        for (i, &ai) in a.iter().enumerate() {
            p[ai].push(i);
        }
        out.push(p);
        // next restricted growth string
        let mut i = r - 1;
        loop {
            if i == 0 {
                return out;
            }
            if a[i] < b[i] {
                a[i] += 1;
                for j in i + 1..r {
                    a[j] = 0;
                    b[j] = b[i].max(a[i] + 1);
                }
                break;
            }
            i -= 1;
        }
    }
}

/// The 2^{r−1} decompositions of (0..r) into consecutive intervals.
pub fn interval_partitions(r: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    for mask in 0u32..(1u32 << (r - 1)) {
        let mut p = Vec::new();
        let mut cur = vec![0];
        for i in 1..r {
            if mask & (1 << (i - 1)) != 0 {
                p.push(std::mem::take(&mut cur));
            }
            cur.push(i);
        }
        p.push(cur);
        out.push(p);
    }
    out
}

fn block_moment<T, M: MomentOracle<T>>(m: &M, vars: &[usize], block: &[usize]) -> T {
    let sub: Vec<usize> = block.iter().map(|&i| vars[i]).collect();
    m.moment(&sub)
}

/// κ(A_{v₁}, …, A_{v_r}) = Σ_π (|π|−1)! (−1)^{|π|−1} ∏_{B∈π} E[∏_{i∈B} A_{v_i}].
pub fn joint_cumulant<T: Scalar, M: MomentOracle<T>>(m: &M, vars: &[usize]) -> Result<T> {
    let r = vars.len();
    if r > MAX_CLASSICAL_ARITY {
        return Err(Error::ArityTooLarge { got: r, max: MAX_CLASSICAL_ARITY });
    }
    if r == 0 {
        return Ok(T::zero());
    }
    let mut fact = vec![1i64; r + 1];
    for i in 1..=r {
        fact[i] = fact[i - 1] * i as i64;
    }
    let mut acc = T::zero();
    for p in set_partitions(r) {
        let k = p.len();
        let mut term = T::from_int(fact[k - 1]);
        for b in &p {
            term = term * block_moment(m, vars, b);
        }
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Boolean cumulant: Σ over interval decompositions I of (−1)^{|I|−1} ∏ E[∏_{i∈J} Z_i].
pub fn boolean_cumulant<T: Scalar, M: MomentOracle<T>>(m: &M, ordered_vars: &[usize]) -> Result<T> {
    let r = ordered_vars.len();
    if r > MAX_BOOLEAN_ARITY {
        return Err(Error::ArityTooLarge { got: r, max: MAX_BOOLEAN_ARITY });
    }
    if r == 0 {
        return Ok(T::zero());
    }
    let mut acc = T::zero();
    for p in interval_partitions(r) {
        let mut term = T::one();
        for b in &p {
            term = term * block_moment(m, ordered_vars, b);
        }
        acc = if p.len() % 2 == 1 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// N(π) = ∏_{C∌min} n_C with n_C = #{C′ ≠ C : min C ∈ [min C′, max C′]}.
///
/// Blocks may be given in any order; elements are compared as integers.
pub fn npi(partition: &[Vec<usize>]) -> u64 {
    let spans: Vec<(usize, usize)> = partition
        .iter()
        .map(|c| (*c.iter().min().unwrap(), *c.iter().max().unwrap()))
        .collect();
    let first = spans.iter().map(|s| s.0).min().unwrap_or(0);
    let mut prod = 1u64;
    for (i, &(m, _)) in spans.iter().enumerate() {
        if m == first {
            continue;
        }
        let n = spans
            .iter()
            .enumerate()
            .filter(|&(j, &(lo, hi))| j != i && lo <= m && m <= hi)
            .count() as u64;
        prod *= n;
        if prod == 0 {
            break;
        }
    }
    prod
}

/// κ⁽ʳ⁾ = Σ_π (−1)^{|π|−1} N(π) ∏_{C∈π} B(C), with `bool_oracle` evaluating the Boolean
/// cumulant of the positions in C (given in increasing order).
pub fn boolean_to_classical<T: Scalar, B: Fn(&[usize]) -> T>(r: usize, bool_oracle: B) -> Result<T> {
    if r > MAX_CLASSICAL_ARITY {
        return Err(Error::ArityTooLarge { got: r, max: MAX_CLASSICAL_ARITY });
    }
    let mut acc = T::zero();
    for p in set_partitions(r) {
        let n = npi(&p);
        if n == 0 {
            continue;
        }
        let mut term = T::from_int(n as i64);
        for c in &p {
            term = term * bool_oracle(c);
        }
        acc = if p.len() % 2 == 1 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Cumulants κ⁽¹⁾..κ⁽ʳ⁾ of a single variable from its raw moments E[X^k], k = 1..r.
pub fn cumulants_from_moments<T: Scalar>(moments: &[T]) -> Result<Vec<T>> {
    let r = moments.len();
    let oracle = |idx: &[usize]| if idx.is_empty() { T::one() } else { moments[idx.len() - 1].clone() };
    (1..=r)
        .map(|k| {
            let vars = vec![0usize; k];
            joint_cumulant(&oracle, &vars)
        })
        .collect()
}

/// Parameters (D, N, A) of a uniform cumulant bound |κ⁽ʳ⁾(S)| ≤ N r^{r−2}(2D)^{r−1}A^r,
/// together with Var S.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CumulantBoundParams {
    pub d: f64,
    pub n: f64,
    pub a: f64,
    pub var_s: f64,
}

impl CumulantBoundParams {
    pub fn new(d: f64, n: f64, a: f64, var_s: f64) -> Result<Self> {
        if !(d > 0.0 && n > 0.0 && a > 0.0 && var_s > 0.0) {
            return Err(Error::BadParams("D, N, A and Var S must be positive".into()));
        }
        Ok(CumulantBoundParams { d, n, a, var_s })
    }

    /// σ̃² = Var S/(N D).
    pub fn sigma_tilde2(&self) -> f64 {
        self.var_s / (self.n * self.d)
    }

    pub fn cumulant_bound(&self, r: usize) -> f64 {
        let r = r as f64;
        self.n * r.powf(r - 2.0) * (2.0 * self.d).powf(r - 1.0) * self.a.powf(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub r: usize,
    pub kappa: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Per-order check of |κ⁽ʳ⁾| ≤ N r^{r−2}(2D)^{r−1}A^r for 2 ≤ r ≤ r_max. Missing orders are skipped.
pub fn check_uniform_bounds(kappas: &BTreeMap<usize, f64>, p: &CumulantBoundParams, r_max: usize) -> Vec<BoundCheck> {
    kappas
        .range(2..=r_max)
        .map(|(&r, &kappa)| {
            let bound = p.cumulant_bound(r);
            BoundCheck { r, kappa, bound, pass: kappa.abs() <= bound * (1.0 + 1e-12) }
        })
        .collect()
}

/// Output of [`zone_from_cumulants`]: Xₙ = Sₙ/scale is mod-Gaussian with parameter t_n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CumulantZone {
    pub scale: f64,
    pub t_n: f64,
    pub zone: ZoneOfControl,
}

/// Zone of control of index (3,3) for Xₙ = Sₙ/(N^{1/3}D^{2/3}), tₙ = σ̃²(N/D)^{1/3},
/// K = 1/((8+4e)A³), K₁ = K₂ = (2+e)A³.
pub fn zone_from_cumulants(p: &CumulantBoundParams) -> CumulantZone {
    let a3 = p.a.powi(3);
    let k2 = (2.0 + E) * a3;
    let zone = ZoneOfControl {
        law: StableLaw::gaussian(),
        gamma: 1.0,
        k: 1.0 / (4.0 * k2),
        v: 3.0,
        w: 3.0,
        k1: k2,
        k2,
    };
    CumulantZone {
        scale: p.n.cbrt() * p.d.powf(2.0 / 3.0),
        t_n: p.sigma_tilde2() * (p.n / p.d).cbrt(),
        zone,
    }
}

pub const GAUSSIAN_CUMULANT_CONSTANT: f64 = 76.36;
pub const GAUSSIAN_CUMULANT_CONSTANT_SMALL_VARIANCE: f64 = 52.52;
pub const GAUSSIAN_CUMULANT_CONSTANT_TRADEOFF: f64 = 27.55;
pub const TRUNCATION_CONSTANT: f64 = 78.0;
pub const TRUNCATION_CONSTANT_DELTA5: f64 = 39.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KolVariant {
    /// Only σ̃² ≤ 2A² is known.
    Standard,
    /// σ̃² ≤ A² is known a priori.
    SigmaLeA,
    /// Bound of the shape C((A/σ̃)³ + A/σ̃).
    Tradeoff,
}

/// Kolmogorov distance between Sₙ/√Var Sₙ and a standard Gaussian.
pub fn cumulant_kol_bound(p: &CumulantBoundParams, variant: KolVariant) -> Result<f64> {
    let s2 = p.sigma_tilde2();
    let ratio = p.a / s2.sqrt();
    let root = (p.d / p.n).sqrt();
    match variant {
        KolVariant::Standard => Ok(GAUSSIAN_CUMULANT_CONSTANT * ratio.powi(3) * root),
        KolVariant::SigmaLeA => {
            if s2 > p.a * p.a * (1.0 + 1e-12) {
                return Err(Error::VariantPreconditionViolated(format!(
                    "sigma_tilde^2 = {s2} exceeds A^2 = {}",
                    p.a * p.a
                )));
            }
            Ok(GAUSSIAN_CUMULANT_CONSTANT_SMALL_VARIANCE * ratio.powi(3) * root)
        }
        KolVariant::Tradeoff => Ok(GAUSSIAN_CUMULANT_CONSTANT_TRADEOFF * (ratio.powi(3) + ratio) * root),
    }
}

fn smoothing_factor(rho: f64, lambda: f64) -> f64 {
    (1.0 + lambda) / (2.0 * PI).sqrt()
        * (2.0 / (rho * (1.0 - 4.0 / rho).powf(1.5)) + (4.0 * (1.0 + 1.0 / lambda).cbrt() + 3.0 * 3f64.cbrt()) / PI.cbrt())
}

/// Sharper constant obtained by optimizing the zone radius K = 1/((2es+ρ)A³) jointly
/// with λ, where s is the a priori bound on σ̃²/A². Returns (constant, ρ, λ).
pub fn refined_gaussian_constant(variant: KolVariant) -> (f64, f64, f64) {
    let prefactor = |rho: f64| match variant {
        KolVariant::Standard => 4.0 * E + rho,
        KolVariant::SigmaLeA => 2.0 * E + rho,
        KolVariant::Tradeoff => (2.0 * E).max(rho),
    };
    let inner = |rho: f64| golden_min(|s| prefactor(rho) * smoothing_factor(rho, s.exp()), -8.0, 4.0, 1e-12);
    let (rho, c) = golden_min(|rho| inner(rho).1, 4.0 + 1e-9, 40.0, 1e-12);
    (c, rho, inner(rho).0.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationBound {
    pub value: f64,
    pub constant: f64,
    pub exponent: f64,
    pub v_n: f64,
}

/// Bound C (A²/Vₙ)^{3(δ+2)/(2(δ+5))} with Vₙ = σ̃²(N/D)^{1/3}N^{−2/(2+δ)}, C = 78 (39 at δ = 5).
pub fn truncation_bound(delta: f64, a: f64, n: f64, d: f64, var_s: f64) -> Result<TruncationBound> {
    if !(delta > 4.0) {
        return Err(Error::DeltaTooSmall(delta));
    }
    let s2 = var_s / (n * d);
    let v_n = s2 * (n / d).cbrt() * n.powf(-2.0 / (2.0 + delta));
    if !(v_n > 0.0) {
        return Err(Error::BadParams("V_n must be positive".into()));
    }
    let exponent = 3.0 * (delta + 2.0) / (2.0 * (delta + 5.0));
    let constant = if delta == 5.0 { TRUNCATION_CONSTANT_DELTA5 } else { TRUNCATION_CONSTANT };
    Ok(TruncationBound { value: constant * (a * a / v_n).powf(exponent), constant, exponent, v_n })
}

/// σ̃²(N/D)^ε; its divergence along a sequence gives a central limit theorem.
pub fn janson_diagnostic(p: &CumulantBoundParams, epsilon: f64) -> f64 {
    p.sigma_tilde2() * (p.n / p.d).powf(epsilon)
}
