//! Finite stationary Markov chains: stationary law, time reversal, the constant θ_P
//! of the multiplicative reversiblization, exact joint moments and Boolean
//! cumulants, asymptotic variance and the Kolmogorov bounds for additive functionals.

use crate::cumulant_core::{solve, Scalar, GAUSSIAN_CUMULANT_CONSTANT};
use crate::error::{Error, Result};
use crate::rng::Rng;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

/// Transition matrix and stationary law over any exact or floating scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain<T> {
    pub p: Vec<Vec<T>>,
    pub pi: Vec<T>,
}

fn vec_mat<T: Scalar>(v: &[T], p: &[Vec<T>]) -> Vec<T> {
    let m = v.len();
    (0..m)
        .map(|y| (0..m).fold(T::zero(), |acc, x| acc + v[x].clone() * p[x][y].clone()))
        .collect()
}

fn total<T: Scalar>(v: &[T]) -> T {
    v.iter().cloned().fold(T::zero(), |a, b| a + b)
}

/// Solve πP = π, Σπ = 1.
pub fn stationary_generic<T: Scalar>(p: &[Vec<T>]) -> Result<Vec<T>> {
    let m = p.len();
    // rows 0..m-1 of (Pᵀ − I), last row replaced by the normalization
    let mut a = vec![vec![T::zero(); m]; m];
    for i in 0..m - 1 {
        for j in 0..m {
            a[i][j] = p[j][i].clone() - if i == j { T::one() } else { T::zero() };
        }
    }
    for j in 0..m {
        a[m - 1][j] = T::one();
    }
    let mut b = vec![T::zero(); m];
    b[m - 1] = T::one();
    solve(a, b).ok_or(Error::NotErgodic)
}

impl<T: Scalar> Chain<T> {
    pub fn new(p: Vec<Vec<T>>) -> Result<Self> {
        let pi = stationary_generic(&p)?;
        Ok(Chain { p, pi })
    }

    pub fn states(&self) -> usize {
        self.pi.len()
    }

    /// E[∏ f_i(X_{t_i})] under the stationary law; times may come in any order.
    pub fn joint_moment(&self, fs: &[Vec<T>], times: &[i64]) -> T {
        assert_eq!(fs.len(), times.len());
        if fs.is_empty() {
            return T::one();
        }
        let mut order: Vec<usize> = (0..times.len()).collect();
        order.sort_by_key(|&i| times[i]);
        let mut v: Vec<T> = self.pi.clone();
        let mut last = times[order[0]];
        for &i in &order {
            for _ in last..times[i] {
                v = vec_mat(&v, &self.p);
            }
            last = times[i];
            for (x, vx) in v.iter_mut().enumerate() {
                *vx = vx.clone() * fs[i][x].clone();
            }
        }
        total(&v)
    }

    /// π D_{f₁}(P^{t₂−t₁} − 1π) ⋯ (P^{t_r−t_{r−1}} − 1π) D_{f_r} 1.
    pub fn boolean_cumulant_matrix(&self, fs: &[Vec<T>], times: &[i64]) -> Result<T> {
        assert_eq!(fs.len(), times.len());
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::TimesNotSorted);
        }
        if fs.is_empty() {
            return Ok(T::zero());
        }
        let mut v: Vec<T> = self.pi.iter().zip(&fs[0]).map(|(a, b)| a.clone() * b.clone()).collect();
        for i in 1..fs.len() {
            for _ in times[i - 1]..times[i] {
                v = vec_mat(&v, &self.p);
            }
            let mass = total(&v); // equals Σ of v before the powers were applied
            for (x, vx) in v.iter_mut().enumerate() {
                *vx = (vx.clone() - mass.clone() * self.pi[x].clone()) * fs[i][x].clone();
            }
        }
        Ok(total(&v))
    }

    /// E[S^k], k = 0..=r, for S = Σ_{t<n} f(X_t) under the stationary law.
    pub fn sum_moments(&self, f: &[T], n: usize, r: usize) -> Vec<T> {
        let m = self.states();
        let mut binom = vec![vec![0i64; r + 1]; r + 1];
        for k in 0..=r {
            binom[k][0] = 1;
            for j in 1..=k {
                binom[k][j] = binom[k - 1][j - 1] + if j < k { binom[k - 1][j] } else { 0 };
            }
        }
        let pw: Vec<Vec<T>> = (0..m)
            .map(|x| {
                let mut row = vec![T::one()];
                for k in 1..=r {
                    let prev = row[k - 1].clone();
                    row.push(prev * f[x].clone());
                }
                row
            })
            .collect();
        // w[k][x] = E[S^k ; X_last = x]
        let mut w: Vec<Vec<T>> = vec![vec![T::zero(); m]; r + 1];
        w[0] = self.pi.clone();
        let shift = |w: &mut Vec<Vec<T>>| {
            for x in 0..m {
                for k in (0..=r).rev() {
                    let mut acc = T::zero();
                    for j in 0..=k {
                        acc = acc + T::from_int(binom[k][j]) * pw[x][k - j].clone() * w[j][x].clone();
                    }
                    w[k][x] = acc;
                }
            }
        };
        if n == 0 {
            return (0..=r).map(|k| if k == 0 { T::one() } else { T::zero() }).collect();
        }
        shift(&mut w);
        for _ in 1..n {
            for row in w.iter_mut() {
                *row = vec_mat(row, &self.p);
            }
            shift(&mut w);
        }
        w.iter().map(|row| total(row)).collect()
    }

    /// Σ²(f) = π(g²) + 2 π(g · Σ_{k≥1} Pᵏ g) with g = f − π(f), through the
    /// fundamental matrix (I − P + 1π)⁻¹.
    pub fn asymptotic_variance(&self, f: &[T]) -> Result<T> {
        let m = self.states();
        let mean = (0..m).fold(T::zero(), |a, x| a + self.pi[x].clone() * f[x].clone());
        let g: Vec<T> = f.iter().map(|v| v.clone() - mean.clone()).collect();
        let a: Vec<Vec<T>> = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        let id = if x == y { T::one() } else { T::zero() };
                        id - self.p[x][y].clone() + self.pi[y].clone()
                    })
                    .collect()
            })
            .collect();
        let z = solve(a, g.clone()).ok_or(Error::NotErgodic)?;
        let mut acc = T::zero();
        for x in 0..m {
            let h = z[x].clone() - g[x].clone();
            acc = acc + self.pi[x].clone() * g[x].clone() * (g[x].clone() + T::from_int(2) * h);
        }
        Ok(acc)
    }

    /// True when some cycle of the transition graph carries a nonzero sum of g = f − π(f).
    ///
    /// All cycle sums vanish exactly when g(x) = u(x) − u(y) along every edge x → y
    /// for some potential u; u is propagated along a spanning tree and every non-tree
    /// edge (one per fundamental cycle) is tested. `is_zero` decides equality.
    pub fn cycle_criterion<Z: Fn(&T) -> bool>(&self, f: &[T], is_zero: Z) -> bool {
        let m = self.states();
        let mean = (0..m).fold(T::zero(), |a, x| a + self.pi[x].clone() * f[x].clone());
        let g: Vec<T> = f.iter().map(|v| v.clone() - mean.clone()).collect();
        let mut u: Vec<Option<T>> = vec![None; m];
        u[0] = Some(T::zero());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let ux = u[x].clone().unwrap();
            for y in 0..m {
                if is_zero(&self.p[x][y]) {
                    continue;
                }
                let want = ux.clone() - g[x].clone();
                match &u[y] {
                    None => {
                        u[y] = Some(want);
                        queue.push_back(y);
                    }
                    Some(uy) => {
                        if !is_zero(&(uy.clone() - want)) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Floating-point chain with its spectral data.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChainSpec {
    pub chain: Chain<f64>,
    pub p: DMatrix<f64>,
    pub pi: DVector<f64>,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FillCheck {
    /// Σ_y |Pᵗ(x,y) − π(y)|
    pub tv: f64,
    /// Σ_y |Pᵗ(x,y) − π(y)|/√π(y)
    pub weighted: f64,
    /// θᵗ/√π(x)
    pub tv_bound: f64,
    /// √M θᵗ/√π(x)
    pub weighted_bound: f64,
    pub pass: bool,
}

/// Primitive (irreducible and aperiodic) iff some power up to (M−1)²+1 is positive.
pub fn is_primitive(p: &DMatrix<f64>) -> bool {
    let m = p.nrows();
    let support = p.map(|v| if v > 0.0 { 1.0 } else { 0.0 });
    let mut cur = support.clone();
    for _ in 0..(m - 1) * (m - 1) + 1 {
        if cur.iter().all(|&v| v > 0.0) {
            return true;
        }
        cur = (&cur * &support).map(|v| if v > 0.0 { 1.0 } else { 0.0 });
    }
    cur.iter().all(|&v| v > 0.0)
}

pub fn stationary(p: &DMatrix<f64>) -> Result<DVector<f64>> {
    if !is_primitive(p) {
        return Err(Error::NotErgodic);
    }
    let rows: Vec<Vec<f64>> = (0..p.nrows()).map(|i| p.row(i).iter().copied().collect()).collect();
    let pi = stationary_generic(&rows)?;
    Ok(DVector::from_vec(pi))
}

/// P̃(x,y) = π(y)P(y,x)/π(x).
pub fn time_reversal(p: &DMatrix<f64>, pi: &DVector<f64>) -> DMatrix<f64> {
    let m = p.nrows();
    DMatrix::from_fn(m, m, |x, y| pi[y] * p[(y, x)] / pi[x])
}

/// θ_P: square root of the second eigenvalue of P P̃ counted with multiplicity, from
/// the symmetric matrix S Sᵀ, S = D^{1/2} P D^{−1/2}, with √π projected out.
/// It equals 1 exactly when P P̃ is reducible.
pub fn theta(p: &DMatrix<f64>, pi: &DVector<f64>) -> f64 {
    let m = p.nrows();
    let sq = pi.map(f64::sqrt);
    let s = DMatrix::from_fn(m, m, |x, y| sq[x] * p[(x, y)] / sq[y]);
    let q = &s * s.transpose() - &sq * sq.transpose();
    let q = (&q + q.transpose()) * 0.5;
    let top = SymmetricEigen::new(q).eigenvalues.iter().copied().fold(0.0, f64::max);
    // a reducible P P̃ gives top = 1 up to rounding
    if top > 1.0 - 1e-12 {
        return 1.0;
    }
    top.max(0.0).sqrt()
}

impl MarkovChainSpec {
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        let m = p.nrows();
        if m == 0 || p.ncols() != m {
            return Err(Error::BadParams("transition matrix must be square and nonempty".into()));
        }
        for i in 0..m {
            let row = p.row(i);
            if row.iter().any(|&v| !(v >= 0.0)) || (row.sum() - 1.0).abs() > 1e-12 {
                return Err(Error::BadParams(format!("row {i} is not a probability vector")));
            }
        }
        let pi = stationary(&p)?;
        let theta = theta(&p, &pi);
        let rows: Vec<Vec<f64>> = (0..m).map(|i| p.row(i).iter().copied().collect()).collect();
        let chain = Chain { p: rows, pi: pi.iter().copied().collect() };
        Ok(MarkovChainSpec { chain, p, pi, theta })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::BadParams("transition matrix must be square".into()));
        }
        Self::new(DMatrix::from_fn(m, m, |i, j| rows[i][j]))
    }

    pub fn states(&self) -> usize {
        self.p.nrows()
    }

    pub fn time_reversal(&self) -> DMatrix<f64> {
        time_reversal(&self.p, &self.pi)
    }

    pub fn fill_check(&self, x: usize, t: u32) -> FillCheck {
        let m = self.states();
        let mut row = DVector::zeros(m).transpose();
        row[x] = 1.0;
        for _ in 0..t {
            row = &row * &self.p;
        }
        let tv = (0..m).map(|y| (row[y] - self.pi[y]).abs()).sum::<f64>();
        let weighted = (0..m).map(|y| (row[y] - self.pi[y]).abs() / self.pi[y].sqrt()).sum::<f64>();
        let tv_bound = self.theta.powi(t as i32) / self.pi[x].sqrt();
        let weighted_bound = (m as f64).sqrt() * tv_bound;
        let slack = 1e-10;
        FillCheck {
            tv,
            weighted,
            tv_bound,
            weighted_bound,
            pass: tv <= tv_bound + slack && weighted <= weighted_bound + slack,
        }
    }

    pub fn joint_moment(&self, fs: &[Vec<f64>], times: &[i64]) -> f64 {
        self.chain.joint_moment(fs, times)
    }

    pub fn boolean_cumulant_matrix(&self, fs: &[Vec<f64>], times: &[i64]) -> Result<f64> {
        self.chain.boolean_cumulant_matrix(fs, times)
    }

    pub fn asymptotic_variance(&self, f: &[f64]) -> Result<f64> {
        self.chain.asymptotic_variance(f)
    }

    /// Truncated series π(g²) + 2Σ_{t=1}^{T} E[g(X₀)g(X_t)] and a bound on the
    /// neglected tail, ‖g‖∞² √M θ^{T+1}/(1−θ) · 2.
    pub fn asymptotic_variance_series(&self, f: &[f64], terms: usize) -> (f64, f64) {
        let m = self.states();
        let mean: f64 = (0..m).map(|x| self.pi[x] * f[x]).sum();
        let g: Vec<f64> = f.iter().map(|v| v - mean).collect();
        let mut v: Vec<f64> = (0..m).map(|x| self.pi[x] * g[x]).collect();
        let mut acc: f64 = (0..m).map(|x| v[x] * g[x]).sum();
        for _ in 0..terms {
            v = vec_mat(&v, &self.chain.p);
            acc += 2.0 * (0..m).map(|x| v[x] * g[x]).sum::<f64>();
        }
        let sup = g.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        let tail = 2.0 * sup * sup * (m as f64).sqrt() * self.theta.powi(terms as i32 + 1) / (1.0 - self.theta);
        (acc, tail)
    }

    pub fn cycle_criterion(&self, f: &[f64], tol: f64) -> bool {
        self.chain.cycle_criterion(f, |v| v.abs() <= tol)
    }

    fn cumulative_rows(&self) -> Vec<Vec<f64>> {
        self.chain
            .p
            .iter()
            .map(|row| {
                let mut acc = 0.0;
                row.iter()
                    .map(|v| {
                        acc += v;
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// One realization of Sₙ = Σ_{t=1}^n f(X_t) from the stationary chain.
    pub fn sample_path(&self, f: &[f64], n: usize, rng: &mut Rng) -> f64 {
        let cum = self.cumulative_rows();
        let mut acc = 0.0;
        let start: Vec<f64> = self
            .chain
            .pi
            .iter()
            .scan(0.0, |a, v| {
                *a += v;
                Some(*a)
            })
            .collect();
        let pick = |c: &[f64], u: f64| c.iter().position(|&v| u < v).unwrap_or(c.len() - 1);
        let mut x = pick(&start, rng.random::<f64>());
        for _ in 0..n {
            x = pick(&cum[x], rng.random::<f64>());
            acc += f[x];
        }
        acc
    }

    pub fn sample_sums(&self, f: &[f64], n: usize, count: usize, seed: u64) -> Vec<f64> {
        crate::rng::par_generate(seed, count, |rng| self.sample_path(f, n, rng))
    }
}

/// Exact chain over the rationals.
pub fn rational_chain(p: Vec<Vec<BigRational>>) -> Result<Chain<BigRational>> {
    Chain::new(p)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    Ok(())
}

/// n r^{r−2} (2(1+θ)/(1−θ))^{r−1} (K√M)^r.
pub fn markov_cumulant_bound(n: f64, r: usize, theta: f64, k: f64, m: usize) -> Result<f64> {
    check_theta(theta)?;
    let d = (1.0 + theta) / (1.0 - theta);
    Ok(crate::dependency_graphs::plain_depgraph_bound(n, d, k * (m as f64).sqrt(), r))
}

/// 76.36 (K√M/√(Var Sₙ/n))³ ((1+θ)/(1−θ))² /√n.
pub fn markov_kol_bound(n: f64, var_s: f64, k: f64, m: usize, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let ratio = k * (m as f64).sqrt() / (var_s / n).sqrt();
    Ok(GAUSSIAN_CUMULANT_CONSTANT * ratio.powi(3) * ((1.0 + theta) / (1.0 - theta)).powi(2) / n.sqrt())
}

pub const LINEAR_FUNCTIONAL_CONSTANT: f64 = 77.0;

/// 77 (‖f‖∞√M/Σ(f))³ ((1+θ)/(1−θ))² /√n, valid for n large.
pub fn linear_functional_kol_bound(n: f64, f_sup: f64, m: usize, sigma: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let ratio = f_sup * (m as f64).sqrt() / sigma;
    Ok(LINEAR_FUNCTIONAL_CONSTANT * ratio.powi(3) * ((1.0 + theta) / (1.0 - theta)).powi(2) / n.sqrt())
}

/// Reversible chains: 77 (‖g‖∞√M/√π(g²))³ ((1+θ)/(1−θ))^{7/2} /√n.
pub fn reversible_kol_bound(n: f64, g_sup: f64, m: usize, pi_g2: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let ratio = g_sup * (m as f64).sqrt() / pi_g2.sqrt();
    Ok(LINEAR_FUNCTIONAL_CONSTANT * ratio.powi(3) * ((1.0 + theta) / (1.0 - theta)).powf(3.5) / n.sqrt())
}

/// Indicator functionals: the Kolmogorov bound without the (√M)³ factor.
pub fn indicator_kol_bound(n: f64, var_s: f64, theta: f64) -> Result<f64> {
    markov_kol_bound(n, var_s, 1.0, 1, theta)
}

/// The weighted dependency graph on times 0..n with weights 2θ^{|t−s|}.
pub fn time_graph(n: usize, theta: f64) -> crate::dependency_graphs::WeightedGraph {
    crate::dependency_graphs::WeightedGraph::from_fn(n, |s, t| 2.0 * theta.powi((t as i32 - s as i32).abs()))
}
