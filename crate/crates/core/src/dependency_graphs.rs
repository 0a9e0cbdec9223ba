//! Plain and uniform weighted dependency graphs: induced multigraphs on multisets,
//! spanning-tree weight sums and the cumulant bounds built on them.

use crate::error::{Error, Result};
use crate::rng::rng_from;
use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Graph on vertices 0..n with nonnegative symmetric edge weights; absent edges weigh 0.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WeightedGraph {
    pub n: usize,
    weights: BTreeMap<(usize, usize), f64>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph { n, weights: BTreeMap::new() }
    }

    /// Complete graph with weight `w(u, v)` on every pair.
    pub fn from_fn<F: Fn(usize, usize) -> f64>(n: usize, w: F) -> Self {
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, w(u, v));
            }
        }
        g
    }

    /// Set the weight of {u, v}. Self-loops are ignored; zero removes the edge.
    pub fn set(&mut self, u: usize, v: usize, w: f64) {
        assert!(w >= 0.0, "edge weights must be nonnegative");
        if u == v {
            return;
        }
        self.n = self.n.max(u.max(v) + 1);
        if w == 0.0 {
            self.weights.remove(&key(u, v));
        } else {
            self.weights.insert(key(u, v), w);
        }
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights.get(&key(u, v)).copied().unwrap_or(0.0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Parse an edge list with one `u v w` per line; blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut g = WeightedGraph::new(0);
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::BadParams(format!("line {}: expected `u v w`", ln + 1));
            if parts.len() != 3 {
                return Err(bad());
            }
            let u: usize = parts[0].parse().map_err(|_| bad())?;
            let v: usize = parts[1].parse().map_err(|_| bad())?;
            let w: f64 = parts[2].parse().map_err(|_| bad())?;
            if !(w >= 0.0) {
                return Err(bad());
            }
            g.set(u, v, w);
        }
        Ok(g)
    }

    /// D = 1 + max_v Σ_{v'≠v} w({v, v'}).
    pub fn max_weighted_degree(&self) -> f64 {
        let mut deg = vec![0.0; self.n];
        for (u, v, w) in self.edges() {
            deg[u] += w;
            deg[v] += w;
        }
        1.0 + deg.into_iter().fold(0.0, f64::max)
    }

    /// G[B]: one node per element of the multiset, weight-1 edges between copies of
    /// the same vertex, weight w(u, v) between copies of adjacent vertices.
    pub fn induced(&self, multiset: &[usize]) -> Result<InducedMultigraph> {
        if let Some(&bad) = multiset.iter().find(|&&v| v >= self.n) {
            return Err(Error::UnknownVertex(bad));
        }
        let mut edges = Vec::new();
        for i in 0..multiset.len() {
            for j in i + 1..multiset.len() {
                let (a, b) = (multiset[i], multiset[j]);
                let w = if a == b { 1.0 } else { self.weight(a, b) };
                if w > 0.0 {
                    edges.push((i, j, w));
                }
            }
        }
        Ok(InducedMultigraph { nodes: multiset.to_vec(), edges })
    }
}

/// Multigraph on nodes 0..nodes.len(); `nodes[i]` is the source vertex of node i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InducedMultigraph {
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, f64)>,
}

impl InducedMultigraph {
    pub fn spanning_tree_weight_sum(&self) -> f64 {
        spanning_tree_weight_sum(self.nodes.len(), &self.edges)
    }
}

/// Σ_T ∏_{e∈T} w(e) over spanning trees, by the weighted matrix-tree theorem
/// (determinant of a reduced Laplacian, LU with partial pivoting).
pub fn spanning_tree_weight_sum(k: usize, edges: &[(usize, usize, f64)]) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    let mut lap = DMatrix::<f64>::zeros(k, k);
    for &(u, v, w) in edges {
        if u == v {
            continue;
        }
        lap[(u, u)] += w;
        lap[(v, v)] += w;
        lap[(u, v)] -= w;
        lap[(v, u)] -= w;
    }
    let minor = lap.view((1, 1), (k - 1, k - 1)).into_owned();
    minor.lu().determinant().max(0.0)
}

/// Exact version over the rationals (Gaussian elimination in ℚ).
pub fn spanning_tree_weight_sum_exact(k: usize, edges: &[(usize, usize, BigRational)]) -> BigRational {
    if k <= 1 {
        return BigRational::one();
    }
    let m = k - 1;
    let mut a = vec![vec![BigRational::zero(); k]; k];
    for (u, v, w) in edges {
        let (u, v) = (*u, *v);
        if u == v {
            continue;
        }
        a[u][u] += w;
        a[v][v] += w;
        a[u][v] -= w;
        a[v][u] -= w;
    }
    let mut a: Vec<Vec<BigRational>> = a[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut det = BigRational::one();
    for col in 0..m {
        let Some(piv) = (col..m).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..m {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..m {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det.abs()
}

/// Oracle: enumerate all (k−1)-edge subsets and keep the acyclic ones.
pub fn spanning_tree_weight_sum_brute(k: usize, edges: &[(usize, usize, f64)]) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    let edges: Vec<_> = edges.iter().filter(|e| e.0 != e.1).copied().collect();
    let need = k - 1;
    let mut total = 0.0;
    let mut chosen = Vec::with_capacity(need);
    fn rec(
        edges: &[(usize, usize, f64)],
        start: usize,
        need: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        total: &mut f64,
    ) {
        if chosen.len() == need {
            let mut parent: Vec<usize> = (0..k).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut w = 1.0;
            for &i in chosen.iter() {
                let (u, v, we) = edges[i];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    return;
                }
                parent[ru] = rv;
                w *= we;
            }
            *total += w;
            return;
        }
        for i in start..edges.len() {
            if edges.len() - i < need - chosen.len() {
                break;
            }
            chosen.push(i);
            rec(edges, i + 1, need, k, chosen, total);
            chosen.pop();
        }
    }
    rec(&edges, 0, need, k, &mut chosen, &mut total);
    total
}

/// N r^{r−2} D^{r−1} C^r.
pub fn uwdg_cumulant_bound(n: f64, d: f64, c: f64, r: usize) -> f64 {
    let rf = r as f64;
    n * rf.powf(rf - 2.0) * d.powf(rf - 1.0) * c.powf(rf)
}

/// N r^{r−2} (2D)^{r−1} A^r.
pub fn plain_depgraph_bound(n: f64, d: f64, a: f64, r: usize) -> f64 {
    uwdg_cumulant_bound(n, 2.0 * d, a, r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UwdgFailure {
    pub multiset: Vec<usize>,
    pub kappa: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UwdgReport {
    pub checked: usize,
    /// True when every multiset up to r_max was visited.
    pub exhaustive: bool,
    pub failures: Vec<UwdgFailure>,
    /// max |κ| / bound over checked multisets with a positive bound.
    pub worst_ratio: f64,
}

impl UwdgReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Multisets of {0..n} of size r, as nondecreasing tuples.
pub fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, r, v, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Largest number of multisets visited exhaustively per size before switching to sampling.
pub const EXHAUSTIVE_CAP: usize = 50_000;
pub const SAMPLED_MULTISETS: usize = 10_000;

/// Check |κ(A_v, v∈B)| ≤ C^{|B|} Σ_{T∈ST(G[B])} w(T) for multisets B with |B| ≤ r_max.
///
/// Exhaustive while the number of multisets of a given size stays under
/// [`EXHAUSTIVE_CAP`], uniformly sampled beyond. This certifies finitely many
/// multisets only.
pub fn uwdg_check<F: Fn(&[usize]) -> f64>(joint_kappa: F, g: &WeightedGraph, c: f64, r_max: usize, seed: u64) -> UwdgReport {
    let mut rng = rng_from(seed);
    let mut report = UwdgReport { checked: 0, exhaustive: true, failures: Vec::new(), worst_ratio: 0.0 };
    for r in 1..=r_max {
        let count = binom(g.n + r - 1, r);
        let sets = if count <= EXHAUSTIVE_CAP as f64 {
            multisets(g.n, r)
        } else {
            report.exhaustive = false;
            (0..SAMPLED_MULTISETS)
                .map(|_| {
                    // stars and bars: r distinct positions among n + r − 1
                    let mut pos: Vec<usize> = Vec::with_capacity(r);
                    while pos.len() < r {
                        let p = rng.random_range(0..g.n + r - 1);
                        if !pos.contains(&p) {
                            pos.push(p);
                        }
                    }
                    pos.sort_unstable();
                    pos.iter().enumerate().map(|(i, &p)| p - i).collect()
                })
                .collect()
        };
        for b in sets {
            let mg = g.induced(&b).expect("multiset drawn from the vertex set");
            let bound = c.powi(r as i32) * mg.spanning_tree_weight_sum();
            let kappa = joint_kappa(&b);
            report.checked += 1;
            if bound > 0.0 {
                report.worst_ratio = report.worst_ratio.max(kappa.abs() / bound);
            }
            if kappa.abs() > bound * (1.0 + 1e-9) + 1e-12 {
                report.failures.push(UwdgFailure { multiset: b, kappa, bound });
            }
        }
    }
    report
}
