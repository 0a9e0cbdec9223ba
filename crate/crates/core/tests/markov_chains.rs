use modstable::cumulant_core::{boolean_cumulant, cumulants_from_moments};
use modstable::markov_chains::*;
use modstable::Error;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn three_state_rows() -> Vec<Vec<f64>> {
    vec![vec![0.0, 1.0, 0.0], vec![0.5, 0.0, 0.5], vec![1.0, 0.0, 0.0]]
}

fn random_chain(rng: &mut ChaCha8Rng, m: usize) -> MarkovChainSpec {
    loop {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                let w: Vec<f64> = (0..m).map(|_| if rng.random::<f64>() < 0.25 { 0.0 } else { rng.random::<f64>() }).collect();
                let s: f64 = w.iter().sum();
                if s == 0.0 {
                    vec![1.0 / m as f64; m]
                } else {
                    w.iter().map(|v| v / s).collect()
                }
            })
            .collect();
        let fixed: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| {
                let s: f64 = r.iter().sum();
                let mut r = r.clone();
                r[m - 1] += 1.0 - s;
                r
            })
            .collect();
        if let Ok(c) = MarkovChainSpec::from_rows(&fixed) {
            return c;
        }
    }
}

/// Characteristic polynomial by Faddeev-LeVerrier, roots by Durand-Kerner.
fn eigenvalues(a: &DMatrix<f64>) -> Vec<Complex64> {
    let n = a.nrows();
    let mut coeffs = vec![1.0];
    let mut mk = DMatrix::<f64>::zeros(n, n);
    let id = DMatrix::<f64>::identity(n, n);
    for k in 1..=n {
        mk = a * &mk + &id * coeffs[k - 1];
        let c = -(a * &mk).trace() / k as f64;
        coeffs.push(c);
    }
    let poly = |z: Complex64| coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let mut roots: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.4, 0.9).powu(i as u32)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = poly(roots[i]) / den;
            roots[i] -= step;
        }
    }
    roots
}

fn theta_oracle(c: &MarkovChainSpec) -> f64 {
    let mpp = &c.p * c.time_reversal();
    let mut mods: Vec<f64> = eigenvalues(&mpp).iter().map(|z| z.norm()).collect();
    mods.sort_by(|a, b| b.total_cmp(a));
    mods[1].sqrt()
}

#[test]
fn stationary_laws() {
    let exact = rational_chain(vec![
        vec![q(0, 1), q(1, 1), q(0, 1)],
        vec![q(1, 2), q(0, 1), q(1, 2)],
        vec![q(1, 1), q(0, 1), q(0, 1)],
    ])
    .unwrap();
    assert_eq!(exact.pi, vec![q(2, 5), q(2, 5), q(1, 5)]);
    let sym = MarkovChainSpec::from_rows(&[vec![0.5, 0.3, 0.2], vec![0.3, 0.4, 0.3], vec![0.2, 0.3, 0.5]]).unwrap();
    assert!(sym.pi.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-14));
    let (a, b) = (0.2, 0.7);
    let two = MarkovChainSpec::from_rows(&[vec![1.0 - a, a], vec![b, 1.0 - b]]).unwrap();
    assert!((two.pi[0] - b / (a + b)).abs() < 1e-14 && (two.pi[1] - a / (a + b)).abs() < 1e-14);
}

#[test]
fn invalid_chains_are_rejected() {
    assert_eq!(MarkovChainSpec::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap_err(), Error::NotErgodic);
    assert!(matches!(MarkovChainSpec::from_rows(&[vec![0.5, 0.4], vec![0.5, 0.5]]), Err(Error::BadParams(_))));
    assert!(matches!(MarkovChainSpec::from_rows(&[vec![1.0, 0.0, 0.0]]), Err(Error::BadParams(_))));
}

#[test]
fn time_reversals() {
    let (a, b) = (0.25, 0.6);
    let two = MarkovChainSpec::from_rows(&[vec![1.0 - a, a], vec![b, 1.0 - b]]).unwrap();
    assert!((two.time_reversal() - &two.p).abs().max() < 1e-14);
    let three = MarkovChainSpec::from_rows(&three_state_rows()).unwrap();
    let rev = three.time_reversal();
    let want = DMatrix::from_row_slice(3, 3, &[0.0, 0.5, 0.5, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    assert!((&rev - want).abs().max() < 1e-14);
    assert!((time_reversal(&rev, &three.pi) - &three.p).abs().max() < 1e-14);
    let ds = MarkovChainSpec::from_rows(&[vec![0.1, 0.6, 0.3], vec![0.5, 0.2, 0.3], vec![0.4, 0.2, 0.4]]).unwrap();
    assert!((ds.time_reversal() - ds.p.transpose()).abs().max() < 1e-14);
}

#[test]
fn theta_values() {
    let pi = [0.2, 0.5, 0.3];
    let rank_one = MarkovChainSpec::from_rows(&[pi.to_vec(), pi.to_vec(), pi.to_vec()]).unwrap();
    assert!(rank_one.theta < 1e-7);
    let (a, b) = (0.15, 0.35);
    let two = MarkovChainSpec::from_rows(&[vec![1.0 - a, a], vec![b, 1.0 - b]]).unwrap();
    assert!((two.theta - (1.0 - a - b)).abs() < 1e-12);
    // P P̃ of the three-state chain leaves state 1 fixed: eigenvalue 1 is double
    let three = MarkovChainSpec::from_rows(&three_state_rows()).unwrap();
    assert_eq!(three.theta, 1.0);
    assert!((theta_oracle(&three) - 1.0).abs() < 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let m = rng.random_range(2..=6);
        let c = random_chain(&mut rng, m);
        let want = theta_oracle(&c);
        assert!((c.theta - want).abs() < 1e-6, "{} vs {want}", c.theta);
    }
}

#[test]
fn fill_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let m = rng.random_range(2..=6);
        let c = random_chain(&mut rng, m);
        for x in 0..m {
            for t in [0, 1, 2, 5, 13, 30] {
                let fc = c.fill_check(x, t);
                assert!(fc.pass, "{fc:?}");
            }
        }
    }
    let pi = [0.25, 0.25, 0.25, 0.25];
    let flat = MarkovChainSpec::from_rows(&vec![pi.to_vec(); 4]).unwrap();
    let fc = flat.fill_check(2, 0);
    assert!(fc.tv <= 2.0 && 2.0 <= fc.tv_bound);
    assert!(flat.fill_check(1, 1).tv < 1e-15);
}

#[test]
fn joint_moments_and_correlations() {
    let c = MarkovChainSpec::from_rows(&[vec![0.2, 0.5, 0.3], vec![0.6, 0.1, 0.3], vec![0.3, 0.3, 0.4]]).unwrap();
    let f = vec![1.0, -2.0, 0.5];
    let mean: f64 = (0..3).map(|x| c.pi[x] * f[x]).sum();
    assert!((c.joint_moment(&[f.clone()], &[7]) - mean).abs() < 1e-14);
    let g: Vec<f64> = f.iter().map(|v| v - mean).collect();
    for t in 0..6 {
        let pt = c.p.pow(t as u32);
        let direct: f64 = (0..3).map(|x| c.pi[x] * g[x] * (0..3).map(|y| pt[(x, y)] * g[y]).sum::<f64>()).sum();
        let got = c.joint_moment(&[g.clone(), g.clone()], &[3, 3 + t]);
        assert!((got - direct).abs() < 1e-14);
        assert!((c.joint_moment(&[g.clone(), g.clone()], &[3 + t, 3]) - direct).abs() < 1e-14);
    }
}

#[test]
fn three_state_chain_correlations() {
    let c = MarkovChainSpec::from_rows(&three_state_rows()).unwrap();
    let f = vec![1.0, -1.0, 0.0];
    for k in 0..=10 {
        let a = Complex64::new(2.0, 1.0) / Complex64::new(-1.0, -1.0).powu(k);
        let b = Complex64::new(2.0, -1.0) / Complex64::new(-1.0, 1.0).powu(k);
        let want = ((a + b) / 5.0).re;
        let got = c.joint_moment(&[f.clone(), f.clone()], &[0, k as i64]);
        assert!((got - want).abs() < 1e-12, "k {k}: {got} vs {want}");
    }
}

#[test]
fn boolean_cumulants_by_matrix_products() {
    let c = MarkovChainSpec::from_rows(&[vec![0.1, 0.6, 0.3], vec![0.5, 0.2, 0.3], vec![0.2, 0.2, 0.6]]).unwrap();
    let f = vec![vec![1.0, 0.0, -1.0], vec![0.3, 2.0, 0.5], vec![-1.0, 1.0, 1.0], vec![0.0, 1.0, 0.0]];
    assert!((c.boolean_cumulant_matrix(&f[..1], &[4]).unwrap() - c.joint_moment(&f[..1], &[0])).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let r = rng.random_range(1..=4);
        let mut times: Vec<i64> = (0..r).map(|_| rng.random_range(0..6)).collect();
        times.sort();
        let fs: Vec<Vec<f64>> = (0..r).map(|i| f[i].clone()).collect();
        let oracle = |idx: &[usize]| {
            let sub_f: Vec<Vec<f64>> = idx.iter().map(|&i| fs[i].clone()).collect();
            let sub_t: Vec<i64> = idx.iter().map(|&i| times[i]).collect();
            c.joint_moment(&sub_f, &sub_t)
        };
        let vars: Vec<usize> = (0..r).collect();
        let by_def = boolean_cumulant(&oracle, &vars).unwrap();
        let by_mat = c.boolean_cumulant_matrix(&fs, &times).unwrap();
        assert!((by_def - by_mat).abs() < 1e-10, "{by_def} vs {by_mat}");
    }
    assert_eq!(c.boolean_cumulant_matrix(&f[..2], &[3, 1]).unwrap_err(), Error::TimesNotSorted);
}

#[test]
fn bound_formulas() {
    let (n, k, m) = (20.0, 1.5, 4usize);
    assert!((markov_cumulant_bound(n, 1, 0.3, k, m).unwrap() - n * k * 2.0).abs() < 1e-12);
    assert!((markov_cumulant_bound(n, 2, 0.0, k, m).unwrap() - 2.0 * n * k * k * m as f64).abs() < 1e-12);
    assert!((markov_kol_bound(1.0, 1.0, 1.0, 1, 0.0).unwrap() - 76.36).abs() < 1e-12);
    assert_eq!(markov_kol_bound(1.0, 1.0, 1.0, 1, 1.0).unwrap_err(), Error::ThetaOutOfRange(1.0));
    assert!(linear_functional_kol_bound(100.0, 1.0, 2, 0.5, 0.2).unwrap() > 0.0);
}

#[test]
fn cumulant_bounds_hold_for_exact_cumulants() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut checked = 0;
    while checked < 50 {
        let m = rng.random_range(2..=4);
        let c = random_chain(&mut rng, m);
        if c.theta >= 1.0 {
            continue;
        }
        let f: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let k = f.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for n in 1..=8 {
            let kappas = cumulants_from_moments(&c.chain.sum_moments(&f, n, 5)[1..]).unwrap();
            for (i, kappa) in kappas.iter().enumerate() {
                let bound = markov_cumulant_bound(n as f64, i + 1, c.theta, k, m).unwrap();
                assert!(kappa.abs() <= bound * (1.0 + 1e-9), "r {} n {n}: {kappa} > {bound}", i + 1);
            }
        }
        checked += 1;
    }
}

#[test]
fn sum_moments_match_enumeration() {
    let c = MarkovChainSpec::from_rows(&[vec![0.3, 0.7], vec![0.6, 0.4]]).unwrap();
    let f = vec![-1.0, 2.0];
    let n = 4;
    let mut want = [0.0; 4];
    for path in 0..(1 << n) {
        let xs: Vec<usize> = (0..n).map(|t| path >> t & 1).collect();
        let mut p = c.pi[xs[0]];
        for t in 1..n {
            p *= c.p[(xs[t - 1], xs[t])];
        }
        let s: f64 = xs.iter().map(|&x| f[x]).sum();
        for (k, w) in want.iter_mut().enumerate() {
            *w += p * s.powi(k as i32);
        }
    }
    let got = c.chain.sum_moments(&f, n, 3);
    for k in 0..4 {
        assert!((got[k] - want[k]).abs() < 1e-12);
    }
}

#[test]
fn asymptotic_variance() {
    let exact = rational_chain(vec![
        vec![q(0, 1), q(1, 1), q(0, 1)],
        vec![q(1, 2), q(0, 1), q(1, 2)],
        vec![q(1, 1), q(0, 1), q(0, 1)],
    ])
    .unwrap();
    assert!(exact.asymptotic_variance(&[q(1, 1), q(-1, 1), q(0, 1)]).unwrap().is_zero());
    assert!(!exact.cycle_criterion(&[q(1, 1), q(-1, 1), q(0, 1)], |v| v.is_zero()));

    let pi = [0.2, 0.5, 0.3];
    let iid = MarkovChainSpec::from_rows(&[pi.to_vec(), pi.to_vec(), pi.to_vec()]).unwrap();
    let f = [1.0, 3.0, -2.0];
    let mean: f64 = (0..3).map(|x| pi[x] * f[x]).sum();
    let var: f64 = (0..3).map(|x| pi[x] * (f[x] - mean).powi(2)).sum();
    assert!((iid.asymptotic_variance(&f).unwrap() - var).abs() < 1e-12);

    // birth-death chains are reversible
    let rev = MarkovChainSpec::from_rows(&[vec![0.6, 0.4, 0.0], vec![0.3, 0.3, 0.4], vec![0.0, 0.5, 0.5]]).unwrap();
    assert!((rev.time_reversal() - &rev.p).abs().max() < 1e-12);
    let mean: f64 = (0..3).map(|x| rev.pi[x] * f[x]).sum();
    let pig2: f64 = (0..3).map(|x| rev.pi[x] * (f[x] - mean).powi(2)).sum();
    let s2 = rev.asymptotic_variance(&f).unwrap();
    assert!(s2 >= (1.0 - rev.theta) / (1.0 + rev.theta) * pig2);
    let (series, tail) = rev.asymptotic_variance_series(&f, 200);
    assert!((series - s2).abs() <= tail + 1e-12);
}

#[test]
fn cycle_criterion_matches_variance() {
    let three = MarkovChainSpec::from_rows(&three_state_rows()).unwrap();
    assert!(!three.cycle_criterion(&[1.0, -1.0, 0.0], 1e-12));
    assert!(!three.cycle_criterion(&[2.0, 2.0, 2.0], 1e-12));
    assert!(three.cycle_criterion(&[1.0, 0.0, 0.0], 1e-12));
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..50 {
        let m = rng.random_range(2..=5);
        let c = random_chain(&mut rng, m);
        let mut f = vec![0.0; m];
        f[rng.random_range(0..m)] = 1.0;
        let positive = c.asymptotic_variance(&f).unwrap() > 1e-10;
        assert_eq!(c.cycle_criterion(&f, 1e-10), positive);
    }
}

#[test]
fn sampled_sums_follow_ergodic_theorem() {
    let c = MarkovChainSpec::from_rows(&[vec![0.2, 0.5, 0.3], vec![0.6, 0.1, 0.3], vec![0.3, 0.3, 0.4]]).unwrap();
    let f = vec![1.0, -1.0, 2.0];
    let n = 10_000;
    let sums = c.sample_sums(&f, n, 10_000, 77);
    let m = sums.len() as f64;
    let mean = sums.iter().sum::<f64>() / m;
    let var = sums.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let pif: f64 = (0..3).map(|x| c.pi[x] * f[x]).sum();
    let se = (var / m).sqrt();
    assert!((mean - n as f64 * pif).abs() < 3.0 * se);
    let s2 = c.asymptotic_variance(&f).unwrap();
    assert!((var / n as f64 / s2 - 1.0).abs() < 0.05, "{} vs {s2}", var / n as f64);
    let ones = c.sample_sums(&f, 1, 100_000, 78);
    let hit = ones.iter().filter(|&&v| v == 2.0).count() as f64 / 1e5;
    assert!((hit - c.pi[2]).abs() < 3.0 * (c.pi[2] * (1.0 - c.pi[2]) / 1e5).sqrt());
}
