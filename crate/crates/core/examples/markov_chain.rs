//! A finite chain given exactly: stationary law, θ, asymptotic variance,
//! the cycle criterion and Kolmogorov bounds for additive functionals.
//!
//! ```bash
//! cargo run --release --example markov_chain
//! ```

use modstable::markov_chains::{
    linear_functional_kol_bound, markov_cumulant_bound, markov_kol_bound, rational_chain, MarkovChainSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn main() -> modstable::Result<()> {
    // every cycle of this chain carries f-sum zero, so Σ² = 0
    let p = vec![vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(1, 2), q(0, 1), q(1, 2)], vec![q(1, 1), q(0, 1), q(0, 1)]];
    let exact = rational_chain(p)?;
    let pi: Vec<String> = exact.pi.iter().map(|v| v.to_string()).collect();
    println!("pi = ({})", pi.join(", "));
    for f in [[q(1, 1), q(-1, 1), q(0, 1)], [q(1, 1), q(0, 1), q(0, 1)]] {
        let s2 = exact.asymptotic_variance(&f)?;
        let cycle = exact.cycle_criterion(&f, |v| v.is_zero());
        println!("f = ({}, {}, {}): Sigma2 = {s2}, cycle with nonzero sum: {cycle}", f[0], f[1], f[2]);
    }

    let chain = MarkovChainSpec::from_rows(&[vec![0.2, 0.5, 0.3], vec![0.6, 0.1, 0.3], vec![0.3, 0.3, 0.4]])?;
    println!("\ntheta = {:.6}", chain.theta);
    let f = vec![1.0, -1.0, 2.0];
    let s2 = chain.asymptotic_variance(&f)?;
    println!("Sigma2 = {s2:.6}");

    let n = 10_000usize;
    let m = chain.states();
    let k = 2.0;
    for r in 2..=4 {
        println!("|kappa{r}(S_n)| <= {:.4e}", markov_cumulant_bound(n as f64, r, chain.theta, k, m)?);
    }
    let moments = chain.chain.sum_moments(&f, n, 2);
    let var = moments[2] - moments[1] * moments[1];
    println!("Var S_n = {var:.3}, n Sigma2 = {:.3}", n as f64 * s2);
    println!("d_Kol <= {:.6}", markov_kol_bound(n as f64, var, k, m, chain.theta)?);
    println!("d_Kol <= {:.6} (asymptotic variance form)", linear_functional_kol_bound(n as f64, k, m, s2.sqrt(), chain.theta)?);

    let fill = chain.fill_check(0, 5);
    println!("Fill: TV after 5 steps {:.3e} <= {:.3e}: {}", fill.tv, fill.tv_bound, fill.pass);

    let sums = chain.sample_sums(&f, 1000, 20_000, 7);
    let mean = sums.iter().sum::<f64>() / sums.len() as f64;
    let pif: f64 = (0..m).map(|x| chain.pi[x] * f[x]).sum();
    println!("mean of S_1000 over 2e4 paths {mean:.3}, exact {:.3}", 1000.0 * pif);
    Ok(())
}
