//! Classical and Boolean cumulants from a moment oracle, exactly over the rationals.
//!
//! ```bash
//! cargo run --release --example cumulants
//! ```

use modstable::cumulant_core::{boolean_cumulant, boolean_to_classical, cumulants_from_moments, joint_cumulant, npi};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn main() -> modstable::Result<()> {
    // Poisson(2): moments 2, 6, 22, 94, 454, every cumulant equals 2
    let moments: Vec<BigRational> = [2, 6, 22, 94, 454].iter().map(|&m| q(m, 1)).collect();
    let kappas = cumulants_from_moments(&moments)?;
    println!("Poisson(2) cumulants: {}", kappas.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "));

    // three dependent variables: (X, Y, Z) uniform on four rational atoms
    let atoms = [[q(1, 1), q(0, 1), q(2, 1)], [q(-1, 1), q(1, 2), q(1, 1)], [q(0, 1), q(1, 1), q(-1, 1)], [q(2, 1), q(-1, 1), q(0, 1)]];
    let moment = |vars: &[usize]| {
        atoms
            .iter()
            .map(|a| vars.iter().fold(q(1, 4), |acc, &v| acc * a[v].clone()))
            .fold(BigRational::zero(), |s, t| s + t)
    };
    let vars = [0, 1, 2];
    let classical = joint_cumulant(&moment, &vars)?;
    let boolean = boolean_cumulant(&moment, &vars)?;
    let bridged = boolean_to_classical(3, |c: &[usize]| boolean_cumulant(&moment, c).unwrap())?;
    println!("kappa(X,Y,Z) = {classical}");
    println!("boolean b(X,Y,Z) = {boolean}");
    println!("classical from boolean = {bridged} (equal: {})", bridged == classical);

    println!("npi of {{0,3}},{{1,4}},{{2}} = {}", npi(&[vec![0, 3], vec![1, 4], vec![2]]));
    Ok(())
}
