//! Kolmogorov constant of a zone of control, and the resulting bound
//! for sums of i.i.d. Rademacher steps.
//!
//! ```bash
//! cargo run --release --example kolmogorov_constant
//! ```

use modstable::zone_control::{kolmogorov_constant, simplified_constant};
use modstable::{StableLaw, ZoneOfControl};
use std::f64::consts::E;

fn main() -> modstable::Result<()> {
    let zone = ZoneOfControl {
        law: StableLaw::gaussian(),
        gamma: 1.0,
        k: 1.5 / E.sqrt(),
        v: 3.0,
        w: 3.0,
        k1: 7.0 * E.sqrt() / 24.0,
        k2: E.sqrt() / 6.0,
    };
    let problems = zone.validate();
    println!("zone valid: {}", problems.is_empty());

    let kc = kolmogorov_constant(&zone.law, zone.v, zone.k, zone.k1);
    println!("C = {:.6} at lambda* = {:.6}", kc.c, kc.lambda_star);
    println!("simplified C3 = {:.6}", simplified_constant(&zone.law, zone.v, zone.k, zone.k1));

    for n in [10.0, 100.0, 1000.0, 1e4] {
        let rep = zone.kolmogorov_bound(n)?;
        println!("n = {n:>7}: d_Kol <= {:.6} (exponent {})", rep.bound, rep.exponent);
    }

    // a Cauchy zone with γ > 0 is clamped to γ = 0
    let cauchy = ZoneOfControl { law: StableLaw::cauchy(), gamma: 0.5, k: 2.0, v: 1.0, w: 1.0, k1: 1.0, k2: 0.0 };
    let rep = cauchy.kolmogorov_bound(50.0)?;
    println!("cauchy zone: clamped = {}, gamma used = {}, bound = {:.6}", rep.clamped, rep.gamma_used, rep.bound);
    Ok(())
}
