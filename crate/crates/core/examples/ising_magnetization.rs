//! Magnetization of a two-dimensional Ising box sampled by heat-bath dynamics,
//! standardized and compared with the Gaussian law.
//!
//! ```bash
//! cargo run --release --example ising_magnetization
//! ```

use modstable::empirics::{empirical_dkol, loglog_slope};
use modstable::model_zoo::make_model;
use serde_json::json;

fn main() -> modstable::Result<()> {
    let m = make_model("ising", &json!({"d": 2, "beta": 0.2, "h": 0.5}))?;
    let sides = [8.0, 16.0, 32.0];
    let mut scaled = Vec::new();
    for (i, &side) in sides.iter().enumerate() {
        let xs = m.sample(side, 20_000, 40 + i as u64)?;
        let est = empirical_dkol(&xs, |x| m.law.cdf_any(x, 1e-12).unwrap())?;
        println!("L = {side:>3}: d_Kol = {:.5} +/- {:.5}, d_Kol * L = {:.4}", est.value, est.uncertainty, est.value * side);
        scaled.push(est.value * side);
    }
    println!("slope of d_Kol * L in L: {:.3}", loglog_slope(&sides, &scaled));
    Ok(())
}
