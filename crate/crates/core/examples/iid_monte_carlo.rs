//! Monte Carlo check of the i.i.d. bound 4.815 b₃/(σ³√n) with a DKW band.
//!
//! ```bash
//! cargo run --release --example iid_monte_carlo
//! ```

use modstable::empirics::{dkw_radius, empirical_dkol, DKW_DELTA};
use modstable::model_zoo::make_model;
use serde_json::json;

fn main() -> modstable::Result<()> {
    let replicas = 200_000;
    println!("DKW radius for {replicas} draws: {:.5}", dkw_radius(replicas, DKW_DELTA));
    for steps in ["rademacher", "uniform"] {
        let m = make_model("iid_sum", &json!({ "steps": steps }))?;
        for n in [25.0, 100.0, 400.0] {
            let xs = m.sample(n, replicas, 17)?;
            let est = empirical_dkol(&xs, |x| m.law.cdf_any(x, 1e-12).unwrap())?;
            println!(
                "{steps:<10} n = {n:>4}: d_Kol = {:.5} +/- {:.5}, bound {:.5}",
                est.value,
                est.uncertainty,
                m.bound_of(n).unwrap()
            );
        }
    }
    Ok(())
}
