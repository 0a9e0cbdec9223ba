//! d_Kol between 2φₜ/log 8t for the planar Brownian winding angle and the
//! Cauchy law, computed from the exact characteristic function.
//!
//! ```bash
//! cargo run --release --example winding_number
//! ```

use modstable::empirics::{cf_dkol, GridSpec, HARNESS_TOL};
use modstable::model_zoo::make_model;
use serde_json::json;

fn main() -> modstable::Result<()> {
    let m = make_model("winding", &json!({}))?;
    println!("{:>8} {:>12} {:>10} {:>12}", "t", "d_Kol", "+/-", "4/log 8t");
    for t in [1e1, 1e2, 1e3, 1e4, 1e5, 1e6] {
        let est = cf_dkol(|xi| m.cf_of(t, xi).unwrap(), &m.law, &GridSpec::default(), HARNESS_TOL)?;
        println!("{t:>8.0e} {:>12.6} {:>10.1e} {:>12.6}", est.value, est.uncertainty, 4.0 / (8.0 * t).ln());
    }
    Ok(())
}
