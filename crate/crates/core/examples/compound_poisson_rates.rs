//! Convergence rates of Poisson(n)-fold sums of stable jumps, measured by
//! inverting the exact characteristic function, with the log-log slope.
//!
//! ```bash
//! cargo run --release --example compound_poisson_rates
//! ```

use modstable::empirics::{loglog_slope, verify_model};
use modstable::model_zoo::make_model;
use serde_json::json;

fn main() -> modstable::Result<()> {
    let sizes: Vec<f64> = (4..=12).step_by(2).map(|k| 2f64.powi(k)).collect();
    for alpha in [1.5, 1.0, 0.7] {
        let m = make_model("compound_poisson", &json!({"alpha": alpha}))?;
        let rows = verify_model(&m, &sizes, 0, 0)?;
        println!("alpha = {alpha}");
        for r in &rows {
            println!(
                "  n = {:>5}: d_Kol = {:.4e}, zone bound {:.4e}, rate {:.4e}",
                r.size,
                r.dkol.value,
                r.bound.unwrap_or(f64::NAN),
                m.rate_of(r.size)
            );
        }
        let ys: Vec<f64> = rows.iter().map(|r| r.dkol.value).collect();
        println!("  slope {:.3}", loglog_slope(&sizes, &ys));
    }
    Ok(())
}
