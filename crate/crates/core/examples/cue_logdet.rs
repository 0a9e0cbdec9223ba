//! Real part of log det(I − U) for a Haar unitary U of size n, standardized,
//! against the Gaussian law.
//!
//! ```bash
//! cargo run --release --example cue_logdet
//! ```

use modstable::empirics::verify_model;
use modstable::model_zoo::{cue_time, make_model};
use serde_json::json;

fn main() -> modstable::Result<()> {
    let m = make_model("cue_logdet", &json!({}))?;
    let sizes = [10.0, 20.0, 50.0, 100.0, 500.0];
    let rows = verify_model(&m, &sizes, 0, 0)?;
    println!("{:>6} {:>10} {:>12} {:>12} {:>18}", "n", "t_n", "d_Kol", "bound", "d_Kol (log n)^1.5");
    for r in &rows {
        println!(
            "{:>6} {:>10.5} {:>12.6} {:>12.6} {:>18.6}",
            r.size,
            cue_time(r.size as usize),
            r.dkol.value,
            r.bound.unwrap(),
            r.dkol.value * r.size.ln().powf(1.5)
        );
    }
    Ok(())
}
