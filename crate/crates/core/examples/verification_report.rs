//! The verification harness: measure a model at several sizes and write the
//! rows as CSV and JSON.
//!
//! ```bash
//! cargo run --release --example verification_report
//! ```

use modstable::empirics::{emit_report, smallest_passing_size, verify_model, ReportFormat};
use modstable::model_zoo::make_model;
use serde_json::json;

fn main() -> modstable::Result<()> {
    let m = make_model("analytic_zeros", &json!({}))?;
    let rows = verify_model(&m, &[10.0, 100.0, 1000.0], 99, 50_000)?;
    print!("{}", emit_report(&rows, ReportFormat::Csv, None)?);
    print!("{}", emit_report(&rows[..1], ReportFormat::Json, None)?);
    println!("smallest passing size: {:?}", smallest_passing_size(&rows));

    let out = std::env::temp_dir().join("modstable_walk.csv");
    let walk = make_model("correlated_walk", &json!({"D": 2, "p": 0.5}))?;
    let rows = verify_model(&walk, &[100.0, 1000.0], 5, 50_000)?;
    emit_report(&rows, ReportFormat::Csv, Some(&out))?;
    println!("wrote {}", out.display());
    Ok(())
}
