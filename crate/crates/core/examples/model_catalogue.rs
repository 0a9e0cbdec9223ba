//! Every worked model with its target law, declared zone, constant and bound.
//!
//! ```bash
//! cargo run --release --example model_catalogue
//! ```

use modstable::model_zoo::{make_model, KINDS};
use modstable::zone_control::kolmogorov_constant;
use serde_json::json;

fn main() -> modstable::Result<()> {
    for kind in KINDS {
        let params = match kind {
            "compound_poisson" | "ou_process" => json!({"alpha": 1.5}),
            "correlated_walk" => json!({"D": 3, "p": 0.5}),
            "er_subgraph" => json!({"p": 0.1}),
            "ising" => json!({"beta": 0.2, "h": 0.5}),
            _ => json!({}),
        };
        let m = make_model(kind, &params)?;
        println!("{kind}: {}", m.notes);
        println!(
            "  law alpha={} beta={} c={:.4}; cf {}, sampler {}, lattice {}",
            m.law.alpha,
            m.law.beta,
            m.law.c,
            m.has_cf(),
            m.has_sampler(),
            m.is_lattice()
        );
        if let Some(z) = m.zone() {
            let kc = kolmogorov_constant(&z.law, z.v, z.k, z.k1);
            println!("  zone gamma={} v={} K={:.4} K1={:.4}: C = {:.4}", z.gamma, z.v, z.k, z.k1, kc.c);
        }
        let size = 1000.0;
        match m.bound_of(size) {
            Some(b) => println!("  at size {size}: t_n = {:.4}, bound {b:.6}", m.t_of(size)),
            None => println!("  at size {size}: t_n = {:.4}, rate {:.3e}", m.t_of(size), m.rate_of(size)),
        }
    }
    Ok(())
}
