//! Kolmogorov bounds for sums with uniform cumulant bounds
//! |κ⁽ʳ⁾(Sₙ)| ≤ N r^{r−2} (2D)^{r−1} A^r.
//!
//! ```bash
//! cargo run --release --example cumulant_route
//! ```

use modstable::cumulant_core::{
    cumulant_kol_bound, janson_diagnostic, refined_gaussian_constant, truncation_bound, zone_from_cumulants,
    CumulantBoundParams, KolVariant,
};
use modstable::zone_control::kolmogorov_constant;

fn main() -> modstable::Result<()> {
    // N = 10⁴ summands, degree D = 4, |Aᵢ| ≤ 1, Var Sₙ = 2·10⁴
    let p = CumulantBoundParams::new(4.0, 1e4, 1.0, 2e4)?;
    println!("sigma_tilde^2 = {}", p.sigma_tilde2());
    for r in 2..=5 {
        println!("|kappa{r}| <= {:.4e}", p.cumulant_bound(r));
    }
    for v in [KolVariant::Standard, KolVariant::SigmaLeA, KolVariant::Tradeoff] {
        match cumulant_kol_bound(&p, v) {
            Ok(b) => println!("{v:?}: d_Kol <= {b:.6}"),
            Err(e) => println!("{v:?}: {e}"),
        }
    }

    let cz = zone_from_cumulants(&p);
    let kc = kolmogorov_constant(&cz.zone.law, cz.zone.v, cz.zone.k, cz.zone.k1);
    println!("zone: t_n = {:.4}, scale = {:.4}, constant {:.4}", cz.t_n, cz.scale, kc.c);

    let (c, rho, lambda) = refined_gaussian_constant(KolVariant::Standard);
    println!("refined constant {c:.4} at rho = {rho:.4}, lambda = {lambda:.4}");

    let t = truncation_bound(5.0, 1.0, 1e4, 4.0, 2e4)?;
    println!("truncated route (delta = 5): {:.6} with exponent {:.4}", t.value, t.exponent);
    println!("Janson diagnostic at eps = 0.1: {:.4}", janson_diagnostic(&p, 0.1));
    Ok(())
}
