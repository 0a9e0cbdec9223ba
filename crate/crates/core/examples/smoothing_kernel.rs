//! The smoothing kernel ρ, its Fourier transform and the mollified step f₁.
//!
//! ```bash
//! cargo run --release --example smoothing_kernel
//! ```

use modstable::smoothing::{f1, f1_shifted_mass, rho, rho_envelope, rho_hat, rho_integral, tao_bound};

fn main() -> modstable::Result<()> {
    println!("{:>6} {:>14} {:>14}", "x", "rho", "envelope");
    for x in [0.0, 1.0, 2.5, 5.0, 10.0] {
        println!("{x:>6} {:>14.6e} {:>14.6e}", rho(x), rho_envelope(x));
    }
    let mass = rho_integral(-2000.0, 2000.0, 1e-12)?;
    println!("mass on [-2000, 2000]: {:.12} (+/- {:.1e})", mass.value, mass.error);

    println!("\n{:>6} {:>14}", "xi", "rho_hat");
    for xi in [0.0, 0.25, 0.5, 0.75, 1.0, 1.5] {
        println!("{xi:>6} {:>14.10}", rho_hat(xi, 1e-12)?.value);
    }

    println!("\n{:>6} {:>14} {:>14}", "K", "f1(K)", "32/(pi K^3)");
    for k in [2.0, 5.0, 10.0] {
        println!("{k:>6} {:>14.6e} {:>14.6e}", f1(k, 1e-12)?, 32.0 / (std::f64::consts::PI * k * k * k));
    }
    println!("shifted mass at K = 4: {:.6}", f1_shifted_mass(4.0, 1e-12)?);
    println!("Tao bound (B=1, eps=0.1, m=0.3, lambda=0.2): {:.6}", tao_bound(1.0, 0.1, 0.3, 0.2));
    Ok(())
}
