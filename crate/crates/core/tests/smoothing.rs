use modstable::smoothing::{f1, f1_shifted_mass, f_smooth, rho, rho_envelope, rho_hat, rho_integral, tao_bound};
use std::f64::consts::PI;

const TOL: f64 = 1e-12;

#[test]
fn kernel_values() {
    assert!((rho(0.0) - 3.0 / (8.0 * PI)).abs() < 1e-16);
    assert!(rho(4.0 * PI).abs() < 1e-30);
    assert!(rho(8.0) <= 96.0 / (PI * 8f64.powi(4)));
    for i in 0..1000 {
        let k = 0.05 * i as f64;
        assert!(rho(k) <= rho_envelope(k) * (1.0 + 1e-14));
    }
}

#[test]
fn kernel_has_unit_mass() {
    let inner = rho_integral(-4000.0, 4000.0, 1e-13).unwrap().value;
    // ∫_{|x|>L} ρ = 24/(πL³) + O(L⁻⁴)
    let tail = 24.0 / (PI * 4000f64.powi(3));
    assert!((inner + tail - 1.0).abs() < 1e-10);
}

#[test]
fn kernel_fourier_transform_is_a_cubic_spline() {
    let spline = |xi: f64| {
        let a = xi.abs();
        if a <= 0.5 {
            1.0 - 6.0 * a * a + 6.0 * a.powi(3)
        } else if a <= 1.0 {
            2.0 * (1.0 - a).powi(3)
        } else {
            0.0
        }
    };
    for xi in [0.0, 0.25, 0.5, 0.75, 0.9] {
        let q = rho_hat(xi, 1e-12).unwrap();
        assert!((q.value - spline(xi)).abs() < 1e-7, "xi {xi}: {}", q.value);
    }
    for xi in [1.05, 1.2, 2.0, 4.0] {
        assert!(rho_hat(xi, 1e-12).unwrap().value.abs() < 1e-6);
    }
}

#[test]
fn mollified_heaviside() {
    assert!((f1(0.0, TOL).unwrap() - 0.5).abs() < 1e-12);
    for k in [2.0, 5.0, 10.0, 100.0] {
        assert!(f1(k, TOL).unwrap() <= 32.0 / (PI * k.powi(3)));
    }
    assert!((f1(-1e4, TOL).unwrap() - 1.0).abs() < 1e-10);
    assert!((f_smooth(0.3, 0.2, 0.3, TOL).unwrap() - 0.5).abs() < 1e-12);
    assert!((f_smooth(1.0, 0.25, 1.0, TOL).unwrap() - 0.5).abs() < 1e-12);
    assert!((f_smooth(1.0, 1e-6, 0.9, TOL).unwrap() - 1.0).abs() < 1e-9);
    assert!(f_smooth(1.0, 1e-6, 1.1, TOL).unwrap() < 1e-9);
    let mut prev = 1.0;
    for i in -50..=50 {
        let v = f1(0.3 * i as f64, TOL).unwrap();
        assert!(v <= prev + 1e-14);
        prev = v;
    }
}

#[test]
fn shifted_mass_exceeds_shift_slightly() {
    for k in [1.0, 4.0, 20.0] {
        let m = f1_shifted_mass(k, 1e-12).unwrap();
        assert!(m >= k && m - k <= 48.0 / (PI * k * k), "K {k}: {m}");
    }
}

#[test]
fn smoothing_inequality() {
    assert!(tao_bound(1.0, 1.0, 1.0, 0.5) <= 12.0);
    assert_eq!(tao_bound(3.0, 0.0, 2.0, 0.4), 0.0);
    let want = 2.0 / PI.cbrt() * (4.0 * 2f64.cbrt() + 3.0 * 3f64.cbrt());
    assert!((tao_bound(0.0, 1.0, 1.0, 1.0) - want).abs() < 1e-14);
}
