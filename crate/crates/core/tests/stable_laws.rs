use modstable::stable_laws::{StableLaw, DEFAULT_TOL};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{E, PI, SQRT_2};

const XS: [f64; 5] = [-2.0, -0.5, 0.0, 0.7, 3.0];

fn law(c: f64, a: f64, b: f64) -> StableLaw {
    StableLaw::new(c, a, b).unwrap()
}

#[test]
fn levy_exponent_examples() {
    let g = law(1.0 / SQRT_2, 2.0, 0.0);
    assert!((g.levy_exponent(3.0) - Complex64::new(-4.5, 0.0)).norm() < 1e-12);
    for l in [g, StableLaw::cauchy(), law(1.0, 1.0, 0.7), law(2.0, 0.3, -1.0)] {
        assert_eq!(l.levy_exponent(0.0), Complex64::new(0.0, 0.0));
    }
    let lv = StableLaw::levy();
    assert!((lv.levy_exponent(4.0) - Complex64::new(-2.0, 2.0)).norm() < 1e-12);
}

#[test]
fn char_fn_examples() {
    assert!((StableLaw::cauchy().char_fn(1.0).re - (-1f64).exp()).abs() < 1e-15);
    assert!((StableLaw::gaussian().char_fn(2.0).re - (-2f64).exp()).abs() < 1e-15);
    assert_eq!(law(1.3, 1.1, 0.4).char_fn(0.0), Complex64::new(1.0, 0.0));
}

#[test]
fn closed_form_densities_and_cdfs() {
    let g = StableLaw::gaussian();
    assert!((g.density(0.0, DEFAULT_TOL).unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-9);
    assert!((g.cdf(0.0, DEFAULT_TOL).unwrap() - 0.5).abs() < 1e-9);
    let c = StableLaw::cauchy();
    assert!((c.density(1.0, DEFAULT_TOL).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-9);
    assert!((c.cdf(1.0, DEFAULT_TOL).unwrap() - 0.75).abs() < 1e-9);
    let lv = StableLaw::levy();
    let want = (-0.5f64).exp() / (2.0 * PI).sqrt();
    assert!((lv.density(1.0, DEFAULT_TOL).unwrap() - want).abs() < 1e-9);
    assert!(lv.cdf(1e-3, DEFAULT_TOL).unwrap().abs() < 1e-9);
    assert_eq!(lv.closed_form_cdf(-1.0), Some(0.0));
}

#[test]
fn inversion_matches_reference_stable_tables() {
    let tables = [
        (
            (1.5, 0.5),
            [0.11629980196823653, 0.46218656010166814, 0.5983890784336222, 0.7494041133086042, 0.9390164776824826],
            [0.13330660809619307, 0.2842838009885776, 0.2541126866022294, 0.17491732165310464, 0.029413663451496142],
        ),
        (
            (0.7, 0.0),
            [0.1837711883403037, 0.34044046420450724, 0.5, 0.6979846552802429, 0.8539429733020361],
            [0.05014104356161447, 0.22043975216791337, 0.4029241361418608, 0.16724700736433748, 0.028504199690227112],
        ),
        (
            (1.2, -0.3),
            [0.10899029505483271, 0.22375704379734696, 0.3022386719995801, 0.46752268185054346, 0.9120319912041481],
            [0.04270456570623389, 0.12854515554600734, 0.18831120457832407, 0.2795584075664225, 0.05564225409069094],
        ),
    ];
    for ((a, b), cdfs, pdfs) in tables {
        let l = law(1.0, a, b);
        for (i, &x) in XS.iter().enumerate() {
            let f = l.cdf(x, 1e-10).unwrap();
            let p = l.density(x, 1e-10).unwrap();
            assert!((f - cdfs[i]).abs() < 1e-8, "alpha {a} beta {b} x {x}: cdf {f} vs {}", cdfs[i]);
            assert!((p - pdfs[i]).abs() < 1e-8, "alpha {a} beta {b} x {x}: pdf {p} vs {}", pdfs[i]);
        }
    }
}

#[test]
fn density_sup_bound_examples() {
    assert!((StableLaw::gaussian().density_sup_bound() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
    assert!((StableLaw::cauchy().density_sup_bound() - 1.0 / PI).abs() < 1e-15);
    assert!((law(1.0, 0.5, 0.0).density_sup_bound() - 2.0 / PI).abs() < 1e-14);
    let l = law(0.8, 1.4, 0.6);
    let m = l.density_sup_bound();
    for x in [-1.0, -0.3, 0.0, 0.2, 0.5, 1.0] {
        assert!(l.density(x, 1e-10).unwrap() <= m);
    }
}

#[test]
fn quantile_inverts_cdf() {
    for l in [StableLaw::gaussian(), StableLaw::cauchy(), law(1.0, 1.5, 0.5), law(2.0, 0.8, -0.4)] {
        for p in [0.05, 0.5, 0.9] {
            let q = l.quantile(p, 1e-10).unwrap();
            assert!((l.cdf_any(q, 1e-10).unwrap() - p).abs() < 1e-8);
        }
    }
}

#[test]
fn gaussian_sample_is_centered() {
    let xs = StableLaw::gaussian().sample(11, 1_000_000);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!(mean.abs() < 0.004, "mean {mean}");
}

#[test]
fn cauchy_sample_is_symmetric() {
    let xs = StableLaw::cauchy().sample(12, 100_000);
    let below = xs.iter().filter(|&&x| x <= 0.0).count() as f64 / xs.len() as f64;
    assert!((below - 0.5).abs() < 0.006);
}

#[test]
fn skewed_sample_matches_char_fn() {
    for (l, seed) in [(law(1.0, 1.5, 0.5), 13), (law(1.0, 1.0, 0.6), 14), (law(0.7, 0.6, -0.8), 15)] {
        let xs = l.sample(seed, 100_000);
        let m = xs.len() as f64;
        let re = xs.iter().map(|x| x.cos()).sum::<f64>() / m;
        let im = xs.iter().map(|x| x.sin()).sum::<f64>() / m;
        let want = l.char_fn(1.0);
        assert!((re - want.re).abs() < 0.013, "{l:?}: re {re} vs {}", want.re);
        assert!((im - want.im).abs() < 0.013, "{l:?}: im {im} vs {}", want.im);
    }
}

#[test]
fn renormalize_examples() {
    assert_eq!(law(1.0, 2.0, 0.0).renormalize(4.0, 4.0), 2.0);
    assert_eq!(StableLaw::cauchy().renormalize(6.0, 3.0), 2.0);
    assert!((law(1.0, 1.0, 1.0).renormalize(0.0, E.powf(PI)) + 2.0).abs() < 1e-12);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(StableLaw::new(0.0, 1.0, 0.0).is_err());
    assert!(StableLaw::new(1.0, 2.5, 0.0).is_err());
    assert!(StableLaw::new(1.0, 0.0, 0.0).is_err());
    assert!(StableLaw::new(1.0, 1.0, 1.5).is_err());
}

proptest! {
    #[test]
    fn real_part_of_exponent_is_nonpositive(c in 0.1f64..3.0, a in 0.1f64..=2.0, b in -1.0f64..=1.0, xi in -50.0f64..50.0) {
        let l = law(c, a, b);
        prop_assert!(l.levy_exponent(xi).re <= 0.0);
        prop_assert!(l.char_fn(xi).norm() <= 1.0 + 1e-15);
    }

    #[test]
    fn exponent_scales_with_c(c in 0.1f64..3.0, a in 0.1f64..=2.0, b in -1.0f64..=1.0, xi in 0.01f64..20.0) {
        prop_assume!(a != 1.0);
        let l = law(c, a, b);
        let unit = law(1.0, a, b);
        let lhs = l.levy_exponent(xi);
        let rhs = unit.levy_exponent(c * xi);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
}
