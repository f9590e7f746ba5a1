use std::f64::consts::PI;

use dilute_spectra::elliptic::{elliptic_e, ln_elliptic_e, ln_elliptic_e_log, qpoch1, qpoch2, theta4, Truncation};
use dilute_spectra::model::{self, NomeFrame};
use dilute_spectra::spectrum::{self, wrap_log};
use num_complex::Complex64;
use proptest::prelude::*;

fn tr() -> Truncation {
    Truncation::default()
}

fn polar(r: f64, th: f64) -> Complex64 {
    Complex64::from_polar(r, th)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

/// `E(z, q)` as the literal product over `n = 1..` until the factors are 1.
fn e_literal(z: Complex64, q: Complex64) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    let mut qn1 = Complex64::new(1.0, 0.0);
    for _ in 0..10_000 {
        let qn = qn1 * q;
        v *= (1.0 - qn1 * z) * (1.0 - qn / z) * (1.0 - qn);
        qn1 = qn;
        if qn1.norm() < 1e-20 {
            break;
        }
    }
    v
}

/// `ϑ₄(u, q) = 1 + 2 Σ (−1)^n q^{n²} cos 2nu`.
fn theta4_series(u: f64, q: f64) -> f64 {
    let mut s = 1.0;
    for n in 1..200 {
        let t = q.powi(n * n);
        if t < 1e-30 {
            break;
        }
        s += 2.0 * if n % 2 == 0 { 1.0 } else { -1.0 } * t * (2.0 * n as f64 * u).cos();
    }
    s
}

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (0.2f64..2.0, -PI..PI).prop_map(|(r, t)| polar(r, t))
}

fn nome_strategy() -> impl Strategy<Value = Complex64> {
    (0.05f64..0.9, -PI..PI).prop_map(|(r, t)| polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn single_product_shift(z in z_strategy(), p in nome_strategy()) {
        let lhs = qpoch1(z, p, &tr()).unwrap() / qpoch1(z * p, p, &tr()).unwrap();
        prop_assert!(close(lhs, 1.0 - z, 1e-10));
    }

    #[test]
    fn double_product_shift(z in z_strategy(), p in nome_strategy(), q in nome_strategy()) {
        let lhs = qpoch2(z, p, q, &tr()).unwrap() / qpoch2(z * p, p, q, &tr()).unwrap();
        prop_assert!(close(lhs, qpoch1(z, q, &tr()).unwrap(), 1e-10));
    }

    #[test]
    fn double_product_cross_shift(z in z_strategy(), p in nome_strategy(), q in nome_strategy()) {
        let zqp = z * q / p;
        let lhs = qpoch2(zqp, p, q, &tr()).unwrap() / qpoch2(z, p, q, &tr()).unwrap();
        let rhs = qpoch1(zqp, q, &tr()).unwrap() / qpoch1(z, p, &tr()).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn e_matches_literal_product(z in z_strategy(), q in nome_strategy()) {
        prop_assert!(close(elliptic_e(z, q, &tr()).unwrap(), e_literal(z, q), 1e-10));
    }

    #[test]
    fn e_reflection_and_quasi_periodicity(z in z_strategy(), q in nome_strategy()) {
        let e = elliptic_e(z, q, &tr()).unwrap();
        prop_assert!(close(elliptic_e(q / z, q, &tr()).unwrap(), e, 1e-10));
        prop_assert!(close(elliptic_e(q * z, q, &tr()).unwrap(), -e / z, 1e-10));
    }

    #[test]
    fn log_reduced_e_agrees_modulo_two_pi(
        lnr in -8.0f64..8.0, th in -PI..PI, lnq in -6.0f64..-0.3,
    ) {
        let ln_z = Complex64::new(lnr, th);
        let q = Complex64::new(lnq.exp(), 0.0);
        let a = ln_elliptic_e_log(ln_z, lnq, &tr()).unwrap();
        let b = ln_elliptic_e(ln_z.exp(), q, &tr()).unwrap();
        let d = wrap_log(a - b);
        prop_assert!(d.norm() < 1e-9 * (1.0 + a.re.abs()), "{a} vs {b}");
    }

    #[test]
    fn wrap_log_lands_in_principal_strip(re in -5.0f64..5.0, im in -100.0f64..100.0) {
        let w = wrap_log(Complex64::new(re, im));
        prop_assert!(w.im > -PI && w.im <= PI);
        prop_assert!(((w.im - im) / (2.0 * PI)).fract().abs() < 1e-9
            || (1.0 - ((w.im - im) / (2.0 * PI)).fract().abs()) < 1e-9);
    }

    #[test]
    fn theta4_product_matches_series(u in -PI..PI, q in 0.0f64..0.7) {
        let a = theta4(u, q, &tr()).unwrap();
        prop_assert!((a - theta4_series(u, q)).abs() < 1e-12);
    }

    #[test]
    fn excitation_ratio_inversion(
        l_idx in 0usize..3, j in 0usize..8, lnr in -0.7f64..0.7, th in -PI..PI, x in 0.02f64..0.3,
    ) {
        let l = model::SUPPORTED_L[l_idx];
        let params = model::params_for(l).unwrap();
        let table = model::excitation_table(l).unwrap();
        let spec = &table[j % table.len()];
        let frame = NomeFrame::from_x(x, &params).unwrap();
        let w = polar(lnr.exp(), th);
        let r = spectrum::excitation_ratio(spec, w, &frame, &params, &tr()).unwrap();
        let ri = spectrum::excitation_ratio(spec, w.inv(), &frame, &params, &tr()).unwrap();
        prop_assert!(close(r * ri, Complex64::new(1.0, 0.0), 1e-10));
    }

    #[test]
    fn theta4_and_product_masses_agree(l_idx in 0usize..3, j in 0usize..8, lnp in -9.0f64..-0.7) {
        let l = model::SUPPORTED_L[l_idx];
        let params = model::params_for(l).unwrap();
        let table = model::excitation_table(l).unwrap();
        let spec = &table[j % table.len()];
        let p = lnp.exp();
        let frame = NomeFrame::from_p(p, &params).unwrap();
        let a = spectrum::mass_theta4(spec, p, &params, &tr()).unwrap();
        let b = spectrum::mass_product_form(spec, &frame, &params, &tr()).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * a.max(1.0), "{a} vs {b}");
        prop_assert!(a > 0.0);
    }

    #[test]
    fn masses_grow_with_p(l_idx in 0usize..3, lnp in -12.0f64..-1.0) {
        let l = model::SUPPORTED_L[l_idx];
        let params = model::params_for(l).unwrap();
        let p = lnp.exp();
        for spec in model::excitation_table(l).unwrap() {
            let lo = spectrum::mass_theta4(&spec, p, &params, &tr()).unwrap();
            let hi = spectrum::mass_theta4(&spec, p * 1.1, &params, &tr()).unwrap();
            prop_assert!(hi > lo);
        }
    }
}

#[test]
fn ratio_is_real_on_the_positive_axis() {
    let params = model::params_for(4).unwrap();
    let frame = NomeFrame::from_x(0.1, &params).unwrap();
    for spec in model::excitation_table(4).unwrap() {
        for w in [0.3, 0.9, 1.7] {
            let r = spectrum::excitation_ratio(&spec, Complex64::new(w, 0.0), &frame, &params, &tr()).unwrap();
            assert!(r.im.abs() < 1e-12 * r.norm());
        }
    }
}
