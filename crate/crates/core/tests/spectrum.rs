use std::f64::consts::PI;

use dilute_spectra::elliptic::Truncation;
use dilute_spectra::model::{self, NomeFrame, Parity};
use dilute_spectra::spectrum;

fn tr() -> Truncation {
    Truncation::default()
}

fn cos(k: f64, n: f64) -> f64 {
    (k * PI / n).cos()
}

/// E₈ mass ratios from the cosine-product formulas, without any a-set.
fn e8_oracle() -> Vec<f64> {
    let m2 = 2.0 * cos(1.0, 5.0);
    vec![
        1.0,
        m2,
        2.0 * cos(1.0, 30.0),
        2.0 * m2 * cos(7.0, 30.0),
        2.0 * m2 * cos(2.0, 15.0),
        2.0 * m2 * cos(1.0, 30.0),
        4.0 * m2 * cos(1.0, 5.0) * cos(7.0, 30.0),
        4.0 * m2 * cos(1.0, 5.0) * cos(2.0, 15.0),
    ]
}

/// E₆ mass ratios, conjugate pairs listed twice.
fn e6_oracle() -> Vec<f64> {
    let m2 = 2.0 * cos(1.0, 4.0);
    let m3 = 2.0 * cos(1.0, 12.0);
    vec![1.0, 1.0, m2, m3, m3, m2 * m3]
}

fn trig_ratios(l: u32) -> Vec<f64> {
    let params = model::params_for(l).unwrap();
    let table = model::excitation_table(l).unwrap();
    let w1 = spectrum::trig_weight(&table[0], &params);
    table.iter().map(|s| spectrum::trig_weight(s, &params) / w1).collect()
}

#[test]
fn e8_and_e6_ratios_match_cosine_products() {
    for (l, oracle) in [(3, e8_oracle()), (6, e6_oracle())] {
        let got = trig_ratios(l);
        assert_eq!(got.len(), oracle.len());
        for (g, o) in got.iter().zip(&oracle) {
            assert!((g - o).abs() < 1e-12, "L = {l}: {g} vs {o}");
        }
    }
}

#[test]
fn e7_ratios_at_small_nome() {
    // printed to six decimals
    let printed = [1.0, 1.285575, 1.879385, 1.969615, 2.532088, 2.879385, 3.701666];
    let params = model::params_for(4).unwrap();
    let frame = NomeFrame::from_p(1e-6, &params).unwrap();
    let s = spectrum::mass_spectrum(&params, &frame, &tr()).unwrap();
    let m1 = s.entries[0].mass;
    for (e, want) in s.entries.iter().zip(printed) {
        assert!((e.mass / m1 / want - 1.0).abs() < 1e-4, "{}: {}", e.index, e.mass / m1);
    }
    let reference = spectrum::e7_reference();
    for (e, r) in s.entries.iter().zip(&reference) {
        assert_eq!(e.parity, Some(r.parity));
        assert!((r.value / printed[r.index - 1] - 1.0).abs() < 1e-6);
    }
    assert_eq!(reference[0].parity, Parity::Odd);
}

#[test]
fn masses_are_ordered_near_criticality() {
    for l in model::SUPPORTED_L {
        let params = model::params_for(l).unwrap();
        let frame = NomeFrame::from_p(1e-6, &params).unwrap();
        let s = spectrum::mass_spectrum(&params, &frame, &tr()).unwrap();
        for pair in s.entries.windows(2) {
            assert!(pair[1].mass >= pair[0].mass * (1.0 - 1e-12), "L = {l}");
        }
    }
}

#[test]
fn amplitudes_reproduce_printed_digits() {
    let a = spectrum::amplitudes();
    let truncated = |v: f64, digits: i32| (v * 10f64.powi(digits)).trunc() / 10f64.powi(digits);
    assert_eq!(truncated(a.fs_xi1_sq, 5), 0.09420);
    assert_eq!(truncated(a.r_xi_plus, 6), 0.101678);
    assert_eq!(truncated(a.r_xi_minus, 6), 0.083889);
    assert!((a.xi0_ratio - 2.0 * cos(5.0, 18.0)).abs() < 1e-15);
    assert_eq!(truncated(a.xi0_ratio, 6), 1.285575);
}

#[test]
fn critical_exponent_and_prefactor() {
    let params = model::params_for(4).unwrap();
    let spec = model::excitation(4, 1).unwrap();
    let m = |p: f64| spectrum::mass_theta4(&spec, p, &params, &tr()).unwrap();
    let slope = (m(1e-5) / m(1e-8)).ln() / (1e-5f64 / 1e-8).ln();
    assert!((slope - 5.0 / 9.0).abs() < 0.005, "{slope}");
    let pref = m(1e-6) / (8.0 * 1e-6f64.powf(5.0 / 9.0) * (PI / 3.0).sin());
    assert!((pref - 1.0).abs() < 0.01, "{pref}");
}

#[test]
fn representations_agree_on_the_fixed_grid() {
    let params = model::params_for(4).unwrap();
    for p in [0.01, 0.1, 0.5] {
        let frame = NomeFrame::from_p(p, &params).unwrap();
        for spec in model::excitation_table(4).unwrap() {
            let a = spectrum::mass_product_form(&spec, &frame, &params, &tr()).unwrap();
            let b = spectrum::mass_theta4_l4(&spec, p, &tr()).unwrap();
            assert!((a - b).abs() < 1e-9, "p = {p}, j = {}: {a} vs {b}", spec.index);
        }
    }
}

#[test]
fn invalid_nomes_are_rejected() {
    let params = model::params_for(4).unwrap();
    assert!(NomeFrame::from_p(0.0, &params).is_err());
    assert!(NomeFrame::from_p(1.0, &params).is_err());
    assert!(NomeFrame::from_x(-0.1, &params).is_err());
    assert!(model::params_for(5).is_err());
}
