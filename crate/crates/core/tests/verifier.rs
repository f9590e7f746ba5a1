use dilute_spectra::elliptic::{qpoch1, Truncation};
use dilute_spectra::verifier::{self, identity_table, Recurrence, Sampler, Solution, SuiteOptions};
use num_complex::Complex64;

fn tr() -> Truncation {
    Truncation::default()
}

/// `Π_k (x^k t; q)`, evaluated directly.
fn prod(x: f64, ks: &[u32], t: Complex64, q: f64) -> Complex64 {
    ks.iter()
        .map(|&k| qpoch1(x.powi(k as i32) * t, Complex64::new(q, 0.0), &tr()).unwrap())
        .product()
}

fn solution(x: f64, s: &Solution, t: Complex64) -> Complex64 {
    prod(x, s.short_num, t, x.powi(40)) / prod(x, s.short_den, t, x.powi(40)) * prod(x, s.long_num, t, x.powi(72))
        / prod(x, s.long_den, t, x.powi(72))
}

fn recurrence_gap(x: f64, r: &Recurrence, s: &Solution, t: Complex64) -> f64 {
    let factor = prod(x, r.num, t, x.powi(40)) / prod(x, r.den, t, x.powi(40));
    let rhs = factor * solution(x, s, x.powi(12) * t) / solution(x, s, x.powi(24) * t);
    (solution(x, s, t) / rhs - 1.0).norm()
}

#[test]
fn suites_pass_with_default_settings() {
    let opts = SuiteOptions::default();
    for report in [
        verifier::poch_suite(&opts).unwrap(),
        verifier::recurrence_suite(&opts).unwrap(),
        verifier::assembly_suite(&opts).unwrap(),
    ] {
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:?}");
    }
}

#[test]
fn suites_are_deterministic_per_seed() {
    let opts = SuiteOptions {
        seed: 42,
        ..SuiteOptions::default()
    };
    assert_eq!(verifier::assembly_suite(&opts).unwrap(), verifier::assembly_suite(&opts).unwrap());
    let other = SuiteOptions { seed: 43, ..opts.clone() };
    assert_ne!(verifier::assembly_suite(&opts).unwrap(), verifier::assembly_suite(&other).unwrap());
}

#[test]
fn printed_spectator_recurrence_is_inverted() {
    // at x = 0.5 the high powers of x are visible in double precision
    let x = 0.5;
    let table = identity_table(3).unwrap();
    let printed = table.printed_reflected_recurrence.unwrap();
    let mut s = Sampler::new(11);
    let mut worst_printed: f64 = 0.0;
    let mut worst_used: f64 = 0.0;
    for _ in 0..5 {
        let v = s.unit();
        worst_printed = worst_printed.max(recurrence_gap(x, &printed, &table.reflected, v));
        worst_used = worst_used.max(recurrence_gap(x, &table.reflected_recurrence, &table.reflected, v));
    }
    assert!(worst_used < 1e-12, "{worst_used}");
    assert!(worst_printed > 1e-9, "{worst_printed}");
}

#[test]
fn every_recurrence_holds_at_a_large_nome() {
    let x = 0.5;
    let mut s = Sampler::new(5);
    for j in 1..=7 {
        let t = identity_table(j).unwrap();
        for _ in 0..5 {
            let a = s.unit();
            assert!(recurrence_gap(x, &t.forward_recurrence, &t.forward, a) < 1e-12, "j = {j}");
            assert!(recurrence_gap(x, &t.reflected_recurrence, &t.reflected, a) < 1e-12, "j = {j}");
        }
    }
}

#[test]
fn exact_check_catches_the_printed_form() {
    for j in 1..=7 {
        let e = verifier::check_recurrence_exact(j).unwrap();
        assert_eq!(e.mismatches, 0);
        assert_eq!(e.printed_consistent.is_some(), j == 3);
    }
}

#[test]
fn closed_forms_match_the_excitation_ratio() {
    let mut s = Sampler::new(9);
    let ws: Vec<_> = (0..20).map(|_| s.annulus(0.5, 2.0)).collect();
    for j in 1..=7 {
        let c = verifier::check_closed_form(j, 0.1, &ws, &tr()).unwrap();
        assert!(c.max_deviation < 1e-10 && c.samples == 20, "{c:?}");
    }
}

#[test]
fn tiny_nome_trivialises_the_recurrences() {
    let samples: Vec<_> = (0..4).map(|k| (Complex64::from_polar(1.0, k as f64), 1e-3)).collect();
    let r = verifier::check_recurrence_solution(7, &samples, &tr()).unwrap();
    assert!(r.cases.iter().all(|c| c.max_deviation < 1e-15));
}
