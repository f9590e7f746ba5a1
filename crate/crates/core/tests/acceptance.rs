//! One line per acceptance criterion; run with `--nocapture` to see them.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use dilute_spectra::bethe::{self, phase_distance_from_minus_one, SolverOptions};
use dilute_spectra::elliptic::Truncation;
use dilute_spectra::model::{self, NomeFrame};
use dilute_spectra::spectrum;
use dilute_spectra::verifier::{self, Sampler, SuiteOptions};

struct Outcome {
    passed: bool,
    detail: String,
}

fn tr() -> Truncation {
    Truncation::default()
}

fn run(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let passed = out.passed && in_time;
    println!(
        "[{}] {id}. {title}: {} ({:.3} s, budget {} s{})",
        if passed { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs(),
        if in_time { "" } else { ", over budget" },
    );
    passed
}

fn e7_ratios() -> Outcome {
    let printed = [1.0, 1.285575, 1.879385, 1.969615, 2.532088, 2.879385, 3.701666];
    let params = model::params_for(4).unwrap();
    let frame = NomeFrame::from_p(1e-6, &params).unwrap();
    let s = spectrum::mass_spectrum(&params, &frame, &tr()).unwrap();
    let m1 = s.entries[0].mass;
    let worst = s
        .entries
        .iter()
        .zip(printed)
        .map(|(e, v)| (e.mass / m1 / v - 1.0).abs())
        .fold(0.0, f64::max);
    Outcome {
        passed: worst < 1e-4,
        detail: format!("max relative error {worst:.2e} (< 1e-4)"),
    }
}

fn e8_e6_ratios() -> Outcome {
    let c = |k: f64, n: f64| (k * PI / n).cos();
    let m2 = 2.0 * c(1.0, 5.0);
    let e8 = [
        1.0,
        m2,
        2.0 * c(1.0, 30.0),
        2.0 * m2 * c(7.0, 30.0),
        2.0 * m2 * c(2.0, 15.0),
        2.0 * m2 * c(1.0, 30.0),
        4.0 * m2 * c(1.0, 5.0) * c(7.0, 30.0),
        4.0 * m2 * c(1.0, 5.0) * c(2.0, 15.0),
    ];
    let (a, b) = (2.0 * c(1.0, 4.0), 2.0 * c(1.0, 12.0));
    let e6 = [1.0, 1.0, a, b, b, a * b];
    let mut worst: f64 = 0.0;
    for (l, oracle) in [(3, &e8[..]), (6, &e6[..])] {
        let params = model::params_for(l).unwrap();
        let table = model::excitation_table(l).unwrap();
        let w1 = spectrum::trig_weight(&table[0], &params);
        for (spec, o) in table.iter().zip(oracle) {
            worst = worst.max((spectrum::trig_weight(spec, &params) / w1 - o).abs());
        }
    }
    Outcome {
        passed: worst < 1e-12,
        detail: format!("max deviation from cosine products {worst:.2e} (< 1e-12)"),
    }
}

fn amplitudes() -> Outcome {
    let a = spectrum::amplitudes();
    let digits = |v: f64, d: i32| (v * 10f64.powi(d)).trunc() / 10f64.powi(d);
    let checks = [
        digits(a.fs_xi1_sq, 5) == 0.09420,
        digits(a.r_xi_plus, 6) == 0.101678,
        digits(a.r_xi_minus, 6) == 0.083889,
        (a.xi0_ratio - 2.0 * (5.0 * PI / 18.0).cos()).abs() < 1e-15 && digits(a.xi0_ratio, 6) == 1.285575,
    ];
    Outcome {
        passed: checks.iter().all(|&c| c),
        detail: format!(
            "{:.7} {:.7} {:.7} {:.7}",
            a.fs_xi1_sq, a.r_xi_plus, a.r_xi_minus, a.xi0_ratio
        ),
    }
}

fn representations() -> Outcome {
    let params = model::params_for(4).unwrap();
    let mut worst: f64 = 0.0;
    for p in [0.01, 0.1, 0.5] {
        let frame = NomeFrame::from_p(p, &params).unwrap();
        for spec in model::excitation_table(4).unwrap() {
            let theta = spectrum::mass_theta4_l4(&spec, p, &tr()).unwrap();
            for m in [
                spectrum::mass(&spec, &frame, &params, &tr()).unwrap(),
                spectrum::mass_product_form(&spec, &frame, &params, &tr()).unwrap(),
            ] {
                worst = worst.max((m - theta).abs());
            }
        }
    }
    Outcome {
        passed: worst < 1e-9,
        detail: format!("max |mass - theta4 form| {worst:.2e} (< 1e-9)"),
    }
}

fn closed_forms() -> Outcome {
    let mut s = Sampler::new(0);
    let ws: Vec<_> = (0..20).map(|_| s.annulus(0.5, 2.0)).collect();
    let mut worst: f64 = 0.0;
    let mut all = true;
    for j in 1..=7 {
        let c = verifier::check_closed_form(j, 0.1, &ws, &tr()).unwrap();
        all &= c.samples == 20;
        worst = worst.max(c.max_deviation);
    }
    Outcome {
        passed: all && worst < 1e-10,
        detail: format!("max relative deviation over 7 x 20 points {worst:.2e} (< 1e-10)"),
    }
}

fn asymptotics() -> Outcome {
    let params = model::params_for(4).unwrap();
    let spec = model::excitation(4, 1).unwrap();
    let m = |p: f64| spectrum::mass_theta4(&spec, p, &params, &tr()).unwrap();
    // least-squares slope over a log grid
    let pts: Vec<(f64, f64)> = (0..=12)
        .map(|k| {
            let p = 1e-8 * 1e3f64.powf(k as f64 / 12.0);
            (p.ln(), m(p).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let pref = m(1e-6) / (8.0 * 1e-6f64.powf(5.0 / 9.0) * (PI / 3.0).sin());
    Outcome {
        passed: (slope - 5.0 / 9.0).abs() < 0.005 && (pref - 1.0).abs() < 0.01,
        detail: format!("slope {slope:.6} (5/9 ± 0.005), prefactor ratio {pref:.6} (1 ± 0.01)"),
    }
}

fn appendix() -> Outcome {
    let opts = SuiteOptions {
        seed: 0,
        xs: vec![0.05, 0.1, 0.2],
        samples: 10,
        truncation: tr(),
    };
    let mut report = verifier::recurrence_suite(&opts).unwrap();
    report.extend(verifier::assembly_suite(&opts).unwrap());
    let numeric: Vec<_> = report.cases.iter().filter(|c| c.x.is_some()).collect();
    let worst = numeric.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let enough = numeric.iter().all(|c| c.samples >= 10);
    let exact_ok = report.cases.iter().filter(|c| c.x.is_none()).all(|c| c.passed);
    Outcome {
        passed: enough && exact_ok && worst < 1e-9 && report.passed(),
        detail: format!(
            "{} cases, max deviation {worst:.2e} (< 1e-9), exact coefficient identities {}",
            report.cases.len(),
            if exact_ok { "hold" } else { "FAIL" }
        ),
    }
}

fn finite_size() -> Outcome {
    let params = model::params_for(4).unwrap();
    let opts = SolverOptions::default();
    let mut passed = true;
    let mut parts = Vec::new();
    for j in [1, 2] {
        let mut devs = Vec::new();
        let mut worst_res: f64 = 0.0;
        let mut worst_phase: f64 = 0.0;
        for n in [4, 6, 8] {
            match bethe::measure_excitation(&params, j, n, 0.1, &opts) {
                Ok(m) => {
                    devs.push(m.deviation);
                    let s = &m.excited.state;
                    worst_res = worst_res
                        .max(s.residual.unwrap_or(f64::INFINITY))
                        .max(m.ground.state.residual.unwrap_or(f64::INFINITY));
                    let groups = &s.ansatz.as_ref().unwrap().groups;
                    for (g, b) in groups.iter().zip(s.phases()) {
                        if !g.spectator {
                            worst_phase = worst_phase.max(phase_distance_from_minus_one(b) + (b.norm() - 1.0).abs());
                        }
                    }
                }
                Err(e) => {
                    passed = false;
                    parts.push(format!("j={j} N={n} failed: {e}"));
                }
            }
        }
        let flagged = devs.windows(2).filter(|w| w[1] >= w[0]).count();
        let ok = devs.len() == 3 && flagged <= 1 && devs[2] < devs[0] && worst_res < 1e-10 && worst_phase < 1e-6;
        passed &= ok;
        parts.push(format!(
            "j={j}: deviations {} ({flagged} flagged), residual {worst_res:.1e}, phase {worst_phase:.1e}",
            devs.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(" > "),
        ));
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn kernel_suite() -> Outcome {
    let opts = SuiteOptions {
        samples: 100,
        ..SuiteOptions::default()
    };
    let report = verifier::poch_suite(&opts).unwrap();
    let worst = report.cases.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let enough = report.cases.iter().all(|c| c.samples >= 100);
    Outcome {
        passed: enough && worst < 1e-10 && report.passed(),
        detail: format!("{} identities over 100 samples, max deviation {worst:.2e} (< 1e-10)", report.cases.len()),
    }
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, "E7 mass ratios", s(5), e7_ratios),
        run(2, "E8/E6 ratios", s(1), e8_e6_ratios),
        run(3, "amplitudes", s(1), amplitudes),
        run(4, "representation equivalence", s(5), representations),
        run(5, "closed-form equivalence", s(5), closed_forms),
        run(6, "asymptotic exponent", s(5), asymptotics),
        run(7, "appendix verification", s(60), appendix),
        run(8, "Bethe finite-size property", s(600), finite_size),
        run(9, "kernel property suite", s(10), kernel_suite),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &p)| !p).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
