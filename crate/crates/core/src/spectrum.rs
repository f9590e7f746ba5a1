//! Closed-form excitation spectrum, masses, critical asymptotics and the
//! universal amplitudes of the dilute A₄ model.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::elliptic::{elliptic_e, ln_elliptic_e, ln_elliptic_e_log, ln_theta4, Truncation};
use crate::error::{Error, Result};
use crate::model::{self, ExcitationSpec, ModelParams, NomeFrame, Parity, SpectralPoint};

/// Imaginary part tolerated in `ln r_j` at the isotropic point.
pub const REALITY_TOL: f64 = 1e-9;

/// Below this `p` [`mass`] uses the θ₄ form, above it the product form.
pub const CROSSOVER_P: f64 = 0.5;

/// Wraps the imaginary part of a logarithm into `(−π, π]`.
pub fn wrap_log(z: Complex64) -> Complex64 {
    let mut im = (z.im + PI).rem_euclid(2.0 * PI) - PI;
    if im <= -PI {
        im += 2.0 * PI;
    }
    Complex64::new(z.re, im)
}

/// Powers `6sa/g` and `6s(g − a)/g` of `x` attached to one element of an a-set.
fn exponent_pair(a: u32, params: &ModelParams) -> (f64, f64) {
    let k = (6 * params.s * a) as f64 / params.g as f64;
    (k, 6.0 * params.s as f64 - k)
}

/// `ln r_j(w)` with `w` given through its logarithm.
///
/// Every elliptic factor is reduced to its fundamental annulus, so this stays
/// finite for nomes where `x^{±3s}` would leave the floating-point range.
pub fn ln_excitation_ratio_at_log(
    spec: &ExcitationSpec,
    ln_w: Complex64,
    frame: &NomeFrame,
    params: &ModelParams,
    tr: &Truncation,
) -> Result<Complex64> {
    let ln_nome = 12.0 * params.s as f64 * frame.ln_x;
    let i_pi = Complex64::new(0.0, PI);
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in spec.a_set {
        let (k1, k2) = exponent_pair(a, params);
        let mut term = ln_w;
        for k in [k1, k2] {
            let lx = k * frame.ln_x + i_pi;
            term += ln_elliptic_e_log(lx - ln_w, ln_nome, tr)?;
            term -= ln_elliptic_e_log(lx + ln_w, ln_nome, tr).map_err(|e| match e {
                Error::Pole(_) => Error::Pole(format!(
                    "denominator E(-x^{k} w) vanishes for a = {a} in excitation {}",
                    spec.label
                )),
                other => other,
            })?;
        }
        acc += term;
    }
    Ok(wrap_log(acc))
}

/// `ln r_j(w)`; the imaginary part is reduced to `(−π, π]`.
pub fn ln_excitation_ratio(
    spec: &ExcitationSpec,
    w: Complex64,
    frame: &NomeFrame,
    params: &ModelParams,
    tr: &Truncation,
) -> Result<Complex64> {
    check_w(w)?;
    ln_excitation_ratio_at_log(spec, w.ln(), frame, params, tr)
}

fn check_w(w: Complex64) -> Result<()> {
    if !(w.re.is_finite() && w.im.is_finite()) || w.norm() == 0.0 {
        return Err(Error::Domain(format!("spectral variable w = {w} must be finite and nonzero")));
    }
    Ok(())
}

/// The excitation ratio
/// `r_j(w) = Π_a w E(−x^{6sa/g}/w) E(−x^{6s(g−a)/g}/w) / [E(−x^{6sa/g} w) E(−x^{6s(g−a)/g} w)]`
/// with nome `x^{12s}`.
pub fn excitation_ratio(
    spec: &ExcitationSpec,
    w: Complex64,
    frame: &NomeFrame,
    params: &ModelParams,
    tr: &Truncation,
) -> Result<Complex64> {
    check_w(w)?;
    let nome = Complex64::new((12.0 * params.s as f64 * frame.ln_x).exp(), 0.0);
    let mut value = Complex64::new(1.0, 0.0);
    for &a in spec.a_set {
        let (k1, k2) = exponent_pair(a, params);
        value *= w;
        for k in [k1, k2] {
            let c = -(k * frame.ln_x).exp();
            // The logarithmic form flags a vanishing denominator factor.
            if let Err(Error::Pole(_)) = ln_elliptic_e(c * w, nome, tr) {
                return Err(Error::Pole(format!(
                    "denominator E(-x^{k} w) vanishes at w = {w} for a = {a} in excitation {}",
                    spec.label
                )));
            }
            value *= elliptic_e(c / w, nome, tr)? / elliptic_e(c * w, nome, tr)?;
        }
    }
    Ok(value)
}

fn real_mass(ln_r: Complex64, spec: &ExcitationSpec) -> Result<f64> {
    if ln_r.im.abs() > REALITY_TOL {
        return Err(Error::Consistency(format!(
            "ln r_{} has imaginary part {:e} at the isotropic point",
            spec.label, ln_r.im
        )));
    }
    Ok(-ln_r.re)
}

/// `m_j = −ln r_j(x^{3s})` from the elliptic product form.
pub fn mass_product_form(
    spec: &ExcitationSpec,
    frame: &NomeFrame,
    params: &ModelParams,
    tr: &Truncation,
) -> Result<f64> {
    let iso = SpectralPoint::isotropic(frame, params);
    let ln_r = ln_excitation_ratio_at_log(spec, Complex64::new(iso.ln_w, 0.0), frame, params, tr)?;
    real_mass(ln_r, spec)
}

/// `m_j = 2 Σ_a ln[ϑ₄(aπ/2g + π/4, q) / ϑ₄(aπ/2g − π/4, q)]` with `q = p^{r/6s}`.
pub fn mass_theta4(spec: &ExcitationSpec, p: f64, params: &ModelParams, tr: &Truncation) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    let q = p.powf(params.mass_exponent());
    let mut m = 0.0;
    for &a in spec.a_set {
        let u = a as f64 * PI / (2.0 * params.g as f64);
        m += 2.0 * (ln_theta4(u + PI / 4.0, q, tr)? - ln_theta4(u - PI / 4.0, q, tr)?);
    }
    Ok(m)
}

/// The θ₄ form for L = 4, where the nome is `p^{5/9}`.
pub fn mass_theta4_l4(spec: &ExcitationSpec, p: f64, tr: &Truncation) -> Result<f64> {
    mass_theta4(spec, p, &model::params_for(4)?, tr)
}

/// `m_j` at the isotropic point, using the θ₄ form for `p < 0.5` and the
/// product form above.
pub fn mass(spec: &ExcitationSpec, frame: &NomeFrame, params: &ModelParams, tr: &Truncation) -> Result<f64> {
    if frame.p < CROSSOVER_P {
        mass_theta4(spec, frame.p, params, tr)
    } else {
        mass_product_form(spec, frame, params, tr)
    }
}

/// Leading small-`p` behaviour `8 p^{r/6s} Σ_a sin(aπ/g)`.
pub fn asymptotic_mass(spec: &ExcitationSpec, p: f64, params: &ModelParams) -> f64 {
    8.0 * p.powf(params.mass_exponent()) * trig_weight(spec, params)
}

/// `Σ_a sin(aπ/g)`, proportional to the critical mass of excitation `spec`.
pub fn trig_weight(spec: &ExcitationSpec, params: &ModelParams) -> f64 {
    spec.a_set
        .iter()
        .map(|&a| (a as f64 * PI / params.g as f64).sin())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassEntry {
    pub index: usize,
    pub label: &'static str,
    pub a_set: &'static [u32],
    pub parity: Option<Parity>,
    pub mass: f64,
    pub correlation_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassSpectrum {
    pub l: u32,
    pub p: f64,
    pub entries: Vec<MassEntry>,
}

/// Masses and correlation lengths of every excitation in the table for `L`.
pub fn mass_spectrum(params: &ModelParams, frame: &NomeFrame, tr: &Truncation) -> Result<MassSpectrum> {
    let entries = model::excitation_table(params.l)?
        .into_iter()
        .map(|spec| {
            let m = mass(&spec, frame, params, tr)?;
            Ok(MassEntry {
                index: spec.index,
                label: spec.label,
                a_set: spec.a_set,
                parity: spec.parity,
                mass: m,
                correlation_length: 1.0 / m,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MassSpectrum {
        l: params.l,
        p: frame.p,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceMass {
    pub index: usize,
    pub value: f64,
    pub parity: Parity,
}

/// The E₇ mass ratios `m_j/m_1` with their parities.
pub fn e7_reference() -> Vec<ReferenceMass> {
    let c = |k: f64| (k * PI / 18.0).cos();
    let values = [
        (1.0, Parity::Odd),
        (2.0 * c(5.0), Parity::Even),
        (2.0 * c(2.0), Parity::Odd),
        (2.0 * c(1.0), Parity::Even),
        (4.0 * c(1.0) * c(5.0), Parity::Even),
        (4.0 * c(2.0) * c(4.0), Parity::Odd),
        (4.0 * c(1.0) * c(2.0), Parity::Even),
    ];
    values
        .iter()
        .enumerate()
        .map(|(i, &(value, parity))| ReferenceMass {
            index: i + 1,
            value,
            parity,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeSet {
    /// Singular free energy times the squared leading correlation length.
    pub fs_xi1_sq: f64,
    pub r_xi_plus: f64,
    pub r_xi_minus: f64,
    /// Correlation-length amplitude ratio above and below the critical point.
    pub xi0_ratio: f64,
}

pub fn amplitudes() -> AmplitudeSet {
    let sqrt3 = 3f64.sqrt();
    let c2 = (2.0 * PI / 9.0).cos();
    AmplitudeSet {
        fs_xi1_sq: 1.0 / (8.0 * sqrt3 * c2),
        r_xi_plus: (10.0 / (729.0 * sqrt3 * c2)).sqrt(),
        r_xi_minus: (5.0 / (8.0 * 81.0 * sqrt3 * (5.0 * PI / 18.0).cos() * (5.0 * PI / 9.0).sin())).sqrt(),
        xi0_ratio: 2.0 * (5.0 * PI / 18.0).cos(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{excitation_table, params_for};

    fn tr() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn ratio_is_one_at_unit_w() {
        let params = params_for(4).unwrap();
        let frame = NomeFrame::from_x(0.3, &params).unwrap();
        for spec in excitation_table(4).unwrap() {
            let r = excitation_ratio(&spec, Complex64::new(1.0, 0.0), &frame, &params, &tr()).unwrap();
            assert!((r - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn log_and_direct_forms_agree() {
        for l in [3, 4, 6] {
            let params = params_for(l).unwrap();
            let frame = NomeFrame::from_x(0.4, &params).unwrap();
            let w = Complex64::new(0.7, -0.4);
            for spec in excitation_table(l).unwrap() {
                let direct = excitation_ratio(&spec, w, &frame, &params, &tr()).unwrap();
                let via_log = ln_excitation_ratio(&spec, w, &frame, &params, &tr()).unwrap().exp();
                assert!((direct - via_log).norm() < 1e-12 * direct.norm());
            }
        }
    }

    #[test]
    fn e7_values() {
        let r = e7_reference();
        let printed = [1.0, 1.285575, 1.879385, 1.969615, 2.532088, 2.879385, 3.701666];
        for (m, v) in r.iter().zip(printed) {
            assert!((m.value - v).abs() < 1e-6, "{m:?}");
        }
        assert_eq!(r[2].parity, Parity::Odd);
        assert_eq!(r[4].parity, Parity::Even);
    }

    // The printed values are truncations, not roundings.
    fn truncate(v: f64, digits: i32) -> f64 {
        let scale = 10f64.powi(digits);
        (v * scale).floor() / scale
    }

    #[test]
    fn amplitude_values() {
        let a = amplitudes();
        assert_eq!(truncate(a.fs_xi1_sq, 5), 0.09420);
        assert_eq!(truncate(a.r_xi_plus, 6), 0.101678);
        assert_eq!(truncate(a.r_xi_minus, 6), 0.083889);
        assert_eq!(truncate(a.xi0_ratio, 6), 1.285575);
    }

    #[test]
    fn asymptotic_ratio_is_trigonometric() {
        let params = params_for(4).unwrap();
        let t = excitation_table(4).unwrap();
        let r = asymptotic_mass(&t[1], 1e-3, &params) / asymptotic_mass(&t[0], 1e-3, &params);
        assert!((r - 2.0 * (5.0 * PI / 18.0).cos()).abs() < 1e-14);
        let m1 = asymptotic_mass(&t[0], 1e-6, &params);
        assert!((m1 - 8.0 * 1e-6f64.powf(5.0 / 9.0) * (PI / 3.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn product_form_survives_extreme_nomes() {
        let params = params_for(4).unwrap();
        let spec = &excitation_table(4).unwrap()[0];
        let frame = NomeFrame::from_p(0.995, &params).unwrap();
        assert_eq!(frame.x.powi(18), 0.0);
        let m = mass_product_form(spec, &frame, &params, &tr()).unwrap();
        assert!(m.is_finite() && m > 0.0);
    }

    #[test]
    fn spectrum_entries_are_reciprocal() {
        let params = params_for(3).unwrap();
        let frame = NomeFrame::from_p(0.05, &params).unwrap();
        let s = mass_spectrum(&params, &frame, &tr()).unwrap();
        assert_eq!(s.entries.len(), 8);
        for e in &s.entries {
            assert!(e.mass > 0.0);
            assert!((e.mass * e.correlation_length - 1.0).abs() < 1e-15);
        }
    }
}
