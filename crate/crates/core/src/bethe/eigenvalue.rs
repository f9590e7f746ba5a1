use num_complex::Complex64;
use serde::Serialize;

use super::equations::Kernel;
use super::BetheState;
use crate::elliptic::Truncation;
use crate::error::{Error, Result};

/// The transfer-matrix eigenvalue and its three summands, all as logarithms
/// (the values themselves overflow quickly with `N`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueResult {
    pub ln_lambda: Complex64,
    pub ln_terms: [Complex64; 3],
}

impl EigenvalueResult {
    pub fn lambda(&self) -> Complex64 {
        self.ln_lambda.exp()
    }

    pub fn term_values(&self) -> [Complex64; 3] {
        self.ln_terms.map(|t| t.exp())
    }
}

/// `Λ(w)` at `w = e^{ln_w}` for the roots of `state`.
///
/// The three terms carry the root prefactors `w_j^{1−2s/r}`, `w_j` and
/// `w_j^{2s/r}` respectively; the elliptic factors have nome `x^{2r}`.
pub fn transfer_eigenvalue(state: &BetheState, ln_w: Complex64, tr: &Truncation) -> Result<EigenvalueResult> {
    let k = Kernel::new(state, state.x, tr)?;
    let s = k.s;
    let n = k.n;
    let ls = state.log_roots();
    let two_s_ln_x = 2.0 * s * k.ln_x;
    let zero = Complex64::new(0.0, 0.0);
    let den = k.ln_e(4.0 * s, zero)? + k.ln_e(6.0 * s, zero)?;

    let mut t1 = k.ln_omega + n * (k.ln_e(4.0 * s, -ln_w)? + k.ln_e(6.0 * s, -ln_w)? - den);
    let mut t2 = n * (two_s_ln_x - ln_w + k.ln_e(0.0, ln_w)? + k.ln_e(6.0 * s, -ln_w)? - den);
    let mut t3 = -k.ln_omega + n * (two_s_ln_x + k.ln_e(0.0, ln_w)? + k.ln_e(2.0 * s, -ln_w)? - den);
    for &l in &ls {
        let d = l - ln_w; // ln(w_j / w)
        t1 += (1.0 - k.kappa) * l + k.ln_e(2.0 * s, -d)? - k.ln_e(2.0 * s, d)?;
        t2 += l + k.ln_e(0.0, -d)? + k.ln_e(6.0 * s, d)? - k.ln_e(2.0 * s, d)? - k.ln_e(4.0 * s, d)?;
        t3 += k.kappa * l + k.ln_e(8.0 * s, d)? - k.ln_e(4.0 * s, d)?;
    }
    let terms = [t1, t2, t3];
    let top = terms.iter().map(|t| t.re).fold(f64::NEG_INFINITY, f64::max);
    let sum: Complex64 = terms.iter().map(|t| (t - top).exp()).sum();
    if sum.norm() == 0.0 {
        return Err(Error::Pole("the three eigenvalue terms cancel exactly".into()));
    }
    Ok(EigenvalueResult {
        ln_lambda: top + sum.ln(),
        ln_terms: terms,
    })
}
