use num_complex::Complex64;

use super::BetheState;
use crate::elliptic::{ln_elliptic_e_log, Truncation};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectrum::wrap_log;

/// Precomputed constants of the Bethe equations at one nome.
pub(crate) struct Kernel<'a> {
    pub n: f64,
    pub ln_x: f64,
    pub s: f64,
    pub kappa: f64,
    pub ln_omega: Complex64,
    /// `ln x^{2r}`, the nome of every elliptic factor in the equations.
    pub ln_nome: f64,
    pub tr: &'a Truncation,
}

impl<'a> Kernel<'a> {
    pub fn new(state: &BetheState, x: f64, tr: &'a Truncation) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
        }
        let params: &ModelParams = &state.params;
        let ln_x = x.ln();
        Ok(Self {
            n: state.n as f64,
            ln_x,
            s: params.s as f64,
            kappa: params.kappa(),
            ln_omega: state.sector.ln_omega(params),
            ln_nome: 2.0 * params.r as f64 * ln_x,
            tr,
        })
    }

    /// `ln E(x^k z, x^{2r})` for `z = e^{ln_z}`.
    pub fn ln_e(&self, k: f64, ln_z: Complex64) -> Result<Complex64> {
        ln_elliptic_e_log(ln_z + k * self.ln_x, self.ln_nome, self.tr)
    }

    /// `ln [E(x^{2s}z) E(x^{4s}/z) / (E(x^{2s}/z) E(x^{4s}z))]`.
    pub fn ln_pair(&self, ln_z: Complex64) -> Result<Complex64> {
        let (a, b) = (2.0 * self.s, 4.0 * self.s);
        Ok(self.ln_e(a, ln_z)? + self.ln_e(b, -ln_z)? - self.ln_e(a, -ln_z)? - self.ln_e(b, ln_z)?)
    }

    /// Logarithm of the left-hand side `ω [w E(x^{2s}/w)/E(x^{2s}w)]^N`, minus `iπ`.
    pub fn ln_source(&self, l: Complex64) -> Result<Complex64> {
        let two_s = 2.0 * self.s;
        Ok(self.ln_omega - Complex64::new(0.0, std::f64::consts::PI)
            + self.n * (l + self.ln_e(two_s, -l)? - self.ln_e(two_s, l)?))
    }
}

fn pair_error(e: Error, j: usize, k: usize) -> Error {
    match e {
        Error::Pole(_) => Error::Singularity(j, k),
        other => other,
    }
}

/// Residuals `ln LHS_j − ln RHS_j` of all `N` Bethe equations, each wrapped to
/// `(−π, π]` in its imaginary part.
///
/// The left side is `ω [w_j E(x^{2s}/w_j)/E(x^{2s}w_j)]^N` and the right side
/// `−Π_k w_k^{2s/r} E(x^{2s}w_j/w_k) E(x^{4s}w_k/w_j) / [E(x^{2s}w_k/w_j) E(x^{4s}w_j/w_k)]`,
/// both with nome `x^{2r}`. Exact string states put pairs of roots on zeros of
/// these factors and are reported as [`Error::Singularity`]; use
/// [`reduced_residuals`] for them.
pub fn bethe_residuals(state: &BetheState, tr: &Truncation) -> Result<Vec<Complex64>> {
    let kernel = Kernel::new(state, state.x, tr)?;
    let ls = state.log_roots();
    for j in 0..ls.len() {
        for k in 0..j {
            if (wrap_log(ls[j] - ls[k])).norm() < 1e-12 {
                return Err(Error::Singularity(k, j));
            }
        }
    }
    let drift = kernel.kappa * ls.iter().sum::<Complex64>();
    ls.iter()
        .enumerate()
        .map(|(j, &lj)| {
            let mut v = kernel.ln_source(lj)? - drift;
            for (k, &lk) in ls.iter().enumerate() {
                if k != j {
                    v -= kernel.ln_pair(lj - lk).map_err(|e| pair_error(e, j, k))?;
                }
            }
            Ok(wrap_log(v))
        })
        .collect()
}

/// Residuals of the reduced system at nome `x`: one per unit-circle root, then
/// one per string group (the product of its members' equations with the
/// intra-group factors removed).
pub fn reduced_residuals(state: &BetheState, x: f64, tr: &Truncation) -> Result<Vec<Complex64>> {
    let kernel = Kernel::new(state, x, tr)?;
    let probe = BetheState { x, ..state.clone() };
    let ls = probe.log_roots();
    let m = state.unit_log_roots.len();
    // group index of every root, None for unit-circle roots
    let mut owner = vec![None; ls.len()];
    let mut offset = m;
    if let Some(ansatz) = &state.ansatz {
        for (g, group) in ansatz.groups.iter().enumerate() {
            for slot in owner.iter_mut().skip(offset).take(group.levels.len()) {
                *slot = Some(g);
            }
            offset += group.levels.len();
        }
    }
    let drift = kernel.kappa * ls.iter().sum::<Complex64>();
    let equation = |j: usize| -> Result<Complex64> {
        let mut v = kernel.ln_source(ls[j])? - drift;
        for (k, &lk) in ls.iter().enumerate() {
            if k == j || (owner[j].is_some() && owner[j] == owner[k]) {
                continue;
            }
            v -= kernel.ln_pair(ls[j] - lk).map_err(|e| pair_error(e, j, k))?;
        }
        Ok(v)
    };
    let mut out = Vec::with_capacity(m + state.group_log_phases.len());
    for j in 0..m {
        out.push(wrap_log(equation(j)?));
    }
    let mut start = m;
    if let Some(ansatz) = &state.ansatz {
        for group in &ansatz.groups {
            let mut v = Complex64::new(0.0, 0.0);
            for j in start..start + group.levels.len() {
                v += equation(j)?;
            }
            out.push(wrap_log(v));
            start += group.levels.len();
        }
    }
    Ok(out)
}
