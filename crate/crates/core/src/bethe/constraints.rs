use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::equations::Kernel;
use super::BetheState;
use crate::elliptic::{ln_elliptic_e_log, Truncation};
use crate::error::{Error, Result};
use crate::model::{self, NomeFrame};
use crate::spectrum::{ln_excitation_ratio_at_log, wrap_log};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintEntry {
    pub name: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub excitation: usize,
    pub n: usize,
    pub x: f64,
    /// Position of the missing unit-circle root, when the ansatz has one.
    pub hole: Option<Complex64>,
    pub entries: Vec<ConstraintEntry>,
}

impl ConstraintReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }
}

const I_PI: Complex64 = Complex64::new(0.0, PI);

/// Log-position of the missing root: the solution near −1 of the unit-circle
/// Bethe equation for one extra root, all other roots held fixed.
pub(crate) fn locate_hole(state: &BetheState, tr: &Truncation) -> Result<Complex64> {
    let k = Kernel::new(state, state.x, tr)?;
    let ls = state.log_roots();
    let drift = k.kappa * ls.iter().sum::<Complex64>();
    let g = |l: Complex64| -> Result<Complex64> {
        let mut v = k.ln_source(l)? - drift;
        for &lk in &ls {
            v -= k.ln_pair(l - lk)?;
        }
        Ok(wrap_log(v))
    };
    let mut l = I_PI;
    let h = 1e-7;
    for _ in 0..50 {
        let f = g(l)?;
        if f.norm() < 1e-13 {
            return Ok(l);
        }
        let d = wrap_log(g(l + h)? - g(l - h)?) / (2.0 * h);
        if d.norm() == 0.0 {
            break;
        }
        l -= f / d;
    }
    let f = g(l)?;
    if f.norm() < 1e-10 {
        Ok(l)
    } else {
        Err(Error::Consistency(format!("hole search did not converge (residual {:e})", f.norm())))
    }
}

/// Evaluates the phase and hole conditions of a converged L = 4 string state.
///
/// * every ansatz: `r_j(−1/b)^N = 1`, the finite-`x` form of the phase
///   condition, and the small-`x` power condition `b^{pN} = 1` (or, for the
///   hole, `h^N = 1` and `A h³ = −1` with `A` the product of unit roots);
/// * hole or spectator pair: `E(x^{12} b/c, x^{2r−4s}) = E(x^{12} c/b, x^{2r−4s})`
///   where `c` is the hole or the spectator phase.
///
/// Residuals are moduli of wrapped logarithmic differences, except for the
/// power conditions which are `|lhs − rhs|`.
pub fn string_constraints_check(state: &BetheState, tr: &Truncation) -> Result<ConstraintReport> {
    let ansatz = state
        .ansatz
        .as_ref()
        .ok_or_else(|| Error::Ansatz("constraint check needs a string state".into()))?;
    if !(state.x > 0.0) {
        return Err(Error::Domain("constraint check needs a state solved at x > 0".into()));
    }
    let params = &state.params;
    let frame = NomeFrame::from_x(state.x, params)?;
    let spec = model::excitation(params.l, ansatz.excitation)?;
    let n = state.n as f64;
    let beta = state.group_log_phases[ansatz.main_group()];
    let mut entries = Vec::new();
    let mut push = |name: &str, residual: f64| {
        entries.push(ConstraintEntry {
            name: name.to_string(),
            residual,
        })
    };

    let ln_nome_short = (2 * params.r - 4 * params.s) as f64 * frame.ln_x;
    let ln_x12 = 12.0 * frame.ln_x;
    let symmetric = |other: Complex64| -> Result<f64> {
        let lhs = ln_elliptic_e_log(ln_x12 + beta - other, ln_nome_short, tr)?;
        let rhs = ln_elliptic_e_log(ln_x12 + other - beta, ln_nome_short, tr)?;
        Ok(wrap_log(lhs - rhs).norm())
    };

    let mut hole = None;
    let anchor = if ansatz.hole {
        let h = locate_hole(state, tr)?;
        hole = Some(h.exp());
        push("h^N = 1", ((h * n).exp() - 1.0).norm());
        push("A h^3 = -1", ((state.unit_log_roots.iter().sum::<Complex64>() + 3.0 * h).exp() + 1.0).norm());
        push("E(x^12 b/h) = E(x^12 h/b)", symmetric(h)?);
        h
    } else {
        push(
            "b^(pN) = 1",
            ((beta * (ansatz.phase_power as f64 * n)).exp() - 1.0).norm(),
        );
        if let Some(g) = ansatz.groups.iter().position(|g| g.spectator) {
            push("E(x^12 b/alpha) = E(x^12 alpha/b)", symmetric(state.group_log_phases[g])?);
        }
        beta
    };
    let ln_r = ln_excitation_ratio_at_log(&spec, I_PI - anchor, &frame, params, tr)?;
    push("r_j(-1/b)^N = 1", wrap_log(n * ln_r).norm());
    push("|b + 1|", (beta.exp() + 1.0).norm());

    Ok(ConstraintReport {
        excitation: ansatz.excitation,
        n: state.n,
        x: state.x,
        hole,
        entries,
    })
}
