//! Finite-N Bethe equations for the dilute A_L models, string ansätze for the
//! L = 4 excitations, a damped-Newton continuation solver and the three-term
//! transfer-matrix eigenvalue.
//!
//! Roots are stored through their logarithms `ℓ = ln w`. The equations carry
//! the fractional power `w^{2s/r}`, which is defined here as `e^{(2s/r)ℓ}`;
//! keeping `ℓ` explicit fixes that branch once and for all.
//!
//! Exact strings place pairs of roots on zeros of the two-body factor, so the
//! equations of individual string members are singular. String states are
//! therefore solved in reduced form: one unknown phase per string group, and
//! one equation per group obtained by multiplying the equations of its members
//! (the singular intra-group factors cancel in pairs).

mod ansatz;
mod constraints;
mod eigenvalue;
mod equations;
mod solver;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::model::ModelParams;

pub use ansatz::{limit_roots, StringAnsatz, StringGroup};
pub use constraints::{string_constraints_check, ConstraintEntry, ConstraintReport};
pub use eigenvalue::{transfer_eigenvalue, EigenvalueResult};
pub use equations::{bethe_residuals, reduced_residuals};
pub use solver::{
    geometric_schedule, measure_excitation, solve, solve_excitation, solve_ground, ExcitedSolution,
    GroundSolution, Measurement, SolverOptions,
};

/// Choice of `ω = e^{iπℓ/(L+1)}` together with the branch used to seed the
/// unit-circle roots at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sector {
    /// `ℓ ∈ 1..=L`.
    pub ell: u32,
    /// Integer shift of the common phase of the seeded roots.
    pub winding: i32,
}

impl Sector {
    pub fn new(ell: u32) -> Self {
        Self { ell, winding: 0 }
    }

    /// `ln ω = iπℓ/(L+1)`.
    pub fn ln_omega(&self, params: &ModelParams) -> Complex64 {
        Complex64::new(0.0, PI * self.ell as f64 / (params.l + 1) as f64)
    }
}

/// A set of Bethe roots at a given nome.
///
/// The first `unit_log_roots.len()` roots lie near the unit circle; each string
/// group then contributes roots `w = b·x^m` with `b = e^{β}` taken from
/// `group_log_phases` and levels `m` from the ansatz. At `x = 0` (the output of
/// [`limit_roots`]) only the unit-circle roots and the phases are meaningful.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetheState {
    pub n: usize,
    pub params: ModelParams,
    pub sector: Sector,
    pub x: f64,
    pub unit_log_roots: Vec<Complex64>,
    pub group_log_phases: Vec<Complex64>,
    pub ansatz: Option<StringAnsatz>,
    /// Largest modulus of the (reduced) residual vector at `x`; `None` for
    /// states that have not been solved at a positive nome.
    pub residual: Option<f64>,
}

impl BetheState {
    /// Logarithms of all `N` roots, unit-circle roots first.
    pub fn log_roots(&self) -> Vec<Complex64> {
        let mut out = self.unit_log_roots.clone();
        if let Some(ansatz) = &self.ansatz {
            let ln_x = self.x.ln();
            for (group, beta) in ansatz.groups.iter().zip(&self.group_log_phases) {
                out.extend(group.levels.iter().map(|&m| beta + m as f64 * ln_x));
            }
        }
        out
    }

    pub fn roots(&self) -> Vec<Complex64> {
        self.log_roots().into_iter().map(|l| l.exp()).collect()
    }

    /// String phases `b = e^{β}`, one per group.
    pub fn phases(&self) -> Vec<Complex64> {
        self.group_log_phases.iter().map(|b| b.exp()).collect()
    }

    /// Product of the unit-circle roots.
    pub fn unit_product(&self) -> Complex64 {
        self.unit_log_roots.iter().sum::<Complex64>().exp()
    }

    /// Unknowns of the reduced system: unit roots then group phases.
    pub(crate) fn unknowns(&self) -> Vec<Complex64> {
        let mut u = self.unit_log_roots.clone();
        u.extend(&self.group_log_phases);
        u
    }

    pub(crate) fn with_unknowns(&self, u: &[Complex64], x: f64) -> Self {
        let m = self.unit_log_roots.len();
        Self {
            x,
            unit_log_roots: u[..m].to_vec(),
            group_log_phases: u[m..].to_vec(),
            ..self.clone()
        }
    }
}

/// Distance of `arg z` from `π`, in `[0, π]`.
pub fn phase_distance_from_minus_one(z: Complex64) -> f64 {
    (PI - z.arg().abs()).abs()
}
