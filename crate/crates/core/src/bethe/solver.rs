use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::ansatz::{limit_roots, StringAnsatz};
use super::constraints::locate_hole;
use super::eigenvalue::{transfer_eigenvalue, EigenvalueResult};
use super::equations::reduced_residuals;
use super::{phase_distance_from_minus_one, BetheState, Sector};
use crate::elliptic::Truncation;
use crate::error::{Error, Result};
use crate::model::{self, ModelParams, NomeFrame, SpectralPoint};
use crate::spectrum::{ln_excitation_ratio_at_log, wrap_log};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverOptions {
    /// Newton stops once the largest residual modulus is below this.
    pub tol: f64,
    pub max_newton_iter: usize,
    /// Step halvings tried before a Newton step is declared failed.
    pub max_halvings: u32,
    /// First nome of the continuation.
    pub x_start: f64,
    /// Number of geometric continuation steps from `x_start` to the target.
    pub steps: usize,
    /// Smallest continuation increment in `x` before giving up.
    pub min_dx: f64,
    /// Central-difference step for the Jacobian.
    pub fd_step: f64,
    /// Largest distance of a non-spectator phase from −1 accepted as the
    /// same string structure.
    pub phase_window: f64,
    #[serde(skip)]
    pub truncation: Truncation,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            max_newton_iter: 60,
            max_halvings: 20,
            x_start: 1e-3,
            steps: 12,
            min_dx: 1e-4,
            fd_step: 1e-6,
            phase_window: 0.1,
            truncation: Truncation::default(),
        }
    }
}

/// `steps` nomes from `start` to `target`, evenly spaced in `ln x` and ending
/// exactly at `target`. A target below `start` gives the target alone.
pub fn geometric_schedule(start: f64, target: f64, steps: usize) -> Vec<f64> {
    if target <= start || steps <= 1 {
        return vec![target];
    }
    let ratio = (target / start).ln() / (steps - 1) as f64;
    let mut xs: Vec<f64> = (0..steps).map(|k| start * (ratio * k as f64).exp()).collect();
    xs[steps - 1] = target;
    xs
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Damped Newton on `state`'s reduced equations at nome `x`.
/// Returns the improved unknowns and their residual; `None` if no step reduces
/// the residual or the iteration budget runs out above tolerance.
fn newton(state: &BetheState, x: f64, opts: &SolverOptions) -> Option<(Vec<Complex64>, f64)> {
    let tr = &opts.truncation;
    let eval = |u: &[Complex64]| reduced_residuals(&state.with_unknowns(u, x), x, tr).ok();
    let mut u = state.unknowns();
    let mut f = eval(&u)?;
    let dim = u.len();
    for _ in 0..opts.max_newton_iter {
        let norm = max_norm(&f);
        if norm < opts.tol {
            return Some((u, norm));
        }
        let mut jac = DMatrix::<Complex64>::zeros(dim, dim);
        for k in 0..dim {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[k] += opts.fd_step;
            dn[k] -= opts.fd_step;
            let (fp, fm) = (eval(&up)?, eval(&dn)?);
            for i in 0..dim {
                jac[(i, k)] = wrap_log(fp[i] - fm[i]) / (2.0 * opts.fd_step);
            }
        }
        let rhs = DVector::from_iterator(dim, f.iter().map(|z| -z));
        let step = jac.lu().solve(&rhs)?;
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<Complex64> = u.iter().zip(step.iter()).map(|(a, d)| a + t * d).collect();
            if let Some(ft) = eval(&trial) {
                if max_norm(&ft) < norm {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            t *= 0.5;
        }
        let (nu, nf) = accepted?;
        u = nu;
        f = nf;
    }
    let norm = max_norm(&f);
    (norm < opts.tol).then_some((u, norm))
}

/// Checks that roots stay in their bands: unit roots closer to the circle than
/// to any string level, phases of unit modulus within half a level, and
/// non-spectator phases near −1.
fn check_structure(state: &BetheState, opts: &SolverOptions, final_step: bool) -> Result<()> {
    let ln_x = state.x.ln().abs();
    for (k, l) in state.unit_log_roots.iter().enumerate() {
        if l.re.abs() > 2.0 * ln_x {
            return Err(Error::Structure(format!(
                "unit-circle root {k} drifted to |w| = {:e} at x = {}",
                l.re.exp(),
                state.x
            )));
        }
    }
    if let Some(ansatz) = &state.ansatz {
        for (g, (group, beta)) in ansatz.groups.iter().zip(&state.group_log_phases).enumerate() {
            if beta.re.abs() > ln_x {
                return Err(Error::Structure(format!(
                    "string group {g} left its levels: |b| = {:e} at x = {}",
                    beta.re.exp(),
                    state.x
                )));
            }
            if final_step && !group.spectator {
                let d = phase_distance_from_minus_one(beta.exp());
                if d > opts.phase_window {
                    return Err(Error::Structure(format!(
                        "string group {g} has phase {:.6} rad away from -1 at x = {}",
                        d, state.x
                    )));
                }
            }
        }
    }
    Ok(())
}

fn canonicalize(state: &mut BetheState) {
    state
        .unit_log_roots
        .iter_mut()
        .for_each(|l| *l = Complex64::new(l.re, wrap_log(*l).im));
    state
        .unit_log_roots
        .sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal));
}

/// Continues `start` (usually from [`limit_roots`]) along `schedule`, halving
/// failed increments geometrically until they drop below `min_dx`.
pub fn solve(start: &BetheState, schedule: &[f64], opts: &SolverOptions) -> Result<BetheState> {
    let target = *schedule
        .last()
        .ok_or_else(|| Error::Domain("empty continuation schedule".into()))?;
    if schedule.iter().any(|&x| !(x > 0.0 && x < 1.0)) || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("schedule must increase strictly inside (0, 1)".into()));
    }
    let mut state = start.clone();
    let mut last_good: Option<f64> = (start.x > 0.0).then_some(start.x);
    let mut pending: Vec<f64> = schedule.iter().rev().copied().collect();
    while let Some(x_next) = pending.pop() {
        let x_prev = last_good.unwrap_or(0.0);
        if x_next <= x_prev {
            continue;
        }
        match newton(&state, x_next, opts) {
            Some((u, norm)) => {
                let mut next = state.with_unknowns(&u, x_next);
                next.residual = Some(norm);
                check_structure(&next, opts, x_next == target)?;
                state = next;
                last_good = Some(x_next);
            }
            None => {
                let mid = match last_good {
                    Some(x0) => (x0 * x_next).sqrt(),
                    None => 0.5 * x_next,
                };
                if x_next - mid < opts.min_dx {
                    return Err(Error::Continuation {
                        failed_x: x_next,
                        last_good_x: last_good,
                    });
                }
                pending.push(x_next);
                pending.push(mid);
            }
        }
    }
    canonicalize(&mut state);
    Ok(state)
}

fn isotropic_ln_w(x: f64, params: &ModelParams) -> Complex64 {
    Complex64::new(params.isotropic_power() as f64 * x.ln(), 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroundSolution {
    pub state: BetheState,
    pub eigenvalue: EigenvalueResult,
    /// `(ℓ, ln Λ)` at the isotropic point for every sector that converged.
    pub candidates: Vec<(u32, Complex64)>,
}

/// Solves the ground state in every sector `ℓ = 1..=L` and keeps the one with
/// the largest `|Λ|` at the isotropic point (the lowest `ℓ` on ties).
pub fn solve_ground(params: &ModelParams, n: usize, x: f64, opts: &SolverOptions) -> Result<GroundSolution> {
    let schedule = geometric_schedule(opts.x_start, x, opts.steps);
    let ln_w = isotropic_ln_w(x, params);
    let mut best: Option<(BetheState, EigenvalueResult)> = None;
    let mut candidates = Vec::new();
    let mut last_err = None;
    for ell in 1..=params.l {
        let start = limit_roots(n, params, None, Sector::new(ell), &[])?;
        let state = match solve(&start, &schedule, opts) {
            Ok(s) => s,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let eig = transfer_eigenvalue(&state, ln_w, &opts.truncation)?;
        candidates.push((ell, eig.ln_lambda));
        let better = match &best {
            None => true,
            Some((_, b)) => eig.ln_lambda.re > b.ln_lambda.re + 1e-12,
        };
        if better {
            best = Some((state, eig));
        }
    }
    let (state, eigenvalue) = best.ok_or_else(|| last_err.unwrap_or(Error::Continuation {
        failed_x: x,
        last_good_x: None,
    }))?;
    Ok(GroundSolution {
        state,
        eigenvalue,
        candidates,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcitedSolution {
    pub state: BetheState,
    pub signs: Vec<i8>,
    pub eigenvalue: EigenvalueResult,
    /// Number of (sector, sign, winding) seeds tried before this one converged.
    pub attempts: usize,
}

fn sign_patterns(groups: usize) -> Vec<Vec<i8>> {
    (0..1usize << groups)
        .map(|bits| (0..groups).map(|g| if bits >> g & 1 == 0 { 1 } else { -1 }).collect())
        .collect()
}

/// Solves the string state of L = 4 excitation `j` at width `n`.
///
/// Seeds are scanned over sectors `ℓ = 1..=L`, initial phase signs `±1` per
/// group and windings `0, −1, 1`; the first seed whose continuation converges
/// with every non-spectator phase (and the hole, if any) within `phase_window`
/// of −1 is returned.
pub fn solve_excitation(
    params: &ModelParams,
    j: usize,
    n: usize,
    x: f64,
    opts: &SolverOptions,
) -> Result<ExcitedSolution> {
    let ansatz = StringAnsatz::for_excitation(params, j)?;
    let schedule = geometric_schedule(opts.x_start, x, opts.steps);
    let windings: &[i32] = if ansatz.hole { &[0] } else { &[0, -1, 1] };
    let mut attempts = 0;
    let mut last_err = None;
    for ell in 1..=params.l {
        for signs in sign_patterns(ansatz.groups.len()) {
            for &winding in windings {
                attempts += 1;
                let start = limit_roots(n, params, Some(&ansatz), Sector { ell, winding }, &signs)?;
                match solve(&start, &schedule, opts).and_then(|s| check_hole(s, opts)) {
                    Ok(state) => {
                        let eigenvalue = transfer_eigenvalue(&state, isotropic_ln_w(x, params), &opts.truncation)?;
                        return Ok(ExcitedSolution {
                            state,
                            signs,
                            eigenvalue,
                            attempts,
                        });
                    }
                    Err(e) => last_err = Some(e),
                }
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Ansatz(format!("no seed converged for excitation {j}"))))
}

/// Rejects hole states whose missing root is not near −1, or whose unit-root
/// product `A` misses `A h³ = −1`.
fn check_hole(state: BetheState, opts: &SolverOptions) -> Result<BetheState> {
    if state.ansatz.as_ref().is_some_and(|a| a.hole) {
        let ln_h = locate_hole(&state, &opts.truncation)?;
        let d = phase_distance_from_minus_one(ln_h.exp());
        if d > opts.phase_window {
            return Err(Error::Structure(format!("hole sits {d:.6} rad away from -1")));
        }
        let ah3 = (state.unit_log_roots.iter().sum::<Complex64>() + 3.0 * ln_h).exp();
        let d = phase_distance_from_minus_one(ah3);
        if d > opts.phase_window {
            return Err(Error::Structure(format!("A h^3 sits {d:.6} rad away from -1")));
        }
    }
    Ok(state)
}

/// Finite-size estimate of one excitation ratio at the isotropic point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub excitation: usize,
    pub n: usize,
    pub x: f64,
    pub ground: GroundSolution,
    pub excited: ExcitedSolution,
    /// `ln(Λ_j/Λ_0)` from the solved roots.
    pub ln_ratio: Complex64,
    /// `ln r_j` from the closed form.
    pub ln_ratio_closed: Complex64,
    /// `|ln(Λ_j/Λ_0) − ln r_j|` with the imaginary part taken modulo 2π.
    pub deviation: f64,
}

pub fn measure_excitation(
    params: &ModelParams,
    j: usize,
    n: usize,
    x: f64,
    opts: &SolverOptions,
) -> Result<Measurement> {
    let ground = solve_ground(params, n, x, opts)?;
    let excited = solve_excitation(params, j, n, x, opts)?;
    let frame = NomeFrame::from_x(x, params)?;
    let spec = model::excitation(params.l, j)?;
    let iso = SpectralPoint::isotropic(&frame, params);
    let ln_ratio_closed =
        ln_excitation_ratio_at_log(&spec, Complex64::new(iso.ln_w, 0.0), &frame, params, &opts.truncation)?;
    let ln_ratio = wrap_log(excited.eigenvalue.ln_lambda - ground.eigenvalue.ln_lambda);
    let deviation = wrap_log(ln_ratio - ln_ratio_closed).norm();
    Ok(Measurement {
        excitation: j,
        n,
        x,
        ground,
        excited,
        ln_ratio,
        ln_ratio_closed,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::bethe_residuals;
    use crate::model::params_for;

    #[test]
    fn schedule_is_geometric_and_ends_at_target() {
        let s = geometric_schedule(1e-3, 0.1, 5);
        assert_eq!(s.len(), 5);
        assert_eq!(s[4], 0.1);
        assert!((s[1] / s[0] - s[2] / s[1]).abs() < 1e-12);
        assert_eq!(geometric_schedule(1e-3, 1e-4, 5), vec![1e-4]);
    }

    #[test]
    fn ground_state_converges_near_the_circle() {
        let p = params_for(4).unwrap();
        let opts = SolverOptions::default();
        let g = solve_ground(&p, 6, 0.05, &opts).unwrap();
        assert!(g.state.residual.unwrap() < 1e-10);
        for w in g.state.roots() {
            assert!((w.norm() - 1.0).abs() < 0.1);
        }
        let full = bethe_residuals(&g.state, &opts.truncation).unwrap();
        assert!(full.iter().all(|r| r.norm() < 1e-10));
        // the largest eigenvalue is real and positive
        assert!(g.eigenvalue.ln_lambda.im.abs() < 1e-8);
    }

    #[test]
    fn second_excitation_matches_closed_form_at_small_x() {
        let p = params_for(4).unwrap();
        let m = measure_excitation(&p, 2, 6, 0.05, &SolverOptions::default()).unwrap();
        assert!(m.deviation < 1e-8, "{}", m.deviation);
        let b = m.excited.state.phases()[0];
        assert!((b + 1.0).norm() < 1e-6);
        let levels = &m.excited.state.ansatz.as_ref().unwrap().groups[0].levels;
        assert_eq!(levels, &vec![-14, 14]);
    }
}
