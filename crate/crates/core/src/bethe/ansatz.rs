use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{BetheState, Sector};
use crate::error::{Error, Result};
use crate::model::{self, ModelParams};

/// Roots sharing one phase `b`, sitting at `w = b·x^m` for each level `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringGroup {
    pub levels: Vec<i32>,
    /// A spectator group's phase does not enter the eigenvalue and is not
    /// required to approach −1.
    pub spectator: bool,
}

/// String content of an L = 4 excitation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringAnsatz {
    pub excitation: usize,
    pub groups: Vec<StringGroup>,
    /// One unit-circle root is missing.
    pub hole: bool,
    /// `p` in the small-`x` phase condition `b^{pN} = 1` (0 when the condition
    /// is on the hole instead).
    pub phase_power: u32,
}

struct Shape {
    hole: bool,
    spectator: &'static [i32],
    phase_power: u32,
}

const SHAPES: [Shape; 7] = [
    Shape { hole: true, spectator: &[], phase_power: 0 },
    Shape { hole: false, spectator: &[], phase_power: 2 },
    Shape { hole: false, spectator: &[-12, 12], phase_power: 2 },
    Shape { hole: false, spectator: &[], phase_power: 4 },
    Shape { hole: false, spectator: &[], phase_power: 5 },
    Shape { hole: false, spectator: &[], phase_power: 5 },
    Shape { hole: false, spectator: &[], phase_power: 4 },
];

impl StringAnsatz {
    /// The ansatz for excitation `j` of the L = 4 model. String data for other
    /// heights are not tabulated.
    pub fn for_excitation(params: &ModelParams, j: usize) -> Result<Self> {
        if params.l != 4 {
            return Err(Error::Ansatz(format!(
                "string ansätze are tabulated for L = 4 only, got L = {}",
                params.l
            )));
        }
        let spec = model::excitation(4, j).map_err(|e| Error::Ansatz(e.to_string()))?;
        let shape = &SHAPES[j - 1];
        let levels = spec.string_levels();
        let main: Vec<i32> = levels.iter().copied().filter(|m| !shape.spectator.contains(m)).collect();
        let mut groups = vec![StringGroup {
            levels: main,
            spectator: false,
        }];
        if !shape.spectator.is_empty() {
            groups.push(StringGroup {
                levels: shape.spectator.to_vec(),
                spectator: true,
            });
        }
        Ok(Self {
            excitation: j,
            groups,
            hole: shape.hole,
            phase_power: shape.phase_power,
        })
    }

    /// Number of roots off the unit circle.
    pub fn string_count(&self) -> usize {
        self.groups.iter().map(|g| g.levels.len()).sum()
    }

    /// Number of unit-circle roots for width `n`.
    pub fn unit_count(&self, n: usize) -> usize {
        n.saturating_sub(self.string_count())
    }

    /// Index of the first non-spectator group.
    pub fn main_group(&self) -> usize {
        self.groups.iter().position(|g| !g.spectator).unwrap_or(0)
    }
}

fn check_width(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::Domain(format!("lattice width N must be even and at least 2, got {n}")));
    }
    Ok(())
}

/// `M` equally spaced phases `φ + 2π(k − (M+1)/2)/M`, k = 1..M, as log roots.
fn fan(m: usize, phi: f64) -> Vec<Complex64> {
    (1..=m)
        .map(|k| Complex64::new(0.0, phi + 2.0 * PI * (k as f64 - (m as f64 + 1.0) / 2.0) / m as f64))
        .collect()
}

/// Roots at `x = 0`.
///
/// Unit-circle roots solve the limiting polynomial `a^M = c`, with `c` fixed by
/// the sector and by the string phases `b = ±1` given in `signs` (one per
/// group). For the hole ansatz the unit roots are the `(N−2)`-th roots of
/// unity other than −1, and the hole itself sits at −1.
///
/// The small-`x` phase conditions (`b^{pN} = 1`; for the hole `a_h^N = 1` and
/// `A a_h³ = −1` with `A` the product of unit roots) are checked, and an
/// [`Error::Ansatz`] is returned if one fails.
pub fn limit_roots(
    n: usize,
    params: &ModelParams,
    ansatz: Option<&StringAnsatz>,
    sector: Sector,
    signs: &[i8],
) -> Result<BetheState> {
    check_width(n)?;
    if sector.ell == 0 || sector.ell > params.l {
        return Err(Error::Domain(format!("sector ell = {} outside 1..={}", sector.ell, params.l)));
    }
    let kappa = params.kappa();
    let sector_phase = -PI * sector.ell as f64 / (params.l + 1) as f64 + 2.0 * PI * sector.winding as f64;
    let Some(ansatz) = ansatz else {
        if !signs.is_empty() {
            return Err(Error::Ansatz("the ground state has no string phases".into()));
        }
        return Ok(BetheState {
            n,
            params: *params,
            sector,
            x: 0.0,
            unit_log_roots: fan(n, sector_phase / ((1.0 - kappa) * n as f64)),
            group_log_phases: Vec::new(),
            ansatz: None,
            residual: None,
        });
    };
    if signs.len() != ansatz.groups.len() || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::Ansatz(format!(
            "expected {} phase signs of ±1, got {signs:?}",
            ansatz.groups.len()
        )));
    }
    let m = ansatz.unit_count(n);
    if m == 0 {
        return Err(Error::Ansatz(format!(
            "excitation {} needs N > {}, got N = {n}",
            ansatz.excitation,
            ansatz.string_count()
        )));
    }
    let phases: Vec<Complex64> = signs.iter().map(|&s| Complex64::new(0.0, PI * s as f64)).collect();
    let unit = if ansatz.hole {
        let k = (n - 2) as i64;
        (-(k / 2 - 1)..=(k / 2 - 1))
            .map(|i| Complex64::new(0.0, 2.0 * PI * i as f64 / k as f64))
            .collect()
    } else {
        // Σ_g ln(b_g^{|g|}), the string contribution to the limiting polynomial
        let string_phase: f64 = ansatz
            .groups
            .iter()
            .zip(signs)
            .map(|(g, &s)| PI * s as f64 * g.levels.len() as f64)
            .sum();
        let phi = ((kappa - 1.0) * string_phase + sector_phase) / ((1.0 - kappa) * m as f64);
        fan(m, phi)
    };
    let state = BetheState {
        n,
        params: *params,
        sector,
        x: 0.0,
        unit_log_roots: unit,
        group_log_phases: phases,
        ansatz: Some(ansatz.clone()),
        residual: None,
    };
    check_limit_conditions(&state, ansatz)?;
    Ok(state)
}

fn check_limit_conditions(state: &BetheState, ansatz: &StringAnsatz) -> Result<()> {
    const TOL: f64 = 1e-12;
    let n = state.n as f64;
    if ansatz.hole {
        let hole = Complex64::new(-1.0, 0.0);
        let r1 = (hole.powf(n) - 1.0).norm();
        let r2 = (state.unit_product() * hole.powi(3) + 1.0).norm();
        if r1 > TOL || r2 > TOL {
            return Err(Error::Ansatz(format!(
                "hole conditions fail at x = 0: |h^N - 1| = {r1:e}, |A h^3 + 1| = {r2:e}"
            )));
        }
    } else {
        let main = ansatz.main_group();
        let beta = state.group_log_phases[main];
        let r = ((beta * (ansatz.phase_power as f64 * n)).exp() - 1.0).norm();
        if r > TOL {
            return Err(Error::Ansatz(format!("phase condition b^{{pN}} = 1 fails at x = 0: {r:e}")));
        }
    }
    Ok(())
}
