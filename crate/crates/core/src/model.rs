//! Model parameters, the coupled nome variables and the excitation tables.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Heights supported by the tables in this crate.
pub const SUPPORTED_L: [u32; 3] = [3, 4, 6];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Number of heights.
    pub l: u32,
    /// `L + 2`.
    pub s: u32,
    /// `4(L + 1)`.
    pub r: u32,
    /// Coxeter number of the associated exceptional algebra.
    pub g: u32,
    /// Crossing parameter `πs/r`.
    pub lambda: f64,
    pub central_charge: f64,
}

impl ModelParams {
    /// Exponent `2s/r` carried by the roots in the Bethe equations.
    pub fn kappa(&self) -> f64 {
        2.0 * self.s as f64 / self.r as f64
    }

    /// Exponent of `p` in the θ₄ form of the masses, `r / 6s`.
    pub fn mass_exponent(&self) -> f64 {
        self.r as f64 / (6.0 * self.s as f64)
    }

    /// Power of `x` at the isotropic point `u = 3λ/2`, where `w = x^{3s}`.
    pub fn isotropic_power(&self) -> u32 {
        3 * self.s
    }
}

pub fn params_for(l: u32) -> Result<ModelParams> {
    let g = match l {
        3 => 30,
        4 => 18,
        6 => 12,
        _ => {
            return Err(Error::Domain(format!(
                "unsupported L = {l}; expected one of {SUPPORTED_L:?}"
            )))
        }
    };
    let s = l + 2;
    let r = 4 * (l + 1);
    Ok(ModelParams {
        l,
        s,
        r,
        g,
        lambda: PI * s as f64 / r as f64,
        central_charge: 1.0 - 6.0 / (l * (l + 1)) as f64,
    })
}

/// The elliptic nome `p = e^{-ε}` and its conjugate `x = e^{-π²/(rε)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NomeFrame {
    pub eps: f64,
    pub p: f64,
    pub x: f64,
    /// `ln x`, kept separately because `x` underflows as `p → 1`.
    pub ln_x: f64,
}

impl NomeFrame {
    pub fn from_eps(eps: f64, params: &ModelParams) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Domain(format!("eps must be positive and finite, got {eps}")));
        }
        let ln_x = -PI * PI / (params.r as f64 * eps);
        Ok(Self {
            eps,
            p: (-eps).exp(),
            x: ln_x.exp(),
            ln_x,
        })
    }

    pub fn from_p(p: f64, params: &ModelParams) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
        }
        let mut frame = Self::from_eps(-p.ln(), params)?;
        frame.p = p;
        Ok(frame)
    }

    pub fn from_x(x: f64, params: &ModelParams) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
        }
        let mut frame = Self::from_eps(-PI * PI / (params.r as f64 * x.ln()), params)?;
        frame.x = x;
        frame.ln_x = x.ln();
        Ok(frame)
    }
}

/// A spectral parameter `u` in the regime `0 < u < 3λ` and `w = e^{-2πu/ε}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralPoint {
    pub u: f64,
    pub w: f64,
    pub ln_w: f64,
}

impl SpectralPoint {
    pub fn new(u: f64, frame: &NomeFrame, params: &ModelParams) -> Result<Self> {
        if !(u > 0.0 && u < 3.0 * params.lambda) {
            return Err(Error::Domain(format!(
                "spectral parameter {u} outside (0, {})",
                3.0 * params.lambda
            )));
        }
        let ln_w = -2.0 * PI * u / frame.eps;
        Ok(Self { u, w: ln_w.exp(), ln_w })
    }

    /// `u = 3λ/2`, where `w = x^{3s}`.
    pub fn isotropic(frame: &NomeFrame, params: &ModelParams) -> Self {
        let ln_w = params.isotropic_power() as f64 * frame.ln_x;
        Self {
            u: 1.5 * params.lambda,
            w: ln_w.exp(),
            ln_w,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// One row of an excitation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcitationSpec {
    /// Position in the table, starting at 1.
    pub index: usize,
    /// Display label; differs from the index only for the degenerate L = 6 rows.
    pub label: &'static str,
    pub a_set: &'static [u32],
    /// Parity under the height-reflection symmetry (L = 4 only).
    pub parity: Option<Parity>,
    /// Real parts of the string centres in units of π/20 (L = 4 only).
    pub string_positions: &'static [i32],
    /// Power of `w` multiplying the excitation ratio (L = 4 only).
    pub band: Option<u32>,
}

impl ExcitationSpec {
    /// Levels `m` of the excited roots `w = b·x^m`, one per string member.
    pub fn string_levels(&self) -> Vec<i32> {
        self.string_positions.iter().map(|p| 2 * p).collect()
    }
}

struct Row {
    label: &'static str,
    a_set: &'static [u32],
    parity: Option<Parity>,
    strings: &'static [i32],
    band: Option<u32>,
}

const fn row(label: &'static str, a_set: &'static [u32]) -> Row {
    Row {
        label,
        a_set,
        parity: None,
        strings: &[],
        band: None,
    }
}

const fn row4(a_set: &'static [u32], parity: Parity, strings: &'static [i32], band: u32) -> Row {
    Row {
        label: "",
        a_set,
        parity: Some(parity),
        strings,
        band: Some(band),
    }
}

const TABLE_L3: [Row; 8] = [
    row("1", &[1, 11]),
    row("2", &[7, 13]),
    row("3", &[2, 10, 12]),
    row("4", &[6, 10, 14]),
    row("5", &[3, 9, 11, 13]),
    row("6", &[6, 8, 12, 14]),
    row("7", &[4, 8, 10, 12, 14]),
    row("8", &[5, 7, 9, 11, 13, 15]),
];

const TABLE_L4: [Row; 7] = [
    row4(&[6], Parity::Odd, &[-2, 2, 10], 1),
    row4(&[1, 7], Parity::Even, &[-7, 7], 2),
    row4(&[4, 8], Parity::Odd, &[-6, 6, 10], 2),
    row4(&[5, 7], Parity::Even, &[-9, 9, -3, 3], 2),
    row4(&[2, 6, 8], Parity::Even, &[-8, 8, -6, 6], 3),
    row4(&[4, 6, 8], Parity::Odd, &[10, -8, 8, -4, 4], 3),
    row4(&[3, 5, 7, 9], Parity::Even, &[-9, 9, -7, 7, -5, 5], 4),
];

const TABLE_L6: [Row; 6] = [
    row("1", &[4]),
    row("1\u{304}", &[4]),
    row("2", &[1, 5]),
    row("3", &[3, 5]),
    row("3\u{304}", &[3, 5]),
    row("4", &[2, 4, 6]),
];

const LABELS_L4: [&str; 7] = ["1", "2", "3", "4", "5", "6", "7"];

/// The excitation table for `L`, in the order of increasing mass at small `p`.
pub fn excitation_table(l: u32) -> Result<Vec<ExcitationSpec>> {
    let rows: &[Row] = match l {
        3 => &TABLE_L3,
        4 => &TABLE_L4,
        6 => &TABLE_L6,
        _ => {
            return Err(Error::Domain(format!(
                "unsupported L = {l}; expected one of {SUPPORTED_L:?}"
            )))
        }
    };
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, row)| ExcitationSpec {
            index: i + 1,
            label: if l == 4 { LABELS_L4[i] } else { row.label },
            a_set: row.a_set,
            parity: row.parity,
            string_positions: row.strings,
            band: row.band,
        })
        .collect())
}

/// Looks up excitation `index` (1-based) for `L`.
pub fn excitation(l: u32, index: usize) -> Result<ExcitationSpec> {
    let table = excitation_table(l)?;
    let len = table.len();
    table
        .into_iter()
        .find(|e| e.index == index)
        .ok_or_else(|| Error::Domain(format!("excitation {index} out of range 1..={len} for L = {l}")))
}
