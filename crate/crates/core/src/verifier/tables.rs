//! Exponent tables for the L = 4 auxiliary functions.
//!
//! Every entry `k` stands for a factor `(x^k t; q)_∞` in the nome given by the
//! field: `x^{40}` for recurrences and `short_*`, `x^{72}` for `long_*`.

use serde::Serialize;

/// `R(t) = Π_num (x^k t; x^{40}) / Π_den (x^k t; x^{40})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    pub num: &'static [u32],
    pub den: &'static [u32],
}

/// Closed-form solution of a recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub short_num: &'static [u32],
    pub short_den: &'static [u32],
    pub long_num: &'static [u32],
    pub long_den: &'static [u32],
}

/// Explicit factor of the eigenvalue first term, in `t = w/b`:
/// `sign · t^band · Π(x^k t) Π(x^k/t) / [Π(x^k t) Π(x^k/t)]`, nome `x^{40}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prefactor {
    pub sign: i8,
    pub band: u32,
    pub num_t: &'static [u32],
    pub num_inv: &'static [u32],
    pub den_t: &'static [u32],
    pub den_inv: &'static [u32],
}

/// Elliptic form of `Λ_j/Λ_0`:
/// `w^band · Π E(−x^k/w) Π E(−x^k w) / [Π E(−x^k w) Π E(−x^k/w)]`, nome `x^{72}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Target {
    pub inv_num: &'static [u32],
    pub w_num: &'static [u32],
    pub w_den: &'static [u32],
    pub inv_den: &'static [u32],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityTable {
    pub excitation: usize,
    /// The hole-state factor enters this excitation's recurrences.
    pub hole: bool,
    pub forward_recurrence: Recurrence,
    pub reflected_recurrence: Recurrence,
    /// The reflected recurrence as originally printed, where it differs from
    /// the one consistent with the solution.
    pub printed_reflected_recurrence: Option<Recurrence>,
    pub forward: Solution,
    pub reflected: Solution,
    pub prefactor: Prefactor,
    pub target: Target,
}

/// Hole-state factor: `[R(t)]^N` in the recurrence and
/// `[Π_num (x^k t; x^{40}, x^{72}) / Π_den (x^k t; x^{40}, x^{72})]^N` in the
/// solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HoleAuxiliary {
    pub recurrence: Recurrence,
    pub num: &'static [u32],
    pub den: &'static [u32],
}

pub const HOLE_FORWARD: HoleAuxiliary = HoleAuxiliary {
    recurrence: Recurrence { num: &[12], den: &[28] },
    num: &[12, 24, 64, 76],
    den: &[28, 40, 48, 60],
};

pub const HOLE_REFLECTED: HoleAuxiliary = HoleAuxiliary {
    recurrence: Recurrence { num: &[52], den: &[36] },
    num: &[52, 64, 72, 84],
    den: &[36, 48, 88, 100],
};

const fn rec(num: &'static [u32], den: &'static [u32]) -> Recurrence {
    Recurrence { num, den }
}

const fn sol(short_num: &'static [u32], short_den: &'static [u32], long_num: &'static [u32], long_den: &'static [u32]) -> Solution {
    Solution {
        short_num,
        short_den,
        long_num,
        long_den,
    }
}

const fn pre(
    sign: i8,
    band: u32,
    num_t: &'static [u32],
    num_inv: &'static [u32],
    den_t: &'static [u32],
    den_inv: &'static [u32],
) -> Prefactor {
    Prefactor {
        sign,
        band,
        num_t,
        num_inv,
        den_t,
        den_inv,
    }
}

const fn tgt(inv_num: &'static [u32], w_num: &'static [u32], w_den: &'static [u32], inv_den: &'static [u32]) -> Target {
    Target {
        inv_num,
        w_num,
        w_den,
        inv_den,
    }
}

pub(crate) const SPECTATOR_EXCITATION: usize = 3;

static TABLES: [IdentityTable; 7] = [
    IdentityTable {
        excitation: 1,
        hole: true,
        forward_recurrence: rec(&[24, 28], &[12, 16]),
        reflected_recurrence: rec(&[36, 40], &[48, 52]),
        printed_reflected_recurrence: None,
        forward: sol(&[40], &[16], &[36, 48], &[12, 72]),
        reflected: sol(&[40], &[64], &[36, 96], &[60, 72]),
        prefactor: pre(-1, 1, &[28], &[12], &[12], &[28]),
        target: tgt(&[12], &[48], &[12], &[48]),
    },
    IdentityTable {
        excitation: 2,
        hole: false,
        forward_recurrence: rec(&[26, 30], &[10, 14]),
        reflected_recurrence: rec(&[38, 34], &[50, 54]),
        printed_reflected_recurrence: None,
        forward: sol(&[30, 42], &[14, 26], &[26, 38, 46, 58], &[10, 22, 62, 74]),
        reflected: sol(&[38, 50], &[54, 66], &[34, 46, 86, 98], &[50, 62, 70, 82]),
        prefactor: pre(1, 2, &[26, 38], &[2, 14], &[2, 14], &[26, 38]),
        target: tgt(&[2, 14], &[38, 50], &[2, 14], &[38, 50]),
    },
    IdentityTable {
        excitation: SPECTATOR_EXCITATION,
        hole: false,
        forward_recurrence: rec(&[32, 36], &[4, 8]),
        reflected_recurrence: rec(&[28, 32], &[56, 60]),
        printed_reflected_recurrence: Some(rec(&[56, 60], &[28, 32])),
        forward: sol(&[36], &[20], &[32, 40, 44, 52], &[4, 8, 16, 68]),
        reflected: sol(&[44], &[60], &[28, 32, 40, 92], &[56, 64, 68, 76]),
        prefactor: pre(1, 2, &[32], &[8], &[8], &[32]),
        target: tgt(&[8, 16], &[44, 52], &[8, 16], &[44, 52]),
    },
    IdentityTable {
        excitation: 4,
        hole: false,
        forward_recurrence: rec(&[34, 38], &[2, 6]),
        reflected_recurrence: rec(&[30, 26], &[58, 62]),
        printed_reflected_recurrence: None,
        forward: sol(&[38, 42, 50, 54], &[2, 6, 14, 18], &[34, 38, 46, 50], &[70, 74, 82, 86]),
        reflected: sol(&[26, 30, 38, 42], &[62, 66, 74, 78], &[94, 98, 106, 110], &[58, 62, 70, 74]),
        prefactor: pre(1, 2, &[18, 30], &[10, 22], &[10, 22], &[30, 18]),
        target: tgt(&[10, 14], &[46, 50], &[10, 14], &[46, 50]),
    },
    IdentityTable {
        excitation: 5,
        hole: false,
        forward_recurrence: rec(&[24, 28, 28, 32], &[8, 12, 12, 16]),
        reflected_recurrence: rec(&[32, 36, 36, 40], &[48, 52, 52, 56]),
        printed_reflected_recurrence: None,
        forward: sol(&[32, 40, 44], &[12, 16, 24], &[28, 36, 40, 44, 48, 56], &[8, 12, 20, 64, 72, 76]),
        reflected: sol(&[40, 36, 48], &[56, 64, 68], &[32, 36, 44, 88, 96, 100], &[52, 60, 64, 68, 72, 80]),
        prefactor: pre(-1, 3, &[24, 28, 36], &[4, 12, 16], &[4, 12, 16], &[24, 28, 36]),
        target: tgt(&[4, 12, 16], &[40, 48, 52], &[4, 12, 16], &[40, 48, 52]),
    },
    IdentityTable {
        excitation: 6,
        hole: false,
        forward_recurrence: rec(&[24, 28, 32, 36], &[4, 8, 12, 16]),
        reflected_recurrence: rec(&[28, 32, 36, 40], &[48, 52, 56, 60]),
        printed_reflected_recurrence: None,
        forward: sol(&[36, 40], &[16, 20], &[32, 36, 40, 44, 48, 52], &[4, 8, 12, 16, 68, 72]),
        reflected: sol(&[40, 44], &[60, 64], &[28, 32, 36, 40, 92, 96], &[56, 60, 64, 68, 72, 76]),
        prefactor: pre(-1, 3, &[28, 32], &[8, 12], &[8, 12], &[28, 32]),
        target: tgt(&[8, 12, 16], &[44, 48, 52], &[8, 12, 16], &[44, 48, 52]),
    },
    IdentityTable {
        excitation: 7,
        hole: false,
        forward_recurrence: rec(&[22, 26, 26, 30, 30, 34], &[6, 10, 10, 14, 14, 18]),
        reflected_recurrence: rec(&[30, 34, 34, 38, 38, 42], &[46, 50, 50, 54, 54, 58]),
        printed_reflected_recurrence: None,
        forward: sol(&[34, 38, 42, 46], &[10, 14, 18, 22], &[30, 34, 38, 42, 42, 46, 50, 54], &[6, 10, 14, 18, 66, 70, 74, 78]),
        reflected: sol(&[34, 38, 42, 46], &[58, 62, 66, 70], &[30, 34, 38, 42, 90, 94, 98, 102], &[54, 58, 62, 66, 66, 70, 74, 78]),
        prefactor: pre(1, 4, &[22, 26, 30, 34], &[6, 10, 14, 18], &[6, 10, 14, 18], &[22, 26, 30, 34]),
        target: tgt(&[6, 10, 14, 18], &[42, 46, 50, 54], &[6, 10, 14, 18], &[42, 46, 50, 54]),
    },
];

/// Identity data for L = 4 excitation `j` (1-based).
pub fn identity_table(j: usize) -> Option<&'static IdentityTable> {
    j.checked_sub(1).and_then(|i| TABLES.get(i))
}
