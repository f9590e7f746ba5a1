//! Exact check of a recurrence against its solution.
//!
//! With `ln (z; q)_∞ = −Σ_m z^m / (m(1 − q^m))`, the coefficient of `t¹` in
//! `ln Φ(t)` is a rational function of `y = x`, and the coefficient of `t^m`
//! is the same function of `x^m`. The recurrence
//! `Φ(t) = R(t) Φ(y^{12} t)/Φ(y^{24} t)` therefore holds identically iff
//! `(1 − y^{12} + y^{24}) φ = ρ` for the `t¹` coefficients `φ`, `ρ`. After
//! clearing the denominators `1 − y^{40}` and `1 − y^{72}` this is an identity
//! between integer polynomials.

use serde::Serialize;

use super::tables::{HoleAuxiliary, IdentityTable, Recurrence, Solution};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ExactCheck {
    pub excitation: usize,
    /// Polynomial coefficients that differ, summed over the forward,
    /// reflected and hole-factor identities.
    pub mismatches: usize,
    /// Whether the originally printed reflected recurrence also passes, when
    /// one is recorded.
    pub printed_consistent: Option<bool>,
}

type Poly = Vec<i64>;

fn add_monomials(p: &mut Poly, ks: &[u32], sign: i64) {
    for &k in ks {
        let k = k as usize;
        if p.len() <= k {
            p.resize(k + 1, 0);
        }
        p[k] += sign;
    }
}

fn mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus(k: usize) -> Poly {
    let mut p = vec![0; k + 1];
    p[0] = 1;
    p[k] = -1;
    p
}

fn diff(num: &[u32], den: &[u32]) -> Poly {
    let mut p = Vec::new();
    add_monomials(&mut p, num, 1);
    add_monomials(&mut p, den, -1);
    p
}

fn sum(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn count_mismatches(a: &[i64], b: &[i64]) -> usize {
    (0..a.len().max(b.len()))
        .filter(|&i| a.get(i).copied().unwrap_or(0) != b.get(i).copied().unwrap_or(0))
        .count()
}

fn shift_operator() -> Poly {
    let mut p = vec![0; 25];
    p[0] = 1;
    p[12] = -1;
    p[24] = 1;
    p
}

/// Mismatching coefficients of
/// `ρ (1 − y^{72}) = (1 − y^{12} + y^{24}) [σ_40 (1 − y^{72}) + σ_72 (1 − y^{40}) + σ_2]`,
/// where `ρ` collects the recurrence factors, `σ_40` and `σ_72` the single
/// products of the solution and `σ_2` its double products.
fn mismatches(r: &Recurrence, s: Option<&Solution>, double: Option<(&[u32], &[u32])>) -> usize {
    let lhs = mul(&diff(r.num, r.den), &one_minus(72));
    let mut inner = Vec::new();
    if let Some(s) = s {
        inner = sum(&mul(&diff(s.short_num, s.short_den), &one_minus(72)), &mul(&diff(s.long_num, s.long_den), &one_minus(40)));
    }
    if let Some((num, den)) = double {
        inner = sum(&inner, &diff(num, den));
    }
    count_mismatches(&lhs, &mul(&shift_operator(), &inner))
}

fn hole_mismatches(h: &HoleAuxiliary) -> usize {
    mismatches(&h.recurrence, None, Some((h.num, h.den)))
}

pub(super) fn exact_check(t: &IdentityTable) -> ExactCheck {
    let mut n = mismatches(&t.forward_recurrence, Some(&t.forward), None) + mismatches(&t.reflected_recurrence, Some(&t.reflected), None);
    if t.hole {
        n += hole_mismatches(&super::HOLE_FORWARD) + hole_mismatches(&super::HOLE_REFLECTED);
    }
    ExactCheck {
        excitation: t.excitation,
        mismatches: n,
        printed_consistent: t.printed_reflected_recurrence.map(|r| mismatches(&r, Some(&t.reflected), None) == 0),
    }
}
