//! Truncated q-Pochhammer products, the conjugate-modulus elliptic function
//! `E(z, q)` and the Jacobi theta function `ϑ₄`.
//!
//! All infinite products are evaluated factor by factor and stopped once the
//! geometric tail bound `|q|^n · max(|z|, 1) / (1 − |q|)` drops below the
//! requested tolerance. The bound controls the logarithm of the omitted tail,
//! so the returned value carries a relative error of the same order.
//!
//! ```
//! use dilute_spectra::elliptic::{qpoch1, Truncation};
//! use num_complex::Complex64;
//!
//! let tr = Truncation::default();
//! let z = Complex64::new(0.2, 0.0);
//! let q = Complex64::new(0.1, 0.0);
//! let ratio = qpoch1(z, q, &tr).unwrap() / qpoch1(z * q, q, &tr).unwrap();
//! assert!((ratio - (1.0 - z)).norm() < 1e-13);
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute bound on the logarithm of the omitted tail.
pub const DEFAULT_TOL: f64 = 1e-13;
/// Default cap on the number of factors in a single product.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
/// Largest nome modulus accepted without an explicit override.
pub const DEFAULT_NOME_LIMIT: f64 = 0.98;
/// Environment variable overriding [`Truncation::max_terms`].
pub const MAX_TERMS_ENV: &str = "DILUTE_SPECTRA_MAX_TERMS";

// A factor this close to zero is treated as an exact zero of the product.
const ZERO_GUARD: f64 = 64.0 * f64::EPSILON;

/// Truncation control shared by every product in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    tol: f64,
    max_terms: usize,
    nome_limit: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            nome_limit: DEFAULT_NOME_LIMIT,
        }
    }
}

impl Truncation {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Self {
            tol,
            max_terms,
            nome_limit: DEFAULT_NOME_LIMIT,
        })
    }

    /// Default truncation with `max_terms` taken from `DILUTE_SPECTRA_MAX_TERMS`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut tr = Self::default();
        if let Ok(raw) = std::env::var(MAX_TERMS_ENV) {
            let terms: usize = raw.trim().parse().map_err(|_| {
                Error::Domain(format!("{MAX_TERMS_ENV} must be a positive integer, got {raw:?}"))
            })?;
            tr = tr.with_max_terms(terms)?;
        }
        Ok(tr)
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Ok(Self {
            nome_limit: self.nome_limit,
            ..Self::new(tol, self.max_terms)?
        })
    }

    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Ok(Self {
            nome_limit: self.nome_limit,
            ..Self::new(self.tol, max_terms)?
        })
    }

    /// Accept any nome with `|q| < 1` instead of the default `|q| ≤ 0.98`.
    pub fn allow_large_nomes(mut self) -> Self {
        self.nome_limit = 1.0;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn nome_limit(&self) -> f64 {
        self.nome_limit
    }

    fn check_nome(&self, q: Complex64) -> Result<f64> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::Domain(format!("nome {q} is not finite")));
        }
        let m = q.norm();
        if m >= 1.0 {
            return Err(Error::Domain(format!("nome modulus {m} must be below 1")));
        }
        if m > self.nome_limit {
            return Err(Error::Domain(format!(
                "nome modulus {m} exceeds {}; call Truncation::allow_large_nomes to override",
                self.nome_limit
            )));
        }
        Ok(m)
    }
}

/// A truncated product together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub value: T,
    /// Number of factors multiplied in.
    pub terms: usize,
    /// True when `max_terms` was reached before the tail bound was met; the
    /// value is then less accurate than requested.
    pub capped: bool,
}

impl<T> Evaluation<T> {
    fn into_checked(self, tr: &Truncation) -> Result<T> {
        if self.capped {
            Err(Error::TruncationCap {
                max_terms: tr.max_terms,
                tol: tr.tol,
            })
        } else {
            Ok(self.value)
        }
    }
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {z} is not finite")))
    }
}

/// Walks the factors `1 − q^n z`, n = 0, 1, …, feeding each to `accept`
/// until the tail bound is met or the cap binds.
fn walk_factors<F>(z: Complex64, q: Complex64, tr: &Truncation, mut accept: F) -> Result<(usize, bool)>
where
    F: FnMut(Complex64) -> Result<()>,
{
    let qm = tr.check_nome(q)?;
    check_finite(z, "z")?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok((0, false));
    }
    let scale = z.norm().max(1.0) / (1.0 - qm);
    let mut power = Complex64::new(1.0, 0.0);
    let mut power_mod = 1.0;
    let mut terms = 0;
    loop {
        accept(power * z)?;
        terms += 1;
        power *= q;
        power_mod *= qm;
        if power_mod * scale < tr.tol {
            return Ok((terms, false));
        }
        if terms >= tr.max_terms {
            return Ok((terms, true));
        }
    }
}

/// `(z; q)_∞ = Π_{n≥0} (1 − q^n z)` with its truncation record.
pub fn qpoch1_eval(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Evaluation<Complex64>> {
    let mut value = Complex64::new(1.0, 0.0);
    let (terms, capped) = walk_factors(z, q, tr, |t| {
        value *= 1.0 - t;
        Ok(())
    })?;
    Ok(Evaluation { value, terms, capped })
}

/// `(z; q)_∞`. Fails with [`Error::TruncationCap`] if the cap binds.
pub fn qpoch1(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    qpoch1_eval(z, q, tr)?.into_checked(tr)
}

/// Logarithm of `(z; q)_∞` as a sum of principal logarithms of its factors.
///
/// The imaginary part is only meaningful modulo 2π. A vanishing factor is
/// reported as [`Error::Pole`].
pub fn ln_qpoch1(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let (_, capped) = walk_factors(z, q, tr, |t| {
        let f = 1.0 - t;
        if f.norm() <= ZERO_GUARD {
            return Err(Error::Pole(format!("factor 1 - ({t}) vanishes in ({z}; {q})")));
        }
        acc += f.ln();
        Ok(())
    })?;
    Evaluation {
        value: acc,
        terms: 0,
        capped,
    }
    .into_checked(tr)
}

/// Double product `(z; p, q)_∞ = Π_{m,n≥0} (1 − p^m q^n z)` with its
/// truncation record.
pub fn qpoch2_eval(z: Complex64, p: Complex64, q: Complex64, tr: &Truncation) -> Result<Evaluation<Complex64>> {
    let pm = tr.check_nome(p)?;
    let qm = tr.check_nome(q)?;
    check_finite(z, "z")?;
    let mut value = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Evaluation { value, terms: 0, capped: false });
    }
    let scale = z.norm().max(1.0) / ((1.0 - pm) * (1.0 - qm));
    let mut shift = z;
    let mut power_mod = 1.0;
    let mut terms = 0;
    let mut capped = false;
    loop {
        let inner = qpoch1_eval(shift, q, tr)?;
        value *= inner.value;
        terms += inner.terms.max(1);
        capped |= inner.capped;
        shift *= p;
        power_mod *= pm;
        if power_mod * scale < tr.tol {
            break;
        }
        if terms >= tr.max_terms {
            capped = true;
            break;
        }
    }
    Ok(Evaluation { value, terms, capped })
}

/// `(z; p, q)_∞`. Fails with [`Error::TruncationCap`] if the cap binds.
pub fn qpoch2(z: Complex64, p: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    qpoch2_eval(z, p, q, tr)?.into_checked(tr)
}

fn check_e_argument(z: Complex64) -> Result<()> {
    check_finite(z, "z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("E(z, q) needs z != 0".into()));
    }
    Ok(())
}

/// `E(z, q) = Π_{n≥1} (1 − q^{n−1} z)(1 − q^n / z)(1 − q^n) = (z, q/z, q; q)_∞`.
pub fn elliptic_e(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    check_e_argument(z)?;
    Ok(qpoch1(z, q, tr)? * qpoch1(q / z, q, tr)? * qpoch1(q, q, tr)?)
}

/// Logarithm of `E(z, q)`; see [`ln_qpoch1`] for the branch convention.
pub fn ln_elliptic_e(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    check_e_argument(z)?;
    Ok(ln_qpoch1(z, q, tr)? + ln_qpoch1(q / z, q, tr)? + ln_qpoch1(q, q, tr)?)
}

/// `ln E(z, q)` with both arguments given as logarithms, for real `0 < q < 1`.
///
/// Quasi-periodicity `E(qz, q) = −E(z, q)/z` first moves `z` into the annulus
/// `q ≤ |z| ≤ 1`, so arguments such as `x^{-30}` with `x ≈ 10^{-20}` never have
/// to be formed explicitly. The result agrees with [`ln_elliptic_e`] modulo 2πi.
pub fn ln_elliptic_e_log(ln_z: Complex64, ln_q: f64, tr: &Truncation) -> Result<Complex64> {
    if !(ln_z.re.is_finite() && ln_z.im.is_finite()) {
        return Err(Error::Domain(format!("ln z = {ln_z} is not finite")));
    }
    if !(ln_q < 0.0) || ln_q.is_infinite() {
        return Err(Error::Domain(format!("ln q must be negative and finite, got {ln_q}")));
    }
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    let mut lz = ln_z;
    let mut acc = Complex64::new(0.0, 0.0);
    // Jump straight to the fundamental annulus; the shifts add an arithmetic
    // series of logarithms that is summed in closed form.
    let k = (lz.re / -ln_q).ceil();
    if k != 0.0 {
        // E(z) = (−1)^k z^k q^{k(k−1)/2} E(q^k z)
        acc += k * (lz + i_pi) + 0.5 * k * (k - 1.0) * ln_q;
        lz += k * ln_q;
    }
    let z = lz.exp();
    let q = ln_q.exp();
    let q_over_z = (Complex64::new(ln_q, 0.0) - lz).exp();
    let qc = Complex64::new(q, 0.0);
    Ok(acc + ln_qpoch1(z, qc, tr)? + ln_qpoch1(q_over_z, qc, tr)? + ln_qpoch1(qc, qc, tr)?)
}

fn theta4_factors<F>(u: f64, q: f64, tr: &Truncation, mut accept: F) -> Result<()>
where
    F: FnMut(f64) -> Result<()>,
{
    if !(u.is_finite() && q.is_finite()) {
        return Err(Error::Domain(format!("theta4 arguments must be finite, got u={u}, q={q}")));
    }
    if q < 0.0 {
        return Err(Error::Domain(format!("theta4 nome must be non-negative, got {q}")));
    }
    tr.check_nome(Complex64::new(q, 0.0))?;
    if q == 0.0 {
        return Ok(());
    }
    let c = (2.0 * u).cos();
    let q2 = q * q;
    let bound_scale = 4.0 / (1.0 - q2);
    let mut odd = q; // q^{2n-1}
    let mut even = q2; // q^{2n}
    for _ in 0..tr.max_terms {
        accept((1.0 - 2.0 * odd * c + odd * odd) * (1.0 - even))?;
        if odd * bound_scale < tr.tol {
            return Ok(());
        }
        odd *= q2;
        even *= q2;
    }
    Err(Error::TruncationCap {
        max_terms: tr.max_terms,
        tol: tr.tol,
    })
}

/// Jacobi `ϑ₄(u, q) = Π_{n≥1} (1 − 2q^{2n−1} cos 2u + q^{4n−2})(1 − q^{2n})`
/// for real `0 ≤ q < 1`.
pub fn theta4(u: f64, q: f64, tr: &Truncation) -> Result<f64> {
    let mut value = 1.0;
    theta4_factors(u, q, tr, |f| {
        value *= f;
        Ok(())
    })?;
    Ok(value)
}

/// `ln ϑ₄(u, q)`, accumulated factor by factor so that nomes close to 1
/// do not under- or overflow.
pub fn ln_theta4(u: f64, q: f64, tr: &Truncation) -> Result<f64> {
    let mut acc = 0.0;
    theta4_factors(u, q, tr, |f| {
        if f <= 0.0 {
            return Err(Error::Pole(format!("theta4({u}, {q}) has a vanishing factor")));
        }
        acc += f.ln();
        Ok(())
    })?;
    Ok(acc)
}
