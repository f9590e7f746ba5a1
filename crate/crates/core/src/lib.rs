//! Exact excitation spectra of the dilute A_L lattice models (L = 3, 4, 6) in
//! regime 2, together with a finite-size Bethe-ansatz solver and a numeric
//! verification suite for the product identities behind the closed forms.
//!
//! The crate is organised bottom-up:
//!
//! * [`elliptic`]: truncated q-Pochhammer products, `E(z, q)` and `ϑ₄`.
//! * [`model`]: model parameters, nome conversions and the excitation tables.
//! * [`spectrum`]: excitation ratios, masses, asymptotics and amplitudes.
//! * [`bethe`]: Bethe equations, string ansätze, continuation solver and the
//!   transfer-matrix eigenvalue.
//! * [`verifier`]: recurrence, assembly and product-identity checks.
//!
//! ```
//! use dilute_spectra::{elliptic::Truncation, model, spectrum};
//!
//! let params = model::params_for(4).unwrap();
//! let frame = model::NomeFrame::from_p(1e-6, &params).unwrap();
//! let masses = spectrum::mass_spectrum(&params, &frame, &Truncation::default()).unwrap();
//! let ratio = masses.entries[1].mass / masses.entries[0].mass;
//! assert!((ratio - 2.0 * (5.0 * std::f64::consts::PI / 18.0).cos()).abs() < 1e-4);
//! ```

pub mod bethe;
pub mod elliptic;
pub mod error;
pub mod model;
pub mod spectrum;
pub mod verifier;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/products.md")]
    struct Products;
    #[doc = include_str!("../../../book/src/model.md")]
    struct Model;
    #[doc = include_str!("../../../book/src/spectrum.md")]
    struct Spectrum;
    #[doc = include_str!("../../../book/src/bethe.md")]
    struct Bethe;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
