//! Sign-table algebra for real spectral triples and finite matrix
//! realizations that check it numerically.
//!
//! * [`sign_algebra`]: the mod-8 `(ε, ε′, ε″)` table, product sign
//!   composition and the choice of product real structure.
//! * [`operator_core`]: dense complex matrices, antilinear operators and
//!   axiom verification of finite spectral triples.
//! * [`clifford`]: gamma matrices, chirality, charge conjugation search and
//!   seeded finite triples for every class.
//! * [`product`]: product triples, the `U`/`V` transforms and the numeric
//!   counterpart of the product sign rules.

pub mod clifford;
pub mod error;
pub mod operator_core;
pub mod product;
pub mod sign_algebra;

pub use error::{Error, Result};

/// Relative residual bound used throughout unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-12;
