//! Complex matrices, antilinear operators and finite spectral triples.

mod antilinear;
pub mod matrix;
mod triple;

pub use antilinear::{
    antilinear_square_sign, classify_commutation, classify_square, commutation_sign,
    tensor_antilinear, AntilinearOp, SignClassification, SignFit,
};
pub use matrix::CMatrix;
pub use triple::{verify_triple, Axiom, FiniteSpectralTriple, SignReport};
