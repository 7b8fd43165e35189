use thiserror::Error;

use crate::sign_algebra::ProductRule;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension class {0} is outside 0..=7")]
    DimensionOutOfRange(i64),
    #[error("first factor must be even, got class {0}")]
    OddFirstFactor(u8),
    #[error("first factor signs carry no ε″; the first factor must be even")]
    OddFirstFactorSigns,
    #[error("cannot twist an odd real structure: there is no grading")]
    TwistWithoutGrading,
    #[error("rule {rule} is not legal for classes ({n1}, {n2})")]
    IllegalRule { rule: ProductRule, n1: u8, n2: u8 },
    #[error("no table numbered {0}; tables run from 1 to 5")]
    NoSuchTable(u8),
    #[error("{what}: expected a {expected}x{expected} matrix, found {rows}x{cols}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("operator is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("an even class needs a grading operator")]
    MissingGrading,
    #[error("an odd class cannot carry a grading operator")]
    UnexpectedGrading,
    #[error("chirality needs an even number of generators, got {0}")]
    OddGeneratorCount(usize),
    #[error("{0} generators requested; at most 8 are supported")]
    TooManyGenerators(usize),
    #[error("{n} generators do not fit on {qubits} qubits")]
    RepresentationTooSmall { n: usize, qubits: usize },
    #[error(
        "no charge conjugation monomial realizes {target} for {n} generators in dimension {dim}; \
         double the representation"
    )]
    ConjugationSearchExhausted {
        n: usize,
        dim: usize,
        target: String,
    },
    #[error("realization of class {n} failed verification: {detail}")]
    RealizationFailed { n: u8, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
