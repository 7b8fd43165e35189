//! Antilinear operators `v ↦ M·conj(v)`.
//!
//! Products of two antilinear operators are linear, so every sign relation
//! involving `J` reduces to an identity between ordinary matrices:
//! `J·A = s·A·J` holds iff `M·conj(A) = s·A·M`, and `J² = M·conj(M)`.

use nalgebra::DVector;
use num_complex::Complex64;

use super::matrix::{
    self, check_square, conj, frobenius, identity, kron, matmul, relative, CMatrix,
};
use crate::error::{Error, Result};
use crate::sign_algebra::Sign;

#[derive(Debug, Clone, PartialEq)]
pub struct AntilinearOp {
    m: CMatrix,
}

impl AntilinearOp {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square("antilinear matrix", &m, m.nrows())?;
        Ok(AntilinearOp { m })
    }

    /// Plain complex conjugation on `C^dim`.
    pub fn conjugation(dim: usize) -> Self {
        AntilinearOp { m: identity(dim) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.m * v.map(|z| z.conj())
    }

    /// `self ∘ other`, which is linear.
    pub fn compose(&self, other: &AntilinearOp) -> CMatrix {
        matmul(&self.m, &conj(&other.m))
    }

    /// `J ∘ A` for linear `A`.
    pub fn then_after(&self, a: &CMatrix) -> AntilinearOp {
        AntilinearOp {
            m: matmul(&self.m, &conj(a)),
        }
    }

    /// `A ∘ J` for linear `A`.
    pub fn preceded_by(&self, a: &CMatrix) -> AntilinearOp {
        AntilinearOp {
            m: matmul(a, &self.m),
        }
    }

    /// `J A J⁻¹` for linear `A`; `J` must be unitary.
    pub fn conjugate_linear(&self, a: &CMatrix) -> CMatrix {
        matmul(&matmul(&self.m, &conj(a)), &self.m.adjoint())
    }

    /// `U J U†` for unitary `U`.
    pub fn transform(&self, u: &CMatrix) -> AntilinearOp {
        AntilinearOp {
            m: matmul(&matmul(u, &self.m), &u.transpose()),
        }
    }

    pub fn unitarity_residual(&self) -> f64 {
        matrix::unitarity_residual(&self.m)
    }

    pub fn square(&self) -> CMatrix {
        self.compose(self)
    }
}

/// `J₁ ⊗ J₂`, acting as `J(v⊗w) = J₁v ⊗ J₂w`.
pub fn tensor_antilinear(j1: &AntilinearOp, j2: &AntilinearOp) -> AntilinearOp {
    AntilinearOp {
        m: kron(&j1.m, &j2.m),
    }
}

/// Which of the two sign hypotheses an operator relation satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFit {
    Fits(Sign),
    Neither,
    /// Both fit; only possible for a vanishing operator.
    Both,
}

impl SignFit {
    pub fn sign(self) -> Option<Sign> {
        match self {
            SignFit::Fits(s) => Some(s),
            _ => None,
        }
    }

    /// Whether the fit is compatible with `expected` (a degenerate fit is).
    pub fn consistent_with(self, expected: Sign) -> bool {
        match self {
            SignFit::Fits(s) => s == expected,
            SignFit::Both => true,
            SignFit::Neither => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignClassification {
    pub fit: SignFit,
    pub residual_plus: f64,
    pub residual_minus: f64,
}

impl SignClassification {
    fn from_residuals(plus: f64, minus: f64, tol: f64) -> Self {
        let fit = match (plus <= tol, minus <= tol) {
            (true, false) => SignFit::Fits(Sign::Plus),
            (false, true) => SignFit::Fits(Sign::Minus),
            (true, true) => SignFit::Both,
            (false, false) => SignFit::Neither,
        };
        SignClassification {
            fit,
            residual_plus: plus,
            residual_minus: minus,
        }
    }

    pub fn residual(&self, s: Sign) -> f64 {
        match s {
            Sign::Plus => self.residual_plus,
            Sign::Minus => self.residual_minus,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::BadTolerance(tol))
    }
}

/// Classifies `J·A = ±A·J` with residual `‖M conj(A) ∓ A M‖ / (‖A‖‖M‖)`.
pub fn classify_commutation(j: &AntilinearOp, a: &CMatrix, tol: f64) -> Result<SignClassification> {
    check_tol(tol)?;
    check_square("operator", a, j.dim())?;
    let lhs = matmul(&j.m, &conj(a));
    let rhs = matmul(a, &j.m);
    let scale = frobenius(a) * frobenius(&j.m);
    let plus = relative(frobenius(&(&lhs - &rhs)), scale);
    let minus = relative(frobenius(&(&lhs + &rhs)), scale);
    Ok(SignClassification::from_residuals(plus, minus, tol))
}

/// The sign `s` with `J·A = s·A·J`, if exactly one fits.
pub fn commutation_sign(j: &AntilinearOp, a: &CMatrix, tol: f64) -> Result<Option<Sign>> {
    Ok(classify_commutation(j, a, tol)?.fit.sign())
}

/// Classifies `J² = ±Id` with residual `‖M conj(M) ∓ Id‖ / ‖Id‖`.
pub fn classify_square(j: &AntilinearOp, tol: f64) -> Result<SignClassification> {
    check_tol(tol)?;
    let unitarity = j.unitarity_residual();
    if unitarity > tol {
        return Err(Error::NotUnitary(unitarity));
    }
    let sq = j.square();
    let id = identity(j.dim());
    let norm = (j.dim() as f64).sqrt();
    let plus = frobenius(&(&sq - &id)) / norm;
    let minus = frobenius(&(&sq + &id)) / norm;
    Ok(SignClassification::from_residuals(plus, minus, tol))
}

pub fn antilinear_square_sign(j: &AntilinearOp, tol: f64) -> Result<Option<Sign>> {
    Ok(classify_square(j, tol)?.fit.sign())
}
