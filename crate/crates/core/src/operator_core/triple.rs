//! Finite spectral triples and their axiom check.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::antilinear::{classify_commutation, classify_square, AntilinearOp, SignFit};
use super::matrix::{
    anticommutator, check_square, commutator, frobenius, hermiticity_residual, identity, matmul,
    relative, CMatrix,
};
use crate::error::{Error, Result};
use crate::sign_algebra::{KODim, KOSigns, Sign};

/// `{A, H, D, J(, γ)}` on `H = C^dim`, with `A` given by the images of a
/// set of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpectralTriple {
    pub dim: usize,
    pub d_op: CMatrix,
    pub j_op: AntilinearOp,
    pub grading: Option<CMatrix>,
    pub algebra_gens: Vec<CMatrix>,
    pub ko_dim: KODim,
}

impl FiniteSpectralTriple {
    pub fn new(
        d_op: CMatrix,
        j_op: AntilinearOp,
        grading: Option<CMatrix>,
        algebra_gens: Vec<CMatrix>,
        ko_dim: KODim,
    ) -> Result<Self> {
        let t = FiniteSpectralTriple {
            dim: d_op.nrows(),
            d_op,
            j_op,
            grading,
            algebra_gens,
            ko_dim,
        };
        t.check_shapes()?;
        match (ko_dim.is_even(), t.grading.is_some()) {
            (true, false) => return Err(Error::MissingGrading),
            (false, true) => return Err(Error::UnexpectedGrading),
            _ => {}
        }
        Ok(t)
    }

    fn check_shapes(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::DimensionMismatch {
                what: "Dirac operator".into(),
                expected: 1,
                rows: 0,
                cols: 0,
            });
        }
        check_square("Dirac operator", &self.d_op, self.dim)?;
        check_square("real structure", self.j_op.matrix(), self.dim)?;
        if let Some(g) = &self.grading {
            check_square("grading", g, self.dim)?;
        }
        for a in &self.algebra_gens {
            check_square("algebra generator", a, self.dim)?;
        }
        Ok(())
    }

    /// `π°(b) = J π(b)† J⁻¹`
    pub fn opposite(&self, b: &CMatrix) -> CMatrix {
        self.j_op.conjugate_linear(&b.adjoint())
    }

    /// The same triple written in the basis rotated by the unitary `u`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        check_square("basis change", u, self.dim)?;
        let rot = |a: &CMatrix| matmul(&matmul(u, a), &u.adjoint());
        Ok(FiniteSpectralTriple {
            dim: self.dim,
            d_op: rot(&self.d_op),
            j_op: self.j_op.transform(u),
            grading: self.grading.as_ref().map(rot),
            algebra_gens: self.algebra_gens.iter().map(rot).collect(),
            ko_dim: self.ko_dim,
        })
    }
}

/// The conditions checked by [`verify_triple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DiracSelfAdjoint,
    GradingSelfAdjoint,
    GradingInvolution,
    DiracOdd,
    AlgebraEven,
    JUnitary,
    JSquare,
    JDirac,
    JGrading,
    Commutant,
    FirstOrder,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::DiracSelfAdjoint => "dirac_self_adjoint",
            Axiom::GradingSelfAdjoint => "grading_self_adjoint",
            Axiom::GradingInvolution => "grading_involution",
            Axiom::DiracOdd => "dirac_odd",
            Axiom::AlgebraEven => "algebra_even",
            Axiom::JUnitary => "j_unitary",
            Axiom::JSquare => "j_square",
            Axiom::JDirac => "j_dirac",
            Axiom::JGrading => "j_grading",
            Axiom::Commutant => "commutant",
            Axiom::FirstOrder => "first_order",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Measured signs and residuals of one triple against an expected sign row.
///
/// A measured sign is `None` when neither sign fits or when both do; the
/// latter only happens for a vanishing operator and is listed in `degenerate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub expected: KOSigns,
    pub eps_measured: Option<Sign>,
    pub eps_prime_measured: Option<Sign>,
    pub eps_dprime_measured: Option<Sign>,
    pub degenerate: Vec<Axiom>,
    /// Residuals of the sign relations are taken with the expected sign.
    pub residuals: BTreeMap<Axiom, f64>,
    pub tol: f64,
    pub pass: bool,
}

impl SignReport {
    pub fn failures(&self) -> Vec<Axiom> {
        self.residuals
            .iter()
            .filter(|(_, &r)| r.is_nan() || r > self.tol)
            .map(|(&a, _)| a)
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    pub fn is_degenerate(&self, axiom: Axiom) -> bool {
        self.degenerate.contains(&axiom)
    }
}

fn fmt_measured(s: Option<Sign>, degenerate: bool) -> String {
    match (s, degenerate) {
        (Some(s), _) => s.to_string(),
        (None, true) => "±".to_string(),
        (None, false) => "none".to_string(),
    }
}

impl fmt::Display for SignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dprime = if self.expected.is_even() {
            fmt_measured(
                self.eps_dprime_measured,
                self.is_degenerate(Axiom::JGrading),
            )
        } else {
            "—".to_string()
        };
        write!(
            f,
            "measured ε={} ε′={} ε″={} against {} : {}",
            fmt_measured(self.eps_measured, false),
            fmt_measured(self.eps_prime_measured, self.is_degenerate(Axiom::JDirac)),
            dprime,
            self.expected,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if !self.degenerate.is_empty() {
            let names: Vec<&str> = self.degenerate.iter().map(|a| a.name()).collect();
            write!(f, " (degenerate: {})", names.join(", "))?;
        }
        Ok(())
    }
}

/// Checks every axiom of `t` and measures its signs against `expected`.
pub fn verify_triple(t: &FiniteSpectralTriple, expected: KOSigns, tol: f64) -> Result<SignReport> {
    t.check_shapes()?;
    match (expected.is_even(), t.grading.as_ref()) {
        (true, None) => return Err(Error::MissingGrading),
        (false, Some(_)) => return Err(Error::UnexpectedGrading),
        _ => {}
    }

    let d = &t.d_op;
    let j = &t.j_op;
    let id = identity(t.dim);
    let d_norm = frobenius(d);

    let mut residuals = BTreeMap::new();
    let mut degenerate = Vec::new();
    let mut consistent = true;

    residuals.insert(Axiom::DiracSelfAdjoint, hermiticity_residual(d));

    let unitarity = j.unitarity_residual();
    residuals.insert(Axiom::JUnitary, unitarity);

    let eps_measured = if unitarity <= tol {
        let sq = classify_square(j, tol)?;
        residuals.insert(Axiom::JSquare, sq.residual(expected.epsilon));
        consistent &= sq.fit.consistent_with(expected.epsilon);
        sq.fit.sign()
    } else {
        residuals.insert(Axiom::JSquare, f64::INFINITY);
        None
    };

    let jd = classify_commutation(j, d, tol)?;
    residuals.insert(Axiom::JDirac, jd.residual(expected.epsilon_prime));
    consistent &= jd.fit.consistent_with(expected.epsilon_prime);
    if jd.fit == SignFit::Both {
        degenerate.push(Axiom::JDirac);
    }

    let mut eps_dprime_measured = None;
    if let (Some(g), Some(want)) = (t.grading.as_ref(), expected.epsilon_dprime) {
        let g_norm = frobenius(g);
        residuals.insert(Axiom::GradingSelfAdjoint, hermiticity_residual(g));
        residuals.insert(
            Axiom::GradingInvolution,
            relative(frobenius(&(matmul(g, g) - &id)), frobenius(&id)),
        );
        residuals.insert(
            Axiom::DiracOdd,
            relative(frobenius(&anticommutator(d, g)), d_norm * g_norm),
        );
        let even = t
            .algebra_gens
            .iter()
            .map(|a| relative(frobenius(&commutator(a, g)), frobenius(a) * g_norm))
            .fold(0.0, f64::max);
        residuals.insert(Axiom::AlgebraEven, even);

        let jg = classify_commutation(j, g, tol)?;
        residuals.insert(Axiom::JGrading, jg.residual(want));
        consistent &= jg.fit.consistent_with(want);
        if jg.fit == SignFit::Both {
            degenerate.push(Axiom::JGrading);
        }
        eps_dprime_measured = jg.fit.sign();
    }

    let opposites: Vec<CMatrix> = t.algebra_gens.iter().map(|b| t.opposite(b)).collect();
    let commutators: Vec<CMatrix> = t.algebra_gens.iter().map(|a| commutator(d, a)).collect();
    let mut commutant: f64 = 0.0;
    let mut first_order: f64 = 0.0;
    for a in &t.algebra_gens {
        let a_norm = frobenius(a);
        for b_op in &opposites {
            commutant = commutant.max(relative(
                frobenius(&commutator(a, b_op)),
                a_norm * frobenius(b_op),
            ));
        }
    }
    for (da, a) in commutators.iter().zip(&t.algebra_gens) {
        let scale = d_norm * frobenius(a);
        for b_op in &opposites {
            first_order = first_order.max(relative(
                frobenius(&commutator(da, b_op)),
                scale * frobenius(b_op),
            ));
        }
    }
    residuals.insert(Axiom::Commutant, commutant);
    residuals.insert(Axiom::FirstOrder, first_order);

    let within = residuals.values().all(|&r| r <= tol);
    Ok(SignReport {
        expected,
        eps_measured,
        eps_prime_measured: jd.fit.sign(),
        eps_dprime_measured,
        degenerate,
        residuals,
        tol,
        pass: within && consistent,
    })
}
