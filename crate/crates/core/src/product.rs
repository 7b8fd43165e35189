//! Product triples `T₁ × T₂` with the first factor even.
//!
//! `H = H₁⊗H₂`, `D = D₁⊗Id + γ₁⊗D₂`, `γ = γ₁⊗γ₂` when both are even, and a
//! real structure chosen by [`ProductRule`]. The numeric signs measured on
//! the product are compared with [`product_signs`].

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{build_real_triple, seeded_mass, two_point_bimodule_triple};
use crate::error::{Error, Result};
use crate::operator_core::matrix::{
    c, frobenius, hermiticity_residual, identity, kron, matmul, relative, unitarity_residual,
    CMatrix, I,
};
use crate::operator_core::{tensor_antilinear, verify_triple, FiniteSpectralTriple, SignReport};
use crate::sign_algebra::{
    ko_signs, product_signs, select_rule, KODim, ProductRule, ProductSignOutcome, Sign,
};

/// Two factors and the rule for the product real structure.
#[derive(Debug, Clone)]
pub struct ProductSpec<'a> {
    pub t1: &'a FiniteSpectralTriple,
    pub t2: &'a FiniteSpectralTriple,
    pub rule: ProductRule,
}

impl<'a> ProductSpec<'a> {
    pub fn new(
        t1: &'a FiniteSpectralTriple,
        t2: &'a FiniteSpectralTriple,
        rule: ProductRule,
    ) -> Result<Self> {
        if t1.grading.is_none() || !t1.ko_dim.is_even() {
            return Err(Error::OddFirstFactor(t1.ko_dim.value()));
        }
        rule.check_legal(t1.ko_dim, t2.ko_dim)?;
        if rule == ProductRule::CureSecond && t2.grading.is_none() {
            return Err(Error::MissingGrading);
        }
        Ok(ProductSpec { t1, t2, rule })
    }
}

fn grading_of(t: &FiniteSpectralTriple) -> Result<&CMatrix> {
    t.grading.as_ref().ok_or(Error::MissingGrading)
}

/// Builds the product triple.
pub fn product_triple(spec: &ProductSpec<'_>) -> Result<FiniteSpectralTriple> {
    let (t1, t2) = (spec.t1, spec.t2);
    let g1 = grading_of(t1)?;
    let id1 = identity(t1.dim);
    let id2 = identity(t2.dim);

    let d_op = kron(&t1.d_op, &id2) + kron(g1, &t2.d_op);
    let grading = t2.grading.as_ref().map(|g2| kron(g1, g2));
    let j_op = match spec.rule {
        ProductRule::Naive => tensor_antilinear(&t1.j_op, &t2.j_op),
        ProductRule::CureFirst => tensor_antilinear(&t1.j_op.then_after(g1), &t2.j_op),
        ProductRule::CureSecond => {
            tensor_antilinear(&t1.j_op, &t2.j_op.then_after(grading_of(t2)?))
        }
    };

    let mut algebra_gens: Vec<CMatrix> = Vec::new();
    let candidates = t1
        .algebra_gens
        .iter()
        .map(|a| kron(a, &id2))
        .chain(t2.algebra_gens.iter().map(|b| kron(&id1, b)));
    for g in candidates {
        if !algebra_gens.contains(&g) {
            algebra_gens.push(g);
        }
    }

    FiniteSpectralTriple::new(d_op, j_op, grading, algebra_gens, t1.ko_dim + t2.ko_dim)
}

/// `‖D² − (D₁²⊗Id + Id⊗D₂²)‖`, relative to the norm of the right-hand side.
pub fn d_square_decomposition(
    p: &FiniteSpectralTriple,
    t1: &FiniteSpectralTriple,
    t2: &FiniteSpectralTriple,
) -> Result<f64> {
    crate::operator_core::matrix::check_square("product Dirac operator", &p.d_op, t1.dim * t2.dim)?;
    let expected = kron(&matmul(&t1.d_op, &t1.d_op), &identity(t2.dim))
        + kron(&identity(t1.dim), &matmul(&t2.d_op, &t2.d_op));
    let sq = matmul(&p.d_op, &p.d_op);
    Ok(relative(frobenius(&(sq - &expected)), frobenius(&expected)))
}

#[derive(Debug, Clone)]
pub struct UTransform {
    pub u: CMatrix,
    /// `U D U†`
    pub d_prime: CMatrix,
    /// `D₁⊗γ₂ + Id⊗D₂`
    pub expected: CMatrix,
}

impl UTransform {
    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.u)
    }

    pub fn identity_residual(&self) -> f64 {
        relative(
            frobenius(&(&self.d_prime - &self.expected)),
            frobenius(&self.expected),
        )
    }
}

/// `U = ½(Id⊗Id + γ₁⊗Id + Id⊗γ₂ − γ₁⊗γ₂)` applied to the product Dirac
/// operator of two even factors.
pub fn u_transform(
    p: &FiniteSpectralTriple,
    t1: &FiniteSpectralTriple,
    t2: &FiniteSpectralTriple,
) -> Result<UTransform> {
    let g1 = grading_of(t1)?;
    let g2 = grading_of(t2)?;
    crate::operator_core::matrix::check_square("product Dirac operator", &p.d_op, t1.dim * t2.dim)?;
    let (id1, id2) = (identity(t1.dim), identity(t2.dim));
    let u = (kron(&id1, &id2) + kron(g1, &id2) + kron(&id1, g2) - kron(g1, g2)) * c(0.5, 0.0);
    let d_prime = matmul(&matmul(&u, &p.d_op), &u.adjoint());
    let expected = kron(&t1.d_op, g2) + kron(&id1, &t2.d_op);
    Ok(UTransform {
        u,
        d_prime,
        expected,
    })
}

/// `V = (Id + iγ)/√2`.
pub fn v_unitary(t: &FiniteSpectralTriple) -> Result<CMatrix> {
    let g = grading_of(t)?;
    Ok((identity(t.dim) + g * I) * c(std::f64::consts::FRAC_1_SQRT_2, 0.0))
}

/// `V D V†`, which equals `iγD` for odd `D`.
pub fn v_transform(t: &FiniteSpectralTriple) -> Result<CMatrix> {
    let v = v_unitary(t)?;
    Ok(matmul(&matmul(&v, &t.d_op), &v.adjoint()))
}

/// `‖V D V† − iγD‖ / ‖D‖` and the hermiticity residual of `V D V†`.
pub fn v_transform_residuals(t: &FiniteSpectralTriple) -> Result<(f64, f64)> {
    let out = v_transform(t)?;
    let expected = grading_of(t)? * &t.d_op * I;
    Ok((
        relative(frobenius(&(&out - expected)), frobenius(&t.d_op)),
        hermiticity_residual(&out),
    ))
}

/// Numeric verification of a product against the table and against the
/// symbolic prediction for the same rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductVerification {
    pub n1: KODim,
    pub n2: KODim,
    pub rule: ProductRule,
    /// Dimension of the product Hilbert space.
    pub dim: usize,
    pub predicted: ProductSignOutcome,
    pub report: SignReport,
    pub matches_prediction: bool,
}

impl ProductVerification {
    /// The table holds for the product and the measurement agrees with the
    /// prediction.
    pub fn ok(&self) -> bool {
        self.report.pass && self.matches_prediction
    }
}

fn measured_matches(predicted: &ProductSignOutcome, report: &SignReport) -> bool {
    let prime_ok = match predicted.epsilon_prime {
        Some(s) => report.eps_prime_measured == Some(s),
        // disagreeing candidates: neither sign fits the full Dirac operator
        None => report.eps_prime_measured.is_none() && report.degenerate.is_empty(),
    };
    report.eps_measured == Some(predicted.epsilon)
        && prime_ok
        && report.eps_dprime_measured == predicted.epsilon_dprime
        && report.pass == predicted.all_pass()
}

/// Builds the product, checks it against the class `n₁ + n₂` and compares
/// the measured signs with [`product_signs`].
pub fn verify_product(
    t1: &FiniteSpectralTriple,
    t2: &FiniteSpectralTriple,
    rule: ProductRule,
    tol: f64,
) -> Result<ProductVerification> {
    let spec = ProductSpec::new(t1, t2, rule)?;
    let p = product_triple(&spec)?;
    let predicted = product_signs(t1.ko_dim, t2.ko_dim, rule)?;
    let report = verify_triple(&p, ko_signs(p.ko_dim), tol)?;
    let matches_prediction = measured_matches(&predicted, &report);
    Ok(ProductVerification {
        n1: t1.ko_dim,
        n2: t2.ko_dim,
        rule,
        dim: p.dim,
        predicted,
        report,
        matches_prediction,
    })
}

/// A factor of class `n` whose Dirac operator is nonzero: the two-point
/// bimodule for class 0, the Clifford realization otherwise.
pub fn product_factor(n: KODim, seed: u64) -> Result<FiniteSpectralTriple> {
    if n.value() == 0 {
        Ok(two_point_bimodule_triple(seeded_mass(seed)))
    } else {
        build_real_triple(n, seed)
    }
}

/// Independent seeds for the two factors of trial `seed`.
pub fn factor_seeds(seed: u64) -> (u64, u64) {
    let a = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    (a, a ^ 0xd1b5_4a32_d192_ed03)
}

/// How the rule is picked for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleChoice {
    Auto,
    Fixed(ProductRule),
}

impl RuleChoice {
    pub fn resolve(self, n1: KODim, n2: KODim) -> Result<ProductRule> {
        match self {
            RuleChoice::Auto => select_rule(n1, n2),
            RuleChoice::Fixed(r) => Ok(r),
        }
    }
}

/// Verifies the product of freshly built factors of classes `n1`, `n2`.
pub fn verify_pair(
    n1: KODim,
    n2: KODim,
    rule: RuleChoice,
    seed: u64,
    tol: f64,
) -> Result<ProductVerification> {
    if !n1.is_even() {
        return Err(Error::OddFirstFactor(n1.value()));
    }
    let rule = rule.resolve(n1, n2)?;
    let (s1, s2) = factor_seeds(seed);
    let t1 = product_factor(n1, s1)?;
    let t2 = product_factor(n2, s2)?;
    verify_product(&t1, &t2, rule, tol)
}

/// `trials` seeded verifications of one pair starting at `seed`, in seed order.
pub fn verify_trials(
    n1: KODim,
    n2: KODim,
    rule: RuleChoice,
    seeds: std::ops::Range<u64>,
    tol: f64,
) -> Result<Vec<ProductVerification>> {
    let seeds: Vec<u64> = seeds.collect();
    seeds
        .par_iter()
        .map(|&s| verify_pair(n1, n2, rule, s, tol))
        .collect()
}

/// All 32 pairs `(n₁ even, n₂)` over `seeds`, in `(n₁, n₂, seed)` order.
pub fn sweep(
    rule: RuleChoice,
    seeds: std::ops::Range<u64>,
    tol: f64,
) -> Result<Vec<ProductVerification>> {
    let jobs: Vec<(KODim, KODim, u64)> = [0, 2, 4, 6]
        .into_iter()
        .flat_map(|a| (0..8).map(move |b| (KODim::new(a), KODim::new(b))))
        .flat_map(|(a, b)| seeds.clone().map(move |s| (a, b, s)))
        .collect();
    jobs.par_iter()
        .map(|&(a, b, s)| verify_pair(a, b, rule, s, tol))
        .collect()
}

/// The `ε″` of the twisted real structure `Jγ`; twisting leaves it unchanged.
pub fn twisted_grading_sign(t: &FiniteSpectralTriple, tol: f64) -> Result<Option<Sign>> {
    let g = grading_of(t)?;
    crate::operator_core::commutation_sign(&t.j_op.then_after(g), g, tol)
}
