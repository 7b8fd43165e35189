//! Concrete Clifford-module realizations of every class mod 8.
//!
//! Gamma matrices come from the Jordan–Wigner construction on `q` qubits:
//! `γ_{2j} = Z^{⊗j} ⊗ X ⊗ Id`, `γ_{2j+1} = Z^{⊗j} ⊗ Y ⊗ Id`, plus
//! `Z^{⊗q}` as a `(2q+1)`-th generator. A triple of class `n` uses the
//! first `n` of them in `D = Σ a_μ γ^μ` and a real structure `J = C∘conj`
//! where `C` is found by exhaustive search over gamma monomials.
//!
//! With hermitian generators and a real-coefficient `D`, the irreducible
//! module of `n` generators only carries the signs of class `−n` (or their
//! twist), so classes 1, 2, 3, 5, 6 and 7 need one more qubit; the spare
//! generators enter `C` but not `D`.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operator_core::matrix::{
    anticommutator, c, frobenius, identity, kron, pauli_x, pauli_y, pauli_z, real_diag, CMatrix, I,
};
use crate::operator_core::{
    classify_commutation, classify_square, verify_triple, AntilinearOp, FiniteSpectralTriple,
};
use crate::sign_algebra::{ko_signs, KODim, KOSigns, Sign};
use crate::DEFAULT_TOL;

/// Largest generator count handled.
pub const MAX_GENERATORS: usize = 8;

/// Dirac coefficients are multiples of this, so fixture arithmetic is exact.
const COEFF_DENOM: f64 = 1024.0;

/// Mutually anticommuting hermitian involutions on a common space.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub n: usize,
    pub dim: usize,
    pub mats: Vec<CMatrix>,
    /// The remaining generators of the ambient representation, unused by `D`.
    pub aux: Vec<CMatrix>,
}

impl GammaSet {
    /// Largest of `‖γ^μγ^ν + γ^νγ^μ − 2δ^{μν}‖` and `‖γ^μ − γ^μ†‖`.
    pub fn clifford_residual(&self) -> f64 {
        let id2 = identity(self.dim) * c(2.0, 0.0);
        let all: Vec<&CMatrix> = self.mats.iter().chain(&self.aux).collect();
        let mut worst: f64 = 0.0;
        for (mu, a) in all.iter().enumerate() {
            worst = worst.max(frobenius(&(*a - a.adjoint())));
            worst = worst.max(frobenius(&(anticommutator(a, a) - &id2)));
            for b in &all[mu + 1..] {
                worst = worst.max(frobenius(&anticommutator(a, b)));
            }
        }
        worst
    }

    /// `U γ U†` for every generator.
    pub fn conjugate_by(&self, u: &CMatrix) -> GammaSet {
        let rot = |a: &CMatrix| u * a * u.adjoint();
        GammaSet {
            n: self.n,
            dim: self.dim,
            mats: self.mats.iter().map(rot).collect(),
            aux: self.aux.iter().map(rot).collect(),
        }
    }
}

fn pad(left: usize, middle: CMatrix, right: usize) -> CMatrix {
    let z = pauli_z();
    let mut out = identity(1);
    for _ in 0..left {
        out = kron(&out, &z);
    }
    out = kron(&out, &middle);
    for _ in 0..right {
        out = kron(&out, &identity(2));
    }
    out
}

/// `n` generators on `qubits` qubits (dimension `2^qubits`), `n ≤ 2·qubits + 1`.
pub fn build_gammas_on(n: usize, qubits: usize) -> Result<GammaSet> {
    if n > MAX_GENERATORS {
        return Err(Error::TooManyGenerators(n));
    }
    if n > 2 * qubits + 1 {
        return Err(Error::RepresentationTooSmall { n, qubits });
    }
    let mut jw = Vec::with_capacity(2 * qubits);
    for j in 0..qubits {
        jw.push(pad(j, pauli_x(), qubits - j - 1));
        jw.push(pad(j, pauli_y(), qubits - j - 1));
    }
    let dim = 1usize << qubits;
    let (mats, aux) = if n == 2 * qubits + 1 {
        let top = (0..qubits).fold(identity(1), |acc, _| kron(&acc, &pauli_z()));
        jw.push(top);
        (jw, Vec::new())
    } else {
        let aux = jw.split_off(n);
        (jw, aux)
    };
    Ok(GammaSet { n, dim, mats, aux })
}

/// The irreducible representation: dimension `2^⌊n/2⌋`.
pub fn build_gammas(n: usize) -> Result<GammaSet> {
    build_gammas_on(n, n / 2)
}

/// `i^k γ¹γ²⋯γ^{2k}` for `n = 2k` generators; the identity when `n = 0`.
pub fn chirality(g: &GammaSet) -> Result<CMatrix> {
    if !g.n.is_multiple_of(2) {
        return Err(Error::OddGeneratorCount(g.n));
    }
    let k = g.n / 2;
    let phase = I.powi(k as i32);
    let prod = g.mats.iter().fold(identity(g.dim), |acc, m| acc * m);
    Ok(prod * phase)
}

/// A unitary `C` with `C conj(γ^μ) C⁻¹ = gamma_sign · γ^μ` for every `γ^μ`
/// used by the Dirac operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugationMatrix {
    pub c: CMatrix,
    pub gamma_sign: Sign,
    /// Sign of `C conj(C)`.
    pub epsilon: Sign,
    /// Indices into `mats ++ aux` of the monomial.
    pub monomial: Vec<usize>,
}

/// Searches `C = phase · γ^{μ₁}⋯γ^{μ_r}` with phase in `{1, i}` and the
/// `μ` ranging over all generators of the representation, for one whose
/// real structure `C∘conj` carries the `target` signs with `D = Σ a_μ γ^μ`
/// and the chirality grading.
pub fn find_conjugation(g: &GammaSet, target: KOSigns) -> Result<ConjugationMatrix> {
    let tol = DEFAULT_TOL;
    let gens: Vec<&CMatrix> = g.mats.iter().chain(&g.aux).collect();
    let grading = if target.is_even() {
        Some(chirality(g)?)
    } else {
        None
    };

    for mask in 0u32..(1 << gens.len()) {
        let monomial: Vec<usize> = (0..gens.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let base = monomial
            .iter()
            .fold(identity(g.dim), |acc, &i| acc * gens[i]);
        for phase in [c(1.0, 0.0), I] {
            let candidate = &base * phase;
            let j = AntilinearOp::new(candidate.clone())?;
            let Some(epsilon) = classify_square(&j, tol)?.fit.sign() else {
                continue;
            };
            if epsilon != target.epsilon {
                continue;
            }
            let Some(gamma_sign) = uniform_sign(&j, &g.mats, target.epsilon_prime)? else {
                continue;
            };
            if gamma_sign != target.epsilon_prime {
                continue;
            }
            if let (Some(gr), Some(want)) = (&grading, target.epsilon_dprime) {
                if classify_commutation(&j, gr, tol)?.fit.sign() != Some(want) {
                    continue;
                }
            }
            return Ok(ConjugationMatrix {
                c: candidate,
                gamma_sign,
                epsilon,
                monomial,
            });
        }
    }
    Err(Error::ConjugationSearchExhausted {
        n: g.n,
        dim: g.dim,
        target: target.to_string(),
    })
}

/// The single sign with `J γ = s γ J` for all `mats`; `vacuous` if empty.
fn uniform_sign(j: &AntilinearOp, mats: &[CMatrix], vacuous: Sign) -> Result<Option<Sign>> {
    let mut sign = None;
    for m in mats {
        let s = match classify_commutation(j, m, DEFAULT_TOL)?.fit.sign() {
            Some(s) => s,
            None => return Ok(None),
        };
        if sign.is_some_and(|prev| prev != s) {
            return Ok(None);
        }
        sign = Some(s);
    }
    Ok(Some(sign.unwrap_or(vacuous)))
}

/// Seeded Dirac coefficients: nonzero multiples of 1/1024 in `[-1, 1]`.
pub fn dirac_coefficients(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom = COEFF_DENOM as i64;
    loop {
        let coeffs: Vec<f64> = (0..count)
            .map(|_| rng.gen_range(-denom..=denom) as f64 / COEFF_DENOM)
            .collect();
        if count == 0 || coeffs.iter().any(|&a| a != 0.0) {
            return coeffs;
        }
    }
}

/// Everything that went into a realized triple.
#[derive(Debug, Clone)]
pub struct Realization {
    pub gammas: GammaSet,
    pub conjugation: ConjugationMatrix,
    pub coefficients: Vec<f64>,
    pub triple: FiniteSpectralTriple,
}

/// Builds the class-`n` realization: irreducible representation first, then
/// one doubling.
pub fn realize(n: KODim, seed: u64) -> Result<Realization> {
    let (gammas, conjugation) = module(n)?;
    assemble(n, seed, gammas, conjugation)
}

type Module = (GammaSet, ConjugationMatrix);

static MODULES: [OnceLock<Module>; 8] = [const { OnceLock::new() }; 8];

/// Gammas and `C` for class `n`; they do not depend on the seed, so the
/// search runs once per class.
fn module(n: KODim) -> Result<Module> {
    let slot = &MODULES[n.value() as usize];
    if let Some(m) = slot.get() {
        return Ok(m.clone());
    }
    let m = search_module(n)?;
    Ok(slot.get_or_init(|| m).clone())
}

fn search_module(n: KODim) -> Result<Module> {
    let count = n.value() as usize;
    let target = ko_signs(n);
    let mut last_err = None;
    for qubits in [count / 2, count / 2 + 1] {
        let gammas = build_gammas_on(count, qubits)?;
        match find_conjugation(&gammas, target) {
            Ok(conjugation) => return Ok((gammas, conjugation)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one representation tried"))
}

fn assemble(
    n: KODim,
    seed: u64,
    gammas: GammaSet,
    conjugation: ConjugationMatrix,
) -> Result<Realization> {
    let coefficients = dirac_coefficients(seed, gammas.n);
    let d_op = gammas
        .mats
        .iter()
        .zip(&coefficients)
        .fold(CMatrix::zeros(gammas.dim, gammas.dim), |acc, (g, &a)| {
            acc + g * c(a, 0.0)
        });
    let grading = if n.is_even() {
        Some(chirality(&gammas)?)
    } else {
        None
    };
    let j_op = AntilinearOp::new(conjugation.c.clone())?;
    let triple = FiniteSpectralTriple::new(d_op, j_op, grading, vec![identity(gammas.dim)], n)?;
    let report = verify_triple(&triple, ko_signs(n), DEFAULT_TOL)?;
    if !report.pass {
        return Err(Error::RealizationFailed {
            n: n.value(),
            detail: report.to_string(),
        });
    }
    Ok(Realization {
        gammas,
        conjugation,
        coefficients,
        triple,
    })
}

/// Seeded finite triple of class `n` that passes the sign table.
pub fn build_real_triple(n: KODim, seed: u64) -> Result<FiniteSpectralTriple> {
    realize(n, seed).map(|r| r.triple)
}

/// `H = C²`, `γ = diag(1, −1)`, `D = m σ₁`, `J = conj`, diagonal algebra.
///
/// The signs are those of class 0, but for `m ≠ 0` the first-order
/// condition fails: `[[D, e₁], e₁°] = m σ₁`. See
/// [`two_point_bimodule_triple`] for a version satisfying every axiom.
pub fn two_point_triple(m: f64) -> FiniteSpectralTriple {
    let e1 = real_diag(&[1.0, 0.0]);
    let e2 = real_diag(&[0.0, 1.0]);
    FiniteSpectralTriple::new(
        pauli_x() * c(m, 0.0),
        AntilinearOp::conjugation(2),
        Some(pauli_z()),
        vec![e1, e2],
        KODim::new(0),
    )
    .expect("fixed shapes")
}

/// Two-point space on `H = C² ⊗ C²`: `π(a) = diag(a) ⊗ Id`, `J` swaps the
/// factors and conjugates, `γ = σ₃ ⊗ σ₃`, `D = m(σ₁ ⊗ Id + Id ⊗ σ₁)`.
/// Class 0 with nontrivial commutant and first-order conditions satisfied.
pub fn two_point_bimodule_triple(m: f64) -> FiniteSpectralTriple {
    let x = pauli_x();
    let id2 = identity(2);
    let swap = CMatrix::from_fn(4, 4, |r, col| {
        let (a, b) = (r / 2, r % 2);
        if col == b * 2 + a {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let d_op = (kron(&x, &id2) + kron(&id2, &x)) * c(m, 0.0);
    let gens = vec![
        kron(&real_diag(&[1.0, 0.0]), &id2),
        kron(&real_diag(&[0.0, 1.0]), &id2),
    ];
    FiniteSpectralTriple::new(
        d_op,
        AntilinearOp::new(swap).expect("square"),
        Some(kron(&pauli_z(), &pauli_z())),
        gens,
        KODim::new(0),
    )
    .expect("fixed shapes")
}

/// Nonzero seeded mass for the two-point fixtures, a multiple of 1/1024.
pub fn seeded_mass(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2b99_2ddf_a232_49d6);
    let k: i64 = rng.gen_range(1..=1024);
    if rng.gen::<bool>() {
        k as f64 / COEFF_DENOM
    } else {
        -(k as f64) / COEFF_DENOM
    }
}
