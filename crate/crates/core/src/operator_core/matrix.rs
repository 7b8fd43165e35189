//! Dense complex matrix helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn zeros(dim: usize) -> CMatrix {
    CMatrix::zeros(dim, dim)
}

pub fn from_rows(rows: &[&[Complex64]]) -> CMatrix {
    let n = rows.len();
    CMatrix::from_fn(n, n, |i, j| rows[i][j])
}

pub fn real_diag(entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(entries.len(), entries.len(), |i, j| {
        if i == j {
            c(entries[i], 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

pub fn pauli_x() -> CMatrix {
    from_rows(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]])
}

pub fn pauli_y() -> CMatrix {
    from_rows(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]])
}

pub fn pauli_z() -> CMatrix {
    real_diag(&[1.0, -1.0])
}

/// Entrywise complex conjugate.
pub fn conj(a: &CMatrix) -> CMatrix {
    a.map(|z| z.conj())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Below this size the plain complex product is fast enough.
const SPLIT_THRESHOLD: usize = 32;

/// `a · b`. Large products go through four real products, which use an
/// optimized real kernel.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    if a.nrows().max(a.ncols()).max(b.ncols()) < SPLIT_THRESHOLD {
        return a * b;
    }
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    matmul(a, b) - matmul(b, a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    matmul(a, b) + matmul(b, a)
}

/// `num / den`, or the absolute value `num` when the reference norm vanishes.
pub fn relative(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// `‖m m† − Id‖ / ‖Id‖`
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let d = m.nrows();
    relative(
        frobenius(&(matmul(m, &m.adjoint()) - identity(d))),
        (d as f64).sqrt(),
    )
}

/// `‖a − a†‖ / ‖a‖`
pub fn hermiticity_residual(a: &CMatrix) -> f64 {
    relative(frobenius(&(a - a.adjoint())), frobenius(a))
}

pub fn check_square(what: &str, a: &CMatrix, dim: usize) -> Result<()> {
    if a.nrows() == dim && a.ncols() == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            what: what.to_string(),
            expected: dim,
            rows: a.nrows(),
            cols: a.ncols(),
        })
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let z = CMatrix::from_fn(dim, dim, |_, _| {
        c(
            rng.sample(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        ) / std::f64::consts::SQRT_2
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 {
            c(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&a + a.adjoint()).map(|z| z * 0.5)
}

/// Eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_spectrum(a: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = a.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}
