//! Dense complex matrix helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{QssError, Result};

pub type CMatrix = DMatrix<Complex64>;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_ITER: usize = 10_000;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|&v| c(v, 0.0)),
    ))
}

/// Builds a matrix from row-major real and imaginary parts.
pub fn from_parts(n: usize, re: &[f64], im: &[f64]) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| c(re[i * n + j], im[i * n + j]))
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise modulus of `A - A^H`.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(A + A^H) / 2`.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * c(0.5, 0.0)
}

/// `(A B + B A) / 2`.
pub fn jordan(a: &CMatrix, b: &CMatrix) -> CMatrix {
    (a * b + b * a) * c(0.5, 0.0)
}

pub fn is_diagonal(a: &CMatrix, tol: f64) -> bool {
    let n = a.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || a[(i, j)].norm() <= tol))
}

/// Hermitian eigensolve with eigenvalues in descending order.
///
/// Ties keep the order produced by the solver.
pub fn eigh(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.nrows();
    if !a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(QssError::NonFinite {
            what: "eigensolver input",
        });
    }
    let eig = SymmetricEigen::try_new(a.clone(), EIG_EPS, EIG_MAX_ITER)
        .ok_or(QssError::DecompositionFailed)?;
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps solver order for ties
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    Ok((values, vectors))
}

/// `U diag(f(λ)) U^H` for a spectral pair.
pub fn spectral_map(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let scaled = CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, k| {
        vectors[(r, k)] * f(values[k])
    });
    scaled * vectors.adjoint()
}

/// Matrix exponential of an anti-Hermitian matrix `A`, computed through the
/// Hermitian matrix `iA`. The result is unitary.
pub fn expm_antihermitian(a: &CMatrix) -> Result<CMatrix> {
    let h = hermitian_part(&(a * c(0.0, 1.0)));
    let (values, vectors) = eigh(&h)?;
    let n = a.nrows();
    // exp(A) = exp(-i H)
    let scaled = CMatrix::from_fn(n, n, |r, k| {
        vectors[(r, k)] * Complex64::from_polar(1.0, -values[k])
    });
    Ok(scaled * vectors.adjoint())
}

/// Complex determinant via LU.
pub fn det(a: &CMatrix) -> Complex64 {
    a.clone().lu().determinant()
}
