//! The state space of regular density matrices and its SLD-Fisher geometry.
//!
//! A [`DensityMatrix`] is validated once at construction and carries its own
//! spectral decomposition, which every SLD computation reuses. Tangent
//! vectors and SLD matrices remember the base point they are attached to.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{QssError, Result};
use crate::linalg::{self, c, CMatrix};
use crate::tol;

/// Spectral decomposition `A = h diag(θ) h^H` with `θ` in descending order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub unitary: CMatrix,
    pub eigenvalues: Vec<f64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn reconstruct(&self) -> CMatrix {
        linalg::spectral_map(&self.eigenvalues, &self.unitary, |x| x)
    }

    /// `h^H A h`, the matrix expressed in the eigenbasis.
    pub fn to_eigenbasis(&self, a: &CMatrix) -> CMatrix {
        self.unitary.adjoint() * a * &self.unitary
    }

    pub fn from_eigenbasis(&self, a: &CMatrix) -> CMatrix {
        &self.unitary * a * self.unitary.adjoint()
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn eig_hermitian(a: &CMatrix) -> Result<EigenDecomposition> {
    ensure_square(a)?;
    let dev = linalg::hermitian_deviation(a);
    if dev > tol::scaled(tol::HERMITIAN, linalg::frobenius(a)) {
        return Err(QssError::NotHermitian { deviation: dev });
    }
    let (eigenvalues, unitary) = linalg::eigh(&linalg::hermitian_part(a))?;
    Ok(EigenDecomposition {
        unitary,
        eigenvalues,
    })
}

fn ensure_square(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(QssError::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    Ok(())
}

/// Symmetrizes `a` if it is Hermitian up to round-off, rejects it otherwise.
fn ingest_hermitian(a: CMatrix) -> Result<CMatrix> {
    ensure_square(&a)?;
    if !a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(QssError::NonFinite {
            what: "matrix entries",
        });
    }
    let dev = linalg::hermitian_deviation(&a);
    if dev > tol::scaled(tol::HERMITIAN, linalg::frobenius(&a)) {
        return Err(QssError::NotHermitian { deviation: dev });
    }
    Ok(linalg::hermitian_part(&a))
}

#[derive(Debug)]
struct DensityInner {
    matrix: CMatrix,
    eig: EigenDecomposition,
}

/// A point of the state space: Hermitian, positive definite, unit trace.
///
/// Cloning is cheap; clones share storage and compare as the same point.
#[derive(Clone)]
pub struct DensityMatrix {
    inner: Arc<DensityInner>,
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityMatrix")
            .field("dim", &self.dim())
            .field("eigenvalues", &self.inner.eig.eigenvalues)
            .finish()
    }
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        make_density(entries)
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        make_density(linalg::identity(n) * c(1.0 / n as f64, 0.0))
    }

    pub fn from_diagonal(theta: &[f64]) -> Result<Self> {
        make_density(linalg::diag(theta))
    }

    pub fn dim(&self) -> usize {
        self.inner.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.inner.matrix
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.inner.eig
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self
            .inner
            .eig
            .eigenvalues
            .last()
            .expect("non-empty spectrum")
    }

    /// True when both handles denote the same point (shared storage or
    /// entrywise equal up to the Hermitian tolerance).
    pub fn same_point(&self, other: &DensityMatrix) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.dim() == other.dim()
                && linalg::frobenius(&(self.matrix() - other.matrix())) <= tol::HERMITIAN)
    }

    fn ensure_same(&self, other: &DensityMatrix) -> Result<()> {
        if self.same_point(other) {
            Ok(())
        } else {
            Err(QssError::BaseMismatch)
        }
    }
}

/// Validates `entries` as a regular density matrix.
pub fn make_density(entries: CMatrix) -> Result<DensityMatrix> {
    let n = entries.nrows();
    if n == 0 {
        return Err(QssError::DimensionTooSmall { n, min: 1 });
    }
    if n > tol::MAX_DIM {
        return Err(QssError::DimensionTooLarge {
            n,
            max: tol::MAX_DIM,
        });
    }
    let matrix = ingest_hermitian(entries)?;
    let tr = linalg::trace(&matrix).re;
    if (tr - 1.0).abs() > tol::TRACE {
        return Err(QssError::NotUnitTrace {
            deviation: (tr - 1.0).abs(),
        });
    }
    let (eigenvalues, unitary) = linalg::eigh(&matrix)?;
    let min_eigenvalue = *eigenvalues.last().unwrap();
    if !(min_eigenvalue > tol::POSITIVE_DEFINITE) {
        return Err(QssError::NotPositiveDefinite { min_eigenvalue });
    }
    Ok(DensityMatrix {
        inner: Arc::new(DensityInner {
            matrix,
            eig: EigenDecomposition {
                unitary,
                eigenvalues,
            },
        }),
    })
}

/// A Hermitian traceless matrix attached to a base point.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: DensityMatrix,
    entries: CMatrix,
}

impl TangentVector {
    pub fn new(base: &DensityMatrix, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != base.dim() || entries.ncols() != base.dim() {
            ensure_square(&entries)?;
            return Err(QssError::DimensionMismatch {
                expected: base.dim(),
                found: entries.nrows(),
            });
        }
        let entries = ingest_hermitian(entries)?;
        let tr = linalg::trace(&entries).re;
        if tr.abs() > tol::scaled(tol::TRACE, linalg::frobenius(&entries)) {
            return Err(QssError::NotTraceless {
                deviation: tr.abs(),
            });
        }
        Ok(Self {
            base: base.clone(),
            entries,
        })
    }

    pub fn zero(base: &DensityMatrix) -> Self {
        let n = base.dim();
        Self {
            base: base.clone(),
            entries: CMatrix::zeros(n, n),
        }
    }

    pub fn base(&self) -> &DensityMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn norm(&self) -> f64 {
        linalg::frobenius(&self.entries)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            base: self.base.clone(),
            entries: &self.entries * c(s, 0.0),
        }
    }
}

/// An element of the SLD image `{Ξ = Ξ^H : Tr(ρΞ + Ξρ) = 0}` at a base point.
#[derive(Debug, Clone)]
pub struct SldMatrix {
    base: DensityMatrix,
    entries: CMatrix,
}

impl SldMatrix {
    pub fn new(base: &DensityMatrix, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != base.dim() || entries.ncols() != base.dim() {
            ensure_square(&entries)?;
            return Err(QssError::DimensionMismatch {
                expected: base.dim(),
                found: entries.nrows(),
            });
        }
        let entries = ingest_hermitian(entries)?;
        let rho = base.matrix();
        let dev = linalg::trace(&(rho * &entries + &entries * rho)).norm();
        if dev > tol::scaled(tol::TRACE, linalg::frobenius(&entries)) {
            return Err(QssError::NotInSldSpace { deviation: dev });
        }
        Ok(Self {
            base: base.clone(),
            entries,
        })
    }

    pub fn base(&self) -> &DensityMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }
}

/// Applies the spectral weight `w(θ_j, θ_k)` entrywise in the eigenbasis of
/// `eig`, then maps back.
fn spectral_hadamard(
    eig: &EigenDecomposition,
    a: &CMatrix,
    w: impl Fn(f64, f64) -> f64,
) -> CMatrix {
    let mut t = eig.to_eigenbasis(a);
    let th = &eig.eigenvalues;
    for j in 0..th.len() {
        for k in 0..th.len() {
            t[(j, k)] *= w(th[j], th[k]);
        }
    }
    linalg::hermitian_part(&eig.from_eigenbasis(&t))
}

/// SLD of `x` computed in an explicitly supplied eigenbasis of the base point.
///
/// Any `h` diagonalizing ρ gives the same result; [`sld`] uses the basis
/// stored in the density matrix.
pub fn sld_in_basis(eig: &EigenDecomposition, x: &CMatrix) -> CMatrix {
    spectral_hadamard(eig, x, |a, b| 2.0 / (a + b))
}

/// The symmetric logarithmic derivative `L` solving `X = (ρL + Lρ)/2`.
pub fn sld(rho: &DensityMatrix, x: &TangentVector) -> Result<SldMatrix> {
    rho.ensure_same(x.base())?;
    let l = sld_in_basis(rho.eigen(), x.matrix());
    SldMatrix::new(rho, l)
}

/// Inverse of [`sld`]: the tangent vector whose SLD is `xi`.
pub fn sld_inverse(rho: &DensityMatrix, xi: &SldMatrix) -> Result<TangentVector> {
    rho.ensure_same(xi.base())?;
    let x = spectral_hadamard(rho.eigen(), xi.matrix(), |a, b| 0.5 * (a + b));
    TangentVector::new(rho, x)
}

fn ensure_pair(rho: &DensityMatrix, x: &TangentVector, y: &TangentVector) -> Result<()> {
    rho.ensure_same(x.base())?;
    rho.ensure_same(y.base())
}

/// SLD-Fisher inner product `Tr(X^H L_ρ(Y))`.
pub fn fisher_metric(rho: &DensityMatrix, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    ensure_pair(rho, x, y)?;
    let ly = sld_in_basis(rho.eigen(), y.matrix());
    Ok(linalg::trace(&(x.matrix().adjoint() * ly)).re)
}

/// The same inner product written as `½ Tr(ρ(L L' + L' L))`.
pub fn fisher_metric_jordan(
    rho: &DensityMatrix,
    x: &TangentVector,
    y: &TangentVector,
) -> Result<f64> {
    ensure_pair(rho, x, y)?;
    let lx = sld_in_basis(rho.eigen(), x.matrix());
    let ly = sld_in_basis(rho.eigen(), y.matrix());
    let anti = &lx * &ly + &ly * &lx;
    Ok(0.5 * linalg::trace(&(rho.matrix() * anti)).re)
}

/// The same inner product as the weighted sum `Σ 2/(θ_j+θ_k) conj(X̃_jk) Ỹ_jk`.
pub fn fisher_metric_spectral(
    rho: &DensityMatrix,
    x: &TangentVector,
    y: &TangentVector,
) -> Result<f64> {
    ensure_pair(rho, x, y)?;
    let eig = rho.eigen();
    let xt = eig.to_eigenbasis(x.matrix());
    let yt = eig.to_eigenbasis(y.matrix());
    let th = &eig.eigenvalues;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..th.len() {
        for k in 0..th.len() {
            acc += xt[(j, k)].conj() * yt[(j, k)] * (2.0 / (th[j] + th[k]));
        }
    }
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, frobenius, from_parts};
    use crate::random::{random_density, random_tangent, rng_for};

    fn offdiag(v: f64) -> CMatrix {
        from_parts(2, &[0.0, v, v, 0.0], &[0.0; 4])
    }

    #[test]
    fn maximally_mixed_is_valid() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        for &t in &rho.eigen().eigenvalues {
            assert!((t - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_state_is_valid() {
        let rho = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        assert_eq!(rho.eigen().eigenvalues, vec![0.75, 0.25]);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let err = make_density(diag(&[1.0, 0.0])).unwrap_err();
        assert!(
            matches!(err, QssError::NotPositiveDefinite { min_eigenvalue } if min_eigenvalue.abs() < 1e-15)
        );
    }

    #[test]
    fn non_hermitian_and_bad_trace_are_rejected() {
        let a = from_parts(2, &[0.5, 0.1, 0.0, 0.5], &[0.0; 4]);
        assert!(matches!(
            make_density(a),
            Err(QssError::NotHermitian { .. })
        ));
        assert!(matches!(
            make_density(diag(&[0.5, 0.6])),
            Err(QssError::NotUnitTrace { .. })
        ));
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(
            make_density(rect),
            Err(QssError::NotSquare { .. })
        ));
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let a = from_parts(2, &[0.5, 0.1 + 1e-13, 0.1, 0.5], &[0.0; 4]);
        let rho = make_density(a).unwrap();
        assert_eq!(rho.matrix()[(0, 1)], rho.matrix()[(1, 0)]);
    }

    #[test]
    fn eig_of_scalar_matrix() {
        let e = eig_hermitian(&(linalg::identity(2) * c(0.5, 0.0))).unwrap();
        assert_eq!(e.eigenvalues, vec![0.5, 0.5]);
    }

    #[test]
    fn eig_of_two_by_two() {
        let a = offdiag(0.5) + linalg::identity(2) * c(0.5, 0.0);
        let e = eig_hermitian(&a).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!(e.eigenvalues[1].abs() < 1e-15);
        let s = 0.5_f64.sqrt();
        // columns match (1,1)/√2 and (1,-1)/√2 up to phase
        let v0 = e.unitary.column(0);
        let v1 = e.unitary.column(1);
        assert!((v0[0].norm() - s).abs() < 1e-14 && (v0[1] - v0[0]).norm() < 1e-14);
        assert!((v1[0].norm() - s).abs() < 1e-14 && (v1[1] + v1[0]).norm() < 1e-14);
    }

    #[test]
    fn eig_of_diagonal_keeps_order() {
        let e = eig_hermitian(&diag(&[0.5, 0.3, 0.2])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.5, 0.3, 0.2]);
        for j in 0..3 {
            assert!((e.unitary[(j, j)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = from_parts(2, &[0.0, 1.0, 0.0, 0.0], &[0.0; 4]);
        assert!(matches!(
            eig_hermitian(&a),
            Err(QssError::NotHermitian { .. })
        ));
    }

    #[test]
    fn sld_at_maximally_mixed_doubles() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let x = TangentVector::new(&rho, offdiag(0.2)).unwrap();
        let l = sld(&rho, &x).unwrap();
        assert!(frobenius(&(l.matrix() - offdiag(0.4))) < 1e-15);
        let back = sld_inverse(&rho, &l).unwrap();
        assert!(frobenius(&(back.matrix() - offdiag(0.2))) < 1e-15);
    }

    #[test]
    fn sld_of_diagonal_tangent() {
        let rho = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        let x = TangentVector::new(&rho, diag(&[0.1, -0.1])).unwrap();
        let l = sld(&rho, &x).unwrap();
        let expected = diag(&[0.1 / 0.75, -0.4]);
        assert!(frobenius(&(l.matrix() - expected)) < 1e-15);
    }

    #[test]
    fn sld_of_zero_is_zero() {
        let rho = random_density(3, 5).unwrap();
        let l = sld(&rho, &TangentVector::zero(&rho)).unwrap();
        assert_eq!(frobenius(l.matrix()), 0.0);
        let x = sld_inverse(&rho, &l).unwrap();
        assert_eq!(x.norm(), 0.0);
    }

    #[test]
    fn sld_rejects_foreign_base() {
        let a = random_density(3, 1).unwrap();
        let b = random_density(3, 2).unwrap();
        let x = TangentVector::zero(&a);
        assert!(matches!(sld(&b, &x), Err(QssError::BaseMismatch)));
    }

    #[test]
    fn sld_space_membership_is_enforced() {
        let rho = DensityMatrix::from_diagonal(&[0.75, 0.25]).unwrap();
        assert!(matches!(
            SldMatrix::new(&rho, linalg::identity(2)),
            Err(QssError::NotInSldSpace { .. })
        ));
    }

    #[test]
    fn tangent_must_be_traceless() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(
            TangentVector::new(&rho, diag(&[0.1, 0.1])),
            Err(QssError::NotTraceless { .. })
        ));
        assert!(matches!(
            TangentVector::new(&rho, CMatrix::zeros(3, 3)),
            Err(QssError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sld_round_trip_random() {
        let mut rng = rng_for(11, 4, 0);
        let rho = random_density(4, 9).unwrap();
        let x = random_tangent(&rho, 1.0, &mut rng);
        let back = sld_inverse(&rho, &sld(&rho, &x).unwrap()).unwrap();
        assert!(frobenius(&(back.matrix() - x.matrix())) < 1e-10);
    }

    #[test]
    fn metric_examples() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let x = TangentVector::new(&rho, diag(&[0.1, -0.1])).unwrap();
        assert!((fisher_metric(&rho, &x, &x).unwrap() - 0.04).abs() < 1e-15);
        assert_eq!(
            fisher_metric(&rho, &x, &TangentVector::zero(&rho)).unwrap(),
            0.0
        );
    }

    #[test]
    fn metric_is_symmetric() {
        let rho = random_density(3, 4).unwrap();
        let mut rng = rng_for(4, 3, 0);
        let x = random_tangent(&rho, 1.0, &mut rng);
        let y = random_tangent(&rho, 1.0, &mut rng);
        let xy = fisher_metric(&rho, &x, &y).unwrap();
        let yx = fisher_metric(&rho, &y, &x).unwrap();
        assert!((xy - yx).abs() <= 1e-12 * xy.abs().max(1.0));
    }

    #[test]
    fn basis_choice_does_not_matter_for_degenerate_spectrum() {
        let n = 3;
        let rho = DensityMatrix::maximally_mixed(n).unwrap();
        let mut rng = rng_for(8, n, 0);
        let x = random_tangent(&rho, 1.0, &mut rng);
        // any unitary diagonalizes I/n; use a random one
        let g = crate::random::random_antihermitian(n, &mut rng);
        let u = linalg::expm_antihermitian(&g).unwrap();
        let alt = EigenDecomposition {
            unitary: u,
            eigenvalues: rho.eigen().eigenvalues.clone(),
        };
        let l1 = sld(&rho, &x).unwrap();
        let l2 = sld_in_basis(&alt, x.matrix());
        assert!(frobenius(&(l1.matrix() - l2)) < 1e-12);
    }

    #[test]
    fn basis_phase_and_permutation_invariance() {
        let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25]).unwrap();
        let mut rng = rng_for(3, 3, 1);
        let x = random_tangent(&rho, 1.0, &mut rng);
        let eig = rho.eigen();
        // phases on every column and a swap inside the degenerate block
        let mut p = CMatrix::zeros(3, 3);
        p[(0, 0)] = Complex64::from_polar(1.0, 0.3);
        p[(2, 1)] = Complex64::from_polar(1.0, -1.1);
        p[(1, 2)] = Complex64::from_polar(1.0, 2.0);
        let alt = EigenDecomposition {
            unitary: &eig.unitary * p,
            eigenvalues: eig.eigenvalues.clone(),
        };
        let l1 = sld_in_basis(eig, x.matrix());
        let l2 = sld_in_basis(&alt, x.matrix());
        assert!(frobenius(&(l1 - l2)) < 1e-13);
    }
}
