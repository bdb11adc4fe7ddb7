//! Exponential-type parallel transport and e-geodesics.

use crate::error::{QssError, Result};
use crate::linalg::{self, c};
use crate::qss::{
    eig_hermitian, make_density, sld, DensityMatrix, EigenDecomposition, SldMatrix, TangentVector,
};
use crate::tol;

/// e-parallel transport of `x` from `rho1` to `rho2`:
/// `τ(X) = ½(ρ₂L + Lρ₂) − Tr(ρ₂L)ρ₂` with `L = L_{ρ₁}(X)`.
pub fn e_transport(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    x: &TangentVector,
) -> Result<TangentVector> {
    if rho1.dim() != rho2.dim() {
        return Err(QssError::DimensionMismatch {
            expected: rho1.dim(),
            found: rho2.dim(),
        });
    }
    let l = sld(rho1, x)?;
    transport_sld(rho2, l.matrix())
}

fn transport_sld(rho2: &DensityMatrix, l: &linalg::CMatrix) -> Result<TangentVector> {
    let r = rho2.matrix();
    let shift = linalg::trace(&(r * l)).re;
    let tau = linalg::jordan(r, l) - r * c(shift, 0.0);
    TangentVector::new(rho2, tau)
}

/// Whether `x2` is the e-transport of `x1` to `x2`'s base, within `tol`
/// in Frobenius norm.
pub fn is_e_parallel(x1: &TangentVector, x2: &TangentVector, tol: f64) -> Result<bool> {
    let moved = e_transport(x1.base(), x2.base(), x1)?;
    Ok(linalg::frobenius(&(x2.matrix() - moved.matrix())) <= tol)
}

/// Initial data of an e-geodesic together with the spectral decomposition
/// of its SLD, so that points on the curve are closed-form evaluations.
#[derive(Debug, Clone)]
pub struct GeodesicSpec {
    start: DensityMatrix,
    initial_tangent: TangentVector,
    cached_sld: SldMatrix,
    sld_eig: EigenDecomposition,
    allow_negative_time: bool,
}

impl GeodesicSpec {
    pub fn new(start: &DensityMatrix, initial_tangent: &TangentVector) -> Result<Self> {
        let cached_sld = sld(start, initial_tangent)?;
        let sld_eig = eig_hermitian(cached_sld.matrix())?;
        Ok(Self {
            start: start.clone(),
            initial_tangent: initial_tangent.clone(),
            cached_sld,
            sld_eig,
            allow_negative_time: false,
        })
    }

    /// Permits evaluation at `t < 0`. The closed form is defined for all
    /// real `t`; by default the curve is restricted to `t ≥ 0`.
    pub fn with_negative_time(mut self, allow: bool) -> Self {
        self.allow_negative_time = allow;
        self
    }

    pub fn start(&self) -> &DensityMatrix {
        &self.start
    }

    pub fn initial_tangent(&self) -> &TangentVector {
        &self.initial_tangent
    }

    pub fn cached_sld(&self) -> &SldMatrix {
        &self.cached_sld
    }

    pub fn allows_negative_time(&self) -> bool {
        self.allow_negative_time
    }
}

/// Point of the e-geodesic at time `t`:
/// `e^{tL/2} ρ⁰ e^{tL/2} / Tr(e^{tL/2} ρ⁰ e^{tL/2})`.
pub fn e_geodesic(spec: &GeodesicSpec, t: f64) -> Result<DensityMatrix> {
    if !t.is_finite() {
        return Err(QssError::NonFinite {
            what: "geodesic time",
        });
    }
    if t < 0.0 && !spec.allow_negative_time {
        return Err(QssError::NegativeTimeDisabled { t });
    }
    if t == 0.0 {
        return Ok(spec.start.clone());
    }
    let eig = &spec.sld_eig;
    // common factor e^{-m} cancels in the normalization
    let m = eig
        .eigenvalues
        .iter()
        .map(|&l| 0.5 * t * l)
        .fold(f64::NEG_INFINITY, f64::max);
    let e = linalg::spectral_map(&eig.eigenvalues, &eig.unitary, |l| (0.5 * t * l - m).exp());
    let unnormalized = &e * spec.start.matrix() * &e;
    let tr = linalg::trace(&unnormalized).re;
    make_density(unnormalized * c(1.0 / tr, 0.0))
}

/// Central finite-difference velocity of the geodesic at `t`.
pub fn geodesic_velocity_fd(spec: &GeodesicSpec, t: f64, dt_fd: f64) -> Result<linalg::CMatrix> {
    if !(dt_fd > 0.0) {
        return Err(QssError::InvalidStep {
            reason: format!("finite-difference step {dt_fd} must be positive"),
        });
    }
    let ahead = e_geodesic(spec, t + dt_fd)?;
    let behind = e_geodesic(spec, t - dt_fd)?;
    Ok((ahead.matrix() - behind.matrix()) * c(0.5 / dt_fd, 0.0))
}

/// `‖D_fd ρ(t) − τ_{ρ(0),ρ(t)}(X⁰)‖_F`, which vanishes up to `O(dt_fd²)`
/// exactly when the curve is autoparallel.
pub fn autoparallel_residual(spec: &GeodesicSpec, t: f64, dt_fd: f64) -> Result<f64> {
    if !(dt_fd > 0.0) || dt_fd >= t {
        return Err(QssError::InvalidStep {
            reason: format!("need 0 < dt_fd < t, got dt_fd = {dt_fd}, t = {t}"),
        });
    }
    let velocity = geodesic_velocity_fd(spec, t, dt_fd)?;
    let here = e_geodesic(spec, t)?;
    let moved = transport_sld(&here, spec.cached_sld.matrix())?;
    Ok(linalg::frobenius(&(velocity - moved.matrix())))
}

/// Defining-relation residual of the transport:
/// `‖L_{ρ₂}(τ(X)) − (L_{ρ₁}(X) − Tr(ρ₂ L_{ρ₁}(X)) I)‖_F`.
pub fn transport_relation_residual(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    x: &TangentVector,
) -> Result<f64> {
    let moved = e_transport(rho1, rho2, x)?;
    let lhs = sld(rho2, &moved)?;
    let l1 = sld(rho1, x)?;
    let shift = linalg::trace(&(rho2.matrix() * l1.matrix())).re;
    let rhs = l1.matrix() - linalg::identity(rho1.dim()) * c(shift, 0.0);
    Ok(linalg::frobenius(&(lhs.matrix() - rhs)))
}

/// Default central-difference step for [`autoparallel_residual`].
pub const DEFAULT_FD_STEP: f64 = tol::FD_STEP;
