//! Seeded generators for states, tangents, spectra and sphere points.
//!
//! Every generator draws from a `ChaCha8Rng`, so results are reproducible
//! across platforms and independent of thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dynamics::{CouplingSpectrum, SphereVector};
use crate::error::{QssError, Result};
use crate::linalg::{self, c, CMatrix};
use crate::qss::{make_density, sld_inverse, DensityMatrix, SldMatrix, TangentVector};

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for case `index` of dimension `n` under `seed`.
pub fn rng_for(seed: u64, n: usize, index: usize) -> ChaCha8Rng {
    let s = splitmix(splitmix(splitmix(seed) ^ n as u64) ^ index as u64);
    ChaCha8Rng::seed_from_u64(s)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| c(gaussian(rng), gaussian(rng)))
}

/// `G G^H / Tr(G G^H)` for a complex Gaussian `G`.
pub fn random_density(n: usize, seed: u64) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(QssError::DimensionTooSmall { n, min: 2 });
    }
    random_density_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_density_with(n: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(QssError::DimensionTooSmall { n, min: 2 });
    }
    let g = complex_gaussian(n, rng);
    let w = &g * g.adjoint();
    let tr = linalg::trace(&w).re;
    make_density(w * c(1.0 / tr, 0.0))
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    linalg::hermitian_part(&complex_gaussian(n, rng))
}

pub fn random_antihermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    random_hermitian(n, rng) * c(0.0, 1.0)
}

/// Random traceless Hermitian tangent vector with Frobenius norm `norm`.
pub fn random_tangent(rho: &DensityMatrix, norm: f64, rng: &mut impl Rng) -> TangentVector {
    let n = rho.dim();
    let mut h = random_hermitian(n, rng);
    let shift = linalg::trace(&h) / c(n as f64, 0.0);
    for i in 0..n {
        h[(i, i)] -= shift;
    }
    let f = linalg::frobenius(&h);
    TangentVector::new(rho, h * c(norm / f, 0.0)).expect("traceless Hermitian by construction")
}

/// Random tangent vector whose SLD has Frobenius norm `sld_norm`.
///
/// Useful for geodesic work, where the curve's speed is governed by the
/// SLD rather than by the tangent itself.
pub fn random_sld_tangent(rho: &DensityMatrix, sld_norm: f64, rng: &mut impl Rng) -> TangentVector {
    let n = rho.dim();
    let mut xi = random_hermitian(n, rng);
    // Ξ - Tr(ρΞ) I lies in the SLD image
    let shift = linalg::trace(&(rho.matrix() * &xi)).re;
    for i in 0..n {
        xi[(i, i)] -= c(shift, 0.0);
    }
    let f = linalg::frobenius(&xi);
    let xi = SldMatrix::new(rho, xi * c(sld_norm / f, 0.0)).expect("projected onto the SLD image");
    sld_inverse(rho, &xi).expect("base matches")
}

/// Coupling values i.i.d. uniform on `[-1, 1]`.
pub fn random_coupling(n: usize, rng: &mut impl Rng) -> CouplingSpectrum {
    CouplingSpectrum::new((0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .expect("finite values")
}

/// Uniform-direction point on the sphere with every |w_j| ≥ `margin / √n`
/// and random signs.
pub fn random_orthant_sphere(n: usize, margin: f64, rng: &mut impl Rng) -> SphereVector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let w: Vec<f64> = v.iter().map(|x| x / norm).collect();
        let floor = margin / (n as f64).sqrt();
        if w.iter().all(|x| x.abs() >= floor) {
            return SphereVector::new(w).expect("normalized");
        }
    }
}
