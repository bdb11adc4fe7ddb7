//! Exploratory search for an equivalence between a given e-geodesic and a
//! Hebbian-flow trajectory, up to conjugation by `u ∈ SU(n)` and an affine
//! reparametrization of time `t ↦ a t + b` with `a > 0`.
//!
//! The unitary is held fixed over time. Nothing here is a pass/fail gate;
//! results are evidence only.

use num_complex::Complex64;
use rand::Rng;

use super::simplex_search::{nelder_mead, SearchOptions};
use crate::dynamics::{xc_initial_tangent, CouplingSpectrum};
use crate::error::{QssError, Result};
use crate::geometry::{e_geodesic, GeodesicSpec};
use crate::linalg::{self, c, CMatrix};
use crate::qss::{eig_hermitian, make_density, DensityMatrix};
use crate::random::rng_for;

pub const MAX_PROBE_DIM: usize = 4;

#[derive(Debug, Clone)]
pub struct ConjectureProbeResult {
    pub target_spec: GeodesicSpec,
    pub best_coupling: CouplingSpectrum,
    pub best_unitary: CMatrix,
    /// `(a, b)` in `t ↦ a t + b`.
    pub best_time_affine: (f64, f64),
    pub residual: f64,
    /// Best residual of each restart, restart 0 being the spectral warm start.
    pub restart_residuals: Vec<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
pub struct ProbeOptions {
    pub grid: Vec<f64>,
    pub search: SearchOptions,
    /// Include a restart seeded from the eigenbasis of the target's SLD.
    pub warm_start: bool,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            grid: (0..=10).map(|k| k as f64 * 0.1).collect(),
            search: SearchOptions::default(),
            warm_start: true,
        }
    }
}

/// Real coordinates of `su(n)`: off-diagonal real and imaginary symmetric
/// pairs plus `n − 1` traceless diagonal directions.
fn su_generator(n: usize, params: &[f64]) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    let mut p = params.iter();
    for j in 0..n {
        for k in (j + 1)..n {
            let re = *p.next().unwrap();
            let im = *p.next().unwrap();
            a[(j, k)] += c(re, im);
            a[(k, j)] += c(-re, im);
        }
    }
    for j in 0..n - 1 {
        let d = *p.next().unwrap();
        a[(j, j)] += c(0.0, d);
        a[(j + 1, j + 1)] -= c(0.0, d);
    }
    a
}

/// Rescales a unitary to unit determinant.
fn to_special(u: CMatrix) -> CMatrix {
    let n = u.nrows();
    let d = linalg::det(&u);
    let phase = Complex64::from_polar(1.0, -d.arg() / n as f64);
    u * phase
}

struct Problem<'a> {
    n: usize,
    target: Vec<DensityMatrix>,
    grid: &'a [f64],
    base_unitary: CMatrix,
    start: DensityMatrix,
}

struct Candidate {
    coupling: CouplingSpectrum,
    unitary: CMatrix,
    a: f64,
    b: f64,
}

impl Problem<'_> {
    fn decode(&self, x: &[f64]) -> Result<Candidate> {
        let n = self.n;
        let coupling = CouplingSpectrum::new(x[..n].to_vec())?;
        let g = su_generator(n, &x[n..n * n + n - 1]);
        let unitary = &self.base_unitary * linalg::expm_antihermitian(&g)?;
        let a = x[n * n + n - 1].exp();
        let b = x[n * n + n];
        Ok(Candidate {
            coupling,
            unitary,
            a,
            b,
        })
    }

    /// `max_t ‖u ρʰ(a t + b) u^H − ρᵉ(t)‖_F`, where `ρʰ` is the Hebbian
    /// trajectory through `u^H ρᵉ(0) u` at time zero.
    fn residual(&self, cand: &Candidate) -> Result<f64> {
        let u = &cand.unitary;
        let sigma0 = make_density(u.adjoint() * self.start.matrix() * u)?;
        let flow = GeodesicSpec::new(&sigma0, &xc_initial_tangent(&sigma0, &cand.coupling)?)?
            .with_negative_time(true);
        let mut worst = 0.0_f64;
        for (t, target) in self.grid.iter().zip(&self.target) {
            let p = e_geodesic(&flow, cand.a * t + cand.b)?;
            let moved = u * p.matrix() * u.adjoint();
            worst = worst.max(linalg::frobenius(&(moved - target.matrix())));
        }
        Ok(worst)
    }
}

/// Multi-start Nelder–Mead over `(C, u, a, b)`.
pub fn conjecture_probe(
    spec: &GeodesicSpec,
    n_restarts: usize,
    seed: u64,
) -> Result<ConjectureProbeResult> {
    conjecture_probe_with(spec, n_restarts, seed, &ProbeOptions::default())
}

pub fn conjecture_probe_with(
    spec: &GeodesicSpec,
    n_restarts: usize,
    seed: u64,
    opts: &ProbeOptions,
) -> Result<ConjectureProbeResult> {
    let n = spec.start().dim();
    if n > MAX_PROBE_DIM {
        return Err(QssError::DimensionTooLarge {
            n,
            max: MAX_PROBE_DIM,
        });
    }
    let target = opts
        .grid
        .iter()
        .map(|&t| e_geodesic(spec, t))
        .collect::<Result<Vec<_>>>()?;
    let dim = n * n + n + 1;
    let identity_pose = |base: CMatrix| Problem {
        n,
        target: target.clone(),
        grid: &opts.grid,
        base_unitary: base,
        start: spec.start().clone(),
    };

    // restart list: (base unitary, initial parameter vector)
    let mut starts: Vec<(CMatrix, Vec<f64>)> = Vec::new();
    if opts.warm_start {
        let eig = eig_hermitian(spec.cached_sld().matrix())?;
        let mut x0 = vec![0.0; dim];
        for (j, l) in eig.eigenvalues.iter().enumerate() {
            x0[j] = 0.5 * l;
        }
        starts.push((to_special(eig.unitary.clone()), x0));
    }
    let mut rng = rng_for(seed, n, usize::MAX);
    while starts.len() < n_restarts.max(1) {
        let mut x0 = vec![0.0; dim];
        for v in x0.iter_mut().take(n) {
            *v = rng.random_range(-1.0..=1.0);
        }
        for v in x0.iter_mut().skip(n).take(n * n - 1) {
            *v = rng.random_range(-1.0..=1.0);
        }
        starts.push((linalg::identity(n), x0));
    }

    let mut evaluations = 0;
    let mut any_converged = false;
    let mut restart_residuals = Vec::with_capacity(starts.len());
    let mut best: Option<(f64, Candidate)> = None;
    for (base, x0) in starts {
        let problem = identity_pose(base);
        let objective = |x: &[f64]| {
            problem
                .decode(x)
                .and_then(|cand| problem.residual(&cand))
                .unwrap_or(f64::INFINITY)
        };
        let out = nelder_mead(objective, &x0, &opts.search);
        evaluations += out.evaluations;
        any_converged |= out.converged;
        restart_residuals.push(out.best_f);
        if best.as_ref().is_none_or(|(f, _)| out.best_f < *f) {
            best = Some((out.best_f, problem.decode(&out.best_x)?));
        }
    }

    let (residual, cand) = best.expect("at least one restart");
    let result = ConjectureProbeResult {
        target_spec: spec.clone(),
        best_coupling: cand.coupling,
        best_unitary: to_special(cand.unitary),
        best_time_affine: (cand.a, cand.b),
        residual,
        restart_residuals,
        evaluations,
    };
    if !any_converged {
        return Err(QssError::SearchBudgetExhausted {
            evaluations,
            best_residual: residual,
            best: Box::new(result),
        });
    }
    Ok(result)
}
