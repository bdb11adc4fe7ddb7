//! Hebbian learning flows.
//!
//! * The extended flow on density matrices,
//!   `dρ/dt = ρC + Cρ − 2 Tr(Cρ) ρ`.
//! * Oja's averaged flow on the unit sphere, `dw/dt = Cw − (wᵀCw) w`.
//! * The squaring chart between an open orthant of the sphere and the open
//!   simplex of diagonal states, under which the two flows coincide.
//! * Closed-form solutions for the sphere flow and the diagonal flow.
//!
//! `C` is always diagonal and is stored as its diagonal.

use crate::error::{QssError, Result};
use crate::linalg::{self, c, CMatrix};
use crate::qss::{make_density, DensityMatrix, TangentVector};
use crate::tol;

/// Diagonal of the coupling matrix `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSpectrum {
    values: Vec<f64>,
}

impl CouplingSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(QssError::NonFinite {
                what: "coupling spectrum",
            });
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn matrix(&self) -> CMatrix {
        linalg::diag(&self.values)
    }

    fn ensure_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(QssError::DimensionMismatch {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Unit vector in `Rⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereVector {
    values: Vec<f64>,
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl SphereVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(QssError::NonFinite {
                what: "sphere vector",
            });
        }
        let dev = (norm2(&values) - 1.0).abs();
        if dev > tol::SPHERE {
            return Err(QssError::NotOnSphere { deviation: dev });
        }
        Ok(Self { values })
    }

    /// Projects a nonzero vector onto the sphere.
    pub fn normalized(values: Vec<f64>) -> Result<Self> {
        let r = norm2(&values);
        if !(r > 0.0) || !r.is_finite() {
            return Err(QssError::NotOnSphere {
                deviation: (r - 1.0).abs(),
            });
        }
        Self::new(values.into_iter().map(|x| x / r).collect())
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Componentwise product with a sign vector.
    pub fn signed(&self, sigma: &SignVector) -> Result<Self> {
        if sigma.dim() != self.dim() {
            return Err(QssError::DimensionMismatch {
                expected: self.dim(),
                found: sigma.dim(),
            });
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(sigma.values())
                .map(|(w, &s)| w * s as f64)
                .collect(),
        })
    }
}

/// Orthant label `σ ∈ {±1}ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    values: Vec<i8>,
}

impl SignVector {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(index) = values.iter().position(|s| *s != 1 && *s != -1) {
            return Err(QssError::InvalidSign { index });
        }
        Ok(Self { values })
    }

    pub fn positive(n: usize) -> Self {
        Self { values: vec![1; n] }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

/// Point of the open probability simplex, i.e. the spectrum of a diagonal
/// state.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    values: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(j) = values.iter().position(|t| !(*t > 0.0) || !t.is_finite()) {
            return Err(QssError::NotInSimplex {
                reason: format!("θ_{} = {} is not positive", j, values[j]),
            });
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(QssError::NotInSimplex {
                reason: format!("components sum to {sum}"),
            });
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_diagonal(&self.values)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta {
    pub integrator: String,
    pub dt: f64,
    pub coupling: Vec<f64>,
    pub seed: Option<u64>,
}

/// Sampled solution curve. States are stored at every grid time.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    times: Vec<f64>,
    states: Vec<S>,
    pub meta: TrajectoryMeta,
}

impl<S> Trajectory<S> {
    pub fn new(times: Vec<f64>, states: Vec<S>, meta: TrajectoryMeta) -> Self {
        assert_eq!(times.len(), states.len(), "one state per grid time");
        debug_assert!(
            times.windows(2).all(|w| w[0] < w[1]),
            "times strictly increasing"
        );
        Self {
            times,
            states,
            meta,
        }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &S)> {
        self.times.last().copied().zip(self.states.last())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.meta.seed = Some(seed);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

/// Integration grid `0, dt, 2dt, …, t_end`. When `t_end/dt` is not an
/// integer the last step is shortened to land on `t_end`.
pub fn time_grid(t_end: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(QssError::InvalidStep {
            reason: format!("t_end = {t_end} must be positive"),
        });
    }
    if !(dt > 0.0) || dt > t_end {
        return Err(QssError::InvalidStep {
            reason: format!("dt = {dt} must satisfy 0 < dt <= t_end"),
        });
    }
    let q = t_end / dt;
    let whole = q.round();
    let (full, exact) = if (q - whole).abs() <= 1e-9 * q.max(1.0) {
        (whole as usize, true)
    } else {
        (q.floor() as usize, false)
    };
    let mut times: Vec<f64> = (0..=full).map(|k| k as f64 * dt).collect();
    if exact {
        *times.last_mut().unwrap() = t_end;
    } else {
        times.push(t_end);
    }
    Ok(times)
}

/// Right-hand side of the extended flow on raw matrices.
fn eahle_rhs(rho: &CMatrix, cs: &[f64]) -> CMatrix {
    let n = rho.nrows();
    let tr: f64 = (0..n).map(|j| cs[j] * rho[(j, j)].re).sum();
    CMatrix::from_fn(n, n, |j, k| rho[(j, k)] * (cs[j] + cs[k] - 2.0 * tr))
}

/// `ρC + Cρ − 2 Tr(Cρ) ρ`, a tangent vector at `rho`.
pub fn eahle_field(rho: &DensityMatrix, coupling: &CouplingSpectrum) -> Result<TangentVector> {
    coupling.ensure_dim(rho.dim())?;
    TangentVector::new(rho, eahle_rhs(rho.matrix(), coupling.values()))
}

/// Initial tangent `X^(C) = ρ⁰C + Cρ⁰ − 2 Tr(Cρ⁰) ρ⁰` of the e-geodesic
/// traced by the extended flow from `rho0`.
pub fn xc_initial_tangent(
    rho0: &DensityMatrix,
    coupling: &CouplingSpectrum,
) -> Result<TangentVector> {
    eahle_field(rho0, coupling)
}

trait OdeState: Sized {
    fn axpy(&self, s: f64, other: &Self) -> Self;
    fn scaled(&self, s: f64) -> Self;
}

impl OdeState for CMatrix {
    fn axpy(&self, s: f64, other: &Self) -> Self {
        self + other * c(s, 0.0)
    }

    fn scaled(&self, s: f64) -> Self {
        self * c(s, 0.0)
    }
}

impl OdeState for Vec<f64> {
    fn axpy(&self, s: f64, other: &Self) -> Self {
        self.iter().zip(other).map(|(x, y)| x + s * y).collect()
    }

    fn scaled(&self, s: f64) -> Self {
        self.iter().map(|x| s * x).collect()
    }
}

/// Classical RK4 increment `h/6 (k1 + 2k2 + 2k3 + k4)`.
fn rk4_increment<T: OdeState>(y: &T, h: f64, f: impl Fn(&T) -> T) -> T {
    let k1 = f(y);
    let k2 = f(&y.axpy(0.5 * h, &k1));
    let k3 = f(&y.axpy(0.5 * h, &k2));
    let k4 = f(&y.axpy(h, &k3));
    k1.axpy(2.0, &k2)
        .axpy(2.0, &k3)
        .axpy(1.0, &k4)
        .scaled(h / 6.0)
}

/// Matrix state carried with a running rounding-error term, so that the
/// represented value is `value - carry`.
struct Compensated {
    value: CMatrix,
    carry: CMatrix,
}

impl Compensated {
    fn new(value: CMatrix) -> Self {
        let n = value.nrows();
        Self {
            value,
            carry: CMatrix::zeros(n, n),
        }
    }

    fn add(&mut self, delta: &CMatrix) {
        let adjusted = delta - &self.carry;
        let sum = &self.value + &adjusted;
        self.carry = (&sum - &self.value) - adjusted;
        self.value = sum;
    }

    /// Multiplies by a real scalar, folding the product's rounding error
    /// into the carry.
    fn scale(&mut self, s: f64) {
        let n = self.value.nrows();
        for j in 0..n {
            for k in 0..n {
                let v = self.value[(j, k)];
                let re = v.re * s;
                let im = v.im * s;
                let err = c(v.re.mul_add(s, -re), v.im.mul_add(s, -im));
                self.value[(j, k)] = c(re, im);
                self.carry[(j, k)] = self.carry[(j, k)] * s - err;
            }
        }
    }

    fn trace(&self) -> f64 {
        (0..self.value.nrows())
            .map(|j| self.value[(j, j)].re - self.carry[(j, j)].re)
            .sum()
    }
}

/// Classical RK4 for the extended flow. After every step the state is
/// symmetrized and its trace reset to one; positivity is checked but never
/// enforced.
pub fn eahle_integrate(
    rho0: &DensityMatrix,
    coupling: &CouplingSpectrum,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory<DensityMatrix>> {
    coupling.ensure_dim(rho0.dim())?;
    let times = time_grid(t_end, dt)?;
    let cs = coupling.values();
    let mut states = Vec::with_capacity(times.len());
    states.push(rho0.clone());
    // compensated summation keeps accumulated round-off near one ulp
    let mut y = Compensated::new(rho0.matrix().clone());
    for w in times.windows(2) {
        let h = w[1] - w[0];
        let incr = rk4_increment(&y.value, h, |m| eahle_rhs(m, cs));
        y.add(&incr);
        y.value = linalg::hermitian_part(&y.value);
        y.carry = linalg::hermitian_part(&y.carry);
        y.scale(1.0 / y.trace());
        let state = make_density(y.value.clone()).map_err(|e| QssError::StepTooLarge {
            time: w[1],
            reason: e.to_string(),
        })?;
        states.push(state);
    }
    Ok(Trajectory::new(
        times,
        states,
        TrajectoryMeta {
            integrator: "rk4".into(),
            dt,
            coupling: cs.to_vec(),
            seed: None,
        },
    ))
}

fn ahle_rhs(w: &[f64], cs: &[f64]) -> Vec<f64> {
    let q: f64 = w.iter().zip(cs).map(|(x, c)| c * x * x).sum();
    w.iter().zip(cs).map(|(x, c)| c * x - q * x).collect()
}

/// `Cw − (wᵀCw) w`, tangent to the sphere at `w`.
pub fn ahle_field(w: &SphereVector, coupling: &CouplingSpectrum) -> Result<Vec<f64>> {
    coupling.ensure_dim(w.dim())?;
    Ok(ahle_rhs(w.values(), coupling.values()))
}

/// Classical RK4 for Oja's flow with renormalization after every step.
pub fn ahle_integrate(
    w0: &SphereVector,
    coupling: &CouplingSpectrum,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory<SphereVector>> {
    coupling.ensure_dim(w0.dim())?;
    let times = time_grid(t_end, dt)?;
    let cs = coupling.values();
    let mut states = Vec::with_capacity(times.len());
    states.push(w0.clone());
    let mut y = w0.values().to_vec();
    for w in times.windows(2) {
        let h = w[1] - w[0];
        let next = y.axpy(1.0, &rk4_increment(&y, h, |v| ahle_rhs(v, cs)));
        let state = SphereVector::normalized(next).map_err(|e| QssError::StepTooLarge {
            time: w[1],
            reason: e.to_string(),
        })?;
        y = state.values().to_vec();
        states.push(state);
    }
    Ok(Trajectory::new(
        times,
        states,
        TrajectoryMeta {
            integrator: "rk4".into(),
            dt,
            coupling: cs.to_vec(),
            seed: None,
        },
    ))
}

/// `e^{(a_j - m)} v_j` with `m` the largest exponent over the support of `v`.
fn shifted_exponentials(exponents: impl Iterator<Item = f64>, v: &[f64]) -> Vec<f64> {
    let ex: Vec<f64> = exponents.collect();
    let m = ex
        .iter()
        .zip(v)
        .filter(|(_, x)| **x != 0.0)
        .map(|(e, _)| *e)
        .fold(f64::NEG_INFINITY, f64::max);
    ex.iter()
        .zip(v)
        .map(|(e, x)| if *x == 0.0 { 0.0 } else { (e - m).exp() * x })
        .collect()
}

/// Closed-form solution of Oja's flow:
/// `w_j(t) = e^{t c_j} w⁰_j / √(Σ_k e^{2t c_k} (w⁰_k)²)`.
pub fn ahle_closed_form(
    w0: &SphereVector,
    coupling: &CouplingSpectrum,
    t: f64,
) -> Result<SphereVector> {
    coupling.ensure_dim(w0.dim())?;
    let num = shifted_exponentials(coupling.values().iter().map(|c| t * c), w0.values());
    let r = norm2(&num);
    Ok(SphereVector {
        values: num.into_iter().map(|x| x / r).collect(),
    })
}

/// Closed-form diagonal solution of the extended flow:
/// `θ_j(t) = e^{2t c_j} θ⁰_j / Σ_k e^{2t c_k} θ⁰_k`.
///
/// For very large `|t|` the losing components may underflow to zero.
pub fn diagonal_closed_form(
    theta0: &SimplexPoint,
    coupling: &CouplingSpectrum,
    t: f64,
) -> Result<SimplexPoint> {
    coupling.ensure_dim(theta0.dim())?;
    let num = shifted_exponentials(
        coupling.values().iter().map(|c| 2.0 * t * c),
        theta0.values(),
    );
    let z: f64 = num.iter().sum();
    Ok(SimplexPoint {
        values: num.into_iter().map(|x| x / z).collect(),
    })
}

/// Squaring chart `w ↦ (diag(w_j²), sign(w))`.
pub fn sphere_to_simplex(w: &SphereVector) -> Result<(SimplexPoint, SignVector)> {
    if let Some(index) = w.values().iter().position(|x| x.abs() <= tol::ZERO) {
        return Err(QssError::ZeroComponent {
            index,
            value: w.values()[index],
        });
    }
    let sq: Vec<f64> = w.values().iter().map(|x| x * x).collect();
    let z: f64 = sq.iter().sum();
    let theta = SimplexPoint::new(sq.into_iter().map(|x| x / z).collect())?;
    let sigma = SignVector {
        values: w
            .values()
            .iter()
            .map(|x| if *x > 0.0 { 1 } else { -1 })
            .collect(),
    };
    Ok((theta, sigma))
}

/// Inverse chart `(θ, σ) ↦ (σ_j √θ_j)`.
pub fn simplex_to_sphere(theta: &SimplexPoint, sigma: &SignVector) -> Result<SphereVector> {
    if theta.dim() != sigma.dim() {
        return Err(QssError::DimensionMismatch {
            expected: theta.dim(),
            found: sigma.dim(),
        });
    }
    SphereVector::new(
        theta
            .values()
            .iter()
            .zip(sigma.values())
            .map(|(t, &s)| s as f64 * t.sqrt())
            .collect(),
    )
}

/// Diagonal of a density matrix, real parts.
pub fn diagonal_of(rho: &DensityMatrix) -> Vec<f64> {
    rho.matrix().diagonal().iter().map(|z| z.re).collect()
}
