//! File formats: complex matrices as JSON, trajectories as CSV or JSON.
//!
//! Matrix JSON is `{"n": int, "re": [[..]], "im": [[..]]}`, row-major.
//! CSV floats are written with 17 significant digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dynamics::{SphereVector, Trajectory};
use crate::linalg::{c, CMatrix};
use crate::qss::DensityMatrix;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("matrix JSON shape error: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let rows = |f: fn(&num_complex::Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix, FormatError> {
        let n = self.n;
        let check = |name: &str, rows: &Vec<Vec<f64>>| -> Result<(), FormatError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(FormatError::Shape(format!("\"{name}\" must be {n}x{n}")));
            }
            Ok(())
        };
        check("re", &self.re)?;
        check("im", &self.im)?;
        Ok(CMatrix::from_fn(n, n, |i, j| {
            c(self.re[i][j], self.im[i][j])
        }))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, FormatError> {
    serde_json::from_str::<MatrixJson>(text)?.to_matrix()
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_matrix(m)).expect("plain data serializes")
}

/// Fixed 17-significant-digit scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A state type that can appear in an exported trajectory.
pub trait TrajectoryState {
    fn csv_header(dim: usize) -> Vec<String>;
    fn csv_values(&self) -> Vec<f64>;
    fn to_json(&self) -> serde_json::Value;
    fn state_dim(&self) -> usize;
}

impl TrajectoryState for DensityMatrix {
    fn csv_header(n: usize) -> Vec<String> {
        let mut h = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                h.push(format!("re_{i}{j}"));
                h.push(format!("im_{i}{j}"));
            }
        }
        h
    }

    fn csv_values(&self) -> Vec<f64> {
        let m = self.matrix();
        let n = m.nrows();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| [m[(i, j)].re, m[(i, j)].im]))
            .collect()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from_matrix(self.matrix())).expect("plain data")
    }

    fn state_dim(&self) -> usize {
        self.dim()
    }
}

impl TrajectoryState for SphereVector {
    fn csv_header(n: usize) -> Vec<String> {
        (1..=n).map(|j| format!("w_{j}")).collect()
    }

    fn csv_values(&self) -> Vec<f64> {
        self.values().to_vec()
    }

    fn to_json(&self) -> serde_json::Value {
        json!(self.values())
    }

    fn state_dim(&self) -> usize {
        self.dim()
    }
}

pub fn trajectory_csv<S: TrajectoryState>(traj: &Trajectory<S>) -> String {
    let n = traj.states().first().map_or(0, |s| s.state_dim());
    let mut out = String::new();
    let mut header = vec!["t".to_string()];
    header.extend(S::csv_header(n));
    out.push_str(&header.join(","));
    out.push('\n');
    for (t, s) in traj.iter() {
        out.push_str(&fmt17(t));
        for v in s.csv_values() {
            let _ = write!(out, ",{}", fmt17(v));
        }
        out.push('\n');
    }
    out
}

pub fn trajectory_json<S: TrajectoryState>(traj: &Trajectory<S>) -> String {
    let value = json!({
        "meta": {
            "integrator": traj.meta.integrator,
            "dt": traj.meta.dt,
            "coupling": traj.meta.coupling,
            "seed": traj.meta.seed,
        },
        "times": traj.times(),
        "states": traj.states().iter().map(|s| s.to_json()).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&value).expect("plain data serializes")
}
