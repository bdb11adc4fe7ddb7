//! Derivative-free Nelder–Mead minimization.

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub initial_step: f64,
    pub max_evaluations: usize,
    /// Stop when the spread of simplex values falls below this.
    pub f_tol: f64,
    /// Stop as soon as a value at or below this is found.
    pub target: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            max_evaluations: 4000,
            f_tol: 1e-14,
            target: 1e-13,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], opts: &SearchOptions) -> SearchOutcome {
    let dim = x0.len();
    let eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut evaluations = 0;
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let f0 = eval(x0, &mut evaluations);
    simplex.push((x0.to_vec(), f0));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let fx = eval(&x, &mut evaluations);
        simplex.push((x, fx));
    }

    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if best <= opts.target || (worst - best).abs() <= opts.f_tol {
            converged = true;
            break;
        }
        if evaluations >= opts.max_evaluations {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();
        let along = |s: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim].0)
                .map(|(c, w)| c + s * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = eval(&xr, &mut evaluations);
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = eval(&xe, &mut evaluations);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst {
                let x = along(0.5);
                let v = eval(&x, &mut evaluations);
                (x, v)
            } else {
                let x = along(-0.5);
                let v = eval(&x, &mut evaluations);
                (x, v)
            };
            if fc < worst.min(fr) {
                simplex[dim] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = x_best
                        .iter()
                        .zip(&entry.0)
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    let v = eval(&x, &mut evaluations);
                    *entry = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best_x, best_f) = simplex.swap_remove(0);
    SearchOutcome {
        best_x,
        best_f,
        evaluations,
        converged,
    }
}
