//! Derivative-free minimization with the Nelder–Mead simplex.

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_evals: usize,
    /// Converged once the spread of simplex values is within
    /// `ftol_rel·|f_best| + ftol_abs` ...
    pub ftol_rel: f64,
    pub ftol_abs: f64,
    /// ... and every vertex is within `xtol` of the best one.
    pub xtol: f64,
    /// Edge length of the starting simplex along each axis.
    pub initial_step: f64,
    /// Number of fresh simplices built around the best point after the
    /// first convergence.
    pub restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evals: 10_000,
            ftol_rel: 1e-8,
            ftol_abs: 1e-12,
            xtol: 1e-6,
            initial_step: 0.25,
            restarts: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Counter<F> {
    f: F,
    evals: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counter<F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

/// Minimizes `f` from `x0`. Non-finite values are treated as `+∞`, which
/// lets objectives reject infeasible points.
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    if x0.is_empty() {
        return Err(domain("Nelder–Mead needs at least one coordinate"));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(domain(format!("starting point {x0:?} is not finite")));
    }
    let mut obj = Counter { f, evals: 0 };
    let mut best = x0.to_vec();
    let mut best_value = obj.call(&best);
    if !best_value.is_finite() {
        return Err(domain(format!(
            "objective is not finite at the starting point {x0:?}"
        )));
    }
    let mut converged = false;
    for round in 0..=opts.restarts {
        let (x, v, ok) = run(&mut obj, &best, opts);
        let improved = v < best_value;
        let gain = best_value - v;
        if improved {
            best = x;
            best_value = v;
        }
        converged = ok;
        if !ok {
            break;
        }
        if round > 0 && gain <= opts.ftol_rel * best_value.abs() + opts.ftol_abs {
            break;
        }
    }
    Ok(Minimum {
        x: best,
        value: best_value,
        evaluations: obj.evals,
        converged,
    })
}

fn run<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counter<F>,
    start: &[f64],
    opts: &NelderMeadOptions,
) -> (Vec<f64>, f64, bool) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| obj.call(v)).collect();

    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread.is_finite()
            && spread <= opts.ftol_rel * values[0].abs() + opts.ftol_abs
            && size <= opts.xtol
        {
            return (simplex[0].clone(), values[0], true);
        }
        if obj.evals >= opts.max_evals {
            return (simplex[0].clone(), values[0], false);
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = obj.call(&xr);
        if fr < values[0] {
            let xe = along(2.0);
            let fe = obj.call(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let xc = along(if fr < values[n] { 0.5 } else { -0.5 });
        let fc = obj.call(&xc);
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=n {
            simplex[i] = best
                .iter()
                .zip(&simplex[i])
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            values[i] = obj.call(&simplex[i]);
        }
    }
}
