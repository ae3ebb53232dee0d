//! BFGS on the inverse Hessian with a backtracking line search.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;

pub(crate) struct Outcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub g: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) struct Settings {
    pub gradient_tolerance: f64,
    pub max_iterations: usize,
    /// Largest move in any coordinate per step.
    pub max_step: f64,
}

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 40;
/// Relative change in `f` treated as rounding.
const LEVEL_NOISE: f64 = 1e-13;

fn max_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Inverse of the central-difference Hessian at `x`, when it is
/// positive definite.
fn inverse_hessian<F>(f: &mut F, x: &DVector<f64>) -> Option<DMatrix<f64>>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let dim = x.len();
    let mut hess = DMatrix::<f64>::zeros(dim, dim);
    for j in 0..dim {
        let h = 1e-5 * x[j].abs().max(1.0);
        let mut up = x.clone();
        let mut dn = x.clone();
        up[j] += h;
        dn[j] -= h;
        let (_, g_up) = f(up.as_slice()).ok()?;
        let (_, g_dn) = f(dn.as_slice()).ok()?;
        for i in 0..dim {
            hess[(i, j)] = (g_up[i] - g_dn[i]) / (2.0 * h);
        }
    }
    let sym = (&hess + hess.transpose()) * 0.5;
    if sym.iter().any(|v| !v.is_finite()) {
        return None;
    }
    sym.cholesky().map(|c| c.inverse())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Metric {
    /// Inverse finite-difference Hessian.
    Local,
    /// Scaled identity, before the first update.
    Identity,
    /// BFGS-updated.
    Updated,
}

/// Minimises `f`, which returns the value and gradient. A trial point
/// whose evaluation fails or is non-finite is treated as infeasible.
///
/// When a line search fails the metric is reset, first to the local
/// Hessian and then to the identity; failure from the identity ends the
/// run unconverged.
pub(crate) fn minimize<F>(mut f: F, x0: &[f64], s: &Settings) -> Result<Outcome>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let dim = x0.len();
    let identity = DMatrix::<f64>::identity(dim, dim);
    let mut x = DVector::from_column_slice(x0);
    let (mut fx, g0) = f(x0)?;
    let mut g = DVector::from_vec(g0);
    let mut iterations = 0;

    let finish = |x: DVector<f64>, fx, g: DVector<f64>, iterations, converged| Outcome {
        x: x.as_slice().to_vec(),
        f: fx,
        g: g.as_slice().to_vec(),
        iterations,
        converged,
    };

    if !fx.is_finite() || g.iter().any(|v| !v.is_finite()) {
        return Ok(finish(x, fx, g, 0, false));
    }
    if max_norm(&g) <= s.gradient_tolerance {
        return Ok(finish(x, fx, g, 0, true));
    }

    let (mut h, mut metric) = match inverse_hessian(&mut f, &x) {
        Some(inv) => (inv, Metric::Local),
        None => (identity.clone(), Metric::Identity),
    };

    while iterations < s.max_iterations {
        if max_norm(&g) <= s.gradient_tolerance {
            return Ok(finish(x, fx, g, iterations, true));
        }
        let mut d = -(&h * &g);
        let mut slope = g.dot(&d);
        if !(slope < 0.0) {
            h = identity.clone();
            metric = Metric::Identity;
            d = -g.clone();
            slope = g.dot(&d);
        }
        let longest = max_norm(&d);
        if longest > s.max_step {
            d *= s.max_step / longest;
            slope *= s.max_step / longest;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial = &x + step * &d;
            if let Ok((ft, gt)) = f(trial.as_slice()) {
                let gt = DVector::from_vec(gt);
                if ft.is_finite() && gt.iter().all(|v| v.is_finite()) {
                    // Compare the difference: `fx + tiny` rounds to `fx`.
                    let change = ft - fx;
                    let sufficient = change <= ARMIJO * step * slope;
                    // Near the optimum the decrease drops below rounding;
                    // then accept a level step that shrinks the gradient.
                    let level = change <= LEVEL_NOISE * fx.abs().max(1.0) && gt.norm() < g.norm();
                    if sufficient || level {
                        accepted = Some((trial, ft, gt, !sufficient));
                        break;
                    }
                }
            }
            step *= 0.5;
        }

        let Some((x_new, f_new, g_new, level)) = accepted else {
            match metric {
                Metric::Updated => match inverse_hessian(&mut f, &x) {
                    Some(inv) => {
                        h = inv;
                        metric = Metric::Local;
                    }
                    None => {
                        h = identity.clone();
                        metric = Metric::Identity;
                    }
                },
                Metric::Local => {
                    h = identity.clone();
                    metric = Metric::Identity;
                }
                Metric::Identity => return Ok(finish(x, fx, g, iterations, false)),
            }
            continue;
        };
        iterations += 1;
        if level {
            // Past the resolution of `f`: polish with Newton steps.
            x = x_new;
            fx = f_new;
            g = g_new;
            if let Some(inv) = inverse_hessian(&mut f, &x) {
                h = inv;
                metric = Metric::Local;
            }
            continue;
        }

        let sv = &x_new - &x;
        let yv = &g_new - &g;
        let sy = sv.dot(&yv);
        if sy > 1e-12 * sv.norm() * yv.norm() && sy > 0.0 {
            if metric == Metric::Identity {
                h = &identity * (sy / yv.dot(&yv));
            }
            let rho = 1.0 / sy;
            let left = &identity - rho * &sv * yv.transpose();
            let right = &identity - rho * &yv * sv.transpose();
            h = &left * &h * &right + rho * &sv * sv.transpose();
            metric = Metric::Updated;
        }
        x = x_new;
        fx = f_new;
        g = g_new;
    }
    let converged = max_norm(&g) <= s.gradient_tolerance;
    Ok(finish(x, fx, g, iterations, converged))
}
