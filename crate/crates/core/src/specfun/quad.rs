//! Double-exponential quadrature (tanh-sinh and exp-sinh).
//!
//! Used for the integral routes inside the library: the shape derivative
//! of Γ(u,v) and the quadrature MGF. The test oracle uses a different
//! (Gauss–Kronrod) integrator.

use std::f64::consts::FRAC_PI_2;

use crate::error::{FigError, Result};

const MAX_LEVEL: usize = 10;
const T_MAX: f64 = 6.5;

/// Walks `t = j·step` for `j` on the current level (odd `j` only after
/// level 0), in both directions from `t = 0`, and sums `w(t)·f(x(t))`.
fn level_sum<G: Fn(f64) -> Option<f64>>(node: &G, step: f64, level: usize, acc: f64) -> f64 {
    let mut sum = 0.0;
    let stride = if level == 0 { 1 } else { 2 };
    for direction in [1.0, -1.0] {
        let mut j = 1;
        let mut quiet_run = 0;
        loop {
            let t = direction * j as f64 * step;
            if t.abs() > T_MAX {
                break;
            }
            match node(t) {
                Some(v) => {
                    sum += v;
                    if v.abs() <= 1e-18 * (acc.abs() + sum.abs()) {
                        quiet_run += 1;
                        if quiet_run >= 3 {
                            break;
                        }
                    } else {
                        quiet_run = 0;
                    }
                }
                None => break,
            }
            j += stride;
        }
    }
    sum
}

fn refine<G: Fn(f64) -> Option<f64>>(node: G, rel_tol: f64, abs_tol: f64, routine: &'static str) -> Result<f64> {
    let mut step = 1.0;
    let mut raw = node(0.0).unwrap_or(0.0);
    raw += level_sum(&node, step, 0, raw);
    let mut estimate = raw * step;
    for level in 1..=MAX_LEVEL {
        step *= 0.5;
        raw += level_sum(&node, step, level, raw);
        let next = raw * step;
        if !next.is_finite() {
            return Err(FigError::Domain(format!("{routine}: integrand is not finite")));
        }
        let change = (next - estimate).abs();
        estimate = next;
        if level >= 3 && change <= rel_tol * next.abs() + abs_tol {
            return Ok(next);
        }
    }
    Err(FigError::NonConvergence { routine, iterations: MAX_LEVEL })
}

/// `∫_a^b f(x) dx`. `f` receives the abscissa and its distance to the
/// nearer endpoint is resolved down to subnormal scale, so integrable
/// endpoint singularities at `a = 0` are handled.
pub(crate) fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let node = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        let weight = half * FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        // distance from the nearer endpoint: half·(1 − tanh|u|)
        let gap = half / (u.abs().exp() * cosh_u);
        if !weight.is_finite() || gap == 0.0 {
            return None;
        }
        let x = if t == 0.0 {
            center
        } else if t > 0.0 {
            b - gap
        } else {
            a + gap
        };
        if x <= a || x >= b {
            return Some(0.0);
        }
        Some(weight * f(x))
    };
    refine(node, rel_tol, abs_tol, "tanh-sinh quadrature")
}

/// `∫_a^∞ f(x) dx` with abscissae `x = a + scale·exp(π/2·sinh t)`.
pub(crate) fn exp_sinh<F: Fn(f64) -> f64>(f: F, a: f64, scale: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    let node = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let offset = scale * u.exp();
        if offset == 0.0 || !offset.is_finite() {
            return None;
        }
        let x = a + offset;
        if x == a {
            return Some(0.0);
        }
        let fx = f(x);
        if fx == 0.0 {
            return Some(0.0);
        }
        Some(FRAC_PI_2 * t.cosh() * offset * fx)
    };
    refine(node, rel_tol, abs_tol, "exp-sinh quadrature")
}
