//! Incomplete gamma functions in log form.
//!
//! Three evaluation regimes:
//! - `a < 1`, `x < 1.5`: Γ(a,x) = (Γ(1+a) − x^a)/a − x^a Σ_{k≥1} (−x)^k / (k!(a+k)),
//!   which keeps relative accuracy when Γ(a,x) is a small fraction of Γ(a);
//! - `x < a + 1`: power series for the regularised lower function P;
//! - otherwise: Lentz continued fraction for Γ(a,x).
//!
//! All routines are generic over [`Real`] so the same code yields
//! ∂/∂a when instantiated with [`Dual`](super::dual::Dual).

use super::dual::Real;
use crate::error::{FigError, Result};

pub(crate) const MAX_ITERATIONS: usize = 500;
const EPS: f64 = f64::EPSILON;
const TINY: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    SmallShape,
    Series,
    ContinuedFraction,
}

fn regime(a: f64, x: f64) -> Regime {
    if a < 1.0 && x < 1.5 {
        Regime::SmallShape
    } else if x < a + 1.0 {
        Regime::Series
    } else {
        Regime::ContinuedFraction
    }
}

/// `ln Σ_{k≥0} x^k / ((a+1)···(a+k))`.
fn ln_lower_series<R: Real>(a: R, x: f64) -> Result<R> {
    let mut term = R::cst(1.0);
    let mut sum = R::cst(1.0);
    for k in 1..=MAX_ITERATIONS {
        term = term * x / (a + k as f64);
        sum = sum + term;
        if term.val().abs() <= EPS * sum.val().abs() && term.tangent() <= EPS * (sum.tangent() + sum.val().abs()) {
            return Ok(sum.ln());
        }
    }
    Err(FigError::NonConvergence { routine: "incomplete gamma series", iterations: MAX_ITERATIONS })
}

/// `ln P(a, x)` from the power series; valid in any regime but only
/// efficient for `x` not much larger than `a`.
fn ln_regularized_lower_series<R: Real>(a: R, x: f64) -> Result<R> {
    Ok(a * x.ln() - x - (a + 1.0).ln_gamma() + ln_lower_series(a, x)?)
}

fn upper_small_shape<R: Real>(a: R, x: f64) -> Result<R> {
    let ln_x = x.ln();
    let x_pow_a = (a * ln_x).exp();
    let head = (a.ln_gamma_1p().exp_m1() - (a * ln_x).exp_m1()) / a;
    let mut power = 1.0;
    let mut sum = R::cst(0.0);
    for k in 1..=MAX_ITERATIONS {
        power *= -x / k as f64;
        let term = R::cst(power) / (a + k as f64);
        sum = sum + term;
        if term.val().abs() <= EPS * sum.val().abs().max(TINY) && power.abs() <= EPS {
            return Ok((head - x_pow_a * sum).ln());
        }
    }
    Err(FigError::NonConvergence { routine: "incomplete gamma small-shape series", iterations: MAX_ITERATIONS })
}

fn ln_upper_continued_fraction<R: Real>(a: R, x: f64) -> Result<R> {
    let mut b = -a + (x + 1.0);
    let mut c = R::cst(1.0 / TINY);
    let mut d = b.recip();
    let mut h = d;
    for i in 1..=MAX_ITERATIONS {
        let i = i as f64;
        let an = (a - i) * i;
        b = b + 2.0;
        d = an * d + b;
        if d.val().abs() < TINY {
            d = R::cst(TINY);
        }
        c = b + an / c;
        if c.val().abs() < TINY {
            c = R::cst(TINY);
        }
        d = d.recip();
        let delta = d * c;
        h = h * delta;
        let log_scale = (h.tangent() / h.val().abs()).max(1.0);
        if (delta.val() - 1.0).abs() <= EPS && delta.tangent() <= EPS * log_scale {
            return Ok(a * x.ln() - x + h.ln());
        }
    }
    Err(FigError::NonConvergence { routine: "incomplete gamma continued fraction", iterations: MAX_ITERATIONS })
}

/// `ln Γ(a, x)` for `a > 0`, `x ≥ 0`; arguments are assumed validated.
pub(crate) fn ln_upper<R: Real>(a: R, x: f64) -> Result<R> {
    if x == 0.0 {
        return Ok(a.ln_gamma());
    }
    match regime(a.val(), x) {
        Regime::SmallShape => upper_small_shape(a, x),
        Regime::Series => {
            let ln_p = ln_regularized_lower_series(a, x)?;
            Ok(a.ln_gamma() + (-ln_p.exp()).ln_1p())
        }
        Regime::ContinuedFraction => ln_upper_continued_fraction(a, x),
    }
}

/// `ln γ(a, x)`; `-∞` at `x = 0`.
pub(crate) fn ln_lower(a: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    match regime(a, x) {
        Regime::ContinuedFraction => {
            let ln_q = ln_upper_continued_fraction(a, x)? - Real::ln_gamma(a);
            Ok(Real::ln_gamma(a) + (-ln_q.exp()).ln_1p())
        }
        _ => Ok(ln_regularized_lower_series(a, x)? + Real::ln_gamma(a)),
    }
}

/// `(P(a,x), Q(a,x))`, each computed on the side where it is accurate.
pub(crate) fn regularized_pair(a: f64, x: f64) -> Result<(f64, f64)> {
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    let lg = Real::ln_gamma(a);
    Ok(match regime(a, x) {
        Regime::ContinuedFraction => {
            let q = (ln_upper_continued_fraction(a, x)? - lg).exp();
            (1.0 - q, q).clamp_pair()
        }
        Regime::Series => {
            let p = ln_regularized_lower_series(a, x)?.exp();
            (p, 1.0 - p).clamp_pair()
        }
        Regime::SmallShape => {
            // Both halves may be small here; take each from its own formula.
            let p = ln_regularized_lower_series(a, x)?.exp();
            let q = (upper_small_shape(a, x)? - lg).exp();
            (p, q).clamp_pair()
        }
    })
}

trait ClampPair {
    fn clamp_pair(self) -> (f64, f64);
}
impl ClampPair for (f64, f64) {
    fn clamp_pair(self) -> (f64, f64) {
        (self.0.clamp(0.0, 1.0), self.1.clamp(0.0, 1.0))
    }
}
