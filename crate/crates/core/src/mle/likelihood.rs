//! Log-likelihood and its analytic gradient.

use crate::error::{domain, Result};
use crate::fig::FigParams;
use crate::specfun::{digamma_unchecked as digamma, ln_gamma_unchecked as ln_gamma, ln_upper_generic, Dual};

fn check_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(domain("log-likelihood needs at least one observation"));
    }
    if let Some(x) = data.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(domain(format!("observation {x} is not positive and finite")));
    }
    Ok(())
}

/// `Σᵢ ln f(xᵢ)`.
pub fn log_likelihood(params: &FigParams, data: &[f64]) -> Result<f64> {
    check_data(data)?;
    log_likelihood_unchecked(params, data)
}

pub(crate) fn log_likelihood_unchecked(params: &FigParams, data: &[f64]) -> Result<f64> {
    let [sigma, alpha, beta, nu] = params.to_array();
    let u = alpha / beta;
    let per_point = nu.ln() - sigma.ln() - ln_gamma((alpha + nu) / beta);
    let mut sum = 0.0;
    for &x in data {
        let lz = (x / sigma).ln();
        let v = (beta * lz).exp();
        if v.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        sum += (nu - 1.0) * lz + ln_upper_generic(u, v)?;
    }
    Ok(sum + data.len() as f64 * per_point)
}

/// Log-likelihood and its gradient with respect to
/// `(ln σ, ln α, ln β, ln ν)`, in one pass over the data.
pub(crate) fn log_likelihood_and_log_gradient(params: &FigParams, data: &[f64]) -> Result<(f64, [f64; 4])> {
    let [sigma, alpha, beta, nu] = params.to_array();
    let u = alpha / beta;
    let big_a = (alpha + nu) / beta;
    let psi_a = digamma(big_a);
    let per_point = nu.ln() - sigma.ln() - ln_gamma(big_a);
    let n = data.len() as f64;

    let mut ll = 0.0;
    let (mut sum_lz, mut sum_d, mut sum_q, mut sum_q_lz) = (0.0, 0.0, 0.0, 0.0);
    for &x in data {
        let lz = (x / sigma).ln();
        let ln_v = beta * lz;
        let v = ln_v.exp();
        if v.is_infinite() {
            return Ok((f64::NEG_INFINITY, [f64::NAN; 4]));
        }
        let g = ln_upper_generic(Dual::var(u), v)?;
        // Q = v^u e^{−v} / Γ(u, v) = −v ∂/∂v ln Γ(u, v)
        let q = if v == 0.0 { 0.0 } else { (u * ln_v - v - g.v).exp() };
        ll += (nu - 1.0) * lz + g.v;
        sum_lz += lz;
        sum_d += g.d;
        sum_q += q;
        sum_q_lz += q * lz;
    }
    ll += n * per_point;
    let grad = [
        -n * nu + beta * sum_q,
        alpha / beta * (sum_d - n * psi_a),
        -u * sum_d - beta * sum_q_lz + n * big_a * psi_a,
        n + nu * sum_lz - n * nu * psi_a / beta,
    ];
    Ok((ll, grad))
}

/// `(∂/∂σ, ∂/∂α, ∂/∂β, ∂/∂ν)` of the log-likelihood.
pub fn gradient(params: &FigParams, data: &[f64]) -> Result<[f64; 4]> {
    check_data(data)?;
    let (_, g) = log_likelihood_and_log_gradient(params, data)?;
    let p = params.to_array();
    Ok([g[0] / p[0], g[1] / p[1], g[2] / p[2], g[3] / p[3]])
}
