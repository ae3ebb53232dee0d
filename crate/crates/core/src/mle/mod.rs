//! Maximum-likelihood fitting of FIG and its sub-models.
//!
//! Optimisation runs over `φ`, the logs of the family's free parameters,
//! so positivity needs no constraints. The data are divided by their
//! median before fitting and the scale is mapped back afterwards.
//!
//! ```
//! use figdist::{mle, sampler, FigParams};
//! let truth = FigParams::new(1.0, 2.0, 2.0, 2.0).unwrap();
//! let data = sampler::sample_fig(&truth, 500, 3).unwrap();
//! let fit = mle::fit_family(&data, mle::Family::Gg, &mle::FitOptions::default()).unwrap();
//! assert!(fit.converged);
//! ```

mod family;
mod likelihood;
mod optim;

pub use family::Family;
pub use likelihood::{gradient, log_likelihood};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FigError, Result};
use crate::fig::FigParams;
use likelihood::{log_likelihood_and_log_gradient, log_likelihood_unchecked};

/// Fewest observations accepted by the fitting routines.
pub const MIN_OBSERVATIONS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Bound on the max-norm of the log-likelihood gradient in `φ`.
    pub gradient_tolerance: f64,
    pub n_starts: usize,
    /// Finite differences of the log-likelihood when off.
    pub use_analytic_gradient: bool,
    /// Fraction held out by [`crate::eval`]; the fitting routines here use
    /// all the data they are given.
    pub holdout_fraction: f64,
    pub seed: u64,
    pub standard_errors: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_iterations: 500,
            gradient_tolerance: 1e-8,
            n_starts: 5,
            use_analytic_gradient: true,
            holdout_fraction: 0.0,
            seed: 0,
            standard_errors: true,
        }
    }
}

impl FitOptions {
    fn validate(&self) -> Result<()> {
        if !(self.gradient_tolerance > 0.0) {
            return Err(crate::error::domain("gradient tolerance must be positive"));
        }
        if self.n_starts == 0 {
            return Err(crate::error::domain("n_starts must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.holdout_fraction) {
            return Err(crate::error::domain("holdout fraction must lie in [0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub family: Family,
    pub params: FigParams,
    pub loglik: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Max-norm of the log-likelihood gradient in `φ` at `params`.
    pub gradient_norm: f64,
    /// `(σ, α, β, ν)`; tied parameters share a value, fixed ones are 0.
    pub standard_errors: Option<[f64; 4]>,
    /// Why `standard_errors` is absent, when it was requested.
    pub standard_error_note: Option<String>,
    pub start_index: usize,
    /// Log-likelihood at each start's initial point.
    pub initial_logliks: Vec<f64>,
    pub n: usize,
}

/// Median of positive data.
fn median(data: &[f64]) -> f64 {
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Data divided by their median, ready for fitting.
struct Standardized {
    y: Vec<f64>,
    scale: f64,
}

impl Standardized {
    fn new(data: &[f64]) -> Result<Self> {
        if data.len() < MIN_OBSERVATIONS {
            return Err(FigError::Data(format!(
                "fitting needs at least {MIN_OBSERVATIONS} observations, got {}",
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(FigError::Data(format!("observation {x} is not positive and finite")));
        }
        let scale = median(data);
        Ok(Standardized { y: data.iter().map(|x| x / scale).collect(), scale })
    }

    fn to_inner(&self, p: &FigParams) -> Result<FigParams> {
        p.with_sigma(p.sigma() / self.scale)
    }

    fn to_outer(&self, p: &FigParams) -> Result<FigParams> {
        p.with_sigma(p.sigma() * self.scale)
    }

    fn ll_offset(&self) -> f64 {
        -(self.y.len() as f64) * self.scale.ln()
    }
}

/// Log-likelihood and `φ`-gradient for a family on standardised data.
fn objective(family: Family, y: &[f64], phi: &[f64], analytic: bool) -> Result<(f64, Vec<f64>)> {
    let params = family.to_params(phi)?;
    if analytic {
        let (ll, g) = log_likelihood_and_log_gradient(&params, y)?;
        return Ok((ll, family.project_gradient(&g)));
    }
    let ll = log_likelihood_unchecked(&params, y)?;
    let mut g = vec![0.0; phi.len()];
    for j in 0..phi.len() {
        let h = 1e-6 * phi[j].abs().max(1.0);
        let mut up = phi.to_vec();
        let mut dn = phi.to_vec();
        up[j] += h;
        dn[j] -= h;
        let f_up = log_likelihood_unchecked(&family.to_params(&up)?, y)?;
        let f_dn = log_likelihood_unchecked(&family.to_params(&dn)?, y)?;
        g[j] = (f_up - f_dn) / (2.0 * h);
    }
    Ok((ll, g))
}

fn loglik_phi(family: Family, y: &[f64], phi: &[f64]) -> f64 {
    family
        .to_params(phi)
        .and_then(|p| log_likelihood_unchecked(&p, y))
        .unwrap_or(f64::NEG_INFINITY)
}

struct Run {
    phi: Vec<f64>,
    loglik: f64,
    gradient_norm: f64,
    iterations: usize,
    converged: bool,
}

fn run_from(family: Family, y: &[f64], phi0: &[f64], options: &FitOptions) -> Result<Run> {
    let n = y.len() as f64;
    let settings = optim::Settings {
        gradient_tolerance: options.gradient_tolerance / n,
        max_iterations: options.max_iterations,
        max_step: 1.0,
    };
    let analytic = options.use_analytic_gradient;
    let out = optim::minimize(
        |phi| {
            let (ll, g) = objective(family, y, phi, analytic)?;
            Ok((-ll / n, g.iter().map(|v| -v / n).collect()))
        },
        phi0,
        &settings,
    )?;
    let gradient_norm = out.g.iter().fold(0.0f64, |m, v| m.max(v.abs())) * n;
    Ok(Run {
        phi: out.x,
        loglik: -out.f * n,
        gradient_norm,
        iterations: out.iterations,
        converged: out.converged,
    })
}

/// Starting points in `φ` for `family` on standardised data.
fn starting_points(family: Family, y: &[f64], options: &FitOptions) -> Result<Vec<Vec<f64>>> {
    let anchor = match family {
        Family::Fig => {
            let gg_options = FitOptions { n_starts: 1, standard_errors: false, ..options.clone() };
            let gg = fit_inner(Family::Gg, y, &gg_options)?;
            Family::Fig.to_phi(&Family::Gg.to_params(&gg.phi_full())?)?
        }
        Family::Gg => {
            let candidates = [Family::Gamma, Family::Weibull].map(|f| Family::Gg.to_phi(&f.initial(y)?));
            let mut best: Option<(f64, Vec<f64>)> = None;
            for c in candidates {
                let phi = c?;
                let ll = loglik_phi(Family::Gg, y, &phi);
                if best.as_ref().is_none_or(|(b, _)| ll > *b) {
                    best = Some((ll, phi));
                }
            }
            best.expect("two candidates").1
        }
        _ => family.to_phi(&family.initial(y)?)?,
    };
    let mut starts = vec![anchor.clone()];
    // Perturb the shape coordinates; families without any get one start.
    let shapes: &[usize] = match family {
        Family::Fig => &[1, 2],
        Family::Gg => &[1, 2],
        Family::Gamma | Family::Weibull => &[1],
        Family::Exponential | Family::HalfNormal => &[],
    };
    if !shapes.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for _ in 1..options.n_starts {
            let mut phi = anchor.clone();
            for &j in shapes {
                phi[j] += rng.random_range(-0.5..0.5);
            }
            starts.push(phi);
        }
    }
    Ok(starts)
}

struct InnerFit {
    family: Family,
    best: Run,
    start_index: usize,
    initial_logliks: Vec<f64>,
}

impl InnerFit {
    fn phi_full(&self) -> Vec<f64> {
        self.best.phi.clone()
    }
}

fn fit_inner(family: Family, y: &[f64], options: &FitOptions) -> Result<InnerFit> {
    let starts = starting_points(family, y, options)?;
    let mut initial_logliks = Vec::with_capacity(starts.len());
    let mut best: Option<(usize, Run)> = None;
    let mut last_error = None;
    for (i, phi0) in starts.iter().enumerate() {
        initial_logliks.push(loglik_phi(family, y, phi0));
        match run_from(family, y, phi0, options) {
            Ok(run) if run.loglik.is_finite() => {
                if best.as_ref().is_none_or(|(_, b)| run.loglik > b.loglik) {
                    best = Some((i, run));
                }
            }
            Ok(_) => {}
            Err(e) => last_error = Some(e),
        }
    }
    match best {
        Some((start_index, best)) => Ok(InnerFit { family, best, start_index, initial_logliks }),
        None => Err(last_error.unwrap_or(FigError::NonConvergence {
            routine: "maximum likelihood (all starts failed)",
            iterations: options.max_iterations,
        })),
    }
}

/// Standard errors from the inverse observed information in `φ`, using
/// central differences of the analytic gradient.
fn standard_errors_inner(family: Family, y: &[f64], phi: &[f64]) -> Result<[f64; 4]> {
    let k = phi.len();
    let mut hess = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        let h = 1e-5 * phi[j].abs().max(1.0);
        let mut up = phi.to_vec();
        let mut dn = phi.to_vec();
        up[j] += h;
        dn[j] -= h;
        let (_, g_up) = objective(family, y, &up, true)?;
        let (_, g_dn) = objective(family, y, &dn, true)?;
        for i in 0..k {
            // Hessian of the negative log-likelihood.
            hess[(i, j)] = -(g_up[i] - g_dn[i]) / (2.0 * h);
        }
    }
    let sym = (&hess + hess.transpose()) * 0.5;
    if sym.iter().any(|v| !v.is_finite()) {
        return Err(FigError::NotPositiveDefinite("Hessian has non-finite entries".into()));
    }
    let chol = sym
        .clone()
        .cholesky()
        .ok_or_else(|| FigError::NotPositiveDefinite(format!("observed information {sym:.3e}")))?;
    let cov = chol.inverse();
    let var = family.log_param_variances(&cov);
    let params = family.to_params(phi)?.to_array();
    let mut se = [0.0; 4];
    for i in 0..4 {
        se[i] = params[i] * var[i].sqrt();
    }
    if se.iter().any(|v| !v.is_finite()) {
        return Err(FigError::NotPositiveDefinite("covariance has non-finite entries".into()));
    }
    Ok(se)
}

/// Fits `family` to `data`, keeping the best of `options.n_starts` runs.
///
/// A run that stops before meeting the gradient tolerance still returns
/// its best point with `converged = false`.
pub fn fit_family(data: &[f64], family: Family, options: &FitOptions) -> Result<FitResult> {
    options.validate()?;
    let st = Standardized::new(data)?;
    let inner = fit_inner(family, &st.y, options)?;
    let params = st.to_outer(&family.to_params(&inner.best.phi)?)?;
    let (standard_errors, standard_error_note) = if options.standard_errors {
        match standard_errors_inner(family, &st.y, &inner.best.phi) {
            Ok(se) => (Some([se[0] * st.scale, se[1], se[2], se[3]]), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let offset = st.ll_offset();
    Ok(FitResult {
        family: inner.family,
        params,
        loglik: inner.best.loglik + offset,
        converged: inner.best.converged,
        iterations: inner.best.iterations,
        gradient_norm: inner.best.gradient_norm,
        standard_errors,
        standard_error_note,
        start_index: inner.start_index,
        initial_logliks: inner.initial_logliks.iter().map(|l| l + offset).collect(),
        n: data.len(),
    })
}

/// Four-parameter FIG fit, started from the GG fit.
pub fn fit(data: &[f64], options: &FitOptions) -> Result<FitResult> {
    fit_family(data, Family::Fig, options)
}

/// Constrained fit of a nested family.
pub fn fit_submodel(data: &[f64], family: Family, options: &FitOptions) -> Result<FitResult> {
    fit_family(data, family, options)
}

/// Standard errors of `(σ, α, β, ν)` at a fitted point.
pub fn standard_errors(result: &FitResult, data: &[f64]) -> Result<[f64; 4]> {
    let st = Standardized::new(data)?;
    let phi = result.family.to_phi(&st.to_inner(&result.params)?)?;
    let se = standard_errors_inner(result.family, &st.y, &phi)?;
    Ok([se[0] * st.scale, se[1], se[2], se[3]])
}
