//! Train/holdout splitting and information-criterion model comparison.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, FigError, Result};
use crate::fig::FigParams;
use crate::mle::{self, Family, FitOptions};

/// `2k − 2·LL`.
pub fn aic(n_params: usize, loglik: f64) -> f64 {
    2.0 * n_params as f64 - 2.0 * loglik
}

/// `k·ln(n) − 2·LL`.
pub fn bic(n_params: usize, loglik: f64, n: usize) -> f64 {
    n_params as f64 * (n as f64).ln() - 2.0 * loglik
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: Vec<f64>,
    pub test: Vec<f64>,
}

/// Random partition with `⌈n·fraction⌉` held out. Both parts keep the
/// original order.
pub fn split(data: &[f64], fraction: f64, seed: u64) -> Result<Split> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(domain(format!("holdout fraction must lie in [0, 1), got {fraction}")));
    }
    let n = data.len();
    let n_test = (n as f64 * fraction).ceil() as usize;
    if n_test >= n {
        return Err(FigError::Data(format!("holdout of {n_test} leaves no training data out of {n}")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    idx.shuffle(&mut rng);
    let mut held = vec![false; n];
    for &i in &idx[..n_test] {
        held[i] = true;
    }
    let (mut train, mut test) = (Vec::with_capacity(n - n_test), Vec::with_capacity(n_test));
    for (x, h) in data.iter().zip(held) {
        if h {
            test.push(*x);
        } else {
            train.push(*x);
        }
    }
    Ok(Split { train, test })
}

/// One family's fit and scores. Score fields are `None` when the fit failed;
/// `error` then says why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub model: Family,
    pub n_params: usize,
    pub params: Option<FigParams>,
    pub loglik_in: Option<f64>,
    pub aic: Option<f64>,
    pub bic: Option<f64>,
    pub loglik_out: Option<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub gradient_norm: Option<f64>,
    pub standard_errors: Option<[f64; 4]>,
    pub n_train: usize,
    pub n_test: usize,
    pub seed: u64,
    pub error: Option<String>,
}

fn report(family: Family, parts: &Split, options: &FitOptions) -> ModelReport {
    let mut r = ModelReport {
        model: family,
        n_params: family.n_params(),
        params: None,
        loglik_in: None,
        aic: None,
        bic: None,
        loglik_out: None,
        converged: false,
        iterations: 0,
        gradient_norm: None,
        standard_errors: None,
        n_train: parts.train.len(),
        n_test: parts.test.len(),
        seed: options.seed,
        error: None,
    };
    let fit = match mle::fit_family(&parts.train, family, options) {
        Ok(f) => f,
        Err(e) => {
            r.error = Some(e.to_string());
            return r;
        }
    };
    r.params = Some(fit.params);
    r.loglik_in = Some(fit.loglik);
    r.aic = Some(aic(r.n_params, fit.loglik));
    r.bic = Some(bic(r.n_params, fit.loglik, r.n_train));
    r.converged = fit.converged;
    r.iterations = fit.iterations;
    r.gradient_norm = Some(fit.gradient_norm);
    r.standard_errors = fit.standard_errors;
    if !parts.test.is_empty() {
        match mle::log_likelihood(&fit.params, &parts.test) {
            Ok(ll) => r.loglik_out = Some(ll),
            Err(e) => r.error = Some(format!("holdout log-likelihood: {e}")),
        }
    }
    r
}

/// Fits one family on the training part of `data` and scores it.
pub fn evaluate(data: &[f64], family: Family, options: &FitOptions) -> Result<ModelReport> {
    let parts = split(data, options.holdout_fraction, options.seed)?;
    Ok(report(family, &parts, options))
}

fn by_criteria(a: &ModelReport, b: &ModelReport) -> Ordering {
    let key = |r: &ModelReport| (r.aic.unwrap_or(f64::INFINITY), r.bic.unwrap_or(f64::INFINITY));
    let (ka, kb) = (key(a), key(b));
    ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
}

/// Fits every family on one shared split; reports sorted by AIC, then BIC.
/// A family that fails is reported with its error and sorted last.
pub fn compare(data: &[f64], families: &[Family], options: &FitOptions) -> Result<Vec<ModelReport>> {
    if families.is_empty() {
        return Err(domain("no families to compare"));
    }
    let parts = split(data, options.holdout_fraction, options.seed)?;
    let mut reports: Vec<ModelReport> = families.iter().map(|f| report(*f, &parts, options)).collect();
    reports.sort_by(by_criteria);
    Ok(reports)
}
