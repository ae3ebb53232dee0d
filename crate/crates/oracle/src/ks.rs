use crate::OracleError;

/// Asymptotic Kolmogorov coefficient `c(alpha) = sqrt(-ln(alpha / 2) / 2)`.
fn kolmogorov_coefficient(alpha: f64) -> Result<f64, OracleError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(OracleError::InvalidArgument(format!("significance level {alpha}")));
    }
    Ok((-0.5 * (0.5 * alpha).ln()).sqrt())
}

/// One-sample critical value `c(alpha) / sqrt(n)`; `c(0.01) ≈ 1.628`,
/// `c(0.05) ≈ 1.358`.
pub fn ks_critical_value(n: usize, alpha: f64) -> Result<f64, OracleError> {
    if n == 0 {
        return Err(OracleError::EmptySample);
    }
    Ok(kolmogorov_coefficient(alpha)? / (n as f64).sqrt())
}

/// Two-sample critical value `c(alpha) * sqrt((n + m) / (n m))`.
pub fn ks_two_sample_critical_value(n: usize, m: usize, alpha: f64) -> Result<f64, OracleError> {
    if n == 0 || m == 0 {
        return Err(OracleError::EmptySample);
    }
    let (n, m) = (n as f64, m as f64);
    Ok(kolmogorov_coefficient(alpha)? * ((n + m) / (n * m)).sqrt())
}

/// Sup-distance between the empirical CDF of `sample` and `cdf`.
///
/// The sample does not need to be pre-sorted.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64, OracleError> {
    if sample.is_empty() {
        return Err(OracleError::EmptySample);
    }
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        if !f.is_finite() {
            return Err(OracleError::NonFinite { at: vec![x] });
        }
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Sup-distance between the empirical CDFs of two samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64, OracleError> {
    if a.is_empty() || b.is_empty() {
        return Err(OracleError::EmptySample);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let t = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= t {
            i += 1;
        }
        while j < ys.len() && ys[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}
