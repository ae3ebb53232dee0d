//! Moment generating function.

use serde::Serialize;

use super::FigParams;
use crate::error::{FigError, Result};
use crate::specfun::{ln_gamma_unchecked as ln_gamma, quad};

/// Last-term size above which a series value is flagged as truncated.
pub const TRUNCATION_WARNING: f64 = 1e-6;
/// Relative agreement with quadrature required to trust the series.
pub const SERIES_TRUST: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MgfMethod {
    #[default]
    Quadrature,
    /// Term-wise integration of the incomplete gamma power series.
    /// Experimental.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgfEstimate {
    pub value: f64,
    pub method: MgfMethod,
    /// Magnitude of the last series term; `None` for quadrature.
    pub last_term: Option<f64>,
    pub truncation_warning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MgfComparison {
    pub t: f64,
    pub series: MgfEstimate,
    pub quadrature: f64,
    pub relative_gap: f64,
    /// Series agrees with quadrature to [`SERIES_TRUST`].
    pub trusted: bool,
}

impl FigParams {
    /// Whether `E[e^{tX}]` is finite.
    pub fn mgf_is_finite(&self, t: f64) -> bool {
        if t <= 0.0 {
            return true;
        }
        if self.beta > 1.0 {
            true
        } else if self.beta == 1.0 {
            t * self.sigma < 1.0
        } else {
            false
        }
    }

    /// `M(t) = E[e^{tX}]`. `terms` only affects the series method.
    pub fn mgf(&self, t: f64, method: MgfMethod, terms: usize) -> Result<MgfEstimate> {
        if !t.is_finite() {
            return Err(crate::error::domain(format!("t must be finite, got {t}")));
        }
        if t == 0.0 {
            return Ok(MgfEstimate { value: 1.0, method, last_term: None, truncation_warning: false });
        }
        match method {
            MgfMethod::Quadrature => self.mgf_quadrature(t),
            MgfMethod::Series => self.mgf_series(t, terms),
        }
    }

    /// Series and quadrature side by side.
    pub fn mgf_compare(&self, t: f64, terms: usize) -> Result<MgfComparison> {
        let series = self.mgf(t, MgfMethod::Series, terms)?;
        let quadrature = self.mgf(t, MgfMethod::Quadrature, terms)?.value;
        let relative_gap = ((series.value - quadrature) / quadrature).abs();
        Ok(MgfComparison { t, series, quadrature, relative_gap, trusted: relative_gap < SERIES_TRUST })
    }

    fn mgf_quadrature(&self, t: f64) -> Result<MgfEstimate> {
        if !self.mgf_is_finite(t) {
            return Err(FigError::Divergent(format!(
                "E[exp(tX)] is infinite for t = {t}, beta = {}, sigma = {}",
                self.beta, self.sigma
            )));
        }
        let c = t * self.sigma;
        let h = |z: f64| c * z + self.ln_standard_pdf(z).unwrap_or(f64::NEG_INFINITY);

        // Geometric grid search for the peak of the integrand.
        let ratio = 2f64.powf(0.25);
        let mut z = 2f64.powi(-30);
        let (mut peak, mut h_peak) = (z, h(z));
        while z < 2f64.powi(30) {
            z *= ratio;
            let hz = h(z);
            if hz > h_peak {
                peak = z;
                h_peak = hz;
            }
        }
        if !h_peak.is_finite() {
            return Err(FigError::Divergent(format!("integrand is not finite for t = {t}")));
        }
        // Distance beyond the peak over which the integrand falls by e.
        let mut reach = peak;
        while reach < 2f64.powi(40) && h(reach) > h_peak - 1.0 {
            reach *= ratio;
        }
        let scale = (reach - peak).max(peak).max(f64::MIN_POSITIVE);

        let f = |z: f64| (h(z) - h_peak).exp();
        let (rel, abs) = (1e-13, 1e-300);
        let head = quad::tanh_sinh(f, 0.0, peak, rel, abs)?;
        let tail = quad::exp_sinh(f, peak, scale, rel, abs)?;
        let value = h_peak.exp() * (head + tail);
        if !value.is_finite() {
            return Err(FigError::Divergent(format!("MGF overflows at t = {t}")));
        }
        Ok(MgfEstimate { value, method: MgfMethod::Quadrature, last_term: None, truncation_warning: false })
    }

    /// For `s = −σt > 0`:
    ///
    /// ```text
    /// M = ν/Γ(A) · [Γ(u)Γ(ν) s^{−ν}
    ///       − Σ_k (−1)^k Γ(α+βk+ν) / (k! (u+k) s^{α+βk+ν})]
    /// ```
    ///
    /// with `u = α/β`, `A = (α+ν)/β`. Converges for `β < 1`, and for
    /// `β = 1` when `s > 1`; otherwise it is asymptotic at best.
    fn mgf_series(&self, t: f64, terms: usize) -> Result<MgfEstimate> {
        if t > 0.0 {
            return Err(FigError::Divergent(format!(
                "series terms diverge for t = {t} > 0; the series needs t < 0"
            )));
        }
        if terms == 0 {
            return Err(crate::error::domain("series needs at least one term"));
        }
        let (a, b, n) = (self.alpha, self.beta, self.nu);
        let s = -t * self.sigma;
        let u = a / b;
        let ln_s = s.ln();
        let ln_pre = n.ln() - ln_gamma((a + n) / b);
        let lead = (ln_pre + ln_gamma(u) + ln_gamma(n) - n * ln_s).exp();
        let mut sum = 0.0;
        let mut last = 0.0;
        for k in 0..terms {
            let kf = k as f64;
            let shape = a + b * kf + n;
            let ln_term = ln_pre + ln_gamma(shape) - ln_gamma(kf + 1.0) - (u + kf).ln() - shape * ln_s;
            let term = ln_term.exp();
            sum += if k % 2 == 0 { term } else { -term };
            last = term;
        }
        let value = lead - sum;
        Ok(MgfEstimate {
            value,
            method: MgfMethod::Series,
            last_term: Some(last),
            truncation_warning: !(last <= TRUNCATION_WARNING) || !value.is_finite(),
        })
    }
}
