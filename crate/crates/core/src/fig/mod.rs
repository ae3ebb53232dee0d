//! The FIG distribution.
//!
//! A positive random variable `X = σZ` where `Z` has density
//!
//! ```text
//! f(z; α, β, ν) = ν z^{ν−1} Γ(α/β, z^β) / Γ((α+ν)/β)
//! ```
//!
//! `ν` shapes the left tail, `α` the body and `β` the right tail. With
//! `α = β` the family collapses to the generalised gamma.
//!
//! All evaluation happens on the standard scale `z = x/σ`; the scale
//! Jacobian is applied once at the end.

mod baseline;
mod mgf;
mod submodel;
mod tail;

pub use baseline::{BtnParams, GgParams};
pub use mgf::{MgfComparison, MgfEstimate, MgfMethod};
pub use submodel::SubModel;

use serde::{Deserialize, Serialize};

use crate::error::{domain, FigError, Result};
use crate::numeric::brent;
use crate::specfun::{self, ln_gamma_unchecked as ln_gamma};

pub(crate) fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {value}")))
    }
}

/// `ln Γ(a, v)` that maps `v = +∞` to `-∞` instead of failing.
pub(crate) fn ln_upper_tail(a: f64, v: f64) -> Result<f64> {
    if v.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    specfun::ln_upper_incomplete_gamma(a, v)
}

/// Parameters `(σ, α, β, ν)` of a scaled FIG distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFigParams")]
pub struct FigParams {
    sigma: f64,
    alpha: f64,
    beta: f64,
    nu: f64,
}

#[derive(Deserialize)]
struct RawFigParams {
    sigma: f64,
    alpha: f64,
    beta: f64,
    nu: f64,
}

impl TryFrom<RawFigParams> for FigParams {
    type Error = FigError;
    fn try_from(r: RawFigParams) -> Result<Self> {
        FigParams::new(r.sigma, r.alpha, r.beta, r.nu)
    }
}

impl FigParams {
    pub fn new(sigma: f64, alpha: f64, beta: f64, nu: f64) -> Result<Self> {
        check_positive("sigma", sigma)?;
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        check_positive("nu", nu)?;
        Ok(FigParams { sigma, alpha, beta, nu })
    }

    /// Unit-scale distribution `FIG(α, β, ν)`.
    pub fn standard(alpha: f64, beta: f64, nu: f64) -> Result<Self> {
        Self::new(1.0, alpha, beta, nu)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `[σ, α, β, ν]`.
    pub fn to_array(&self) -> [f64; 4] {
        [self.sigma, self.alpha, self.beta, self.nu]
    }

    pub fn from_array(p: [f64; 4]) -> Result<Self> {
        Self::new(p[0], p[1], p[2], p[3])
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(sigma, self.alpha, self.beta, self.nu)
    }

    /// Shape of the incomplete gamma in the kernel, `α/β`.
    pub(crate) fn kernel_shape(&self) -> f64 {
        self.alpha / self.beta
    }

    /// Shape of the normalising gamma, `(α+ν)/β`.
    pub(crate) fn norm_shape(&self) -> f64 {
        (self.alpha + self.nu) / self.beta
    }

    /// `ln ν − ln Γ((α+ν)/β)`, shared by every density evaluation.
    pub(crate) fn ln_norm(&self) -> f64 {
        self.nu.ln() - ln_gamma(self.norm_shape())
    }

    /// Log density of the standard (unit scale) variable at `z > 0`.
    pub(crate) fn ln_standard_pdf(&self, z: f64) -> Result<f64> {
        let ln_z = z.ln();
        let v = (self.beta * ln_z).exp();
        Ok(self.ln_norm() + (self.nu - 1.0) * ln_z + ln_upper_tail(self.kernel_shape(), v)?)
    }

    fn check_point(x: f64) -> Result<()> {
        if x > 0.0 && x.is_finite() {
            Ok(())
        } else {
            Err(domain(format!("x must be positive and finite, got {x}")))
        }
    }

    /// Log density, evaluated directly in log space.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        Self::check_point(x)?;
        Ok(self.ln_standard_pdf(x / self.sigma)? - self.sigma.ln())
    }

    /// Density `ν x^{ν−1} σ^{−ν} Γ(α/β, (x/σ)^β) / Γ((α+ν)/β)`.
    ///
    /// For `ν < 1` the density diverges at the origin; very small `x` may
    /// then return `+∞`, while [`log_pdf`](Self::log_pdf) stays finite.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// `(F(x), 1 − F(x))` with each side computed where it is accurate.
    pub fn cdf_sf(&self, x: f64) -> Result<(f64, f64)> {
        Self::check_point(x)?;
        let z = x / self.sigma;
        let ln_z = z.ln();
        let v = (self.beta * ln_z).exp();
        if v.is_infinite() {
            return Ok((1.0, 0.0));
        }
        let a = self.norm_shape();
        let (p, q) = specfun::regularized_gamma(a, v)?;
        // z^ν Γ(α/β, z^β) / Γ((α+ν)/β)
        let ln_term = self.nu * ln_z + ln_upper_tail(self.kernel_shape(), v)? - ln_gamma(a);
        let term = ln_term.exp();
        let cdf = (p + term).min(1.0);
        let sf = if q > 0.0 && ln_term < q.ln() {
            q * -(ln_term - q.ln()).exp_m1()
        } else {
            (1.0 - cdf).max(0.0)
        };
        Ok((cdf, sf))
    }

    /// `F(x) = [γ((α+ν)/β, z^β) + z^ν Γ(α/β, z^β)] / Γ((α+ν)/β)`, `z = x/σ`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.cdf_sf(x)?.0)
    }

    /// Survival function `1 − F(x)`.
    pub fn sf(&self, x: f64) -> Result<f64> {
        Ok(self.cdf_sf(x)?.1)
    }

    /// Inverse CDF by bracketing, bisection and a Newton polish.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(domain(format!("quantile level must lie in (0, 1), got {q}")));
        }
        let upper = q > 0.5;
        let target = if upper { 1.0 - q } else { q };
        // g(x) > 0 once x is past the quantile.
        let g = |x: f64| -> Result<f64> {
            let (c, s) = self.cdf_sf(x)?;
            Ok(if upper { target - s } else { c - target })
        };

        let mut hi = self.sigma;
        while g(hi)? < 0.0 {
            hi *= 2.0;
            if hi > 1e308 {
                return Err(FigError::NonConvergence { routine: "quantile bracket", iterations: 1024 });
            }
        }
        let mut lo = hi;
        while lo > 1e-300 && g(lo)? >= 0.0 {
            lo *= 0.5;
        }
        if g(lo)? >= 0.0 {
            return Ok(lo);
        }
        // Bisect in the geometric midpoint so tiny quantiles keep their
        // relative accuracy.
        for _ in 0..128 {
            let mid = (lo * hi).sqrt();
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = (lo * hi).sqrt();
        for _ in 0..8 {
            let density = self.pdf(x)?;
            if !(density > 0.0) || !density.is_finite() {
                break;
            }
            let next = x - g(x)? / density;
            if !(next > lo && next < hi) {
                break;
            }
            let done = (next - x).abs() <= 4.0 * f64::EPSILON * x;
            x = next;
            if done {
                break;
            }
        }
        Ok(x)
    }

    /// `E[Z^r]` for the standard variable.
    fn standard_moment(&self, r: f64) -> f64 {
        let (a, b, n) = (self.alpha, self.beta, self.nu);
        (n.ln() + ln_gamma((a + n + r) / b) - (n + r).ln() - ln_gamma((a + n) / b)).exp()
    }

    /// `E[X^r] = σ^r ν Γ((α+ν+r)/β) / ((ν+r) Γ((α+ν)/β))`.
    pub fn raw_moment(&self, r: f64) -> Result<f64> {
        check_positive("moment order", r)?;
        Ok(self.sigma.powf(r) * self.standard_moment(r))
    }

    pub fn mean(&self) -> f64 {
        self.sigma * self.standard_moment(1.0)
    }

    pub fn variance(&self) -> f64 {
        let m1 = self.standard_moment(1.0);
        let m2 = self.standard_moment(2.0);
        self.sigma * self.sigma * (m2 - m1 * m1)
    }

    pub fn skewness(&self) -> f64 {
        let [m1, m2, m3] = [1.0, 2.0, 3.0].map(|r| self.standard_moment(r));
        let var = m2 - m1 * m1;
        (m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3)) / var.powf(1.5)
    }

    /// Pearson (non-excess) kurtosis.
    pub fn kurtosis(&self) -> f64 {
        let [m1, m2, m3, m4] = [1.0, 2.0, 3.0, 4.0].map(|r| self.standard_moment(r));
        let var = m2 - m1 * m1;
        (m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4)) / (var * var)
    }

    /// Location of the density maximum.
    ///
    /// Zero when `ν ≤ 1`. Otherwise the root of
    /// `(ν−1)Γ(α/β, z^β) = β z^α e^{−z^β}`, taken in log form.
    pub fn mode(&self) -> Result<f64> {
        if self.nu <= 1.0 {
            return Ok(0.0);
        }
        let (a, b) = (self.alpha, self.beta);
        let u = self.kernel_shape();
        let offset = (self.nu - 1.0).ln() - b.ln();
        let slope = |z: f64| -> Result<f64> {
            let v = z.powf(b);
            Ok(offset + ln_upper_tail(u, v)? - a * z.ln() + v)
        };
        let mut lo = 2f64.powi(-40);
        if !(slope(lo)? > 0.0) {
            return Err(FigError::NonConvergence { routine: "mode bracket", iterations: 0 });
        }
        for k in -39..=20 {
            let hi = 2f64.powi(k);
            let g_hi = slope(hi)?;
            if g_hi <= 0.0 {
                let root = brent(|z| slope(z).unwrap_or(f64::NAN), lo, hi, 1e-12)?;
                return Ok(self.sigma * root);
            }
            lo = hi;
        }
        Err(FigError::NonConvergence { routine: "mode bracket", iterations: 61 })
    }
}
