//! The body-tail generalised normal baseline and the generalised gamma
//! sub-family.

use serde::{Deserialize, Serialize};

use super::{check_positive, ln_upper_tail, FigParams};
use crate::error::Result;
use crate::specfun::{self, ln_gamma_unchecked as ln_gamma};

/// Body-tail generalised normal shapes `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BtnParams {
    alpha: f64,
    beta: f64,
}

impl BtnParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        Ok(BtnParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Density of `|Z|`: `Γ(α/β, z^β) / Γ((α+1)/β)`, twice the symmetric
    /// density on `z > 0`.
    pub fn half_pdf(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        let (a, b) = (self.alpha, self.beta);
        Ok((ln_upper_tail(a / b, z.powf(b))? - ln_gamma((a + 1.0) / b)).exp())
    }

    /// Symmetric density on the real line.
    pub fn pdf(&self, z: f64) -> Result<f64> {
        if z == 0.0 {
            return Ok(0.5 * (ln_gamma(self.alpha / self.beta) - ln_gamma((self.alpha + 1.0) / self.beta)).exp());
        }
        Ok(0.5 * self.half_pdf(z.abs())?)
    }

    /// `E|Z|^r = Γ((α+r+1)/β) / ((r+1) Γ((α+1)/β))`.
    pub fn abs_moment(&self, r: f64) -> Result<f64> {
        check_positive("moment order", r)?;
        let (a, b) = (self.alpha, self.beta);
        Ok((ln_gamma((a + r + 1.0) / b) - (r + 1.0).ln() - ln_gamma((a + 1.0) / b)).exp())
    }
}

/// Generalised gamma with scale `a`, right-tail shape `p` and left-tail
/// shape `d`: density `p/(a Γ(d/p)) (x/a)^{d−1} e^{−(x/a)^p}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GgParams {
    a: f64,
    p: f64,
    d: f64,
}

impl GgParams {
    pub fn new(a: f64, p: f64, d: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("p", p)?;
        check_positive("d", d)?;
        Ok(GgParams { a, p, d })
    }

    pub fn scale(&self) -> f64 {
        self.a
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        check_positive("x", x)?;
        let z = x / self.a;
        Ok(self.p.ln() - self.a.ln() - ln_gamma(self.d / self.p) + (self.d - 1.0) * z.ln() - z.powf(self.p))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// `P(d/p, (x/a)^p)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_positive("x", x)?;
        let v = (x / self.a).powf(self.p);
        if v.is_infinite() {
            return Ok(1.0);
        }
        Ok(specfun::regularized_gamma(self.d / self.p, v)?.0)
    }

    /// `E[X^r] = a^r Γ((d+r)/p) / Γ(d/p)`.
    pub fn raw_moment(&self, r: f64) -> Result<f64> {
        check_positive("moment order", r)?;
        Ok(self.a.powf(r) * (ln_gamma((self.d + r) / self.p) - ln_gamma(self.d / self.p)).exp())
    }

    /// Derivative of the log kernel, `(d−1)/z − p z^{p−1}`, at `z > 0`.
    pub fn log_kernel_derivative(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        Ok((self.d - 1.0) / z - self.p * z.powf(self.p - 1.0))
    }

    /// The equivalent FIG: `σ = a`, `α = β = p`, `ν = d`.
    pub fn to_fig(&self) -> FigParams {
        FigParams { sigma: self.a, alpha: self.p, beta: self.p, nu: self.d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_gn_at_origin() {
        let btn = BtnParams::new(2.0, 2.0).unwrap();
        let v = btn.half_pdf(1e-10).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn laplace_abs_mean() {
        let btn = BtnParams::new(1.0, 1.0).unwrap();
        assert!((btn.abs_moment(1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gg_special_cases() {
        let exp = GgParams::new(1.0, 1.0, 1.0).unwrap();
        assert!((exp.pdf(0.5).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        for z in [0.1, 1.0, 7.0] {
            assert_eq!(exp.log_kernel_derivative(z).unwrap(), -1.0);
        }
        let g = GgParams::new(1.0, 2.0, 3.0).unwrap();
        let expected = 2.0 * (-1f64).exp() / (0.5 * PI.sqrt());
        assert!((g.pdf(1.0).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BtnParams::new(0.0, 1.0).is_err());
        assert!(GgParams::new(1.0, f64::NAN, 1.0).is_err());
        let g = GgParams::new(1.0, 2.0, 3.0).unwrap();
        assert!(g.pdf(-1.0).is_err());
        assert!(g.log_kernel_derivative(0.0).is_err());
    }
}
