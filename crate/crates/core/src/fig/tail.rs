//! Tail diagnostics: how far the FIG log-kernel slope is from the GG one.

use super::{check_positive, ln_upper_tail, FigParams};
use crate::error::Result;

impl FigParams {
    /// `ln` of `z^{α−β} e^{−z^β} / Γ(α/β, z^β)`; zero when `α = β`.
    fn ln_tail_ratio(&self, z: f64) -> Result<f64> {
        let (a, b) = (self.alpha, self.beta);
        let ln_z = z.ln();
        let v = (b * ln_z).exp();
        Ok((a - b) * ln_z - v - ln_upper_tail(a / b, v)?)
    }

    /// Slope of the FIG log kernel minus the slope of the GG log kernel
    /// with the same `(β, ν)`:
    ///
    /// ```text
    /// d(z) = −β z^{α−1} e^{−z^β} / Γ(α/β, z^β) + β z^{β−1}
    /// ```
    ///
    /// Identically zero when `α = β`. Both kernels share the factor
    /// `z^{ν−1}`, so `ν` drops out.
    pub fn gg_log_kernel_diff(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        let ratio = self.ln_tail_ratio(z)?;
        let growth = self.beta * z.powf(self.beta - 1.0);
        Ok(-growth * ratio.exp_m1())
    }

    /// [`gg_log_kernel_diff`](Self::gg_log_kernel_diff) divided by the GG
    /// tail growth `β z^{β−1}`.
    pub fn tail_residual(&self, z: f64) -> Result<f64> {
        check_positive("z", z)?;
        Ok(-self.ln_tail_ratio(z)?.exp_m1())
    }
}
