//! Named distributions nested inside FIG.

use std::f64::consts::SQRT_2;

use super::{check_positive, FigParams};
use crate::error::{FigError, Result};

/// Sub-models with their native parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubModel {
    ChiSquared { df: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, scale: f64 },
    GeneralizedGamma { a: f64, p: f64, d: f64 },
    HalfBodyTailNormal { sigma: f64, alpha: f64, beta: f64 },
    HalfGeneralizedNormal { sigma: f64, s: f64 },
    HalfNormal { sigma: f64 },
    MaxwellBoltzmann { a: f64 },
    Rayleigh { sigma: f64 },
    /// The `α = β = ∞` limit; has no finite parameterisation.
    Uniform,
    Weibull { scale: f64, shape: f64 },
}

impl SubModel {
    /// FIG parameters reproducing this sub-model exactly.
    pub fn to_fig(self) -> Result<FigParams> {
        use SubModel::*;
        match self {
            ChiSquared { df } => {
                check_positive("df", df)?;
                FigParams::new(2.0, 1.0, 1.0, df / 2.0)
            }
            Exponential { rate } => {
                check_positive("rate", rate)?;
                FigParams::new(1.0 / rate, 1.0, 1.0, 1.0)
            }
            Gamma { shape, scale } => {
                check_positive("shape", shape)?;
                FigParams::new(scale, 1.0, 1.0, shape)
            }
            GeneralizedGamma { a, p, d } => FigParams::new(a, p, p, d),
            HalfBodyTailNormal { sigma, alpha, beta } => FigParams::new(sigma, alpha, beta, 1.0),
            HalfGeneralizedNormal { sigma, s } => FigParams::new(sigma, s, s, 1.0),
            HalfNormal { sigma } => FigParams::new(SQRT_2 * sigma, 2.0, 2.0, 1.0),
            MaxwellBoltzmann { a } => FigParams::new(SQRT_2 * a, 2.0, 2.0, 3.0),
            Rayleigh { sigma } => FigParams::new(SQRT_2 * sigma, 2.0, 2.0, 2.0),
            Uniform => Err(FigError::Unrepresentable("uniform requires alpha = beta = infinity".into())),
            Weibull { scale, shape } => FigParams::new(scale, shape, shape, shape),
        }
    }
}

impl FigParams {
    pub fn from_submodel(model: SubModel) -> Result<Self> {
        model.to_fig()
    }
}
