//! Model families as linear maps into FIG log-parameter space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, FigError, Result};
use crate::fig::FigParams;
use crate::specfun::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Fig,
    Gg,
    Gamma,
    Weibull,
    Exponential,
    HalfNormal,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Fig, Family::Gg, Family::Gamma, Family::Weibull, Family::Exponential, Family::HalfNormal];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fig => "fig",
            Family::Gg => "gg",
            Family::Gamma => "gamma",
            Family::Weibull => "weibull",
            Family::Exponential => "exponential",
            Family::HalfNormal => "half_normal",
        }
    }

    /// Number of free parameters.
    pub fn n_params(self) -> usize {
        match self {
            Family::Fig => 4,
            Family::Gg => 3,
            Family::Gamma | Family::Weibull => 2,
            Family::Exponential | Family::HalfNormal => 1,
        }
    }

    /// `ln θ = M φ + c` for `θ = (σ, α, β, ν)`; row `i` of `M` lists which
    /// free coordinate drives `ln θᵢ` (or none, when fixed).
    fn layout(self) -> ([Option<usize>; 4], [f64; 4]) {
        let ln2 = std::f64::consts::LN_2;
        match self {
            Family::Fig => ([Some(0), Some(1), Some(2), Some(3)], [0.0; 4]),
            Family::Gg => ([Some(0), Some(1), Some(1), Some(2)], [0.0; 4]),
            Family::Gamma => ([Some(0), None, None, Some(1)], [0.0; 4]),
            Family::Weibull => ([Some(0), Some(1), Some(1), Some(1)], [0.0; 4]),
            Family::Exponential => ([Some(0), None, None, None], [0.0; 4]),
            Family::HalfNormal => ([Some(0), None, None, None], [0.0, ln2, ln2, 0.0]),
        }
    }

    pub(crate) fn to_params(self, phi: &[f64]) -> Result<FigParams> {
        let (rows, offset) = self.layout();
        let mut p = [0.0; 4];
        for i in 0..4 {
            let l = offset[i] + rows[i].map_or(0.0, |j| phi[j]);
            p[i] = l.exp();
        }
        FigParams::from_array(p)
    }

    /// Free coordinates of `params`; errors if it violates the family's
    /// constraints.
    pub(crate) fn to_phi(self, params: &FigParams) -> Result<Vec<f64>> {
        let (rows, offset) = self.layout();
        let full = params.to_array().map(f64::ln);
        let mut phi = vec![f64::NAN; self.n_params()];
        for i in 0..4 {
            match rows[i] {
                Some(j) if phi[j].is_nan() => phi[j] = full[i] - offset[i],
                Some(j) if (phi[j] - (full[i] - offset[i])).abs() > 1e-12 => {
                    return Err(domain(format!("parameters are not in the {} family", self.name())));
                }
                None if (full[i] - offset[i]).abs() > 1e-12 => {
                    return Err(domain(format!("parameters are not in the {} family", self.name())));
                }
                _ => {}
            }
        }
        Ok(phi)
    }

    /// Chain rule from the full log-parameter gradient to the free one.
    pub(crate) fn project_gradient(self, full: &[f64; 4]) -> Vec<f64> {
        let (rows, _) = self.layout();
        let mut g = vec![0.0; self.n_params()];
        for i in 0..4 {
            if let Some(j) = rows[i] {
                g[j] += full[i];
            }
        }
        g
    }

    /// Covariance of `ln θ` from the covariance of `φ`, diagonal only.
    pub(crate) fn log_param_variances(self, cov_phi: &nalgebra::DMatrix<f64>) -> [f64; 4] {
        let (rows, _) = self.layout();
        rows.map(|r| r.map_or(0.0, |j| cov_phi[(j, j)]))
    }

    /// Closed-form or moment-based starting point.
    pub(crate) fn initial(self, data: &[f64]) -> Result<FigParams> {
        let n = data.len() as f64;
        let mean = data.iter().sum::<f64>() / n;
        let var = data.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        match self {
            Family::Exponential => FigParams::new(mean, 1.0, 1.0, 1.0),
            Family::HalfNormal => {
                let m2 = data.iter().map(|x| x * x).sum::<f64>() / n;
                FigParams::new((2.0 * m2).sqrt(), 2.0, 2.0, 1.0)
            }
            Family::Gamma | Family::Gg | Family::Fig => {
                if !(var > 0.0) {
                    return Err(FigError::Data("sample has zero variance".into()));
                }
                FigParams::new(var / mean, 1.0, 1.0, mean * mean / var)
            }
            Family::Weibull => {
                let logs: Vec<f64> = data.iter().map(|x| x.ln()).collect();
                let lm = logs.iter().sum::<f64>() / n;
                let lv = logs.iter().map(|l| (l - lm).powi(2)).sum::<f64>() / n;
                if !(lv > 0.0) {
                    return Err(FigError::Data("sample has zero variance".into()));
                }
                let k = std::f64::consts::PI / (6.0 * lv).sqrt();
                FigParams::new((lm + EULER_GAMMA / k).exp(), k, k, k)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FigError;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .or(match key.as_str() {
                "generalized_gamma" | "generalised_gamma" => Some(Family::Gg),
                "exp" => Some(Family::Exponential),
                "halfnormal" => Some(Family::HalfNormal),
                _ => None,
            })
            .ok_or_else(|| domain(format!("unknown family {s:?}")))
    }
}
