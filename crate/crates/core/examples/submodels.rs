//! Named distributions as FIG parameter sets.

use figdist::{FigParams, SubModel};

fn main() -> figdist::Result<()> {
    let models = [
        SubModel::Exponential { rate: 2.0 },
        SubModel::Gamma { shape: 3.0, scale: 0.5 },
        SubModel::ChiSquared { df: 4.0 },
        SubModel::Weibull { scale: 1.0, shape: 1.7 },
        SubModel::HalfNormal { sigma: 1.0 },
        SubModel::Rayleigh { sigma: 1.0 },
        SubModel::MaxwellBoltzmann { a: 1.0 },
        SubModel::GeneralizedGamma { a: 1.0, p: 2.0, d: 3.0 },
        SubModel::HalfBodyTailNormal { sigma: 1.0, alpha: 3.0, beta: 1.5 },
        SubModel::HalfGeneralizedNormal { sigma: 1.0, s: 1.2 },
    ];
    for m in models {
        let p = FigParams::from_submodel(m)?;
        let [s, a, b, n] = p.to_array();
        println!("{m:?}\n  sigma={s:.6} alpha={a} beta={b} nu={n}  mean={:.6}", p.mean());
    }
    if let Err(e) = FigParams::from_submodel(SubModel::Uniform) {
        println!("uniform: {e}");
    }
    Ok(())
}
