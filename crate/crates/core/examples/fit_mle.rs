//! Maximum-likelihood fit with standard errors.

use figdist::mle::{fit, FitOptions};
use figdist::sampler::sample_fig;
use figdist::FigParams;

fn main() -> figdist::Result<()> {
    let truth = FigParams::new(1.0, 2.0, 2.0, 2.0)?;
    let data = sample_fig(&truth, 5000, 3)?;
    let result = fit(&data, &FitOptions::default())?;
    println!("converged {} after {} iterations, |grad| {:.2e}", result.converged, result.iterations, result.gradient_norm);
    println!("loglik {:.6}", result.loglik);
    let se = result.standard_errors.unwrap_or([f64::NAN; 4]);
    for ((name, est), (t, e)) in ["sigma", "alpha", "beta", "nu"].iter().zip(result.params.to_array()).zip(truth.to_array().into_iter().zip(se)) {
        println!("{name:>5}: {est:.4} ± {e:.4} (true {t})");
    }
    Ok(())
}
