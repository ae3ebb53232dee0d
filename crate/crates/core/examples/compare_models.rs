//! In-sample AIC/BIC and held-out log-likelihood across families.

use figdist::eval::compare;
use figdist::mle::{Family, FitOptions};
use figdist::sampler::sample_fig;
use figdist::FigParams;

fn main() -> figdist::Result<()> {
    let data = sample_fig(&FigParams::new(1.0, 0.2, 3.0, 0.7)?, 4000, 11)?;
    let opts = FitOptions { holdout_fraction: 0.1, seed: 5, ..FitOptions::default() };
    let reports = compare(&data, &Family::ALL, &opts)?;
    println!("{:<12} {:>4} {:>12} {:>12} {:>12}", "model", "k", "AIC", "BIC", "loglik_out");
    for r in reports {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.3}"));
        println!("{:<12} {:>4} {:>12} {:>12} {:>12}", r.model.name(), r.n_params, show(r.aic), show(r.bic), show(r.loglik_out));
    }
    Ok(())
}
