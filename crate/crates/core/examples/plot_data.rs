//! Histogram and fitted density, ready for plotting.

use figdist::cli::{histogram, pdf_curve};
use figdist::mle::{fit, FitOptions};
use figdist::sampler::sample_fig;
use figdist::FigParams;

fn main() -> figdist::Result<()> {
    let data = sample_fig(&FigParams::new(2.0, 1.5, 2.0, 1.5)?, 2000, 4)?;
    let result = fit(&data, &FitOptions { n_starts: 1, standard_errors: false, ..FitOptions::default() })?;
    let bins = histogram(&data);
    println!("# {} bins", bins.len());
    for (l, r, d) in bins.iter().take(5) {
        println!("{l:.4}\t{r:.4}\t{d:.5}");
    }
    let curve = pdf_curve(&result.params)?;
    println!("# {} curve points", curve.len());
    for (x, f) in curve.iter().step_by(128) {
        println!("{x:.4}\t{f:.5}");
    }
    Ok(())
}
