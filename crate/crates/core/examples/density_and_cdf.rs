//! Density, distribution function, quantiles and moments.

use figdist::FigParams;

fn main() -> figdist::Result<()> {
    let p = FigParams::new(1.5, 2.0, 1.5, 2.5)?;
    println!("x\tpdf\tcdf\tsf");
    for x in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let (cdf, sf) = p.cdf_sf(x)?;
        println!("{x}\t{:.6e}\t{cdf:.12}\t{sf:.6e}", p.pdf(x)?);
    }
    for q in [0.01, 0.5, 0.99] {
        println!("quantile({q}) = {:.10}", p.quantile(q)?);
    }
    println!("mean {:.8}, variance {:.8}", p.mean(), p.variance());
    println!("skewness {:.6}, kurtosis {:.6}", p.skewness(), p.kurtosis());
    println!("E[X^2.5] = {:.8}", p.raw_moment(2.5)?);
    println!("mode {:.10}", p.mode()?);
    Ok(())
}
