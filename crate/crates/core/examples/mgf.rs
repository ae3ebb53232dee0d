//! Moment generating function by quadrature and by series.

use figdist::{FigParams, MgfMethod};

fn main() -> figdist::Result<()> {
    let e = FigParams::new(2.0, 1.0, 1.0, 1.0)?;
    for t in [-1.0, 0.1, 0.4] {
        println!("exponential M({t}) = {:.12} (closed form {:.12})", e.mgf(t, MgfMethod::Quadrature, 0)?.value, 1.0 / (1.0 - 2.0 * t));
    }

    let p = FigParams::new(1.0, 2.0, 0.8, 2.0)?;
    for t in [-0.5, -2.0] {
        let c = p.mgf_compare(t, 100)?;
        println!(
            "t = {t}: quadrature {:.10}, series {:.10}, gap {:.1e}, trusted {}",
            c.quadrature, c.series.value, c.relative_gap, c.trusted
        );
    }
    match p.mgf(0.5, MgfMethod::Quadrature, 0) {
        Ok(m) => println!("M(0.5) = {}", m.value),
        Err(err) => println!("M(0.5): {err}"),
    }
    Ok(())
}
