use figdist::{BtnParams, FigParams, GgParams, SubModel};
use figdist_oracle::{bisect, grid_argmax, integrate};

fn quad<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let r = integrate(f, lo, hi, 1e-14, 1e-12);
    assert!(r.converged, "oracle quadrature did not converge: {r:?}");
    r.value
}

/// `∫₀^∞`, split at `mid` so the origin singularity and the tail are
/// handled separately.
fn quad_positive<F: Fn(f64) -> f64>(f: F, mid: f64) -> f64 {
    quad(&f, 0.0, mid) + quad(&f, mid, f64::INFINITY)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn normalising_constant_by_quadrature() {
    let p = FigParams::new(1.0, 2.0, 3.0, 1.5).unwrap();
    let kernel = |z: f64| 1.5 * z.powf(0.5) * figdist::specfun::upper_incomplete_gamma(2.0 / 3.0, z.powi(3)).unwrap();
    let mass = quad_positive(kernel, 1.0);
    let expected = kernel(0.8) / mass;
    assert!(rel(p.pdf(0.8).unwrap(), expected) < 1e-10);
}

#[test]
fn cdf_against_quadrature() {
    let p = FigParams::new(1.0, 2.0, 2.0, 3.0).unwrap();
    let area = quad(|t| p.pdf(t).unwrap(), 0.0, 1.2);
    assert!((p.cdf(1.2).unwrap() - area).abs() < 1e-8);
}

#[test]
fn quantile_against_bisection() {
    let p = FigParams::new(2.0, 3.0, 1.5, 0.8).unwrap();
    let oracle = bisect(|x| p.cdf(x).unwrap() - 0.99, 1e-6, 1e3, 200);
    let got = p.quantile(0.99).unwrap();
    assert!(rel(got, oracle) < 1e-10, "{got} vs {oracle}");
    assert!((p.cdf(got).unwrap() - 0.99).abs() < 1e-10);
    for x in [0.3, 1.0, 2.5, 6.0] {
        assert!(rel(p.quantile(p.cdf(x).unwrap()).unwrap(), x) < 1e-8);
    }
}

#[test]
fn second_moment_against_quadrature() {
    let p = FigParams::new(1.0, 2.5, 1.2, 0.7).unwrap();
    let m2 = quad_positive(|x| x * x * p.pdf(x).unwrap(), 1.0);
    assert!(rel(p.raw_moment(2.0).unwrap(), m2) < 1e-6);
}

#[test]
fn scale_equivariance_of_moments() {
    let unit = FigParams::new(1.0, 2.5, 1.2, 0.7).unwrap();
    let scaled = unit.with_sigma(3.7).unwrap();
    for r in [0.5, 1.0, 2.0, 3.0, 4.0] {
        let expected = 3.7f64.powf(r) * unit.raw_moment(r).unwrap();
        assert!(rel(scaled.raw_moment(r).unwrap(), expected) < 1e-14);
    }
}

#[test]
fn mode_against_grid() {
    let p = FigParams::new(1.0, 4.0, 2.0, 2.0).unwrap();
    let (_, best) = grid_argmax(|z| p.pdf(z).unwrap(), 1e-5, 10.0, 1_000_000);
    let m = p.mode().unwrap();
    assert!(rel(p.pdf(m).unwrap(), best) < 1e-8);
    assert!(p.pdf(m).unwrap() >= best * (1.0 - 1e-12));
}

#[test]
fn unimodal_along_grid() {
    let p = FigParams::new(1.0, 0.7, 2.5, 3.0).unwrap();
    let values: Vec<f64> = (1..20_000).map(|i| p.pdf(i as f64 * 2e-4).unwrap()).collect();
    let peak = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    for w in values[..=peak].windows(2) {
        assert!(w[1] >= w[0] - 1e-12);
    }
    for w in values[peak..].windows(2) {
        assert!(w[1] <= w[0] + 1e-12);
    }
}

#[test]
fn btn_moment_against_quadrature() {
    let b = BtnParams::new(3.0, 1.5).unwrap();
    let m = quad_positive(|z| z.powf(2.2) * b.half_pdf(z).unwrap(), 1.0);
    assert!(rel(b.abs_moment(2.2).unwrap(), m) < 1e-9);
    let mass = quad_positive(|z| b.half_pdf(z).unwrap(), 1.0);
    assert!((mass - 1.0).abs() < 1e-10);
}

#[test]
fn gg_normalised() {
    let g = GgParams::new(1.0, 2.0, 3.0).unwrap();
    let mass = quad_positive(|x| g.pdf(x).unwrap(), 1.0);
    assert!((mass - 1.0).abs() < 1e-10);
}

#[test]
fn power_weighting_identity() {
    for (a, b, nu) in [(2.0, 3.0, 1.5), (0.6, 1.1, 2.5), (4.0, 0.8, 4.0)] {
        let fig = FigParams::standard(a, b, nu).unwrap();
        let btn = BtnParams::new(a, b).unwrap();
        let m = btn.abs_moment(nu - 1.0).unwrap();
        for z in [0.05f64, 0.4, 1.0, 2.3, 5.0] {
            let expected = z.powf(nu - 1.0) * btn.half_pdf(z).unwrap() / m;
            assert!(rel(fig.pdf(z).unwrap(), expected) < 1e-10);
        }
    }
}

#[test]
fn weibull_textbook() {
    let k = 1.7;
    let w = FigParams::from_submodel(SubModel::Weibull { scale: 1.0, shape: k }).unwrap();
    for i in 1..=100 {
        let x = i as f64 * 0.04;
        let expected = k * x.powf(k - 1.0) * (-x.powf(k)).exp();
        assert!(rel(w.pdf(x).unwrap(), expected) < 1e-10, "x={x}");
    }
}

#[test]
fn mgf_against_quadrature() {
    let p = FigParams::new(1.0, 2.0, 2.0, 2.0).unwrap();
    // Tail truncated where the cdf reaches 1 − 1e−14.
    let upper = p.quantile(1.0 - 1e-14).unwrap();
    let oracle = quad(|x| x.exp() * p.pdf(x).unwrap(), 0.0, upper);
    let got = p.mgf(1.0, figdist::MgfMethod::Quadrature, 0).unwrap().value;
    assert!(rel(got, oracle) < 1e-9, "{got} vs {oracle}");
}
