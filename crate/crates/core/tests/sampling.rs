use figdist::sampler::{sample_fig, sample_fig_invcdf, sample_gamma, sample_gg};
use figdist::{specfun, FigParams, GgParams};
use figdist_oracle::{ks_critical_value, ks_statistic, ks_two_sample, ks_two_sample_critical_value};

const N: usize = 100_000;

fn mean_and_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn small_shape_gamma_ks() {
    let x = sample_gamma(0.3, N, 17).unwrap();
    let d = ks_statistic(&x, |v| specfun::regularized_gamma(0.3, v).unwrap().0).unwrap();
    assert!(d < ks_critical_value(N, 0.01).unwrap(), "D = {d}");
}

#[test]
fn gg_moments() {
    let g = GgParams::new(2.0, 1.5, 3.0).unwrap();
    let x = sample_gg(&g, N, 5).unwrap();
    let (m1, se1) = mean_and_se(&x);
    assert!((m1 - g.raw_moment(1.0).unwrap()).abs() < 3.0 * se1);
    let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
    let (m2, se2) = mean_and_se(&sq);
    assert!((m2 - g.raw_moment(2.0).unwrap()).abs() < 3.0 * se2);
    let d = ks_statistic(&x, |v| g.cdf(v).unwrap()).unwrap();
    assert!(d < ks_critical_value(N, 0.01).unwrap());
}

#[test]
fn fig_mean_matches_moment() {
    let p = FigParams::new(1.0, 2.0, 2.0, 3.0).unwrap();
    let x = sample_fig(&p, N, 23).unwrap();
    let (m, se) = mean_and_se(&x);
    assert!((m - p.mean()).abs() < 3.0 * se);
}

#[test]
fn mixture_matches_inverse_cdf() {
    let p = FigParams::new(3.0, 0.8, 1.3, 0.6).unwrap();
    let a = sample_fig(&p, N, 31).unwrap();
    let b = sample_fig_invcdf(&p, N, 32).unwrap();
    let d = ks_two_sample(&a, &b).unwrap();
    assert!(d < ks_two_sample_critical_value(N, N, 0.01).unwrap(), "D = {d}");
}

#[test]
fn inverse_cdf_second_moment() {
    let p = FigParams::new(1.0, 4.0, 2.0, 2.0).unwrap();
    let x = sample_fig_invcdf(&p, N, 41).unwrap();
    let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
    let (m2, se) = mean_and_se(&sq);
    assert!((m2 - p.raw_moment(2.0).unwrap()).abs() < 3.0 * se);
}

#[test]
fn submodel_streams_match_textbook_samplers() {
    // FIG Weibull(k) against k-th roots of exponentials.
    let k = 1.7;
    let p = FigParams::new(1.0, k, k, k).unwrap();
    let fig = sample_fig(&p, N, 51).unwrap();
    let textbook: Vec<f64> = sample_gamma(1.0, N, 52).unwrap().iter().map(|e| e.powf(1.0 / k)).collect();
    let d = ks_two_sample(&fig, &textbook).unwrap();
    assert!(d < ks_two_sample_critical_value(N, N, 0.01).unwrap(), "D = {d}");
}
