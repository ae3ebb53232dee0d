//! Acceptance suite. Prints one `PASS`, `FAIL` or `SKIP` line per
//! criterion. The exit status is zero unless `FIGDIST_ACCEPTANCE_STRICT`
//! is set and some criterion failed.
//!
//! Criterion 12 reads user-supplied data from `FIGDIST_DANISH_CSV` and
//! `FIGDIST_GRIP_CSV` (first column unless `*_COLUMN` says otherwise).

use std::time::Instant;

use figdist::dataset::{detect_header, ingest_csv, Column};
use figdist::eval;
use figdist::mle::{self, Family, FitOptions};
use figdist::sampler::{sample_fig, sample_fig_invcdf};
use figdist::specfun::upper_incomplete_gamma;
use figdist::{BtnParams, FigParams, GgParams, MgfMethod, SubModel};
use figdist_oracle::{
    finite_difference_gradient, grid_argmax, integrate, ks_critical_value, ks_statistic, ks_two_sample,
    ks_two_sample_critical_value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::ln_gamma;

const SIGMAS: [f64; 3] = [0.5, 1.0, 3.0];
const ALPHAS: [f64; 3] = [0.5, 1.0, 4.0];
const BETAS: [f64; 3] = [0.7, 1.0, 2.5];
const NUS: [f64; 3] = [0.6, 1.0, 3.0];

enum Verdict {
    Pass,
    Fail,
    Skip,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn judge(ok: bool, detail: String) -> Outcome {
    Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail }
}

fn grid() -> Vec<FigParams> {
    let mut cells = Vec::with_capacity(81);
    for s in SIGMAS {
        for a in ALPHAS {
            for b in BETAS {
                for n in NUS {
                    cells.push(FigParams::new(s, a, b, n).unwrap());
                }
            }
        }
    }
    cells
}

fn label(p: &FigParams) -> String {
    let [s, a, b, n] = p.to_array();
    format!("({s}, {a}, {b}, {n})")
}

fn quad<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64, String> {
    let r = integrate(f, lo, hi, 1e-15, 1e-13);
    if r.converged {
        Ok(r.value)
    } else {
        Err(format!("oracle quadrature on [{lo}, {hi}] did not converge (estimate {:e})", r.error_estimate))
    }
}

/// `∫₀^∞ f`, split at the increasing `cuts`.
fn quad_split<F: Fn(f64) -> f64>(f: F, cuts: &[f64]) -> Result<f64, String> {
    let mut total = 0.0;
    let mut lo = 0.0;
    for &c in cuts {
        total += quad(&f, lo, c)?;
        lo = c;
    }
    Ok(total + quad(&f, lo, f64::INFINITY)?)
}

fn pdf_fn(p: &FigParams) -> impl Fn(f64) -> f64 + '_ {
    move |x| p.pdf(x).unwrap()
}

fn normalization() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0, String::new());
    for p in grid() {
        let cuts = [p.quantile(0.5).unwrap(), p.quantile(0.99).unwrap()];
        let mass = match quad_split(pdf_fn(&p), &cuts) {
            Ok(m) => m,
            Err(e) => return judge(false, format!("{}: {e}", label(&p))),
        };
        if (mass - 1.0).abs() >= worst.0 {
            worst = ((mass - 1.0).abs(), label(&p));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    judge(
        worst.0 < 1e-8 && secs < 30.0,
        format!("max |mass - 1| = {:.2e} at {} over 81 cells, {secs:.1} s", worst.0, worst.1),
    )
}

fn cdf_closed_form() -> Outcome {
    let mut worst = (0.0, String::new());
    for p in grid() {
        let mut area = 0.0;
        let mut lo = 0.0;
        for k in 0..20 {
            let x = p.quantile((k as f64 + 0.5) / 20.0).unwrap();
            area += match quad(pdf_fn(&p), lo, x) {
                Ok(v) => v,
                Err(e) => return judge(false, format!("{}: {e}", label(&p))),
            };
            lo = x;
            let err = (p.cdf(x).unwrap() - area).abs();
            if err >= worst.0 {
                worst = (err, format!("{} at x = {x:.4}", label(&p)));
            }
        }
    }
    judge(worst.0 <= 1e-8, format!("max |cdf - integral| = {:.2e} at {}, 20 points x 81 cells", worst.0, worst.1))
}

fn moment_formula() -> Outcome {
    let mut worst = (0.0, String::new());
    for p in grid() {
        for r in [0.5, 1.0, 2.0, 3.0, 4.0] {
            let closed = p.raw_moment(r).unwrap();
            let centre = closed.powf(1.0 / r);
            let cuts = [p.quantile(0.5).unwrap().min(centre), centre.max(p.quantile(0.5).unwrap()), 4.0 * centre];
            let q = match quad_split(|x| x.powf(r) * p.pdf(x).unwrap(), &cuts) {
                Ok(v) => v,
                Err(e) => return judge(false, format!("{} r = {r}: {e}", label(&p))),
            };
            let err = (closed - q).abs() / q.abs();
            if err >= worst.0 {
                worst = (err, format!("{} r = {r}", label(&p)));
            }
        }
    }
    judge(worst.0 <= 1e-6, format!("max relative error {:.2e} at {}", worst.0, worst.1))
}

type Textbook = (&'static str, SubModel, Box<dyn Fn(f64) -> f64>);

fn textbook_pdfs() -> Vec<Textbook> {
    use std::f64::consts::PI;
    let gamma_pdf = |k: f64, theta: f64| move |x: f64| ((k - 1.0) * x.ln() - x / theta - ln_gamma(k) - k * theta.ln()).exp();
    vec![
        ("exponential", SubModel::Exponential { rate: 1.7 }, Box::new(|x: f64| 1.7 * (-1.7 * x).exp())),
        ("gamma", SubModel::Gamma { shape: 2.3, scale: 0.8 }, Box::new(gamma_pdf(2.3, 0.8))),
        ("chi-squared", SubModel::ChiSquared { df: 5.0 }, Box::new(gamma_pdf(2.5, 2.0))),
        (
            "weibull",
            SubModel::Weibull { scale: 1.3, shape: 1.7 },
            Box::new(|x: f64| 1.7 / 1.3 * (x / 1.3).powf(0.7) * (-(x / 1.3).powf(1.7)).exp()),
        ),
        (
            "half-normal",
            SubModel::HalfNormal { sigma: 0.9 },
            Box::new(|x: f64| (2.0 / PI).sqrt() / 0.9 * (-x * x / (2.0 * 0.81)).exp()),
        ),
        ("rayleigh", SubModel::Rayleigh { sigma: 1.4 }, Box::new(|x: f64| x / 1.96 * (-x * x / (2.0 * 1.96)).exp())),
        (
            "maxwell-boltzmann",
            SubModel::MaxwellBoltzmann { a: 1.1 },
            Box::new(|x: f64| (2.0 / PI).sqrt() * x * x / 1.1f64.powi(3) * (-x * x / (2.0 * 1.21)).exp()),
        ),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn gg_reduction() -> Outcome {
    let mut gg_worst: f64 = 0.0;
    for (a, p, d) in [(1.0, 2.0, 3.0), (0.5, 0.7, 0.6), (3.0, 2.5, 1.0), (1.5, 1.0, 4.0)] {
        let gg = GgParams::new(a, p, d).unwrap();
        let fig = FigParams::new(a, p, p, d).unwrap();
        for i in 1..=100 {
            let x = a * i as f64 * 0.04;
            gg_worst = gg_worst.max(rel(fig.pdf(x).unwrap(), gg.pdf(x).unwrap()));
        }
    }
    let mut parts = vec![format!("GG {gg_worst:.1e}")];
    let mut ok = gg_worst <= 1e-10;
    for (name, model, textbook) in textbook_pdfs() {
        let p = FigParams::from_submodel(model).unwrap();
        let worst = (1..=100).map(|i| rel(p.pdf(i as f64 * 0.05).unwrap(), textbook(i as f64 * 0.05))).fold(0.0, f64::max);
        ok &= worst <= 1e-10;
        parts.push(format!("{name} {worst:.1e}"));
    }
    judge(ok, format!("max relative error: {}", parts.join(", ")))
}

fn power_weighting() -> Outcome {
    let mut worst = (0.0, String::new());
    for a in ALPHAS {
        for b in BETAS {
            let btn = BtnParams::new(a, b).unwrap();
            for nu in NUS.into_iter().filter(|n| *n > 1.0) {
                let p = FigParams::standard(a, b, nu).unwrap();
                let weighted = |z: f64| z.powf(nu - 1.0) * btn.half_pdf(z).unwrap();
                let m = match quad_split(weighted, &[1.0]) {
                    Ok(v) => v,
                    Err(e) => return judge(false, e),
                };
                let moment_err = rel(btn.abs_moment(nu - 1.0).unwrap(), m);
                if moment_err >= worst.0 {
                    worst = (moment_err, format!("BTN moment at {}", label(&p)));
                }
                for i in 1..=50 {
                    let z = i as f64 * 0.06;
                    let err = rel(p.pdf(z).unwrap(), weighted(z) / m);
                    if err >= worst.0 {
                        worst = (err, format!("{} z = {z:.2}", label(&p)));
                    }
                }
            }
        }
    }
    judge(worst.0 <= 1e-10, format!("max relative error {:.2e} at {}", worst.0, worst.1))
}

fn mode() -> Outcome {
    let mut ok = true;
    let mut zeros = 0;
    let mut worst_grid = (0.0, String::new());
    for p in grid() {
        let m = p.mode().unwrap();
        if p.nu() <= 1.0 {
            ok &= m == 0.0;
            zeros += (m == 0.0) as usize;
            continue;
        }
        let hi = p.quantile(0.999).unwrap();
        let (_, best) = grid_argmax(pdf_fn(&p), hi * 1e-6, hi, 1_000_000);
        let err = (p.pdf(m).unwrap() - best).abs() / best;
        if err >= worst_grid.0 {
            worst_grid = (err, label(&p));
        }
    }
    ok &= worst_grid.0 <= 1e-6;
    let mut worst_gg: f64 = 0.0;
    for (s, b, nu) in [(1.0, 2.0, 3.0), (2.0, 0.7, 1.5), (0.5, 2.5, 4.0), (1.0, 1.0, 2.0)] {
        let p = FigParams::new(s, b, b, nu).unwrap();
        let analytic = s * ((nu - 1.0) / b).powf(1.0 / b);
        worst_gg = worst_gg.max(rel(p.mode().unwrap(), analytic));
    }
    ok &= worst_gg <= 1e-8;
    judge(
        ok,
        format!(
            "zero mode for {zeros}/54 cells with nu <= 1; grid argmax pdf gap {:.1e} (worst {}); GG analytic mode {worst_gg:.1e}",
            worst_grid.0, worst_grid.1
        ),
    )
}

fn tail_limits() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b) in [(2.0, 2.0), (4.0, 1.5), (0.8, 1.2)] {
        let p = FigParams::standard(a, b, 2.0).unwrap();
        let left = p.gg_log_kernel_diff(1e-6).unwrap();
        let right = p.tail_residual(20.0).unwrap();
        let pass = left.abs() <= 1e-4 && right.abs() <= 1e-4;
        ok &= pass;
        parts.push(format!("({a}, {b}): d(1e-6) = {left:.3e}, residual(20) = {right:.3e} {}", if pass { "ok" } else { "out" }));
    }
    judge(ok, parts.join("; "))
}

fn sampler_sets() -> Vec<FigParams> {
    (0..9)
        .map(|m| FigParams::new(SIGMAS[m % 3], ALPHAS[m / 3], BETAS[(m + m / 3) % 3], NUS[(m + 2 * (m / 3)) % 3]).unwrap())
        .collect()
}

fn sampler_exactness() -> Outcome {
    let start = Instant::now();
    let n = 100_000;
    let crit = ks_critical_value(n, 0.01).unwrap();
    let mut ok = true;
    let mut worst = (0.0, String::new());
    let mut failures = Vec::new();
    for (i, p) in sampler_sets().iter().enumerate() {
        let sample = sample_fig(p, n, 1000 + i as u64).unwrap();
        let d = ks_statistic(&sample, |x| p.cdf(x).unwrap()).unwrap();
        if d >= crit {
            ok = false;
            failures.push(label(p));
        }
        if d >= worst.0 {
            worst = (d, label(p));
        }
    }
    let p = FigParams::new(3.0, 0.8, 1.3, 0.6).unwrap();
    let mixture = sample_fig(&p, n, 2024).unwrap();
    let inverse = sample_fig_invcdf(&p, n, 2025).unwrap();
    let d2 = ks_two_sample(&mixture, &inverse).unwrap();
    let crit2 = ks_two_sample_critical_value(n, n, 0.01).unwrap();
    ok &= d2 < crit2;
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    judge(
        ok,
        format!(
            "one-sample max D = {:.5} at {} (critical {crit:.5}){}; two-sample D = {d2:.5} (critical {crit2:.5}); {secs:.1} s",
            worst.0,
            worst.1,
            if failures.is_empty() { String::new() } else { format!(", rejected: {}", failures.join(" ")) }
        ),
    )
}

fn gradient_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let data = sample_fig(&FigParams::new(1.5, 2.0, 1.5, 1.5).unwrap(), 300, 5).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = [rng.random_range(0.5..3.0), rng.random_range(0.4..5.0), rng.random_range(0.5..3.5), rng.random_range(0.4..4.0)];
        let p = FigParams::from_array(x).unwrap();
        let g = mle::gradient(&p, &data).unwrap();
        let fd = finite_difference_gradient(
            |v| mle::log_likelihood(&FigParams::from_array([v[0], v[1], v[2], v[3]]).unwrap(), &data).unwrap(),
            &x,
            1e-6,
        )
        .unwrap();
        let scale = fd.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = g.iter().zip(&fd).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        worst = worst.max(err / scale);
    }
    judge(worst <= 1e-5, format!("max |analytic - fd|_inf / |fd|_inf = {worst:.2e} over 50 points"))
}

fn parameter_recovery() -> Outcome {
    let start = Instant::now();
    let sets = [(1.0, 2.0, 2.0, 2.0), (1.0, 3.0, 1.5, 1.2), (1.0, 2.5, 1.2, 0.8), (1.0, 4.0, 2.0, 2.0), (2.0, 3.0, 2.5, 1.5)];
    let reps = 100;
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, s) in sets.iter().enumerate() {
        let truth = FigParams::new(s.0, s.1, s.2, s.3).unwrap();
        let target = truth.to_array();
        let mut covered = 0;
        let mut unconverged = 0;
        for rep in 0..reps {
            let seed = (k * 1000 + rep) as u64;
            let data = sample_fig(&truth, 5000, seed).unwrap();
            let opts = FitOptions { n_starts: 1, seed, ..FitOptions::default() };
            let Ok(fit) = mle::fit(&data, &opts) else {
                unconverged += 1;
                continue;
            };
            unconverged += (!fit.converged) as usize;
            let Some(se) = fit.standard_errors else { continue };
            let est = fit.params.to_array();
            if fit.converged && (0..4).all(|i| (est[i] - target[i]).abs() <= 3.0 * se[i]) {
                covered += 1;
            }
        }
        let frac = covered as f64 / reps as f64;
        ok &= frac >= 0.9;
        parts.push(format!("{s:?} {covered}/{reps} (unconverged {unconverged})"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 600.0;
    judge(ok, format!("within 3 SE: {}; {secs:.0} s", parts.join(", ")))
}

fn integral_identities() -> Outcome {
    let mut worst = (0.0, String::new());
    for a in [0.5, 2.0] {
        for b in [0.7, 2.0] {
            for r in [0.5, 2.0] {
                let integrand = |t: f64| t.powf(r) * upper_incomplete_gamma(a / b, t.powf(b)).unwrap();
                let full_closed = (ln_gamma((a + r + 1.0) / b) - (r + 1.0).ln()).exp();
                let full = match quad_split(integrand, &[1.0, 5.0]) {
                    Ok(v) => v,
                    Err(e) => return judge(false, e),
                };
                let err = (full - full_closed).abs() / full_closed.max(1.0);
                if err >= worst.0 {
                    worst = (err, format!("x -> 0 limit at ({a}, {b}, {r})"));
                }
                for x in [0.1f64, 1.0, 3.0] {
                    let closed = (upper_incomplete_gamma((a + r + 1.0) / b, x.powf(b)).unwrap()
                        - x.powf(r + 1.0) * upper_incomplete_gamma(a / b, x.powf(b)).unwrap())
                        / (r + 1.0);
                    let tail = |t: f64| if t < x { 0.0 } else { integrand(t) };
                    let q = match quad_split(tail, &[x, 5.0]) {
                        Ok(v) => v,
                        Err(e) => return judge(false, e),
                    };
                    let err = (q - closed).abs() / closed.abs().max(1.0);
                    if err >= worst.0 {
                        worst = (err, format!("({a}, {b}, {r}, {x})"));
                    }
                }
            }
        }
    }
    judge(worst.0 <= 1e-8, format!("max error {:.2e} at {} over 8 (alpha, beta, r) x 4 x-values", worst.0, worst.1))
}

fn user_dataset(var: &str) -> Option<Result<figdist::Dataset, String>> {
    let path = std::env::var(var).ok()?;
    let column: Column = std::env::var(format!("{}_COLUMN", var.trim_end_matches("_CSV")))
        .ok()
        .map(|c| c.parse().unwrap())
        .unwrap_or_default();
    let load = || -> figdist::Result<figdist::Dataset> {
        let header = detect_header(std::path::Path::new(&path), &column)?;
        Ok(ingest_csv(std::path::Path::new(&path), &column, header)?.dataset)
    };
    Some(load().map_err(|e| format!("{path}: {e}")))
}

fn application_tables() -> Outcome {
    let danish = user_dataset("FIGDIST_DANISH_CSV");
    let grip = user_dataset("FIGDIST_GRIP_CSV");
    if danish.is_none() && grip.is_none() {
        return Outcome {
            verdict: Verdict::Skip,
            detail: "optional: set FIGDIST_DANISH_CSV and/or FIGDIST_GRIP_CSV to run".into(),
        };
    }
    let opts = FitOptions { holdout_fraction: 0.1, ..FitOptions::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, data) in [("danish", danish), ("grip", grip)] {
        let Some(data) = data else { continue };
        let data = match data {
            Ok(d) => d,
            Err(e) => return judge(false, e),
        };
        let reports = match eval::compare(&data, &[Family::Fig, Family::Gg], &opts) {
            Ok(r) => r,
            Err(e) => return judge(false, format!("{name}: {e}")),
        };
        let get = |f: Family| reports.iter().find(|r| r.model == f).unwrap();
        let (fig, gg) = (get(Family::Fig), get(Family::Gg));
        let (fi, gi) = (fig.loglik_in.unwrap_or(f64::NAN), gg.loglik_in.unwrap_or(f64::NAN));
        let (fo, go) = (fig.loglik_out.unwrap_or(f64::NAN), gg.loglik_out.unwrap_or(f64::NAN));
        ok &= fo >= go;
        if name == "danish" {
            ok &= (fi - -2649.058).abs() <= 2.0 && (gi - -2675.870).abs() <= 2.0;
        }
        parts.push(format!("{name} n = {}: FIG in {fi:.3} out {fo:.3}; GG in {gi:.3} out {go:.3}", data.n()));
    }
    judge(ok, parts.join("; "))
}

fn mgf_checks() -> Outcome {
    let p = FigParams::new(1.0, 2.0, 1.5, 2.5).unwrap();
    let at_zero = p.mgf(0.0, MgfMethod::Quadrature, 0).unwrap().value;
    let mut ok = at_zero == 1.0;
    let mut worst: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0] {
        let e = FigParams::new(sigma, 1.0, 1.0, 1.0).unwrap();
        for f in [-3.0, -1.0, -0.2, 0.3, 0.6, 0.9] {
            let t = f / sigma;
            let got = e.mgf(t, MgfMethod::Quadrature, 0).unwrap().value;
            worst = worst.max(rel(got, 1.0 / (1.0 - sigma * t)));
        }
    }
    ok &= worst <= 1e-10;
    let mut agreed = 0;
    let mut flagged = Vec::new();
    let mut total = 0;
    // The series converges for beta < 1; the last two sets are outside.
    let sets = [(1.0, 1.0, 0.5, 1.5), (1.0, 2.0, 0.8, 2.0), (2.0, 0.7, 0.6, 0.8), (1.0, 0.8, 1.2, 1.5), (1.0, 2.0, 2.0, 2.0)];
    for (s, a, b, n) in sets {
        let q = FigParams::new(s, a, b, n).unwrap();
        for t in [-0.2, -1.0, -5.0] {
            total += 1;
            match q.mgf_compare(t, 200) {
                Ok(c) if c.trusted => agreed += 1,
                Ok(c) if c.series.truncation_warning => flagged.push(format!("{} t = {t} truncated", label(&q))),
                Ok(c) => flagged.push(format!("{} t = {t} gap {:.1e}", label(&q), c.relative_gap)),
                Err(e) => flagged.push(format!("{} t = {t}: {e}", label(&q))),
            }
        }
    }
    judge(
        ok,
        format!(
            "M(0) = {at_zero}; exponential max relative error {worst:.1e}; series agrees with quadrature in {agreed}/{total}{}",
            if flagged.is_empty() { String::new() } else { format!(", flagged: {}", flagged.join(", ")) }
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        ("normalization", normalization),
        ("cdf closed form", cdf_closed_form),
        ("moment formula", moment_formula),
        ("GG reduction and sub-models", gg_reduction),
        ("power-weighting identity", power_weighting),
        ("mode", mode),
        ("tail limits", tail_limits),
        ("sampler exactness", sampler_exactness),
        ("gradient correctness", gradient_correctness),
        ("parameter recovery", parameter_recovery),
        ("integration-by-parts identities", integral_identities),
        ("application tables", application_tables),
        ("mgf", mgf_checks),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        let tag = match out.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed += 1;
                "FAIL"
            }
            Verdict::Skip => "SKIP",
        };
        println!("{tag} {:>2} {name}: {}", i + 1, out.detail);
    }
    println!("acceptance: {} passed or skipped, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var_os("FIGDIST_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
