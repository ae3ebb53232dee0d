/// Dense uniform grid search for the maximiser of `f` on `[lo, hi]`
/// using `points` evaluations. Returns `(argmax, max)`.
pub fn grid_argmax<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    assert!(points >= 2 && hi > lo);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..points {
        let x = lo + step * i as f64;
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Fixed-iteration bisection for a root of `f` in `[lo, hi]`; `f(lo)` and
/// `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, iterations: usize) -> f64 {
    let f_lo = f(lo);
    assert!(f_lo * f(hi) <= 0.0, "root not bracketed");
    let lo_negative = f_lo < 0.0;
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
