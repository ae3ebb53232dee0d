//! Complete gamma function, its logarithm and the digamma function.


use std::sync::OnceLock;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// ζ(k) − 1 for k = 2..=ZETA_TERMS+1, Euler–Maclaurin summed once.
const ZETA_TERMS: usize = 40;

fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; ZETA_TERMS];
        let big_n = 40.0_f64;
        for (i, slot) in out.iter_mut().enumerate() {
            let k = (i + 2) as f64;
            // Sum the small terms last.
            let mut head = 0.0;
            for n in (2..40).rev() {
                head += (n as f64).powf(-k);
            }
            let tail = big_n.powf(1.0 - k) / (k - 1.0) + 0.5 * big_n.powf(-k) + k * big_n.powf(-k - 1.0) / 12.0
                - k * (k + 1.0) * (k + 2.0) * big_n.powf(-k - 3.0) / 720.0
                + k * (k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0) * big_n.powf(-k - 5.0) / 30240.0;
            *slot = head + tail;
        }
        out
    })
}

/// `ln Γ(1 + e)` for `|e| <= 0.5`, accurate near the zero at `e = 0`.
pub(crate) fn ln_gamma_1p(e: f64) -> f64 {
    if e.abs() > 0.5 {
        return ln_gamma(1.0 + e);
    }
    let table = zeta_minus_one();
    let mut sum = 0.0;
    // Horner from the top down in powers of e.
    for k in (2..ZETA_TERMS + 2).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum = sum * e + sign * table[k - 2] / k as f64;
    }
    -e.ln_1p() + e * (1.0 - EULER_GAMMA) + sum * e * e
}

fn stirling_ln_gamma(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            + r2 * (-1.0 / 360.0
                + r2 * (1.0 / 1260.0
                    + r2 * (-1.0 / 1680.0
                        + r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360_360.0 + r2 * (1.0 / 156.0)))))));
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `ln Γ(x)` for `x > 0`. Returns NaN outside the domain; the checked
/// public wrapper lives in the parent module.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        // Γ(x) = Γ(1 + x) / x
        return ln_gamma_1p(x) - x.ln();
    }
    if x < 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x < 2.5 {
        let e = x - 2.0;
        return e.ln_1p() + ln_gamma_1p(e);
    }
    if x >= 10.0 {
        return stirling_ln_gamma(x);
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 10.0 {
        product *= shifted;
        shifted += 1.0;
    }
    stirling_ln_gamma(shifted) - product.ln()
}

/// `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub(crate) fn digamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let r = 1.0 / y;
    let r2 = r * r;
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    acc + y.ln() - 0.5 * r - series
}

/// `Γ(x)` for `x > 0`; overflows to `+∞` above ~171.6.
pub(crate) fn gamma(x: f64) -> f64 {
    if x > 0.0 && x < 1e-8 {
        // Γ(x) ≈ 1/x − γ near zero.
        return 1.0 / x - EULER_GAMMA;
    }
    ln_gamma(x).exp()
}
