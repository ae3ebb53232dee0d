//! Forward-mode dual numbers, used to differentiate the incomplete gamma
//! algorithms with respect to their shape argument.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gamma::{digamma, ln_gamma, ln_gamma_1p};

/// Scalar operations shared by `f64` and [`Dual`].
pub(crate) trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn val(self) -> f64;
    /// Magnitude of the tangent part; zero for plain floats.
    fn tangent(self) -> f64;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn ln_1p(self) -> Self;
    fn exp_m1(self) -> Self;
    fn recip(self) -> Self;
    fn ln_gamma(self) -> Self;
    fn ln_gamma_1p(self) -> Self;
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn val(self) -> f64 {
        self
    }
    fn tangent(self) -> f64 {
        0.0
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
    fn ln_gamma(self) -> Self {
        ln_gamma(self)
    }
    fn ln_gamma_1p(self) -> Self {
        ln_gamma_1p(self)
    }
}

/// `v + d·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn var(v: f64) -> Self {
        Dual { v, d: 1.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}
impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let q = self.v / o.v;
        Dual { v: q, d: (self.d - q * o.d) / o.v }
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}
impl Add<f64> for Dual {
    type Output = Dual;
    fn add(self, o: f64) -> Dual {
        Dual { v: self.v + o, d: self.d }
    }
}
impl Sub<f64> for Dual {
    type Output = Dual;
    fn sub(self, o: f64) -> Dual {
        Dual { v: self.v - o, d: self.d }
    }
}
impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, o: f64) -> Dual {
        Dual { v: self.v * o, d: self.d * o }
    }
}
impl Div<f64> for Dual {
    type Output = Dual;
    fn div(self, o: f64) -> Dual {
        Dual { v: self.v / o, d: self.d / o }
    }
}

impl Real for Dual {
    fn cst(v: f64) -> Self {
        Dual { v, d: 0.0 }
    }
    fn val(self) -> f64 {
        self.v
    }
    fn tangent(self) -> f64 {
        self.d.abs()
    }
    fn ln(self) -> Self {
        Dual { v: self.v.ln(), d: self.d / self.v }
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        Dual { v: e, d: self.d * e }
    }
    fn ln_1p(self) -> Self {
        Dual { v: self.v.ln_1p(), d: self.d / (1.0 + self.v) }
    }
    fn exp_m1(self) -> Self {
        Dual { v: self.v.exp_m1(), d: self.d * self.v.exp() }
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.v;
        Dual { v: r, d: -self.d * r * r }
    }
    fn ln_gamma(self) -> Self {
        Dual { v: ln_gamma(self.v), d: self.d * digamma(self.v) }
    }
    fn ln_gamma_1p(self) -> Self {
        Dual { v: ln_gamma_1p(self.v), d: self.d * digamma(1.0 + self.v) }
    }
}
