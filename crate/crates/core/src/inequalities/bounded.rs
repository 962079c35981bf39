//! First-order error propagation for the two sides of an inequality.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::mathieu::Evaluation;

const EPS: f64 = f64::EPSILON;

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bounded {
    pub v: f64,
    pub e: f64,
}

impl Bounded {
    pub(crate) fn exact(v: f64) -> Self {
        Self { v, e: 0.0 }
    }

    pub(crate) fn new(v: f64, e: f64) -> Self {
        Self { v, e: e.abs() }
    }

    pub(crate) fn rel(v: f64, rel: f64) -> Self {
        Self { v, e: rel * v.abs() }
    }

    fn rounded(v: f64, e: f64) -> Self {
        Self { v, e: e + EPS * v.abs() }
    }

    /// x^a for x > 0 and an exact exponent.
    pub(crate) fn powf(self, a: f64) -> Self {
        let v = self.v.powf(a);
        // the derivative bound is taken at the worse end of the interval
        let lo = (self.v - self.e).max(self.v * 0.5);
        let slope = (a * lo.powf(a - 1.0)).abs().max((a * (self.v + self.e).powf(a - 1.0)).abs());
        Self::rounded(v, slope * self.e + 2.0 * EPS * v.abs())
    }

    pub(crate) fn exp(self) -> Self {
        let v = self.v.exp();
        Self::rounded(v, (self.v + self.e).exp() * self.e)
    }

    pub(crate) fn scale(self, c: f64) -> Self {
        Self::rounded(c * self.v, c.abs() * self.e)
    }
}

impl From<Evaluation> for Bounded {
    fn from(e: Evaluation) -> Self {
        Self { v: e.value, e: e.err_bound }
    }
}

impl Add for Bounded {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::rounded(self.v + o.v, self.e + o.e)
    }
}

impl Sub for Bounded {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::rounded(self.v - o.v, self.e + o.e)
    }
}

impl Neg for Bounded {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, e: self.e }
    }
}

impl Mul for Bounded {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let e = self.v.abs() * o.e + o.v.abs() * self.e + self.e * o.e;
        Self::rounded(self.v * o.v, e)
    }
}

impl Div for Bounded {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = self.v / o.v;
        // |a/b − â/b̂| ≤ (e_a + |a/b| e_b) / (|b| − e_b)
        let den = (o.v.abs() - o.e).max(0.5 * o.v.abs());
        Self::rounded(v, (self.e + v.abs() * o.e) / den)
    }
}
