//! Second-order jets in the moment parameter t at t = 0.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, One, Zero};
use serde::Serialize;

/// Value, first and second t-derivative at t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2<S> {
    pub v0: S,
    pub v1: S,
    pub v2: S,
}

impl<S: Float> Jet2<S> {
    pub fn new(v0: S, v1: S, v2: S) -> Self {
        Jet2 { v0, v1, v2 }
    }

    pub fn constant(c: S) -> Self {
        Jet2 { v0: c, v1: S::zero(), v2: S::zero() }
    }

    /// c^t = (1, log c, log^2 c).
    pub fn pow_t(c: S) -> Self {
        let l = c.ln();
        Jet2 { v0: S::one(), v1: l, v2: l * l }
    }

    /// c^{k t} for integer k.
    pub fn pow_kt(c: S, k: i32) -> Self {
        Self::pow_t(c.powi(k))
    }

    /// c^t from log c (for c outside the float range).
    pub fn pow_t_ln(l: S) -> Self {
        Jet2 { v0: S::one(), v1: l, v2: l * l }
    }

    pub fn scale(self, s: S) -> Self {
        Jet2 { v0: self.v0 * s, v1: self.v1 * s, v2: self.v2 * s }
    }

    pub fn recip(self) -> Self {
        let inv = S::one() / self.v0;
        let two = S::one() + S::one();
        Jet2 {
            v0: inv,
            v1: -self.v1 * inv * inv,
            v2: (two * self.v1 * self.v1 * inv - self.v2) * inv * inv,
        }
    }

    /// log of the jet (v0 > 0).
    pub fn ln(self) -> Self {
        let d1 = self.v1 / self.v0;
        Jet2 { v0: self.v0.ln(), v1: d1, v2: self.v2 / self.v0 - d1 * d1 }
    }

    pub fn to_f64(self) -> Jet2<f64> {
        Jet2 {
            v0: self.v0.to_f64().unwrap_or(f64::NAN),
            v1: self.v1.to_f64().unwrap_or(f64::NAN),
            v2: self.v2.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl<S: Float> Add for Jet2<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet2 { v0: self.v0 + o.v0, v1: self.v1 + o.v1, v2: self.v2 + o.v2 }
    }
}

impl<S: Float> Sub for Jet2<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet2 { v0: self.v0 - o.v0, v1: self.v1 - o.v1, v2: self.v2 - o.v2 }
    }
}

impl<S: Float> Neg for Jet2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet2 { v0: -self.v0, v1: -self.v1, v2: -self.v2 }
    }
}

impl<S: Float> Mul for Jet2<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = S::one() + S::one();
        Jet2 {
            v0: self.v0 * o.v0,
            v1: self.v0 * o.v1 + self.v1 * o.v0,
            v2: self.v0 * o.v2 + two * self.v1 * o.v1 + self.v2 * o.v0,
        }
    }
}

impl<S: Float> Div for Jet2<S> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<S: Float> Zero for Jet2<S> {
    fn zero() -> Self {
        Self::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }
}

impl<S: Float> One for Jet2<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(f: impl Fn(f64) -> f64) -> (f64, f64, f64) {
        let h = 1e-4;
        let (a, b, c) = (f(-h), f(0.0), f(h));
        (b, (c - a) / (2.0 * h), (c - 2.0 * b + a) / (h * h))
    }

    fn close(j: Jet2<f64>, f: (f64, f64, f64)) {
        for (x, y) in [(j.v0, f.0), (j.v1, f.1), (j.v2, f.2)] {
            assert!((x - y).abs() <= 1e-7 * y.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn product_and_chain_rules() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        for c in [2.0, 3.0, phi, 1.839_286_755_214_161, 2.333_554_225_170_089] {
            close(Jet2::pow_t(c), fd(|t| c.powf(t)));
            let j = Jet2::pow_t(c) * Jet2::pow_t(2.0) + Jet2::constant(3.0) * Jet2::pow_t(c);
            close(j, fd(|t| c.powf(t) * 2f64.powf(t) + 3.0 * c.powf(t)));
            let q = Jet2::constant(1.0) / (Jet2::constant(1.0) + Jet2::pow_t(c));
            close(q, fd(|t| 1.0 / (1.0 + c.powf(t))));
            close(Jet2::pow_t(c).ln(), fd(|t| t * c.ln()));
        }
    }

    #[test]
    fn single_precision() {
        let j: Jet2<f32> = Jet2::pow_t(2.0f32) * Jet2::pow_t(3.0f32);
        assert!((j.v1 - 6f32.ln()).abs() < 1e-6);
    }
}
