//! Scalar abstractions: probabilities that may be exact rationals, and
//! floating views of big counts.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A probability value: either a float or an exact rational.
pub trait Probability:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    const EXACT: bool;
    /// 1/c represented exactly where possible.
    fn reciprocal_count(c: u64) -> Self {
        Self::one() / Self::from_count(c)
    }
    fn from_count(c: u64) -> Self;
    /// Tuned probabilities are irrational; exact types reject them.
    fn from_real(x: f64) -> Result<Self>;
    fn to_f64(&self) -> f64;
    fn ln(&self) -> f64;
}

impl Probability for f64 {
    const EXACT: bool = false;
    fn from_count(c: u64) -> Self {
        c as f64
    }
    fn from_real(x: f64) -> Result<Self> {
        Ok(x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
}

impl Probability for f32 {
    const EXACT: bool = false;
    fn from_count(c: u64) -> Self {
        c as f32
    }
    fn from_real(x: f64) -> Result<Self> {
        Ok(x as f32)
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn ln(&self) -> f64 {
        (*self as f64).ln()
    }
}

impl Probability for BigRational {
    const EXACT: bool = true;
    fn from_count(c: u64) -> Self {
        BigRational::from_integer(BigInt::from(c))
    }
    fn from_real(_x: f64) -> Result<Self> {
        Err(Error::Unsupported(
            "exact rational mode requires the uniform choice rule".into(),
        ))
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn ln(&self) -> f64 {
        ln_biguint(&self.numer().magnitude().clone()) - ln_biguint(self.denom().magnitude())
    }
}

/// Float value of a big rational without overflow in the intermediate parts.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.numer() < &BigInt::zero() { -1.0 } else { 1.0 };
    sign * (ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())).exp()
}

/// Natural log of a big unsigned integer, accurate to a few ulps at any size.
pub fn ln_biguint(x: &BigUint) -> f64 {
    Scaled::from_biguint(x).ln()
}

/// A positive number m·2^e with m in [1, 2); used for ratios of huge counts
/// without losing relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: f64,
    pub e: i64,
}

impl Scaled {
    pub fn from_biguint(x: &BigUint) -> Scaled {
        let bits = x.bits() as i64;
        if bits == 0 {
            return Scaled { m: 0.0, e: 0 };
        }
        let shift = (bits - 64).max(0);
        let top = (x >> (shift as usize)).to_u64().expect("64-bit window");
        // top has exactly min(bits, 64) significant bits
        let m = top as f64 / 2f64.powi((bits - shift - 1) as i32);
        Scaled { m, e: bits - 1 }
    }

    pub fn ln(&self) -> f64 {
        self.m.ln() + self.e as f64 * std::f64::consts::LN_2
    }

    pub fn mul(self, o: Scaled) -> Scaled {
        Scaled { m: self.m * o.m, e: self.e + o.e }.norm()
    }

    pub fn div(self, o: Scaled) -> Scaled {
        Scaled { m: self.m / o.m, e: self.e - o.e }.norm()
    }

    fn norm(self) -> Scaled {
        if self.m == 0.0 {
            return self;
        }
        let (mut m, mut e) = (self.m, self.e);
        while m >= 2.0 {
            m /= 2.0;
            e += 1;
        }
        while m < 1.0 {
            m *= 2.0;
            e -= 1;
        }
        Scaled { m, e }
    }

    /// Plain float value (may over/underflow).
    pub fn to_f64(self) -> f64 {
        self.m * pow2(self.e)
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e < -1022 {
        2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        2f64.powi(e as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_matches_small_values() {
        for v in [1u64, 2, 3, 5, 1 << 40, u64::MAX] {
            let s = Scaled::from_biguint(&BigUint::from(v));
            assert!((s.to_f64() - v as f64).abs() <= 1e-15 * v as f64);
        }
    }

    #[test]
    fn ln_of_huge_power() {
        let x = BigUint::from(3u32).pow(5000);
        let l = ln_biguint(&x);
        assert!((l - 5000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rational_probability() {
        let p = BigRational::reciprocal_count(6);
        assert_eq!(p.clone() * BigRational::from_count(6), BigRational::one());
        assert!((Probability::to_f64(&p) - 1.0 / 6.0).abs() < 1e-16);
        assert!(BigRational::from_real(0.5).is_err());
    }
}
