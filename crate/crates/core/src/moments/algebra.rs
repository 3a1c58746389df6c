//! Evaluation rings for the moment recurrences.
//!
//! Recurrences act on x_n = sum over matchings of E[T^t]. Float rings work
//! with x_n / M_n^{1+t}, so the jet at t = 0 is (1, L, E log^2(T/M)) and
//! the value at t = 1 is the relative variance criterion E[T^2]/M^2. The
//! exact ring evaluates raw x_n at t = 1.

use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, One};

use super::jet::Jet2;
use crate::scalar::Scaled;

/// Base of a power b^t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Base {
    Int(u64),
    Real(f64),
}

impl Base {
    fn value(self) -> f64 {
        match self {
            Base::Int(b) => b as f64,
            Base::Real(b) => b,
        }
    }
}

pub trait Algebra {
    type E: Clone + Add<Output = Self::E> + Sub<Output = Self::E> + Mul<Output = Self::E>;
    fn cst(&self, num: i64, den: i64) -> Self::E;
    fn pow_t(&self, b: Base) -> Self::E;
    /// (prod_{a in num} M_a / M_den)^{1+t}; one in the exact ring.
    fn ratio(&self, num: &[usize], den: usize) -> Self::E;
    fn div_n(&self, x: Self::E, n: usize) -> Self::E;
    fn zero(&self) -> Self::E {
        self.cst(0, 1)
    }
    fn one(&self) -> Self::E {
        self.cst(1, 1)
    }
}

/// Family counts M_0..=M_n as (mantissa, exponent, log).
#[derive(Debug, Clone)]
pub struct CountTable {
    m: Vec<f64>,
    e: Vec<i64>,
    ln: Vec<f64>,
}

impl CountTable {
    pub fn new(counts: &[BigUint]) -> Self {
        let s: Vec<Scaled> = counts.iter().map(Scaled::from_biguint).collect();
        CountTable {
            m: s.iter().map(|x| x.m).collect(),
            e: s.iter().map(|x| x.e).collect(),
            ln: s.iter().map(|x| x.ln()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn ln_count(&self, k: usize) -> f64 {
        self.ln[k]
    }

    /// (r, log r) for r = prod M_a / M_den.
    pub fn ratio(&self, num: &[usize], den: usize) -> (f64, f64) {
        let mut mant = 1.0 / self.m[den];
        let mut e = -self.e[den];
        for &a in num {
            mant *= self.m[a];
            e += self.e[a];
        }
        let ln = mant.ln() + e as f64 * std::f64::consts::LN_2;
        let r = if e.abs() < 1000 { mant * 2f64.powi(e as i32) } else { ln.exp() };
        (r, ln)
    }
}

/// Jets in t at t = 0, normalized.
pub struct JetAlg<'c, S> {
    pub counts: &'c CountTable,
    _s: std::marker::PhantomData<S>,
}

impl<'c, S: Float> JetAlg<'c, S> {
    pub fn new(counts: &'c CountTable) -> Self {
        JetAlg { counts, _s: std::marker::PhantomData }
    }
}

fn sf<S: Float>(x: f64) -> S {
    S::from(x).expect("float conversion")
}

impl<S: Float> Algebra for JetAlg<'_, S> {
    type E = Jet2<S>;
    fn cst(&self, num: i64, den: i64) -> Jet2<S> {
        Jet2::constant(sf::<S>(num as f64) / sf::<S>(den as f64))
    }
    fn pow_t(&self, b: Base) -> Jet2<S> {
        Jet2::pow_t_ln(sf(b.value().ln()))
    }
    fn ratio(&self, num: &[usize], den: usize) -> Jet2<S> {
        let (r, l) = self.counts.ratio(num, den);
        Jet2::pow_t_ln(sf(l)).scale(sf(r))
    }
    fn div_n(&self, x: Jet2<S>, n: usize) -> Jet2<S> {
        x.scale(S::one() / sf(n as f64))
    }
}

/// Real values at a fixed t, normalized.
pub struct RealAlg<'c> {
    pub counts: &'c CountTable,
    pub t: f64,
}

impl Algebra for RealAlg<'_> {
    type E = f64;
    fn cst(&self, num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }
    fn pow_t(&self, b: Base) -> f64 {
        b.value().powf(self.t)
    }
    fn ratio(&self, num: &[usize], den: usize) -> f64 {
        let (r, l) = self.counts.ratio(num, den);
        r * (self.t * l).exp()
    }
    fn div_n(&self, x: f64, n: usize) -> f64 {
        x / n as f64
    }
}

/// Exact rationals at t = 1, unnormalized. Only integer bases are allowed.
pub struct ExactAlg;

impl Algebra for ExactAlg {
    type E = BigRational;
    fn cst(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn pow_t(&self, b: Base) -> BigRational {
        match b {
            Base::Int(v) => BigRational::from_integer(BigInt::from(v)),
            Base::Real(_) => panic!("exact evaluation needs integer bases"),
        }
    }
    fn ratio(&self, _num: &[usize], _den: usize) -> BigRational {
        BigRational::one()
    }
    fn div_n(&self, x: BigRational, n: usize) -> BigRational {
        x / BigRational::from_integer(BigInt::from(n))
    }
}
