//! Exact dyadic rationals: integers divided by a power of two.
//!
//! These carry the Walsh spectra, parity-basis coefficients and measurement
//! angle multiples exactly, so determinism checks reduce to integer parity
//! tests instead of floating-point tolerances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `numerator / 2^exp`, kept canonical: the numerator is odd or zero, and
/// zero is stored with exponent 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new<T: Into<BigInt>>(num: T, exp: u32) -> Self {
        let mut d = Dyadic { num: num.into(), exp };
        d.canonicalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic { num: v.into(), exp: 0 }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_even_integer(&self) -> bool {
        self.exp == 0 && self.num.is_even()
    }

    pub fn is_odd_integer(&self) -> bool {
        self.exp == 0 && self.num.is_odd()
    }

    /// Divide by `2^k`.
    pub fn halve_n(&self, k: u32) -> Self {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { num: self.num.clone(), exp: self.exp + k }
    }

    pub fn scale_int<T: Into<BigInt>>(&self, v: T) -> Self {
        Dyadic::new(&self.num * v.into(), self.exp)
    }

    pub fn abs(&self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    /// Reduce the value modulo 2 into the half-open interval (-1, 1].
    pub fn reduce_mod2(&self) -> Self {
        let modulus = BigInt::one() << (self.exp + 1);
        let half = BigInt::one() << self.exp;
        let r = self.num.mod_floor(&modulus);
        let num = if r <= half { r } else { r - modulus };
        Dyadic::new(num, self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// Exact conversion from a rational; fails when the reduced denominator
    /// is not a power of two.
    pub fn try_from_rational(r: &BigRational) -> Option<Self> {
        let mut den = r.denom().clone();
        let mut exp = 0u32;
        while den.is_even() {
            den /= 2;
            exp += 1;
        }
        if den.is_one() {
            Some(Dyadic::new(r.numer().clone(), exp))
        } else {
            None
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = &self.num << other.exp;
        let rhs = &other.num << self.exp;
        lhs.cmp(&rhs)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = &self.num << (exp - self.exp);
        let b = &rhs.num << (exp - rhs.exp);
        Dyadic::new(a + b, exp)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}
