//! Exact scalars of the form `coeff * sqrt(base)^half_exp`.
//!
//! Every scalar produced by diagram evaluation is a rational number times a
//! half-integer power of the loop parameter, so this small class is closed
//! under everything the library does. Values are kept in a canonical form:
//! the base is square-free and `half_exp` is 0 or 1, which makes structural
//! equality coincide with numeric equality.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot add {0} and {1}: different irrational parts")]
    Inhomogeneous(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("base must be positive")]
    ZeroBase,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    coeff: BigRational,
    base: u64,
    half_exp: i32,
}

/// Splits `b` as `s^2 * r` with `r` square-free.
fn square_split(mut b: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut r = 1u64;
    let mut p = 2u64;
    while p * p <= b {
        let mut e = 0;
        while b % p == 0 {
            b /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (s, r * b)
}

fn rat_pow(b: u64, e: i32) -> BigRational {
    let p = BigInt::from(b).pow(e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl ExactScalar {
    /// `coeff * sqrt(base)^half_exp`, canonicalized.
    pub fn new(coeff: BigRational, base: u64, half_exp: i32) -> Result<Self, ScalarError> {
        if base == 0 {
            return Err(ScalarError::ZeroBase);
        }
        let mut s = ExactScalar { coeff, base, half_exp };
        s.canonicalize();
        Ok(s)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(coeff: BigRational) -> Self {
        ExactScalar { coeff, base: 1, half_exp: 0 }
    }

    /// `sqrt(base)^half_exp`.
    pub fn sqrt_power(base: u64, half_exp: i32) -> Self {
        Self::new(BigRational::one(), base.max(1), half_exp).expect("positive base")
    }

    fn canonicalize(&mut self) {
        if self.coeff.is_zero() {
            self.base = 1;
            self.half_exp = 0;
            return;
        }
        let q = self.half_exp.div_euclid(2);
        let r = self.half_exp.rem_euclid(2);
        if q != 0 {
            self.coeff = &self.coeff * rat_pow(self.base, q);
        }
        self.half_exp = r;
        if r == 1 {
            let (s, free) = square_split(self.base);
            if s > 1 {
                self.coeff = &self.coeff * BigRational::from_integer(s.into());
            }
            self.base = free;
        }
        if self.base == 1 {
            self.half_exp = 0;
        }
        if self.half_exp == 0 {
            self.base = 1;
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    /// Square-free base (1 when the value is rational).
    pub fn base(&self) -> u64 {
        self.base
    }

    /// 0 or 1 in canonical form.
    pub fn half_exp(&self) -> i32 {
        self.half_exp
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.half_exp == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.coeff)
    }

    /// Integer value, if the scalar is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        c * (self.base as f64).sqrt().powi(self.half_exp)
    }

    /// Same irrational part, so the two values can be added.
    pub fn same_class(&self, other: &Self) -> bool {
        self.is_zero() || other.is_zero() || (self.base == other.base && self.half_exp == other.half_exp)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.same_class(other) {
            return Err(ScalarError::Inhomogeneous(self.to_string(), other.to_string()));
        }
        let mut s = ExactScalar {
            coeff: &self.coeff + &other.coeff,
            base: self.base,
            half_exp: self.half_exp,
        };
        s.canonicalize();
        Ok(s)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other.clone())
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // 1/(c sqrt b) = sqrt b / (c b)
        let mut s = ExactScalar {
            coeff: self.coeff.recip() * rat_pow(self.base, -self.half_exp),
            base: self.base,
            half_exp: self.half_exp,
        };
        s.canonicalize();
        Ok(s)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.coeff *= BigRational::from_integer(k.into());
        s.canonicalize();
        s
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::one()
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let (base, half_exp) = match (self.half_exp, rhs.half_exp) {
            (0, _) => (rhs.base, rhs.half_exp),
            (_, 0) => (self.base, self.half_exp),
            _ => (self.base * rhs.base, 1),
        };
        let mut s = ExactScalar { coeff: &self.coeff * &rhs.coeff, base, half_exp };
        s.canonicalize();
        s
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.recip().expect("division by zero scalar")
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(mut self) -> ExactScalar {
        self.coeff = -self.coeff;
        self
    }
}

impl fmt::Display for ExactScalar {
    /// `p/q` or `p/q*sqrt(b)`; the integer denominator is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.half_exp == 1 {
            write!(f, "*sqrt({})", self.base)?;
        }
        Ok(())
    }
}

impl FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let (c, root) = match s.split_once("*sqrt(") {
            Some((c, rest)) => {
                let b = rest.strip_suffix(')').ok_or_else(bad)?;
                (c, Some(b.trim().parse::<u64>().map_err(|_| bad())?))
            }
            None => (s, None),
        };
        let coeff: BigRational = c.trim().parse().map_err(|_| bad())?;
        match root {
            Some(b) => ExactScalar::new(coeff, b, 1),
            None => Ok(ExactScalar::from_rational(coeff)),
        }
    }
}
