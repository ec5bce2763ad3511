//! Exact rational numbers with a machine-word fast path.
//!
//! Values small enough to fit a reduced `i64 / i64` fraction are kept inline and
//! promoted to arbitrary precision only when an operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact rational number, always reduced with a positive denominator.
#[derive(Clone)]
pub enum BigRat {
    /// Reduced fraction with `den > 0`.
    Small { num: i64, den: i64 },
    /// Arbitrary-precision fallback, never representable as `Small`.
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl BigRat {
    /// Zero.
    pub fn zero() -> Self {
        BigRat::Small { num: 0, den: 1 }
    }

    /// One.
    pub fn one() -> Self {
        BigRat::Small { num: 1, den: 1 }
    }

    /// The integer `n`.
    pub fn from_int(n: i64) -> Self {
        BigRat::Small { num: n, den: 1 }
    }

    /// The fraction `n / d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    /// Builds a reduced value from an `i128` fraction.
    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Self::zero();
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) if num != i64::MIN => BigRat::Small { num, den },
            _ => BigRat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    /// Builds a value from an arbitrary-precision rational, demoting when possible.
    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return BigRat::Small { num: n, den: d };
            }
        }
        BigRat::Big(r)
    }

    /// Builds a value from an arbitrary-precision integer.
    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    /// Arbitrary-precision view of the value.
    pub fn to_big(&self) -> BigRational {
        match self {
            BigRat::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            BigRat::Big(r) => r.clone(),
        }
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        matches!(self, BigRat::Small { num: 0, .. })
    }

    /// True for one.
    pub fn is_one(&self) -> bool {
        matches!(self, BigRat::Small { num: 1, den: 1 })
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        match self {
            BigRat::Small { den, .. } => *den == 1,
            BigRat::Big(r) => r.is_integer(),
        }
    }

    /// True for strictly negative values.
    pub fn is_negative(&self) -> bool {
        match self {
            BigRat::Small { num, .. } => *num < 0,
            BigRat::Big(r) => r.is_negative(),
        }
    }

    /// Numerator as an arbitrary-precision integer.
    pub fn numer(&self) -> BigInt {
        match self {
            BigRat::Small { num, .. } => BigInt::from(*num),
            BigRat::Big(r) => r.numer().clone(),
        }
    }

    /// Denominator as an arbitrary-precision integer (always positive).
    pub fn denom(&self) -> BigInt {
        match self {
            BigRat::Small { den, .. } => BigInt::from(*den),
            BigRat::Big(r) => r.denom().clone(),
        }
    }

    /// Integer value when the number is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            BigRat::Small { num, den: 1 } => Some(*num),
            _ => None,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        match self {
            BigRat::Small { num, den } => {
                assert!(*num != 0, "reciprocal of zero");
                Self::from_i128(*den as i128, *num as i128)
            }
            BigRat::Big(r) => Self::from_big(r.recip()),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact `n`-th root when the value is a perfect `n`-th power of a rational.
    pub fn exact_root(&self, n: u32) -> Option<Self> {
        if n == 1 {
            return Some(self.clone());
        }
        let num = self.numer();
        let den = self.denom();
        if num.is_negative() && n.is_multiple_of(2) {
            return None;
        }
        let rn = num.abs().nth_root(n);
        let rd = den.nth_root(n);
        if num::pow_big(&rn, n) != num.abs() || num::pow_big(&rd, n) != den {
            return None;
        }
        let rn = if num.is_negative() { -rn } else { rn };
        Some(Self::from_big(BigRational::new(rn, rd)))
    }
}

mod num {
    use num_bigint::BigInt;
    use num_traits::One;

    pub fn pow_big(b: &BigInt, e: u32) -> BigInt {
        let mut r = BigInt::one();
        for _ in 0..e {
            r *= b;
        }
        r
    }
}

impl Default for BigRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for BigRat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BigRat::Small { num: a, den: b }, BigRat::Small { num: c, den: d }) => {
                a == c && b == d
            }
            (BigRat::Big(x), BigRat::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for BigRat {}

impl Hash for BigRat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            BigRat::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            BigRat::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for BigRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BigRat::Small { num: a, den: b }, BigRat::Small { num: c, den: d }) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn add(self, rhs: &BigRat) -> BigRat {
        match (self, rhs) {
            (BigRat::Small { num: a, den: b }, BigRat::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        if s != i64::MIN {
                            return BigRat::Small { num: s, den: 1 };
                        }
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(n) => BigRat::from_i128(n, z),
                        None => BigRat::from_big(self.to_big() + rhs.to_big()),
                    },
                    _ => BigRat::from_big(self.to_big() + rhs.to_big()),
                }
            }
            _ => BigRat::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn sub(self, rhs: &BigRat) -> BigRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    fn mul(self, rhs: &BigRat) -> BigRat {
        match (self, rhs) {
            (BigRat::Small { num: a, den: b }, BigRat::Small { num: c, den: d }) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        if p != i64::MIN {
                            return BigRat::Small { num: p, den: 1 };
                        }
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(c), b.checked_mul(d)) {
                    (Some(n), Some(z)) => BigRat::from_i128(n, z),
                    _ => BigRat::from_big(self.to_big() * rhs.to_big()),
                }
            }
            _ => BigRat::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a BigRat> for &'a BigRat {
    type Output = BigRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &BigRat) -> BigRat {
        self * &rhs.recip()
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        match self {
            BigRat::Small { num, den } => BigRat::Small {
                num: -num,
                den: *den,
            },
            BigRat::Big(r) => BigRat::from_big(-r.clone()),
        }
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: BigRat) -> BigRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigRat> for BigRat {
            type Output = BigRat;
            fn $m(self, rhs: &BigRat) -> BigRat {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_int(n)
    }
}

impl From<BigInt> for BigRat {
    fn from(n: BigInt) -> Self {
        BigRat::from_bigint(n)
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigRat::Small { num, den: 1 } => write!(f, "{num}"),
            BigRat::Small { num, den } => write!(f, "{num}/{den}"),
            BigRat::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            BigRat::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRatError {}

impl FromStr for BigRat {
    type Err = ParseRatError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRatError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRat::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = BigRat::new(2, 4);
        assert_eq!(a, BigRat::new(1, 2));
        assert_eq!(&a + &a, BigRat::one());
        assert_eq!(&a * &BigRat::from_int(4), BigRat::from_int(2));
        assert_eq!(BigRat::new(-3, -6), BigRat::new(1, 2));
        assert_eq!(BigRat::new(1, -2).to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = BigRat::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, BigRat::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, BigRat::Small { .. }));
    }

    #[test]
    fn parse_and_roots() {
        let r: BigRat = "-27/8".parse().unwrap();
        assert_eq!(r.exact_root(3), Some(BigRat::new(-3, 2)));
        assert_eq!(BigRat::from_int(2).exact_root(2), None);
        assert_eq!(BigRat::new(2, 3).pow(-2), BigRat::new(9, 4));
    }
}
