//! Dyadic rationals: exact values of the form m / 2^k.
//!
//! The cumulative transformation offsets live over the denominator 2^n by
//! construction, so values are stored as written (numerator plus a power
//! of two exponent) and are only reduced when two values are compared,
//! hashed into canonical parts, or rendered.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact m / 2^k. Construction keeps the pair as given; equality and
/// ordering compare values, so `6/4` and `3/2` are equal.
#[derive(Clone, Debug)]
pub struct DyadicRational {
    num: BigInt,
    log2_den: u64,
}

impl DyadicRational {
    pub fn new(numerator: BigInt, log2_denominator: u64) -> Self {
        Self {
            num: numerator,
            log2_den: log2_denominator,
        }
    }

    pub fn from_integer<T: Into<BigInt>>(value: T) -> Self {
        Self::new(value.into(), 0)
    }

    pub fn zero() -> Self {
        Self::new(BigInt::zero(), 0)
    }

    /// Numerator as stored (not reduced).
    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Denominator exponent as stored (not reduced).
    pub fn log2_denominator(&self) -> u64 {
        self.log2_den
    }

    /// Denominator as stored, 2^k.
    pub fn denominator(&self) -> BigUint {
        BigUint::one() << self.log2_den
    }

    /// The reduced form: numerator odd or exponent zero; zero is 0/1.
    pub fn canonical(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.log2_den);
        Self::new(&self.num >> shift, self.log2_den - shift)
    }

    pub fn is_integer(&self) -> bool {
        self.canonical().log2_den == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let c = self.canonical();
        (c.log2_den == 0).then_some(c.num)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::from(self.denominator()))
    }

    /// Numerators over the common denominator 2^max(k1, k2).
    fn aligned(&self, other: &Self) -> (BigInt, BigInt) {
        let k = self.log2_den.max(other.log2_den);
        (
            &self.num << (k - self.log2_den),
            &other.num << (k - other.log2_den),
        )
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }
}

impl PartialEq for DyadicRational {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a == b
    }
}

impl Eq for DyadicRational {}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.cmp(&b)
    }
}

impl std::ops::Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b) = self.aligned(rhs);
        DyadicRational::new(a + b, self.log2_den.max(rhs.log2_den))
    }
}

impl std::ops::Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b) = self.aligned(rhs);
        DyadicRational::new(a - b, self.log2_den.max(rhs.log2_den))
    }
}

impl std::ops::Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        DyadicRational::new(&self.num * &rhs.num, self.log2_den + rhs.log2_den)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.log2_den == 0 {
            write!(f, "{}", c.num)
        } else {
            write!(f, "{}/{}", c.num, c.denominator())
        }
    }
}
