//! Exact affine maps x -> (3^M x + c) / 2^L.
//!
//! These carry the cumulative transformation data of an n-fold Syracuse
//! iterate: M counts the odd steps, L is the number of steps, and the
//! offset is a dyadic rational whose denominator exponent never exceeds L.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::dyadic::DyadicRational;
use crate::Natural;

/// x -> (3^odd_count / 2^length) x + offset, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    odd_count: u64,
    length: u64,
    offset: DyadicRational,
}

impl AffineMap {
    /// The offset must fit over the denominator 2^length.
    pub fn new(odd_count: u64, length: u64, offset: DyadicRational) -> Self {
        debug_assert!(
            offset.log2_denominator() <= length,
            "offset denominator 2^{} exceeds map length {}",
            offset.log2_denominator(),
            length
        );
        Self {
            odd_count,
            length,
            offset,
        }
    }

    pub fn odd_count(&self) -> u64 {
        self.odd_count
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn offset(&self) -> &DyadicRational {
        &self.offset
    }

    fn pow3(&self) -> BigUint {
        BigUint::from(3u8).pow(u32::try_from(self.odd_count).expect("odd count fits u32"))
    }

    fn pow2(&self) -> BigUint {
        BigUint::one() << self.length
    }

    /// The principal factor 3^M / 2^L as a reduced rational.
    pub fn principal(&self) -> BigRational {
        BigRational::new(BigInt::from(self.pow3()), BigInt::from(self.pow2()))
    }

    /// True iff 3^M > 2^L, decided by exact integer comparison. The two
    /// powers are never equal for L >= 1.
    pub fn is_expanding(&self) -> bool {
        self.pow3() > self.pow2()
    }

    /// The integer c with offset = c / 2^L.
    pub fn offset_over_length(&self) -> BigInt {
        self.offset.numerator() << (self.length - self.offset.log2_denominator())
    }

    /// (3^M x + c) / 2^L as a dyadic rational over 2^L.
    pub fn apply(&self, x: &Natural) -> DyadicRational {
        let num = BigInt::from(self.pow3() * x) + self.offset_over_length();
        DyadicRational::new(num, self.length)
    }

    /// The applied value when it is a nonnegative integer, which holds
    /// whenever the map is the transformation data of an actual trajectory
    /// applied to its own starting term.
    pub fn apply_integer(&self, x: &Natural) -> Option<Natural> {
        self.apply(x).to_integer().and_then(|v| v.to_biguint())
    }

    /// The unique solution of x = (3^M x + c) / 2^L, absent only in the
    /// degenerate case 2^L = 3^M (that is, L = M = 0).
    pub fn fixed_point(&self) -> Option<BigRational> {
        let den = BigInt::from(self.pow2()) - BigInt::from(self.pow3());
        if den == BigInt::ZERO {
            return None;
        }
        Some(BigRational::new(self.offset_over_length(), den))
    }
}
