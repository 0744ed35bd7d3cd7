//! Ring operations used by the elimination kernels.
//!
//! Every operation is fallible so the same kernel can run on checked `i64`
//! (returning `None` on overflow) and on `BigInt` (never failing). Callers try
//! the machine-word path first and rerun on `BigInt` when it bails out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Scalar: Clone + std::fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// Truncating quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self -= q * x`
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()>;
    /// `self += q * x`
    fn add_mul(&mut self, q: &Self, x: &Self) -> Option<()>;
    fn to_bigint(&self) -> BigInt;
    fn from_bigint(v: &BigInt) -> Option<Self>;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self = self.checked_sub(q.checked_mul(*x)?)?;
        Some(())
    }
    fn add_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self = self.checked_add(q.checked_mul(*x)?)?;
        Some(())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self -= q * x;
        Some(())
    }
    fn add_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self += q * x;
        Some(())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// Extended gcd: returns `(g, x, y)` with `g = a·x + b·y ≥ 0`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if Signed::is_negative(&e.gcd) {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub(crate) fn convert_rows<T: Scalar>(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    rows.iter()
        .map(|r| r.iter().map(T::from_bigint).collect::<Option<Vec<T>>>())
        .collect()
}
