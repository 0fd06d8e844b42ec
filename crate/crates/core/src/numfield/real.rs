//! Real embedding of field elements: exact sign determination and decimal
//! approximation with certified error bounds.
//!
//! Every radical takes its positive real value. Signs are decided by the
//! exact zero test first, then by enclosing each basis radical in a dyadic
//! interval from integer square roots and doubling the precision until the
//! sum interval excludes zero.

use alloc::string::{String, ToString};
use core::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldElement;

/// A decimal approximation together with a certified error bound:
/// `|value - true| <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealApprox {
    pub value: BigRational,
    pub bound: BigRational,
}

impl RealApprox {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with `digits` fractional digits.
    pub fn decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (&self.value * BigRational::from_integer(scale.clone())).round();
        let negative = scaled.is_negative();
        let mag = scaled.to_integer().magnitude().clone();
        let whole = &mag / scale.magnitude();
        let frac = &mag % scale.magnitude();
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        let _ = write!(out, "{whole}");
        if digits > 0 {
            let frac_str = frac.to_string();
            out.push('.');
            for _ in 0..(digits as usize - frac_str.len()) {
                out.push('0');
            }
            out.push_str(&frac_str);
        }
        out
    }
}

/// Encloses `sqrt(n)` in a dyadic interval of width `2^-bits`.
fn sqrt_interval(n: &BigUint, bits: u32) -> (BigRational, BigRational) {
    let denom = BigUint::one() << bits;
    let lo_num = (n * (&denom * &denom)).sqrt();
    let lo = BigRational::new(BigInt::from(lo_num.clone()), BigInt::from(denom.clone()));
    let hi = BigRational::new(BigInt::from(lo_num + BigUint::one()), BigInt::from(denom));
    (lo, hi)
}

impl FieldElement {
    /// Interval `[lo, hi]` enclosing the real value, radicals refined to
    /// `2^-bits`.
    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (mask, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask == 0 {
                lo += c;
                hi += c;
                continue;
            }
            let (rlo, rhi) = sqrt_interval(self.field().basis_radicand(mask), bits);
            if c.is_negative() {
                lo += c * &rhi;
                hi += c * &rlo;
            } else {
                lo += c * &rlo;
                hi += c * &rhi;
            }
        }
        (lo, hi)
    }

    /// Exact sign under the real embedding: `-1`, `0` or `+1`.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_negative() { -1 } else { 1 };
        }
        let mut bits = 16u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            // The element is nonzero, so the shrinking interval eventually
            // excludes zero.
            bits *= 2;
        }
    }

    /// Approximation with `|value - true| <= bound <= 10^-digits`.
    pub fn to_real(&self, digits: u32) -> RealApprox {
        let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let half = (&hi - &lo) / BigRational::from_integer(2.into());
            if half <= target {
                return RealApprox {
                    value: (lo + hi) / BigRational::from_integer(2.into()),
                    bound: half,
                };
            }
            bits *= 2;
        }
    }

    /// Double-precision value (approximated well beyond f64 resolution).
    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        self.to_real(19).to_f64()
    }
}
