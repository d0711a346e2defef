//! Outward-rounded interval arithmetic on MPFR floats.
//!
//! Every real-valued quantity in this crate travels as a [`BoundedValue`],
//! a pair `[lo, hi]` guaranteed to enclose the true value. All operations
//! round `lo` toward negative infinity and `hi` toward positive infinity,
//! so enclosures never lie.

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound, SubAssignRound};
use rug::{Float, Integer, Rational};
use std::fmt;

/// A real number carried as a guaranteed enclosure `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedValue {
    lo: Float,
    hi: Float,
}

impl BoundedValue {
    /// Exact zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        BoundedValue {
            lo: Float::with_val(prec, 0),
            hi: Float::with_val(prec, 0),
        }
    }

    /// Encloses an exact integer value.
    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        BoundedValue { lo, hi }
    }

    pub fn from_u64(prec: u32, v: u64) -> Self {
        Self::from_integer(prec, &Integer::from(v))
    }

    /// Encloses an exact rational value.
    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let lo = Float::with_val_round(prec, q, Round::Down).0;
        let hi = Float::with_val_round(prec, q, Round::Up).0;
        BoundedValue { lo, hi }
    }

    /// Encloses an `f64` treated as exact (the caller vouches for it).
    pub fn from_f64(prec: u32, v: f64) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        BoundedValue { lo, hi }
    }

    /// Builds an interval from endpoints; panics if `lo > hi`.
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "inverted interval: {} > {}", lo, hi);
        BoundedValue { lo, hi }
    }

    /// Enclosure of `ln v` for a positive integer.
    pub fn ln_u64(prec: u32, v: u64) -> Self {
        assert!(v > 0);
        let mut lo = Float::with_val(prec, v);
        let mut hi = lo.clone();
        lo.ln_round(Round::Down);
        hi.ln_round(Round::Up);
        BoundedValue { lo, hi }
    }

    /// Enclosure of the natural log of a positive exact rational.
    pub fn ln_rational(prec: u32, q: &Rational) -> Self {
        assert!(*q > 0);
        let mut lo = Float::with_val_round(prec, q, Round::Down).0;
        let mut hi = Float::with_val_round(prec, q, Round::Up).0;
        lo.ln_round(Round::Down);
        hi.ln_round(Round::Up);
        BoundedValue { lo, hi }
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec()
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((self.lo.to_f64() + self.hi.to_f64()) / 2.0).clamp(self.lo.to_f64(), self.hi.to_f64())
    }

    /// Whether `x` could be the f64 rounding of a value in the interval;
    /// endpoints are rounded outward to f64 so enclosures tighter than
    /// f64 resolution still accept their own reference literal.
    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo.to_f64_round(Round::Down) <= x && x <= self.hi.to_f64_round(Round::Up)
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    pub fn contains(&self, other: &BoundedValue) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &BoundedValue) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `Some(true)`/`Some(false)` when the comparison is certain, `None`
    /// when the enclosure straddles `q`.
    pub fn definitely_le_rational(&self, q: &Rational) -> Option<bool> {
        if self.hi <= *q {
            Some(true)
        } else if self.lo > *q {
            Some(false)
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &BoundedValue) -> BoundedValue {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &BoundedValue) {
        self.lo.add_assign_round(&rhs.lo, Round::Down);
        self.hi.add_assign_round(&rhs.hi, Round::Up);
    }

    pub fn sub(&self, rhs: &BoundedValue) -> BoundedValue {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo.sub_assign_round(&rhs.hi, Round::Down);
        hi.sub_assign_round(&rhs.lo, Round::Up);
        BoundedValue { lo, hi }
    }

    pub fn neg(&self) -> BoundedValue {
        BoundedValue {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn abs(&self) -> BoundedValue {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let prec = self.prec();
            let a = self.lo.clone().abs();
            let b = self.hi.clone().abs();
            let hi = if a > b { a } else { b };
            BoundedValue {
                lo: Float::with_val(prec, 0),
                hi,
            }
        }
    }

    /// Full outward-rounded product; correct for any sign combination.
    pub fn mul(&self, rhs: &BoundedValue) -> BoundedValue {
        let prec = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (x, y) in pairs {
            let mut d = Float::with_val(prec, x);
            d.mul_assign_round(y, Round::Down);
            let mut u = Float::with_val(prec, x);
            u.mul_assign_round(y, Round::Up);
            lo = Some(match lo {
                Some(cur) if cur <= d => cur,
                _ => d,
            });
            hi = Some(match hi {
                Some(cur) if cur >= u => cur,
                _ => u,
            });
        }
        BoundedValue {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Scales by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> BoundedValue {
        let prec = self.prec();
        self.mul(&BoundedValue::from_rational(prec, q))
    }

    pub fn mul_u64(&self, k: u64) -> BoundedValue {
        let prec = self.prec();
        self.mul(&BoundedValue::from_u64(prec, k))
    }

    /// Division; requires the divisor enclosure to exclude zero.
    pub fn div(&self, rhs: &BoundedValue) -> BoundedValue {
        assert!(
            rhs.lo > 0 || rhs.hi < 0,
            "division by an interval containing zero"
        );
        let prec = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (x, y) in pairs {
            let mut d = Float::with_val(prec, x);
            d.div_assign_round(y, Round::Down);
            let mut u = Float::with_val(prec, x);
            u.div_assign_round(y, Round::Up);
            lo = Some(match lo {
                Some(cur) if cur <= d => cur,
                _ => d,
            });
            hi = Some(match hi {
                Some(cur) if cur >= u => cur,
                _ => u,
            });
        }
        BoundedValue {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Square root; requires `lo >= 0`.
    pub fn sqrt(&self) -> BoundedValue {
        assert!(self.lo >= 0, "sqrt of an interval below zero");
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo.sqrt_round(Round::Down);
        hi.sqrt_round(Round::Up);
        BoundedValue { lo, hi }
    }

    /// Re-rounds to a (usually lower) precision, keeping the enclosure valid.
    pub fn with_prec(&self, prec: u32) -> BoundedValue {
        let lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        BoundedValue { lo, hi }
    }

    /// Floor when unambiguous: both endpoints share the same floor.
    pub fn unambiguous_floor(&self) -> Option<Integer> {
        let lo = self.lo.clone().floor().to_integer()?;
        let hi = self.hi.clone().floor().to_integer()?;
        (lo == hi).then_some(lo)
    }
}

impl fmt::Display for BoundedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.e}, {:.e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}
