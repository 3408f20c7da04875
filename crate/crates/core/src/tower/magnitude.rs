//! Iterated-logarithm magnitudes.
//!
//! A [`Magnitude`] of height `h` with top interval `[a, b]` encloses the
//! values `E^h(a) ..= E^h(b)`, where `E(x) = 10^x`. Height 0 is a plain real
//! interval.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};

use super::interval::Interval;

/// Height-0 tops are lifted once their integer part needs more bits.
const MAX_MATERIALIZED_BITS: u64 = 1 << 17;

/// Tops of positive height at or below this are lowered back.
const LOWER_THRESHOLD: i64 = 1024;

/// A height-0 addend this small is negligible next to a magnitude whose top
/// exceeds `NEGLIGIBLE_TOP` at height 1 or more.
const NEGLIGIBLE_BITS: u64 = 64;
const NEGLIGIBLE_TOP: i64 = 64;

/// `log10(1 + t)` for `|t| <= 2^-148` lies within this many ulps of 0.
fn negligible_ulps() -> BigInt {
    BigInt::from(1u8) << (super::interval::PREC - 100)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Magnitude {
    pub(crate) height: u32,
    pub(crate) top: Interval,
}

impl Magnitude {
    pub(crate) fn exact(n: &BigUint) -> Magnitude {
        Magnitude {
            height: 0,
            top: Interval::from_biguint(n),
        }
    }

    fn at(height: u32, top: Interval) -> Option<Magnitude> {
        Magnitude { height, top }.normalized()
    }

    fn normalized(mut self) -> Option<Magnitude> {
        while self.height >= 1 && self.top.hi_at_most(LOWER_THRESHOLD) {
            self.top = self.top.exp10()?;
            self.height -= 1;
        }
        if self.height == 0 && self.top.integer_bits() > MAX_MATERIALIZED_BITS {
            self.top = self.top.log10()?;
            self.height = 1;
        }
        Some(self)
    }

    pub(crate) fn log10(&self) -> Option<Magnitude> {
        if self.height >= 1 {
            Magnitude::at(self.height - 1, self.top.clone())
        } else {
            Magnitude::at(0, self.top.log10()?)
        }
    }

    pub(crate) fn exp10(&self) -> Option<Magnitude> {
        Magnitude::at(self.height + 1, self.top.clone())
    }

    /// Same value expressed at a larger height.
    fn raised(&self, height: u32) -> Option<Magnitude> {
        let mut top = self.top.clone();
        for _ in self.height..height {
            top = top.log10()?;
        }
        Some(Magnitude { height, top })
    }

    fn is_small_plain(&self) -> bool {
        self.height == 0 && self.top.integer_bits() <= NEGLIGIBLE_BITS
    }

    fn is_large(&self) -> bool {
        self.height >= 1 && self.top.lo_at_least(NEGLIGIBLE_TOP)
    }

    pub(crate) fn add(&self, other: &Magnitude) -> Option<Magnitude> {
        if self.height == 0 && other.height == 0 {
            return Magnitude::at(0, self.top.add(&other.top));
        }
        // a huge value plus a comparatively tiny one
        for (big, small) in [(self, other), (other, self)] {
            if big.is_large() && small.is_small_plain() {
                let log = big.log10()?;
                let eps = Magnitude {
                    height: 0,
                    top: Interval::from_i64(0).widen(&negligible_ulps()),
                };
                return log.add(&eps)?.exp10();
            }
        }
        // max <= a + b <= 2 max
        let larger = match compare(self, other) {
            Some(Ordering::Less) => other.clone(),
            Some(_) => self.clone(),
            None => {
                let h = self.height.max(other.height);
                let a = self.raised(h)?;
                let b = other.raised(h)?;
                Magnitude {
                    height: h,
                    top: a.top.max(&b.top),
                }
            }
        };
        let log2 = Magnitude {
            height: 0,
            top: Interval::from_i64(2).log10()?,
        };
        let zero = Magnitude {
            height: 0,
            top: Interval::from_raw(0.into(), log2.top.hi.clone()),
        };
        larger.log10()?.add(&zero)?.exp10()
    }

    pub(crate) fn mul(&self, other: &Magnitude) -> Option<Magnitude> {
        if self.height == 0
            && other.height == 0
            && self.top.integer_bits() + other.top.integer_bits() <= MAX_MATERIALIZED_BITS
        {
            return Magnitude::at(0, self.top.mul(&other.top));
        }
        self.log10()?.add(&other.log10()?)?.exp10()
    }
}

/// Certain ordering of two magnitudes of positive values, if decidable.
pub(crate) fn compare(a: &Magnitude, b: &Magnitude) -> Option<Ordering> {
    match a.height.cmp(&b.height) {
        Ordering::Equal => a.top.cmp_certain(&b.top),
        Ordering::Less => compare_lower(a, b),
        Ordering::Greater => compare_lower(b, a).map(Ordering::reverse),
    }
}

/// `low.height < high.height`.
fn compare_lower(low: &Magnitude, high: &Magnitude) -> Option<Ordering> {
    if let Some(raised) = low.raised(high.height) {
        return raised.top.cmp_certain(&high.top);
    }
    // Only the upper endpoint survives; once it drops to <= 0 at some level,
    // `low` is below the positive value `high` takes at that level.
    let mut hi = Interval::point(low.top.hi.clone());
    for _ in low.height..high.height {
        if !hi.is_positive() {
            return Some(Ordering::Less);
        }
        hi = hi.log10()?;
    }
    if hi.hi < high.top.lo {
        Some(Ordering::Less)
    } else {
        None
    }
}
