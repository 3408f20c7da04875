//! Rigorous real intervals in binary fixed point.
//!
//! An [`Interval`] holds two big integers `lo <= hi` and stands for the real
//! interval `[lo / 2^PREC, hi / 2^PREC]`. Every operation rounds its lower
//! endpoint down and its upper endpoint up, so the true value is never lost.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits.
pub(crate) const PREC: u64 = 256;

/// `exp` refuses arguments above this (the result would have ~2^20 bits).
const EXP_ARG_LIMIT: i64 = 700_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Interval {
    pub(crate) lo: BigInt,
    pub(crate) hi: BigInt,
}

fn one() -> BigInt {
    BigInt::one() << PREC
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn floor_shr(a: &BigInt, bits: u64) -> BigInt {
    floor_div(a, &(BigInt::one() << bits))
}

fn ceil_shr(a: &BigInt, bits: u64) -> BigInt {
    ceil_div(a, &(BigInt::one() << bits))
}

impl Interval {
    pub(crate) fn point(raw: BigInt) -> Self {
        Interval {
            lo: raw.clone(),
            hi: raw,
        }
    }

    pub(crate) fn from_integer(n: &BigInt) -> Self {
        Interval::point(n << PREC)
    }

    pub(crate) fn from_biguint(n: &BigUint) -> Self {
        Interval::from_integer(&BigInt::from(n.clone()))
    }

    pub(crate) fn from_i64(n: i64) -> Self {
        Interval::from_integer(&BigInt::from(n))
    }

    /// `[lo_ulps, hi_ulps]` in units of `2^-PREC`.
    pub(crate) fn from_raw(lo: BigInt, hi: BigInt) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub(crate) fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub(crate) fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = candidates.iter().min().expect("four candidates");
        let max = candidates.iter().max().expect("four candidates");
        Interval {
            lo: floor_shr(min, PREC),
            hi: ceil_shr(max, PREC),
        }
    }

    /// Exact multiplication by an integer.
    pub(crate) fn scale(&self, n: &BigInt) -> Interval {
        let a = &self.lo * n;
        let b = &self.hi * n;
        if n.sign() == Sign::Minus {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Division by an interval of strictly positive numbers.
    pub(crate) fn div(&self, other: &Interval) -> Option<Interval> {
        if !other.lo.is_positive() {
            return None;
        }
        let quotients = |round: fn(&BigInt, &BigInt) -> BigInt| {
            [
                round(&(&self.lo << PREC), &other.lo),
                round(&(&self.lo << PREC), &other.hi),
                round(&(&self.hi << PREC), &other.lo),
                round(&(&self.hi << PREC), &other.hi),
            ]
        };
        let lo = quotients(floor_div).into_iter().min().expect("candidates");
        let hi = quotients(ceil_div).into_iter().max().expect("candidates");
        Some(Interval { lo, hi })
    }

    /// Widens the interval by `ulps` units in the last place on each side.
    pub(crate) fn widen(&self, ulps: &BigInt) -> Interval {
        Interval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
        }
    }

    pub(crate) fn max(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub(crate) fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Certain ordering of the two represented reals, if the endpoints decide it.
    pub(crate) fn cmp_certain(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Is the upper endpoint at most `n`?
    pub(crate) fn hi_at_most(&self, n: i64) -> bool {
        self.hi <= (BigInt::from(n) << PREC)
    }

    pub(crate) fn lo_at_least(&self, n: i64) -> bool {
        self.lo >= (BigInt::from(n) << PREC)
    }

    pub(crate) fn floor_lo(&self) -> BigInt {
        floor_shr(&self.lo, PREC)
    }

    pub(crate) fn floor_hi(&self) -> BigInt {
        floor_shr(&self.hi, PREC)
    }

    /// Bit length of the larger endpoint's integer part.
    pub(crate) fn integer_bits(&self) -> u64 {
        self.lo.bits().max(self.hi.bits()).saturating_sub(PREC)
    }

    pub(crate) fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub(crate) fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    /// Natural logarithm; needs a positive lower endpoint.
    pub(crate) fn ln(&self) -> Option<Interval> {
        if !self.is_positive() {
            return None;
        }
        let lo = ln_raw(&self.lo).lo;
        let hi = ln_raw(&self.hi).hi;
        Some(Interval { lo, hi })
    }

    pub(crate) fn log10(&self) -> Option<Interval> {
        self.ln()?.div(ln10())
    }

    pub(crate) fn exp(&self) -> Option<Interval> {
        let lo = exp_raw(&self.lo)?.lo;
        let hi = exp_raw(&self.hi)?.hi;
        Some(Interval { lo, hi })
    }

    pub(crate) fn exp10(&self) -> Option<Interval> {
        self.mul(ln10()).exp()
    }
}

fn to_f64(raw: &BigInt) -> f64 {
    // keep 64 significant bits, then scale
    let bits = raw.bits();
    let shift = bits.saturating_sub(64);
    let head = (raw >> shift).to_f64().unwrap_or(f64::NAN);
    head * 2f64.powi(shift as i32 - PREC as i32)
}

/// `atanh(u / w)` for `0 <= u / w <= 1/3`.
fn atanh_ratio(u: &BigInt, w: &BigInt) -> Interval {
    debug_assert!(!u.is_negative() && w.is_positive() && u * 3 <= *w);
    let one = one();
    let q_lo = floor_div(&(u << PREC), w);
    let q_hi = ceil_div(&(u << PREC), w);
    let q2_lo = floor_div(&(&q_lo * &q_lo), &one);
    let q2_hi = ceil_div(&(&q_hi * &q_hi), &one);
    let mut pow_lo = q_lo;
    let mut pow_hi = q_hi;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut j: u64 = 0;
    while pow_hi > BigInt::one() {
        let d = BigInt::from(2 * j + 1);
        sum_lo += floor_div(&pow_lo, &d);
        sum_hi += ceil_div(&pow_hi, &d);
        pow_lo = floor_div(&(&pow_lo * &q2_lo), &one);
        pow_hi = ceil_div(&(&pow_hi * &q2_hi), &one);
        j += 1;
    }
    // remaining terms sum to at most q^(2j+1) / (1 - q^2) <= 2 q^(2j+1)
    sum_hi += pow_hi * 2 + 2;
    Interval {
        lo: sum_lo,
        hi: sum_hi,
    }
}

fn ln2() -> &'static Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| atanh_ratio(&BigInt::one(), &BigInt::from(3)).scale(&BigInt::from(2)))
}

fn ln10() -> &'static Interval {
    static LN10: OnceLock<Interval> = OnceLock::new();
    LN10.get_or_init(|| ln_raw(&(BigInt::from(10) << PREC)))
}

/// `ln(x / 2^PREC)` for a positive raw value `x`.
fn ln_raw(x: &BigInt) -> Interval {
    debug_assert!(x.is_positive());
    // x = 2^k * m with 1 <= m < 2, ln m = 2 atanh((m - 1) / (m + 1))
    let k = x.bits() - 1;
    let pow = BigInt::one() << k;
    let u = x - &pow;
    let w = x + &pow;
    let mantissa = atanh_ratio(&u, &w).scale(&BigInt::from(2));
    let exponent = BigInt::from(k as i64 - PREC as i64);
    ln2().scale(&exponent).add(&mantissa)
}

/// `exp(x / 2^PREC)` as an interval, `None` when the argument is too large.
fn exp_raw(x: &BigInt) -> Option<Interval> {
    let limit = BigInt::from(EXP_ARG_LIMIT) << PREC;
    if *x > limit {
        return None;
    }
    if x.is_negative() {
        if -x > limit {
            // e^x < 2^-PREC
            return Some(Interval::from_raw(BigInt::zero(), BigInt::one()));
        }
        let pos = exp_raw(&-x)?;
        let one_sq = one() << PREC;
        let lo = floor_div(&one_sq, &pos.hi);
        let hi = ceil_div(&one_sq, &pos.lo);
        return Some(Interval { lo, hi });
    }
    // scale the argument into [0, 1/2], sum the series, square back
    let one = one();
    let half = &one >> 1;
    let mut s: u64 = 0;
    while (x >> s) > half {
        s += 1;
    }
    let z_lo = floor_shr(x, s);
    let z_hi = ceil_shr(x, s);
    let mut term_lo = one.clone();
    let mut term_hi = one.clone();
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k: u64 = 1;
    while term_hi > BigInt::one() {
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        let d = BigInt::from(k) << PREC;
        term_lo = floor_div(&(&term_lo * &z_lo), &d);
        term_hi = ceil_div(&(&term_hi * &z_hi), &d);
        k += 1;
    }
    // z <= 1/2 halves each further term
    sum_hi += term_hi * 2 + 2;
    for _ in 0..s {
        sum_lo = floor_div(&(&sum_lo * &sum_lo), &one);
        sum_hi = ceil_div(&(&sum_hi * &sum_hi), &one);
    }
    Some(Interval {
        lo: sum_lo,
        hi: sum_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(i: &Interval, x: f64) -> bool {
        i.lo_f64() <= x && x <= i.hi_f64()
    }

    fn width_ulps(i: &Interval) -> BigInt {
        &i.hi - &i.lo
    }

    #[test]
    fn constants_are_tight() {
        assert!(contains(ln2(), std::f64::consts::LN_2));
        assert!(contains(ln10(), std::f64::consts::LN_10));
        assert!(width_ulps(ln2()) < BigInt::from(1000));
        assert!(width_ulps(ln10()) < BigInt::from(10_000));
    }

    #[test]
    fn log10_of_integers() {
        for n in [1i64, 2, 3, 7, 10, 1000, 123_456_789] {
            let l = Interval::from_i64(n).log10().unwrap();
            let expected = (n as f64).log10();
            assert!((l.lo_f64() - expected).abs() < 1e-12, "n = {n}");
            assert!(l.lo <= l.hi);
        }
        let exact = Interval::from_i64(1000).log10().unwrap();
        assert!(exact.lo <= BigInt::from(3) << PREC && BigInt::from(3) << PREC <= exact.hi);
    }

    #[test]
    fn ln_of_fractions_is_negative() {
        let half = Interval::point(one() >> 1);
        let l = half.ln().unwrap();
        assert!(contains(&l, -std::f64::consts::LN_2) || (l.lo_f64() + 0.693).abs() < 1e-3);
        assert!(l.hi.is_negative());
        assert!(Interval::from_i64(0).ln().is_none());
    }

    #[test]
    fn exp_inverts_ln() {
        for x in [-5.0f64, -0.3, 0.0, 0.25, 1.0, 3.5, 40.0] {
            let steps = (x * 1024.0) as i64;
            let x = steps as f64 / 1024.0;
            let raw = BigInt::from(steps) << (PREC - 10);
            let e = Interval::point(raw).exp().unwrap();
            let expected = x.exp();
            assert!(
                ((e.lo_f64() - expected) / expected).abs() < 1e-12,
                "x = {x}"
            );
            let back = e.ln().unwrap();
            assert!((back.lo_f64() - x).abs() < 1e-12);
        }
        let ten = Interval::from_i64(3).exp10().unwrap();
        assert!(ten.lo <= BigInt::from(1000) << PREC && BigInt::from(1000) << PREC <= ten.hi);
    }

    #[test]
    fn division_and_products_enclose() {
        let a = Interval::from_i64(-3);
        let b = Interval::from_i64(7);
        let q = a.div(&b).unwrap();
        assert!(contains(&q, -3.0 / 7.0));
        assert!(a.div(&Interval::from_i64(0)).is_none());
        let p = q.mul(&b);
        assert!(contains(&p, -3.0));
        assert_eq!(a.cmp_certain(&b), Some(Ordering::Less));
        assert_eq!(a.cmp_certain(&a), Some(Ordering::Equal));
        assert_eq!(p.cmp_certain(&a), None);
    }
}
