//! Symbolic naturals built from literals, powers and products.
//!
//! Bounds like `r^(r^(r^(3r)))` are far too large to materialize. A
//! [`TowerExpr`] keeps them symbolic; [`evaluate`] returns the exact value
//! when it is short enough and a rigorous digit count otherwise, and
//! [`compare`] orders two expressions without ever guessing.
//!
//! Constructors normalize: `b^0 = 1`, `b^1 = b`, `1^e = 1`, `0^e = 0`,
//! nested products are flattened, and literal powers and products are folded
//! while the result stays below 10^6.

mod interval;
mod magnitude;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use magnitude::Magnitude;

const FOLD_LIMIT: u64 = 1_000_000;

/// Exact sub-results up to this many bits are used while building magnitudes.
const MAGNITUDE_EXACT_BITS: u64 = 4096;

/// `compare` decides by exact arithmetic up to this many bits.
const COMPARE_EXACT_BITS: u64 = 1 << 16;

/// Fallback exact budget when magnitudes overlap.
const COMPARE_FALLBACK_BITS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Ast", into = "Ast")]
pub enum TowerExpr {
    Literal(u64),
    Power(Box<TowerExpr>, Box<TowerExpr>),
    Product(Vec<TowerExpr>),
}

/// JSON shape: `{"literal": n}`, `{"power": {"base": .., "exponent": ..}}`,
/// `{"product": [..]}`.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Ast {
    Literal(u64),
    Power { base: Box<Ast>, exponent: Box<Ast> },
    Product(Vec<Ast>),
}

impl From<Ast> for TowerExpr {
    fn from(ast: Ast) -> Self {
        match ast {
            Ast::Literal(n) => TowerExpr::lit(n),
            Ast::Power { base, exponent } => TowerExpr::pow((*base).into(), (*exponent).into()),
            Ast::Product(items) => TowerExpr::product(items.into_iter().map(Into::into)),
        }
    }
}

impl From<TowerExpr> for Ast {
    fn from(e: TowerExpr) -> Self {
        match e {
            TowerExpr::Literal(n) => Ast::Literal(n),
            TowerExpr::Power(b, x) => Ast::Power {
                base: Box::new((*b).into()),
                exponent: Box::new((*x).into()),
            },
            TowerExpr::Product(items) => Ast::Product(items.into_iter().map(Into::into).collect()),
        }
    }
}

impl TowerExpr {
    pub fn lit(n: u64) -> Self {
        TowerExpr::Literal(n)
    }

    pub fn pow(base: TowerExpr, exponent: TowerExpr) -> Self {
        match (&base, &exponent) {
            (_, TowerExpr::Literal(0)) => TowerExpr::Literal(1),
            (_, TowerExpr::Literal(1)) => base,
            // non-literal expressions are at least 2, so the exponent is nonzero
            (TowerExpr::Literal(0), _) => TowerExpr::Literal(0),
            (TowerExpr::Literal(1), _) => TowerExpr::Literal(1),
            (TowerExpr::Literal(b), TowerExpr::Literal(e)) => {
                match u32::try_from(*e).ok().and_then(|e| b.checked_pow(e)) {
                    Some(v) if v < FOLD_LIMIT => TowerExpr::Literal(v),
                    _ => TowerExpr::Power(Box::new(base), Box::new(exponent)),
                }
            }
            _ => TowerExpr::Power(Box::new(base), Box::new(exponent)),
        }
    }

    pub fn product(items: impl IntoIterator<Item = TowerExpr>) -> Self {
        let mut literals = Vec::new();
        let mut others = Vec::new();
        let mut stack: Vec<TowerExpr> = items.into_iter().collect();
        stack.reverse();
        while let Some(item) = stack.pop() {
            match item {
                TowerExpr::Literal(0) => return TowerExpr::Literal(0),
                TowerExpr::Literal(1) => {}
                TowerExpr::Literal(n) => literals.push(n),
                TowerExpr::Product(inner) => stack.extend(inner.into_iter().rev()),
                other => others.push(other),
            }
        }
        let folded = literals
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .filter(|&v| v < FOLD_LIMIT);
        let mut all: Vec<TowerExpr> = match folded {
            Some(1) => Vec::new(),
            Some(v) => vec![TowerExpr::Literal(v)],
            None => literals.into_iter().map(TowerExpr::Literal).collect(),
        };
        all.extend(others);
        match all.len() {
            0 => TowerExpr::Literal(1),
            1 => all.pop().expect("one item"),
            _ => TowerExpr::Product(all),
        }
    }

    pub fn as_literal(&self) -> Option<u64> {
        match self {
            TowerExpr::Literal(n) => Some(*n),
            _ => None,
        }
    }

    /// Exact value if it has at most `max_bits` bits.
    pub fn exact(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            TowerExpr::Literal(n) => {
                let v = BigUint::from(*n);
                (v.bits() <= max_bits).then_some(v)
            }
            TowerExpr::Product(items) => {
                let mut acc = BigUint::one();
                for item in items {
                    let v = item.exact(max_bits)?;
                    if acc.bits() + v.bits() > max_bits + 1 {
                        return None;
                    }
                    acc *= v;
                    if acc.bits() > max_bits {
                        return None;
                    }
                }
                Some(acc)
            }
            TowerExpr::Power(base, exponent) => {
                let b = base.exact(max_bits)?;
                let e = exponent.exact(64)?.to_u64()?;
                if b.is_zero() || b.is_one() {
                    return Some(b);
                }
                // b^e has more than (bits(b) - 1) * e bits
                if (b.bits() - 1).saturating_mul(e) > max_bits {
                    return None;
                }
                let v = b.pow(u32::try_from(e).ok()?);
                (v.bits() <= max_bits).then_some(v)
            }
        }
    }

    fn magnitude(&self, exact_bits: u64) -> Option<Magnitude> {
        if let Some(v) = self.exact(exact_bits) {
            return Some(Magnitude::exact(&v));
        }
        match self {
            TowerExpr::Literal(n) => Some(Magnitude::exact(&BigUint::from(*n))),
            TowerExpr::Product(items) => {
                let mut acc = Magnitude::exact(&BigUint::one());
                for item in items {
                    acc = acc.mul(&item.magnitude(exact_bits)?)?;
                }
                Some(acc)
            }
            TowerExpr::Power(base, exponent) => {
                let b = base.magnitude(exact_bits)?;
                let e = exponent.magnitude(exact_bits)?;
                e.mul(&b.log10()?)?.exp10()
            }
        }
    }
}

impl std::ops::Mul for TowerExpr {
    type Output = TowerExpr;

    fn mul(self, other: TowerExpr) -> TowerExpr {
        TowerExpr::product([self, other])
    }
}

impl fmt::Display for TowerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(e: &TowerExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                TowerExpr::Literal(n) => write!(f, "{n}"),
                other => write!(f, "({other})"),
            }
        }
        match self {
            TowerExpr::Literal(n) => write!(f, "{n}"),
            TowerExpr::Power(b, e) => {
                operand(b, f)?;
                f.write_str("^")?;
                operand(e, f)
            }
            TowerExpr::Product(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match item {
                        TowerExpr::Product(_) => operand(item, f)?,
                        other => write!(f, "{other}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl FromStr for TowerExpr {
    type Err = Error;

    /// Parses the text form: `*` for products, right-associative `^`,
    /// parentheses and decimal literals.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let e = p.product()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::parse(1, self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn product(&mut self) -> Result<TowerExpr> {
        let mut items = vec![self.power()?];
        while self.eat(b'*') {
            items.push(self.power()?);
        }
        Ok(if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            TowerExpr::product(items)
        })
    }

    fn power(&mut self) -> Result<TowerExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exponent = self.power()?;
            Ok(TowerExpr::pow(base, exponent))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<TowerExpr> {
        if self.eat(b'(') {
            let e = self.product()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number or `(`"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits
            .parse()
            .map(TowerExpr::Literal)
            .map_err(|_| self.error("literal does not fit in 64 bits"))
    }
}

/// Result of [`evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluation {
    Exact(BigUint),
    /// The decimal length lies in `[low, high]`; `high - low <= 1` unless
    /// the enclosure was unusually wide.
    Digits {
        low: BigUint,
        high: BigUint,
    },
    /// The decimal length is `E^height(t)` for some `t` in `[low, high]`,
    /// with `E(x) = 10^x`.
    IteratedDigits {
        height: u32,
        low: f64,
        high: f64,
    },
    /// The magnitude could not be bounded.
    Unknown,
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Exact(v) => write!(f, "{v}"),
            Evaluation::Digits { low, high } if low == high => write!(f, "{low} digits"),
            Evaluation::Digits { low, high } => write!(f, "{low}..{high} digits"),
            Evaluation::IteratedDigits { height, low, high } => {
                let mut s = format!("[{low:.6}, {high:.6}]");
                for _ in 0..*height {
                    s = format!("10^{s}");
                }
                write!(f, "{s} digits")
            }
            Evaluation::Unknown => f.write_str("unknown size"),
        }
    }
}

fn decimal_len(v: &BigUint) -> u64 {
    v.to_str_radix(10).len() as u64
}

/// Exact value when it has at most `digit_cap` decimal digits, otherwise an
/// enclosure of its decimal length.
pub fn evaluate(e: &TowerExpr, digit_cap: u64) -> Evaluation {
    let bit_cap = digit_cap.saturating_mul(10) / 3 + 4;
    if let Some(v) = e.exact(bit_cap) {
        if decimal_len(&v) <= digit_cap {
            return Evaluation::Exact(v);
        }
    }
    let Some(log) = e.magnitude(MAGNITUDE_EXACT_BITS).and_then(|m| m.log10()) else {
        return Evaluation::Unknown;
    };
    if log.height == 0 {
        let to_digits =
            |floor: num_bigint::BigInt| (floor + 1u32).to_biguint().unwrap_or_else(BigUint::one);
        Evaluation::Digits {
            low: to_digits(log.top.floor_lo()),
            high: to_digits(log.top.floor_hi()),
        }
    } else {
        Evaluation::IteratedDigits {
            height: log.height,
            low: log.top.lo_f64(),
            high: log.top.hi_f64(),
        }
    }
}

/// Raised when two expressions cannot be told apart within budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expressions are too close to order within budget")]
pub struct Incomparable;

/// Total order on the represented naturals.
pub fn compare(a: &TowerExpr, b: &TowerExpr) -> Result<Ordering, Incomparable> {
    if a == b {
        return Ok(Ordering::Equal);
    }
    if let (Some(x), Some(y)) = (a.exact(COMPARE_EXACT_BITS), b.exact(COMPARE_EXACT_BITS)) {
        return Ok(x.cmp(&y));
    }
    if let Some(order) = compare_by_magnitude(a, b, MAGNITUDE_EXACT_BITS) {
        return Ok(order);
    }
    match (
        a.exact(COMPARE_FALLBACK_BITS),
        b.exact(COMPARE_FALLBACK_BITS),
    ) {
        (Some(x), Some(y)) => Ok(x.cmp(&y)),
        _ => Err(Incomparable),
    }
}

/// Ordering decided by iterated-log enclosures alone; subexpressions of at
/// most `exact_bits` bits are still computed exactly.
pub(crate) fn compare_by_magnitude(
    a: &TowerExpr,
    b: &TowerExpr,
    exact_bits: u64,
) -> Option<Ordering> {
    let zero_a = a.exact(1).is_some_and(|v| v.is_zero());
    let zero_b = b.exact(1).is_some_and(|v| v.is_zero());
    match (zero_a, zero_b) {
        (true, true) => return Some(Ordering::Equal),
        (true, false) => return Some(Ordering::Less),
        (false, true) => return Some(Ordering::Greater),
        _ => {}
    }
    magnitude::compare(&a.magnitude(exact_bits)?, &b.magnitude(exact_bits)?)
}

/// `r^(r^(r^(3r)))`.
pub fn h_upper(r: u64) -> TowerExpr {
    let r_expr = TowerExpr::lit(r);
    let three_r = TowerExpr::lit(3) * r_expr.clone();
    TowerExpr::pow(
        r_expr.clone(),
        TowerExpr::pow(r_expr.clone(), TowerExpr::pow(r_expr, three_r)),
    )
}

/// `2^(2^r)`.
pub fn h_lower(r: u64) -> TowerExpr {
    TowerExpr::pow(
        TowerExpr::lit(2),
        TowerExpr::pow(TowerExpr::lit(2), TowerExpr::lit(r)),
    )
}

/// `r^r`, the weak upper bound on `R(3; r)` used for the headline bound.
pub fn ramsey_upper_r3(r: u64) -> TowerExpr {
    TowerExpr::pow(TowerExpr::lit(r), TowerExpr::lit(r))
}

/// Upper bound for `R(k; q)` with `q` given symbolically: `k` when `k <= 2`
/// or `q = 1`, `q^q` for triangles and `q^(k*q)` otherwise.
pub fn ramsey_upper_bound(k: u64, q: TowerExpr) -> TowerExpr {
    if k <= 2 || q == TowerExpr::lit(1) {
        return TowerExpr::lit(k);
    }
    if k == 3 {
        TowerExpr::pow(q.clone(), q)
    } else {
        TowerExpr::pow(q.clone(), TowerExpr::lit(k) * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(n: u64) -> TowerExpr {
        TowerExpr::lit(n)
    }

    fn pow(b: TowerExpr, e: TowerExpr) -> TowerExpr {
        TowerExpr::pow(b, e)
    }

    #[test]
    fn normalization() {
        assert_eq!(pow(lit(7), lit(0)), lit(1));
        assert_eq!(pow(h_upper(3), lit(1)), h_upper(3));
        assert_eq!(pow(lit(1), h_upper(3)), lit(1));
        assert_eq!(pow(lit(0), h_upper(3)), lit(0));
        assert_eq!(pow(lit(2), lit(10)), lit(1024));
        assert!(matches!(pow(lit(2), lit(64)), TowerExpr::Power(..)));
        assert_eq!(TowerExpr::product([lit(3), pow(lit(3), lit(3))]), lit(81));
        assert_eq!(TowerExpr::product([]), lit(1));
        assert_eq!(TowerExpr::product([lit(5), lit(0), h_upper(2)]), lit(0));
        let nested = TowerExpr::product([lit(2), TowerExpr::product([h_upper(2), lit(3)])]);
        assert_eq!(nested, TowerExpr::Product(vec![lit(6), h_upper(2)]));
    }

    #[test]
    fn bound_shapes() {
        assert_eq!(h_upper(1), lit(1));
        assert_eq!(h_upper(2).to_string(), "2^(2^64)");
        assert_eq!(h_upper(3), pow(lit(3), pow(lit(3), pow(lit(3), lit(9)))));
        assert_eq!(h_upper(3).to_string(), "3^(3^19683)");
        assert_eq!(h_lower(1), lit(4));
        assert_eq!(h_lower(2), lit(16));
        assert_eq!(h_lower(3), lit(256));
        assert_eq!(ramsey_upper_r3(1), lit(1));
        assert_eq!(ramsey_upper_r3(2), lit(4));
        assert_eq!(ramsey_upper_r3(3), lit(27));
        assert_eq!(ramsey_upper_bound(3, lit(64)).to_string(), "64^64");
        assert_eq!(ramsey_upper_bound(4, lit(2)).to_string(), "256");
    }

    #[test]
    fn text_round_trip() {
        for text in ["2^(2^64)", "(64^64)^6", "3^(3^19683)", "1000000*2^100", "7"] {
            let e: TowerExpr = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
        }
        let e: TowerExpr = "2^2^2".parse().unwrap();
        assert_eq!(e, lit(16));
        let e: TowerExpr = "3 * 3^3".parse().unwrap();
        assert_eq!(e, lit(81));
        assert!("2^".parse::<TowerExpr>().is_err());
        assert!("(2".parse::<TowerExpr>().is_err());
        assert!("99999999999999999999".parse::<TowerExpr>().is_err());
    }

    #[test]
    fn json_ast() {
        let e: TowerExpr = "(64^64)^6".parse().unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"power":{"base":{"power":{"base":{"literal":64},"exponent":{"literal":64}}},"exponent":{"literal":6}}}"#
        );
        assert_eq!(serde_json::from_str::<TowerExpr>(&json).unwrap(), e);
        // deserialization normalizes
        let folded: TowerExpr =
            serde_json::from_str(r#"{"power":{"base":{"literal":2},"exponent":{"literal":4}}}"#)
                .unwrap();
        assert_eq!(folded, lit(16));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            evaluate(&pow(lit(2), pow(lit(2), lit(2))), 10),
            Evaluation::Exact(BigUint::from(16u32))
        );
        assert_eq!(
            evaluate(&TowerExpr::product([lit(3), pow(lit(3), lit(3))]), 10),
            Evaluation::Exact(BigUint::from(81u32))
        );
        // 2^100 has 31 digits
        let e = pow(lit(2), lit(100));
        assert!(matches!(evaluate(&e, 31), Evaluation::Exact(_)));
        match evaluate(&e, 30) {
            Evaluation::Digits { low, high } => {
                assert!(low <= BigUint::from(31u32) && BigUint::from(31u32) <= high)
            }
            other => panic!("{other:?}"),
        }
        match evaluate(&h_upper(3), 1000) {
            Evaluation::IteratedDigits {
                height: 1,
                low,
                high,
            } => {
                // digits ~ 3^19683 * log10(3), whose log10 is
                // 19683 * log10(3) + log10(log10(3)) ~ 9390.8563
                assert!((low - 9390.8563).abs() < 0.001, "{low}");
                assert!(high - low < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&lit(16), &h_upper(2)), Ok(Ordering::Less));
        assert_eq!(compare(&h_lower(2), &h_upper(2)), Ok(Ordering::Less));
        assert_eq!(
            compare(&pow(lit(2), lit(10)), &pow(lit(10), lit(3))),
            Ok(Ordering::Greater)
        );
        assert_eq!(compare(&h_upper(3), &h_upper(3)), Ok(Ordering::Equal));
        assert_eq!(compare(&h_upper(3), &h_upper(4)), Ok(Ordering::Less));
        assert_eq!(compare(&h_lower(1), &h_upper(1)), Ok(Ordering::Greater));
        // 2^(2^64) vs 2^(2^64 + 1) = 2 * 2^(2^64)
        let a = h_upper(2);
        let b = TowerExpr::product([lit(2), h_upper(2)]);
        assert_eq!(compare(&a, &b), Ok(Ordering::Less));
    }

    #[test]
    fn indistinguishable_giants_are_incomparable() {
        // 3 * 2^(2^64) vs 2^(2^64) * 3 differ only structurally
        let a = TowerExpr::Product(vec![lit(3), h_upper(2)]);
        let b = TowerExpr::Product(vec![h_upper(2), lit(3)]);
        assert_eq!(compare(&a, &b), Err(Incomparable));
    }
}
