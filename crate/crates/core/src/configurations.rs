//! Monochromatic configurations: enumerators, the witness validator and the
//! prime-multiplicity function Ω.
//!
//! All enumerators are deterministic. Schur and product triples come out
//! sorted lexicographically; sum-product witnesses come out ordered by their
//! addend tuple (non-increasing) and then by their factor tuple
//! (non-decreasing).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{
    Color, Coloring, DoubleSchurProductWitness, PredicateId, PredicateTag, ProductWitness,
    SchurWitness, SumProductWitness, Witness,
};

/// Prime factorization `n = Π p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub exponents: BTreeMap<u64, u32>,
}

impl Factorization {
    /// Trial division.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factor 0".into()));
        }
        let mut exponents = BTreeMap::new();
        let mut rest = n;
        let mut p = 2u64;
        while p.saturating_mul(p) <= rest {
            while rest.is_multiple_of(p) {
                *exponents.entry(p).or_insert(0) += 1;
                rest /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            *exponents.entry(rest).or_insert(0) += 1;
        }
        Ok(Factorization { n, exponents })
    }

    pub fn big_omega(&self) -> u32 {
        self.exponents.values().sum()
    }
}

/// Ω(n): number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> Result<u32> {
    Factorization::of(n).map(|f| f.big_omega())
}

/// Smallest-prime-factor table for `1..=limit`.
#[derive(Debug, Clone)]
pub struct SmallestPrimeFactors {
    spf: Vec<u32>,
}

impl SmallestPrimeFactors {
    pub fn new(limit: u64) -> Result<Self> {
        let limit = u32::try_from(limit)
            .map_err(|_| Error::InvalidArgument(format!("sieve limit {limit} too large")))?;
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len];
        for i in 2..len {
            if spf[i] == 0 {
                let p = i as u32;
                let mut j = i;
                while j < len {
                    if spf[j] == 0 {
                        spf[j] = p;
                    }
                    j += i;
                }
            }
        }
        Ok(SmallestPrimeFactors { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn smallest_prime_factor(&self, n: u64) -> Option<u64> {
        match self.spf.get(n as usize) {
            Some(&p) if p > 0 => Some(p as u64),
            _ => None,
        }
    }

    /// Ω(n) for `1 <= n <= limit`.
    pub fn big_omega(&self, n: u64) -> Result<u32> {
        if n == 0 || n > self.limit() {
            return Err(Error::InvalidArgument(format!(
                "{n} outside sieve range [1, {}]",
                self.limit()
            )));
        }
        let mut rest = n as usize;
        let mut count = 0;
        while rest > 1 {
            rest /= self.spf[rest] as usize;
            count += 1;
        }
        Ok(count)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        self.big_omega(n)?;
        let mut exponents = BTreeMap::new();
        let mut rest = n as usize;
        while rest > 1 {
            let p = self.spf[rest] as usize;
            *exponents.entry(p as u64).or_insert(0) += 1;
            rest /= p;
        }
        Ok(Factorization { n, exponents })
    }
}

/// All monochromatic `(a, b, a + b)` with `a <= b` (`a < b` unless
/// `allow_equal`), every element inside the domain.
pub fn find_schur_triples(c: &Coloring, allow_equal: bool) -> Vec<SchurWitness> {
    let d = c.domain();
    let mut out = Vec::new();
    for a in d.lo()..=d.hi() {
        let b_min = if allow_equal { a } else { a + 1 };
        let Some(ca) = c.color(a) else { continue };
        for b in b_min..=d.hi() {
            let sum = a + b;
            if sum > d.hi() {
                break;
            }
            if c.color(b) == Some(ca) && c.color(sum) == Some(ca) {
                out.push(SchurWitness {
                    a,
                    b,
                    sum,
                    color: ca,
                });
            }
        }
    }
    out
}

/// All monochromatic `(x, y, xy)` with `2 <= x <= y` (`x < y` unless
/// `allow_equal`), every element inside the domain.
pub fn find_product_triples(c: &Coloring, allow_equal: bool) -> Vec<ProductWitness> {
    let d = c.domain();
    let mut out = Vec::new();
    let mut x = d.lo().max(2);
    while x.saturating_mul(x) <= d.hi() {
        let cx = c.color(x).expect("x in domain");
        let y_min = if allow_equal { x } else { x + 1 };
        for y in y_min..=d.hi() / x {
            let product = x * y;
            if c.color(y) == Some(cx) && c.color(product) == Some(cx) {
                out.push(ProductWitness {
                    x,
                    y,
                    product,
                    color: cx,
                });
            }
        }
        x += 1;
    }
    out
}

/// Options of the sum-product enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumProductQuery {
    pub n: usize,
    pub m: usize,
    /// Every factor must be at least 2.
    pub nontrivial: bool,
    /// The common value is neither colored nor required to lie in the domain.
    pub weak: bool,
    /// Stop after this many witnesses.
    pub limit: usize,
}

/// Monochromatic `{a_1..a_n, x_1..x_m, v}` with `Σ a_i = Π x_j = v`.
pub fn find_sum_product_configs(c: &Coloring, q: SumProductQuery) -> Vec<SumProductWitness> {
    let mut out = Vec::new();
    if q.n == 0 || q.m == 0 || q.limit == 0 {
        return out;
    }
    let mut addends = Vec::with_capacity(q.n);
    addend_tuples(c, &q, &mut addends, 0, &mut out);
    out
}

fn addend_tuples(
    c: &Coloring,
    q: &SumProductQuery,
    addends: &mut Vec<u64>,
    partial: u64,
    out: &mut Vec<SumProductWitness>,
) {
    let d = c.domain();
    if addends.len() == q.n {
        let color = c.color(addends[0]).expect("addend in domain");
        let value = partial;
        if !q.weak && c.color(value) != Some(color) {
            return;
        }
        let mut factors = Vec::with_capacity(q.m);
        factor_tuples(c, q, color, value, value, &mut factors, addends, out);
        return;
    }
    let remaining = (q.n - addends.len() - 1) as u64;
    let upper = addends.last().copied().unwrap_or(d.hi());
    let color = addends.first().and_then(|&a| c.color(a));
    for a in d.lo()..=upper {
        if !q.weak {
            // the value must stay inside the domain
            let least_total = partial + a + remaining * d.lo();
            if least_total > d.hi() {
                break;
            }
        }
        if color.is_some() && c.color(a) != color {
            continue;
        }
        addends.push(a);
        addend_tuples(c, q, addends, partial + a, out);
        addends.pop();
        if out.len() >= q.limit {
            return;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn factor_tuples(
    c: &Coloring,
    q: &SumProductQuery,
    color: Color,
    value: u64,
    rest: u64,
    factors: &mut Vec<u64>,
    addends: &[u64],
    out: &mut Vec<SumProductWitness>,
) {
    if out.len() >= q.limit {
        return;
    }
    let d = c.domain();
    let slots_left = q.m - factors.len();
    let lowest = factors
        .last()
        .copied()
        .unwrap_or(0)
        .max(d.lo())
        .max(if q.nontrivial { 2 } else { 1 });
    if slots_left == 1 {
        if rest >= lowest && c.color(rest) == Some(color) {
            let mut all = factors.clone();
            all.push(rest);
            out.push(SumProductWitness {
                addends: addends.to_vec(),
                factors: all,
                value,
                color,
            });
        }
        return;
    }
    let mut x = lowest;
    // x^slots_left <= rest, with x = 1 always admissible
    while x <= d.hi() && (x == 1 || pow_at_most(x, slots_left, rest)) {
        if rest.is_multiple_of(x) && c.color(x) == Some(color) {
            factors.push(x);
            factor_tuples(c, q, color, value, rest / x, factors, addends, out);
            factors.pop();
            if out.len() >= q.limit {
                return;
            }
        }
        x += 1;
    }
}

fn pow_at_most(x: u64, e: usize, bound: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..e {
        match acc.checked_mul(x) {
            Some(v) if v <= bound => acc = v,
            _ => return false,
        }
    }
    true
}

/// Schur triples `X <= Y` (lexicographic on `(a, b)`) of one color whose
/// nine pairwise products are in the domain with that color.
pub fn find_double_schur_product(
    c: &Coloring,
    allow_equal: bool,
    nontrivial: bool,
    limit: usize,
) -> Vec<DoubleSchurProductWitness> {
    let d = c.domain();
    let least = if nontrivial { d.lo().max(2) } else { d.lo() };
    let mut triples = find_schur_triples(c, allow_equal);
    triples.retain(|t| t.a >= least);
    let mut out = Vec::new();
    for (i, x) in triples.iter().enumerate() {
        for y in &triples[i..] {
            if out.len() >= limit {
                return out;
            }
            // y.sum >= 2 * y.a and triples are sorted by a
            if y.a.saturating_mul(2).saturating_mul(x.sum) > d.hi() {
                break;
            }
            if y.color != x.color {
                continue;
            }
            // products are largest for the two sums
            if x.sum.checked_mul(y.sum).is_none_or(|p| p > d.hi()) {
                continue;
            }
            let products = pairwise_products(x, y);
            if products.iter().all(|&p| c.color(p) == Some(x.color)) {
                out.push(DoubleSchurProductWitness {
                    x: *x,
                    y: *y,
                    products,
                    color: x.color,
                });
            }
        }
    }
    out
}

fn pairwise_products(x: &SchurWitness, y: &SchurWitness) -> Vec<u64> {
    let mut products = Vec::with_capacity(9);
    for xi in x.elements() {
        for yj in y.elements() {
            products.push(xi * yj);
        }
    }
    products
}

/// Runs the enumerator matching `predicate`, wrapping results as [`Witness`].
pub fn find_witnesses(c: &Coloring, predicate: &PredicateId, limit: usize) -> Vec<Witness> {
    match predicate.tag {
        PredicateTag::AdditiveSchur => find_schur_triples(c, predicate.allow_equal)
            .into_iter()
            .take(limit)
            .map(Witness::Schur)
            .collect(),
        PredicateTag::MultiplicativeSchur => find_product_triples(c, predicate.allow_equal)
            .into_iter()
            .take(limit)
            .map(Witness::Product)
            .collect(),
        PredicateTag::SumProduct { n, m } | PredicateTag::SumProductWeak { n, m } => {
            let weak = matches!(predicate.tag, PredicateTag::SumProductWeak { .. });
            find_sum_product_configs(
                c,
                SumProductQuery {
                    n,
                    m,
                    nontrivial: predicate.nontrivial,
                    weak,
                    limit,
                },
            )
            .into_iter()
            .map(Witness::SumProduct)
            .collect()
        }
        PredicateTag::DoubleSchurProduct => {
            find_double_schur_product(c, predicate.allow_equal, predicate.nontrivial, limit)
                .into_iter()
                .map(Witness::DoubleSchurProduct)
                .collect()
        }
    }
}

/// Side conditions a witness is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rules {
    pub allow_equal: bool,
    pub nontrivial: bool,
    pub weak: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            allow_equal: true,
            nontrivial: false,
            weak: false,
        }
    }
}

impl From<&PredicateId> for Rules {
    fn from(p: &PredicateId) -> Self {
        Rules {
            allow_equal: p.allow_equal,
            nontrivial: p.nontrivial,
            weak: matches!(p.tag, PredicateTag::SumProductWeak { .. }),
        }
    }
}

/// Why a witness was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

macro_rules! violation {
    ($($arg:tt)*) => { Err(Violation(format!($($arg)*))) };
}

/// Checks every arithmetic identity and every membership and color
/// constraint of `w` under `c`.
pub fn verify_witness(c: &Coloring, w: &Witness, rules: Rules) -> Result<(), Violation> {
    match w {
        Witness::Schur(w) => verify_schur(c, w, rules),
        Witness::Product(w) => {
            if w.x < 2 {
                return violation!("factor {} below 2", w.x);
            }
            if w.x > w.y || (!rules.allow_equal && w.x == w.y) {
                return violation!("factors {} and {} out of order", w.x, w.y);
            }
            if w.x.checked_mul(w.y) != Some(w.product) {
                return violation!("product mismatch: {} * {} != {}", w.x, w.y, w.product);
            }
            check_colors(c, w.color, &w.elements())
        }
        Witness::SumProduct(w) => {
            if w.addends.is_empty() || w.factors.is_empty() {
                return violation!("empty addend or factor list");
            }
            let sum = w
                .addends
                .iter()
                .try_fold(0u64, |acc, &a| acc.checked_add(a));
            if sum != Some(w.value) {
                return violation!("sum of addends {:?} != {}", w.addends, w.value);
            }
            let product = w
                .factors
                .iter()
                .try_fold(1u64, |acc, &x| acc.checked_mul(x));
            if product != Some(w.value) {
                return violation!("product of factors {:?} != {}", w.factors, w.value);
            }
            if rules.nontrivial {
                if let Some(x) = w.factors.iter().find(|&&x| x < 2) {
                    return violation!("degenerate factor {x}");
                }
            }
            check_colors(c, w.color, &w.addends)?;
            check_colors(c, w.color, &w.factors)?;
            if !rules.weak {
                check_colors(c, w.color, &[w.value])?;
            }
            Ok(())
        }
        Witness::DoubleSchurProduct(w) => {
            verify_schur(c, &w.x, rules)?;
            verify_schur(c, &w.y, rules)?;
            if w.x.color != w.color || w.y.color != w.color {
                return violation!("triple colors differ from {}", w.color);
            }
            if rules.nontrivial && (w.x.a < 2 || w.y.a < 2) {
                return violation!("element 1 used in a nontrivial configuration");
            }
            let expected: Vec<Option<u64>> =
                w.x.elements()
                    .iter()
                    .flat_map(|&xi| w.y.elements().into_iter().map(move |yj| xi.checked_mul(yj)))
                    .collect();
            if w.products.len() != 9
                || expected
                    .iter()
                    .zip(&w.products)
                    .any(|(e, &p)| *e != Some(p))
            {
                return violation!(
                    "pairwise products {:?} do not match the triples",
                    w.products
                );
            }
            check_colors(c, w.color, &w.products)
        }
    }
}

fn verify_schur(c: &Coloring, w: &SchurWitness, rules: Rules) -> Result<(), Violation> {
    if w.a > w.b || (!rules.allow_equal && w.a == w.b) {
        return violation!("addends {} and {} out of order", w.a, w.b);
    }
    if w.a.checked_add(w.b) != Some(w.sum) {
        return violation!("sum mismatch: {} + {} != {}", w.a, w.b, w.sum);
    }
    check_colors(c, w.color, &w.elements())
}

fn check_colors(c: &Coloring, color: Color, elements: &[u64]) -> Result<(), Violation> {
    for &e in elements {
        match c.color(e) {
            None => return violation!("element {e} outside domain {}", c.domain()),
            Some(ce) if ce != color => return violation!("color mismatch at element {e}"),
            Some(_) => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Interval;

    fn coloring(lo: u64, colors: &[u32]) -> Coloring {
        let r = colors.iter().max().map_or(1, |m| m + 1);
        Coloring::new(
            Interval::new(lo, lo + colors.len() as u64 - 1).unwrap(),
            r,
            colors.to_vec(),
        )
        .unwrap()
    }

    fn mono(lo: u64, hi: u64) -> Coloring {
        Coloring::monochrome(Interval::new(lo, hi).unwrap())
    }

    fn trial_omega(mut n: u64) -> u32 {
        // independent oracle: strip the smallest divisor repeatedly
        let mut count = 0;
        while n > 1 {
            let d = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
            n /= d;
            count += 1;
        }
        count
    }

    #[test]
    fn big_omega_examples() {
        assert_eq!(big_omega(1).unwrap(), 0);
        assert_eq!(big_omega(12).unwrap(), 3);
        assert_eq!(big_omega(16).unwrap(), 4);
        assert!(big_omega(0).is_err());
        let f = Factorization::of(360).unwrap();
        assert_eq!(f.exponents, BTreeMap::from([(2, 3), (3, 2), (5, 1)]));
        assert!(Factorization::of(1).unwrap().exponents.is_empty());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = SmallestPrimeFactors::new(2000).unwrap();
        for n in 1..=2000 {
            assert_eq!(sieve.big_omega(n).unwrap(), trial_omega(n), "n = {n}");
            assert_eq!(sieve.big_omega(n).unwrap(), big_omega(n).unwrap());
        }
        assert_eq!(sieve.smallest_prime_factor(91), Some(7));
        assert_eq!(
            sieve.factorize(360).unwrap(),
            Factorization::of(360).unwrap()
        );
        assert!(sieve.big_omega(0).is_err());
        assert!(sieve.big_omega(2001).is_err());
    }

    #[test]
    fn schur_triples_examples() {
        assert_eq!(
            find_schur_triples(&mono(1, 2), true),
            vec![SchurWitness {
                a: 1,
                b: 1,
                sum: 2,
                color: 0
            }]
        );
        assert!(find_schur_triples(&mono(1, 2), false).is_empty());
        assert!(find_schur_triples(&coloring(1, &[0, 1, 1, 0]), true).is_empty());
    }

    #[test]
    fn every_two_coloring_of_five_has_a_schur_triple() {
        for bits in 0u32..32 {
            let colors: Vec<u32> = (0..5).map(|i| (bits >> i) & 1).collect();
            let c = Coloring::new(Interval::new(1, 5).unwrap(), 2, colors).unwrap();
            assert!(!find_schur_triples(&c, true).is_empty(), "bits {bits:05b}");
        }
    }

    #[test]
    fn product_triples_examples() {
        assert_eq!(
            find_product_triples(&mono(2, 4), true),
            vec![ProductWitness {
                x: 2,
                y: 2,
                product: 4,
                color: 0
            }]
        );
        // x = 1 is never used even when 1 is in the domain
        assert!(find_product_triples(&mono(1, 3), true).is_empty());
        // Ω-lift of the sum-free coloring {1,4}/{2,3}
        let c_plus = [0u32, 1, 1, 0];
        let lifted = Coloring::from_fn(Interval::new(2, 16).unwrap(), 2, |n| {
            c_plus[big_omega(n).unwrap() as usize - 1]
        })
        .unwrap();
        assert!(find_product_triples(&lifted, true).is_empty());
    }

    #[test]
    fn sum_product_examples() {
        let q = SumProductQuery {
            n: 2,
            m: 2,
            nontrivial: true,
            weak: false,
            limit: usize::MAX,
        };
        let found = find_sum_product_configs(&mono(1, 4), q);
        assert_eq!(
            found[0],
            SumProductWitness {
                addends: vec![2, 2],
                factors: vec![2, 2],
                value: 4,
                color: 0
            }
        );
        assert_eq!(found.len(), 2);
        assert_eq!(found[1].addends, vec![3, 1]);

        assert!(find_sum_product_configs(&coloring(1, &[0, 1, 1, 0]), q).is_empty());

        let trivial = SumProductQuery {
            nontrivial: false,
            ..q
        };
        let found = find_sum_product_configs(&mono(1, 27), trivial);
        assert!(found.contains(&SumProductWitness {
            addends: vec![1, 1],
            factors: vec![1, 2],
            value: 2,
            color: 0
        }));
        for w in &found {
            verify_witness(
                &mono(1, 27),
                &Witness::SumProduct(w.clone()),
                Rules::default(),
            )
            .unwrap();
        }
    }

    #[test]
    fn sum_product_limit_and_order() {
        let q = SumProductQuery {
            n: 2,
            m: 2,
            nontrivial: true,
            weak: false,
            limit: 5,
        };
        let found = find_sum_product_configs(&mono(1, 30), q);
        assert_eq!(found.len(), 5);
        let keys: Vec<_> = found.iter().map(|w| (&w.addends, &w.factors)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn weak_mode_ignores_the_value() {
        // 2 + 2 = 2 * 2 with 4 colored differently
        let c = coloring(1, &[0, 0, 0, 1]);
        let strong = SumProductQuery {
            n: 2,
            m: 2,
            nontrivial: true,
            weak: false,
            limit: usize::MAX,
        };
        assert!(find_sum_product_configs(&c, strong).is_empty());
        let weak = find_sum_product_configs(
            &c,
            SumProductQuery {
                weak: true,
                ..strong
            },
        );
        assert!(weak
            .iter()
            .any(|w| w.addends == [2, 2] && w.factors == [2, 2]));
        // 3 + 3 = 2 * 3 even though 6 is outside the domain
        assert!(weak
            .iter()
            .any(|w| w.addends == [3, 3] && w.factors == [2, 3]));
        for w in weak {
            let rules = Rules {
                weak: true,
                nontrivial: true,
                ..Rules::default()
            };
            verify_witness(&c, &Witness::SumProduct(w), rules).unwrap();
        }
    }

    #[test]
    fn double_schur_product_examples() {
        let strict = find_double_schur_product(&mono(1, 9), false, false, usize::MAX);
        assert_eq!(strict.len(), 1);
        let w = &strict[0];
        assert_eq!((w.x.a, w.x.b, w.x.sum), (1, 2, 3));
        assert_eq!(w.x, w.y);
        assert_eq!(w.products, vec![1, 2, 3, 2, 4, 6, 3, 6, 9]);

        assert!(find_double_schur_product(&coloring(1, &[0, 1, 1, 0]), true, false, 10).is_empty());
        // nontrivial needs {2,2,4} x {2,2,4} -> 16
        assert!(find_double_schur_product(&mono(1, 15), true, true, 10).is_empty());
        assert_eq!(
            find_double_schur_product(&mono(1, 16), true, true, 10).len(),
            1
        );
    }

    #[test]
    fn verify_examples() {
        let w = Witness::Schur(SchurWitness {
            a: 1,
            b: 1,
            sum: 2,
            color: 0,
        });
        assert!(verify_witness(&mono(1, 2), &w, Rules::default()).is_ok());
        let err = verify_witness(&coloring(1, &[0, 1]), &w, Rules::default()).unwrap_err();
        assert_eq!(err.to_string(), "color mismatch at element 2");

        let bad_sum = Witness::Schur(SchurWitness {
            a: 1,
            b: 1,
            sum: 3,
            color: 0,
        });
        assert!(verify_witness(&mono(1, 3), &bad_sum, Rules::default()).is_err());

        let outside = Witness::Product(ProductWitness {
            x: 2,
            y: 3,
            product: 6,
            color: 0,
        });
        let err = verify_witness(&mono(1, 5), &outside, Rules::default()).unwrap_err();
        assert!(err.0.contains("outside domain"));

        let degenerate = Witness::SumProduct(SumProductWitness {
            addends: vec![1, 1],
            factors: vec![1, 2],
            value: 2,
            color: 0,
        });
        assert!(verify_witness(&mono(1, 2), &degenerate, Rules::default()).is_ok());
        let nontrivial = Rules {
            nontrivial: true,
            ..Rules::default()
        };
        assert!(verify_witness(&mono(1, 2), &degenerate, nontrivial).is_err());
    }
}
