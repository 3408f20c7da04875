//! Colorings that avoid configurations: the recursive sum-free coloring, the
//! Ω-lift from sums to products, and the combined certificate for the
//! sum-product threshold.

use serde::{Deserialize, Serialize};

use crate::configurations::{
    find_product_triples, find_schur_triples, find_sum_product_configs, SmallestPrimeFactors,
    SumProductQuery,
};
use crate::error::{Error, Result};
use crate::model::{Coloring, Interval, MAX_WIDTH};

/// Largest `L` whose lift domain `[2, 2^L]` fits the width cap.
const MAX_LIFT_EXPONENT: u64 = 32;

/// Above this width the sum-product self-check is replaced by the product
/// triple check alone, which implies it.
const SUM_PRODUCT_CHECK_WIDTH: u64 = 256;

/// `n ↦ c_plus(Ω(n))` on `[2, 2^L]`, for `c_plus` on `[1, L]`.
///
/// If `c_plus` has no monochromatic `{a, b, a + b}` then the result has no
/// monochromatic `{x, y, xy}`, since `Ω(xy) = Ω(x) + Ω(y)`. The hypothesis
/// is not checked here.
pub fn lift_coloring(c_plus: &Coloring) -> Result<Coloring> {
    let d = c_plus.domain();
    if d.lo() != 1 {
        return Err(Error::InvalidArgument(format!(
            "lift needs a coloring of [1, L], got {}",
            d
        )));
    }
    let l = d.hi();
    if l > MAX_LIFT_EXPONENT {
        return Err(Error::DomainTooLarge {
            width: (1u128 << l.min(127)) - 1,
            max: MAX_WIDTH,
        });
    }
    let top = 1u64 << l;
    let domain = Interval::new(2, top)?;
    let sieve = SmallestPrimeFactors::new(top)?;
    Coloring::from_fn(domain, c_plus.num_colors(), |n| {
        let omega = sieve.big_omega(n).expect("n within the sieve");
        c_plus.color(u64::from(omega)).expect("1 <= Ω(n) <= L")
    })
}

/// An `r`-coloring of `[1, (3^r - 1)/2]` without monochromatic
/// `{a, b, a + b}`, `a = b` included.
pub fn schur_lower_coloring(r: u32) -> Result<Coloring> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    let top = 3u128.checked_pow(r).map(|p| (p - 1) / 2);
    match top {
        Some(t) if t <= u128::from(MAX_WIDTH) => {}
        _ => {
            return Err(Error::DomainTooLarge {
                width: top.unwrap_or(u128::MAX),
                max: MAX_WIDTH,
            })
        }
    }
    let mut colors = vec![0u32];
    for fresh in 1..r {
        let l = colors.len();
        colors.extend(std::iter::repeat_n(fresh, l + 1));
        colors.extend_from_within(..l);
    }
    let c = Coloring::new(Interval::new(1, colors.len() as u64)?, r, colors)?;
    if let Some(t) = find_schur_triples(&c, true).first() {
        return Err(Error::SelfCheckFailure(format!(
            "sum-free construction for r = {r} contains {} + {} = {}",
            t.a, t.b, t.sum
        )));
    }
    Ok(c)
}

/// One self-check run on a certificate coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub name: String,
    pub witnesses_found: usize,
}

/// An `r`-coloring of `[1, 2^(2^r)]` with no monochromatic nontrivial
/// `{a, b, a + b, x, y, xy}`, `a + b = xy`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HLowerCertificate {
    pub coloring: Coloring,
    pub checks: Vec<SelfCheck>,
}

/// Lifts the sum-free coloring of `[1, 2^r]` and gives 1 color 0. Every
/// configuration contains a product triple with factors at least 2, so
/// avoiding those suffices.
pub fn h_lower_certificate(r: u32) -> Result<HLowerCertificate> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    if r >= 5 {
        return Err(Error::DomainTooLarge {
            width: 1u128 << (1u32 << r.min(6)).min(127),
            max: MAX_WIDTH,
        });
    }
    let coloring = if r == 1 {
        Coloring::monochrome(Interval::new(1, 2)?)
    } else {
        let base = schur_lower_coloring(r)?.restrict(Interval::new(1, 1 << r)?)?;
        let lifted = lift_coloring(&base)?;
        let mut colors = Vec::with_capacity(lifted.assignment().len() + 1);
        colors.push(0);
        colors.extend_from_slice(lifted.assignment());
        Coloring::new(Interval::new(1, lifted.domain().hi())?, r, colors)?
    };
    let mut checks = Vec::new();
    let products = find_product_triples(&coloring, true);
    checks.push(SelfCheck {
        name: "product triples".into(),
        witnesses_found: products.len(),
    });
    if coloring.domain().width() <= SUM_PRODUCT_CHECK_WIDTH {
        let configs = find_sum_product_configs(
            &coloring,
            SumProductQuery {
                n: 2,
                m: 2,
                nontrivial: true,
                weak: false,
                limit: 1,
            },
        );
        checks.push(SelfCheck {
            name: "sum-product configurations (n = m = 2, nontrivial)".into(),
            witnesses_found: configs.len(),
        });
    }
    if let Some(failed) = checks.iter().find(|c| c.witnesses_found > 0) {
        return Err(Error::SelfCheckFailure(format!(
            "lower-bound coloring for r = {r} contains {}",
            failed.name
        )));
    }
    Ok(HLowerCertificate { coloring, checks })
}
