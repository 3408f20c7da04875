//! Colorings of integer intervals, the witnesses found in them, and their
//! serialized forms.
//!
//! Two coloring formats are supported. The text form is
//!
//! ```text
//! schur-coloring v1 <lo> <hi> <r>
//! <c_lo> <c_lo+1> ... <c_hi>
//! ```
//!
//! with every line terminated by `\n`. The JSON form is an object with keys
//! `version`, `lo`, `hi`, `num_colors` and `colors`.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extraction::ExtractionCertificate;

/// Largest number of integers a domain may hold.
pub const MAX_WIDTH: u64 = u32::MAX as u64;

const TEXT_MAGIC: &str = "schur-coloring";
const TEXT_VERSION: &str = "v1";
const JSON_VERSION: &str = "1";

/// Color index in `[0, num_colors)`.
pub type Color = u32;

/// Inclusive integer interval `[lo, hi]` with `1 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    lo: u64,
    hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 1 || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        let width = (hi - lo) as u128 + 1;
        if width > MAX_WIDTH as u128 {
            return Err(Error::DomainTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn width(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// An r-coloring of an interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    domain: Interval,
    num_colors: u32,
    assignment: Vec<Color>,
}

impl Coloring {
    pub fn new(domain: Interval, num_colors: u32, assignment: Vec<Color>) -> Result<Self> {
        if num_colors == 0 {
            return Err(Error::InvalidArgument("num_colors must be positive".into()));
        }
        if assignment.len() as u64 != domain.width() {
            return Err(Error::InvalidArgument(format!(
                "length mismatch: domain {} holds {} integers but {} colors were given",
                domain,
                domain.width(),
                assignment.len()
            )));
        }
        if let Some((i, &c)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &c)| c >= num_colors)
        {
            return Err(Error::InvalidArgument(format!(
                "color index out of range: {} has color {} but num_colors = {}",
                domain.lo + i as u64,
                c,
                num_colors
            )));
        }
        Ok(Coloring {
            domain,
            num_colors,
            assignment,
        })
    }

    /// Every integer of `domain` gets color 0.
    pub fn monochrome(domain: Interval) -> Self {
        Coloring {
            domain,
            num_colors: 1,
            assignment: vec![0; domain.width() as usize],
        }
    }

    pub fn from_fn(
        domain: Interval,
        num_colors: u32,
        mut color: impl FnMut(u64) -> Color,
    ) -> Result<Self> {
        let assignment = (domain.lo..=domain.hi).map(&mut color).collect();
        Coloring::new(domain, num_colors, assignment)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn assignment(&self) -> &[Color] {
        &self.assignment
    }

    /// Color of `n`, or `None` outside the domain.
    #[inline]
    pub fn color(&self, n: u64) -> Option<Color> {
        if self.domain.contains(n) {
            Some(self.assignment[(n - self.domain.lo) as usize])
        } else {
            None
        }
    }

    /// The same coloring on a sub-interval of its domain.
    pub fn restrict(&self, sub: Interval) -> Result<Self> {
        if !self.domain.contains_interval(&sub) {
            return Err(Error::InvalidArgument(format!(
                "{} is not a sub-interval of {}",
                sub, self.domain
            )));
        }
        let from = (sub.lo - self.domain.lo) as usize;
        let to = (sub.hi - self.domain.lo) as usize;
        Ok(Coloring {
            domain: sub,
            num_colors: self.num_colors,
            assignment: self.assignment[from..=to].to_vec(),
        })
    }

    /// Canonical text form; see the module docs.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{TEXT_MAGIC} {TEXT_VERSION} {} {} {}\n",
            self.domain.lo, self.domain.hi, self.num_colors
        );
        let mut first = true;
        for c in &self.assignment {
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&c.to_string());
        }
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.split('\n');
        let header = lines
            .next()
            .ok_or_else(|| Error::parse(1, 0, "missing header"))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 5 || fields[0] != TEXT_MAGIC || fields[1] != TEXT_VERSION {
            return Err(Error::parse(
                1,
                0,
                format!("malformed header, expected `{TEXT_MAGIC} {TEXT_VERSION} <lo> <hi> <r>`"),
            ));
        }
        let mut offset = fields[0].len() + fields[1].len() + 2;
        let mut numbers = [0u64; 3];
        for (slot, field) in numbers.iter_mut().zip(&fields[2..]) {
            *slot = field.parse().map_err(|_| {
                Error::parse(
                    1,
                    offset,
                    format!("malformed header: `{field}` is not a natural"),
                )
            })?;
            offset += field.len() + 1;
        }
        let [lo, hi, r] = numbers;
        let domain = Interval::new(lo, hi).map_err(|e| Error::parse(1, 0, e.to_string()))?;
        let num_colors = u32::try_from(r).ok().filter(|&r| r > 0).ok_or_else(|| {
            Error::parse(
                1,
                offset - fields[4].len() - 1,
                "malformed header: bad color count",
            )
        })?;

        let body = lines
            .next()
            .ok_or_else(|| Error::parse(2, 0, "missing color line"))?;
        let mut assignment = Vec::with_capacity(domain.width() as usize);
        let mut offset = 0;
        if !body.is_empty() {
            for token in body.split(' ') {
                let c: u32 = token.parse().map_err(|_| {
                    Error::parse(2, offset, format!("`{token}` is not a color index"))
                })?;
                if c >= num_colors {
                    return Err(Error::parse(
                        2,
                        offset,
                        format!("color index out of range: {c} >= {num_colors}"),
                    ));
                }
                assignment.push(c);
                offset += token.len() + 1;
            }
        }
        if assignment.len() as u64 != domain.width() {
            return Err(Error::parse(
                2,
                0,
                format!(
                    "length mismatch: expected {} colors, found {}",
                    domain.width(),
                    assignment.len()
                ),
            ));
        }
        for (i, rest) in lines.enumerate() {
            if !rest.is_empty() {
                return Err(Error::parse(3 + i, 0, "unexpected trailing content"));
            }
        }
        Ok(Coloring {
            domain,
            num_colors,
            assignment,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    version: String,
    lo: u64,
    hi: u64,
    num_colors: u32,
    colors: Vec<Color>,
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ColoringJson {
            version: JSON_VERSION.to_string(),
            lo: self.domain.lo,
            hi: self.domain.hi,
            num_colors: self.num_colors,
            colors: self.assignment.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ColoringJson::deserialize(deserializer)?;
        if raw.version != JSON_VERSION {
            return Err(D::Error::custom(format!(
                "unsupported version `{}`",
                raw.version
            )));
        }
        let domain = Interval::new(raw.lo, raw.hi).map_err(D::Error::custom)?;
        Coloring::new(domain, raw.num_colors, raw.colors).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

pub fn read_coloring(mut source: impl Read, format: Format) -> Result<Coloring> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    match format {
        Format::Text => Coloring::from_text(&text),
        Format::Json => Coloring::from_json(&text),
    }
}

/// Reads either format, choosing JSON when the first non-blank byte is `{`.
pub fn read_coloring_auto(mut source: impl Read) -> Result<Coloring> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        Coloring::from_json(&text)
    } else {
        Coloring::from_text(&text)
    }
}

pub fn write_coloring(c: &Coloring, format: Format, mut sink: impl Write) -> Result<()> {
    match format {
        Format::Text => sink.write_all(c.to_text().as_bytes())?,
        Format::Json => {
            sink.write_all(c.to_json().as_bytes())?;
            sink.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Monochromatic `{a, b, a + b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SchurWitness {
    pub a: u64,
    pub b: u64,
    pub sum: u64,
    pub color: Color,
}

impl SchurWitness {
    pub fn elements(&self) -> Vec<u64> {
        vec![self.a, self.b, self.sum]
    }
}

/// Monochromatic `{x, y, xy}` with `2 <= x <= y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProductWitness {
    pub x: u64,
    pub y: u64,
    pub product: u64,
    pub color: Color,
}

impl ProductWitness {
    pub fn elements(&self) -> Vec<u64> {
        vec![self.x, self.y, self.product]
    }
}

/// Addends and factors with a common value `sum(addends) = prod(factors)`.
///
/// Enumerators emit addends in non-increasing and factors in non-decreasing
/// order; certificates keep the order in which the construction produced them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SumProductWitness {
    pub addends: Vec<u64>,
    pub factors: Vec<u64>,
    pub value: u64,
    pub color: Color,
}

impl SumProductWitness {
    /// Sorted multiset of every element, the value included.
    pub fn elements(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self
            .addends
            .iter()
            .chain(&self.factors)
            .copied()
            .chain(std::iter::once(self.value))
            .collect();
        all.sort_unstable();
        all
    }

    /// True when the addends, factors and value are pairwise distinct.
    pub fn is_distinct(&self) -> bool {
        let all = self.elements();
        all.windows(2).all(|w| w[0] != w[1])
    }

    /// True when some factor equals 1.
    pub fn has_degenerate_factor(&self) -> bool {
        self.factors.contains(&1)
    }
}

/// Schur triples `X`, `Y` with `X ∪ Y ∪ XY` monochromatic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoubleSchurProductWitness {
    pub x: SchurWitness,
    pub y: SchurWitness,
    /// `x_i * y_j` for `x_i` in `(a, b, sum)` of `x`, row-major over `y`.
    pub products: Vec<u64>,
    pub color: Color,
}

impl DoubleSchurProductWitness {
    pub fn elements(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self
            .x
            .elements()
            .into_iter()
            .chain(self.y.elements())
            .chain(self.products.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }
}

/// Any witness a [`crate::configurations::verify_witness`] call can check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum Witness {
    Schur(SchurWitness),
    Product(ProductWitness),
    SumProduct(SumProductWitness),
    DoubleSchurProduct(DoubleSchurProductWitness),
}

impl Witness {
    pub fn elements(&self) -> Vec<u64> {
        match self {
            Witness::Schur(w) => w.elements(),
            Witness::Product(w) => w.elements(),
            Witness::SumProduct(w) => w.elements(),
            Witness::DoubleSchurProduct(w) => w.elements(),
        }
    }

    pub fn color(&self) -> Color {
        match self {
            Witness::Schur(w) => w.color,
            Witness::Product(w) => w.color,
            Witness::SumProduct(w) => w.color,
            Witness::DoubleSchurProduct(w) => w.color,
        }
    }
}

/// Which configuration a search, enumeration or CNF export is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum PredicateTag {
    AdditiveSchur,
    MultiplicativeSchur,
    SumProduct {
        n: usize,
        m: usize,
    },
    /// The common value need not be colored.
    SumProductWeak {
        n: usize,
        m: usize,
    },
    DoubleSchurProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PredicateId {
    #[serde(flatten)]
    pub tag: PredicateTag,
    /// Permit `a = b` (and `x = y`) in triples.
    pub allow_equal: bool,
    /// Require factors (and, for the double Schur product, all triple
    /// elements) to be at least 2.
    pub nontrivial: bool,
}

impl PredicateId {
    pub fn additive_schur() -> Self {
        PredicateId {
            tag: PredicateTag::AdditiveSchur,
            allow_equal: true,
            nontrivial: false,
        }
    }

    pub fn multiplicative_schur() -> Self {
        PredicateId {
            tag: PredicateTag::MultiplicativeSchur,
            allow_equal: true,
            nontrivial: true,
        }
    }

    pub fn sum_product(n: usize, m: usize) -> Result<Self> {
        check_arity(n, m)?;
        Ok(PredicateId {
            tag: PredicateTag::SumProduct { n, m },
            allow_equal: true,
            nontrivial: true,
        })
    }

    pub fn sum_product_weak(n: usize, m: usize) -> Result<Self> {
        check_arity(n, m)?;
        Ok(PredicateId {
            tag: PredicateTag::SumProductWeak { n, m },
            allow_equal: true,
            nontrivial: true,
        })
    }

    pub fn double_schur_product() -> Self {
        PredicateId {
            tag: PredicateTag::DoubleSchurProduct,
            allow_equal: true,
            nontrivial: true,
        }
    }

    pub fn with_allow_equal(mut self, allow_equal: bool) -> Self {
        self.allow_equal = allow_equal;
        self
    }

    pub fn with_nontrivial(mut self, nontrivial: bool) -> Self {
        self.nontrivial = nontrivial;
        self
    }

    /// Parses a command-line predicate name; `n` and `m` only matter for the
    /// sum-product variants.
    pub fn parse(name: &str, n: usize, m: usize) -> Result<Self> {
        match name {
            "additive-schur" => Ok(Self::additive_schur()),
            "multiplicative-schur" => Ok(Self::multiplicative_schur()),
            "sum-product" => Self::sum_product(n, m),
            "sum-product-weak" => Self::sum_product_weak(n, m),
            "double-schur-product" => Ok(Self::double_schur_product()),
            other => Err(Error::InvalidArgument(format!(
                "unknown predicate `{other}`"
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.tag {
            PredicateTag::SumProduct { n, m } | PredicateTag::SumProductWeak { n, m } => {
                check_arity(n, m)
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            PredicateTag::AdditiveSchur => f.write_str("additive-schur")?,
            PredicateTag::MultiplicativeSchur => f.write_str("multiplicative-schur")?,
            PredicateTag::SumProduct { n, m } => write!(f, "sum-product({n},{m})")?,
            PredicateTag::SumProductWeak { n, m } => write!(f, "sum-product-weak({n},{m})")?,
            PredicateTag::DoubleSchurProduct => f.write_str("double-schur-product")?,
        }
        if !self.allow_equal {
            f.write_str(" strict")?;
        }
        if self.nontrivial {
            f.write_str(" nontrivial")?;
        }
        Ok(())
    }
}

fn check_arity(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "sum-product needs n >= 2 and m >= 2, got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// Certificate payload, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum CertificateBody {
    Schur(SchurWitness),
    Product(ProductWitness),
    SumProduct(SumProductWitness),
    DoubleSchurProduct(DoubleSchurProductWitness),
    Extraction(Box<ExtractionCertificate>),
}

impl From<Witness> for CertificateBody {
    fn from(w: Witness) -> Self {
        match w {
            Witness::Schur(w) => CertificateBody::Schur(w),
            Witness::Product(w) => CertificateBody::Product(w),
            Witness::SumProduct(w) => CertificateBody::SumProduct(w),
            Witness::DoubleSchurProduct(w) => CertificateBody::DoubleSchurProduct(w),
        }
    }
}

/// A witness bound to the coloring it was found in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub body: CertificateBody,
    pub coloring_digest: String,
}

impl Certificate {
    pub fn new(body: impl Into<CertificateBody>, coloring: &Coloring) -> Self {
        Certificate {
            body: body.into(),
            coloring_digest: coloring.digest(),
        }
    }

    pub fn matches(&self, coloring: &Coloring) -> bool {
        self.coloring_digest == coloring.digest()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_free_4() -> Coloring {
        Coloring::new(Interval::new(1, 4).unwrap(), 2, vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn reads_text_example() {
        let c = Coloring::from_text("schur-coloring v1 1 4 2\n0 1 1 0\n").unwrap();
        assert_eq!(c, sum_free_4());
        assert_eq!(c.color(2), Some(1));
        assert_eq!(c.color(5), None);
        // final newline is optional when reading
        assert_eq!(
            Coloring::from_text("schur-coloring v1 1 4 2\n0 1 1 0").unwrap(),
            c
        );
    }

    #[test]
    fn writes_text_example() {
        let c = Coloring::monochrome(Interval::new(1, 1).unwrap());
        assert_eq!(c.to_text(), "schur-coloring v1 1 1 1\n0\n");
        assert_eq!(sum_free_4().to_text(), "schur-coloring v1 1 4 2\n0 1 1 0\n");
    }

    #[test]
    fn rejects_out_of_range_color() {
        let err = Coloring::from_text("schur-coloring v1 1 4 2\n0 1 2 0\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("color index out of range"), "{msg}");
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    offset: 4,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in [
            "",
            "schur-coloring v2 1 4 2\n0 1 1 0\n",
            "schur-coloring v1 1 4\n0 1 1 0\n",
            "schur-coloring v1 0 4 2\n0 1 1 0 0\n",
            "schur-coloring v1 4 1 2\n0\n",
            "schur-coloring v1 1 4 0\n0 0 0 0\n",
            "schur-coloring v1 1 4 2\n0 1 1\n",
            "schur-coloring v1 1 4 2\n0 1 1 0 1\n",
            "schur-coloring v1 1 4 2\n0 1  1 0\n",
            "schur-coloring v1 1 4 2\n0 1 1 0 \n",
            "schur-coloring v1 1 4 2\n0 1 1 0\nextra\n",
        ] {
            assert!(Coloring::from_text(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn json_shape() {
        let json = sum_free_4().to_json();
        assert_eq!(
            json,
            r#"{"version":"1","lo":1,"hi":4,"num_colors":2,"colors":[0,1,1,0]}"#
        );
        assert_eq!(Coloring::from_json(&json).unwrap(), sum_free_4());
        assert!(Coloring::from_json(
            r#"{"version":"2","lo":1,"hi":1,"num_colors":1,"colors":[0]}"#
        )
        .is_err());
        assert!(Coloring::from_json(
            r#"{"version":"1","lo":1,"hi":2,"num_colors":1,"colors":[0]}"#
        )
        .is_err());
    }

    #[test]
    fn width_cap() {
        assert!(Interval::new(1, MAX_WIDTH).is_ok());
        assert!(matches!(
            Interval::new(1, MAX_WIDTH + 1),
            Err(Error::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn restrict_keeps_colors() {
        let c = sum_free_4();
        let sub = c.restrict(Interval::new(2, 3).unwrap()).unwrap();
        assert_eq!(sub.assignment(), &[1, 1]);
        assert!(c.restrict(Interval::new(2, 5).unwrap()).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let c = Coloring::monochrome(Interval::new(1, 2).unwrap());
        let cert = Certificate::new(
            Witness::Schur(SchurWitness {
                a: 1,
                b: 1,
                sum: 2,
                color: 0,
            }),
            &c,
        );
        let value: serde_json::Value = serde_json::to_value(&cert).unwrap();
        assert_eq!(value["kind"], "schur");
        assert_eq!(value["witness"]["sum"], 2);
        assert_eq!(value["coloring_digest"].as_str().unwrap().len(), 64);
        let back: Certificate = serde_json::from_value(value).unwrap();
        assert_eq!(back, cert);
        assert!(back.matches(&c));
    }

    #[test]
    fn digest_is_sha256_of_text() {
        // sha256("schur-coloring v1 1 1 1\n0\n")
        let c = Coloring::monochrome(Interval::new(1, 1).unwrap());
        let expected = hex::encode(Sha256::digest(b"schur-coloring v1 1 1 1\n0\n"));
        assert_eq!(c.digest(), expected);
    }

    #[test]
    fn predicate_names() {
        let p = PredicateId::parse("sum-product", 2, 3).unwrap();
        assert_eq!(p.tag, PredicateTag::SumProduct { n: 2, m: 3 });
        assert!(PredicateId::parse("sum-product", 1, 3).is_err());
        assert!(PredicateId::parse("nope", 2, 2).is_err());
        let json = serde_json::to_string(&PredicateId::additive_schur()).unwrap();
        assert_eq!(
            json,
            r#"{"tag":"additive_schur","allow_equal":true,"nontrivial":false}"#
        );
    }
}
