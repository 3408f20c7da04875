//! The constructive route to a monochromatic sum-product configuration.
//!
//! Levels `S_1, ..., S_M` are built by repeated Schur steps, each on a
//! product coloring that remembers how every earlier partial product
//! `s_{i,j} = s_i * ... * s_{j-1}` colors the candidates. Coloring the pair
//! `(i, j)` by `c(s_{i,j})` and taking a monochromatic `(m + 1)`-clique
//! `i_1 < ... < i_{m+1}` then yields, with `l = i_{m+1} - 1`,
//!
//! ```text
//! addends  s_{i_1,l} * s  for s in S_l
//! factors  s_{i_1,i_2}, ..., s_{i_{m-1},i_m}, s_{i_m,l} * ΣS_l
//! ```
//!
//! whose sum and product are both `s_{i_1,l} * ΣS_l`.
//!
//! The guarantee only applies on domains as large as [`required_domain`];
//! on smaller ones the pipeline either succeeds or fails with a
//! [`Error::RamseyFailure`] naming the stage.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::configurations::{verify_witness, Rules, Violation};
use crate::error::{Error, FailureStage, Result};
use crate::model::{Color, Coloring, SumProductWitness, Witness};
use crate::ramsey::{
    find_mono_clique, ramsey_number_with_budget, schur_step_on, EdgeColoring, PairColoring,
    RamseyOutcome,
};
use crate::tower::{ramsey_upper_bound, TowerExpr};

/// One level `S_j` of a [`SequenceSystem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    /// The multiset `S_j`, as consecutive clique differences.
    pub set: Vec<u64>,
    pub sum: u64,
    /// `s_j`, the least element of `set`.
    pub distinguished: u64,
    /// The Schur step searched `[1, range]`.
    pub range: u64,
    /// The clique behind `set`.
    pub clique: Vec<u64>,
    /// `colors[i - 1]` is the color of `s_{i,j} * s` for every `s` in
    /// `set` and for `sum`, `1 <= i <= j`.
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceSystem {
    pub set_size: usize,
    pub levels: Vec<Level>,
}

impl SequenceSystem {
    /// Number of levels `M`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `s_i`, 1-based.
    pub fn distinguished(&self, i: usize) -> u64 {
        self.levels[i - 1].distinguished
    }

    /// `s_{i,j} = s_i * ... * s_{j-1}` for `1 <= i <= j <= M + 1`, or `None`
    /// on overflow.
    pub fn partial_product(&self, i: usize, j: usize) -> Option<u64> {
        assert!(
            1 <= i && i <= j && j <= self.len() + 1,
            "bad partial product ({i}, {j})"
        );
        self.levels[i - 1..j - 1]
            .iter()
            .try_fold(1u64, |acc, level| acc.checked_mul(level.distinguished))
    }

    /// `s_{i,j}` without overflow.
    pub fn partial_product_big(&self, i: usize, j: usize) -> BigUint {
        assert!(
            1 <= i && i <= j && j <= self.len() + 1,
            "bad partial product ({i}, {j})"
        );
        self.levels[i - 1..j - 1]
            .iter()
            .fold(BigUint::one(), |acc, level| acc * level.distinguished)
    }

    /// Checks the level shapes and that, for every `i <= j`, all of
    /// `s_{i,j} * s` with `s` in `S_j` or `s = ΣS_j` share the color recorded
    /// in `colors[i - 1]`.
    pub fn check(&self, c: &Coloring) -> std::result::Result<(), Violation> {
        for (jx, level) in self.levels.iter().enumerate() {
            let j = jx + 1;
            if level.set.len() != self.set_size {
                return Err(Violation(format!(
                    "level {j} has {} elements",
                    level.set.len()
                )));
            }
            if level.set.iter().try_fold(0u64, |a, &s| a.checked_add(s)) != Some(level.sum) {
                return Err(Violation(format!("level {j} sum mismatch")));
            }
            if level.set.iter().min() != Some(&level.distinguished) {
                return Err(Violation(format!(
                    "level {j} distinguished element is not its least"
                )));
            }
            let diffs: Vec<u64> = level
                .clique
                .windows(2)
                .map(|w| w[1].wrapping_sub(w[0]))
                .collect();
            if level.clique.len() != self.set_size + 1 || diffs != level.set {
                return Err(Violation(format!("level {j} set differs from its clique")));
            }
            if level.colors.len() != j {
                return Err(Violation(format!(
                    "level {j} records {} colors",
                    level.colors.len()
                )));
            }
            for i in 1..=j {
                let prefix = self
                    .partial_product(i, j)
                    .ok_or_else(|| Violation(format!("s_({i},{j}) overflows")))?;
                for &s in level.set.iter().chain(std::iter::once(&level.sum)) {
                    let e = prefix
                        .checked_mul(s)
                        .ok_or_else(|| Violation(format!("s_({i},{j}) * {s} overflows")))?;
                    match c.color(e) {
                        None => {
                            return Err(Violation(format!(
                                "element {e} outside domain {}",
                                c.domain()
                            )))
                        }
                        Some(color) if color != level.colors[i - 1] => {
                            return Err(Violation(format!(
                                "color of s_({i},{j}) * {s} = {e} differs from level color"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds `count` levels over `c`, whose domain must start at 1.
pub fn build_sequences(c: &Coloring, n: usize, count: usize) -> Result<SequenceSystem> {
    if c.domain().lo() != 1 {
        return Err(Error::InvalidArgument(format!(
            "sequence construction needs a domain starting at 1, got {}",
            c.domain()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("set size must be at least 1".into()));
    }
    let hi = c.domain().hi();
    let mut levels: Vec<Level> = Vec::with_capacity(count);
    for j in 1..=count {
        // multipliers[i - 1] = s_{i,j}; the last one is 1
        let mut multipliers = vec![1u64; j];
        for i in (1..j).rev() {
            multipliers[i - 1] = multipliers[i].saturating_mul(levels[i - 1].distinguished);
        }
        let range = hi / multipliers[0];
        let failure = Error::RamseyFailure {
            stage: FailureStage::Sequence { level: j },
            range,
        };
        if range == 0 {
            return Err(failure);
        }
        let ids = tuple_coloring(c, &multipliers, range);
        let step = schur_step_on(&ids, n).ok_or(failure)?;
        let colors = multipliers
            .iter()
            .map(|&p| {
                c.color(p * step.sum)
                    .expect("product within the searched range")
            })
            .collect();
        levels.push(Level {
            distinguished: *step.set.iter().min().expect("nonempty set"),
            set: step.set,
            sum: step.sum,
            range,
            clique: step.clique,
            colors,
        });
    }
    Ok(SequenceSystem {
        set_size: n,
        levels,
    })
}

/// Colors `t` in `[1, range]` by the tuple `(c(p * t))` over `multipliers`,
/// with tuples numbered by first appearance.
fn tuple_coloring(c: &Coloring, multipliers: &[u64], range: u64) -> Vec<Color> {
    let mut ids: HashMap<Vec<Color>, Color> = HashMap::new();
    let mut out = Vec::with_capacity(range as usize);
    let mut tuple = Vec::with_capacity(multipliers.len());
    for t in 1..=range {
        tuple.clear();
        tuple.extend(
            multipliers
                .iter()
                .map(|&p| c.color(p * t).expect("in domain")),
        );
        let next = ids.len() as Color;
        let id = *ids.entry(tuple.clone()).or_insert(next);
        out.push(id);
    }
    out
}

/// Full transcript of one extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionCertificate {
    pub system: SequenceSystem,
    /// `i_1 < ... < i_{m+1}`, 1-based level indices.
    pub clique: Vec<usize>,
    /// `i_{m+1} - 1`.
    pub l: usize,
    pub witness: SumProductWitness,
    pub pair_color: Color,
    /// Some factor equals 1.
    pub degenerate: bool,
}

impl ExtractionCertificate {
    /// Re-derives every field from the system and clique and checks the
    /// witness against `c`.
    pub fn verify(&self, c: &Coloring) -> std::result::Result<(), Violation> {
        let fail = |msg: String| Err(Violation(msg));
        self.system.check(c)?;
        let k = self.clique.len();
        let m = self.witness.factors.len();
        if k < 2 || k != m + 1 {
            return fail(format!("clique of size {k} for {m} factors"));
        }
        if self.clique.windows(2).any(|w| w[0] >= w[1])
            || self.clique[0] < 1
            || self.clique[k - 1] > self.system.len()
        {
            return fail(format!(
                "clique {:?} is not increasing within the levels",
                self.clique
            ));
        }
        if self.l + 1 != self.clique[k - 1] {
            return fail(format!(
                "l = {} but the clique ends at {}",
                self.l,
                self.clique[k - 1]
            ));
        }
        for (g, &i) in self.clique.iter().enumerate() {
            for &j in &self.clique[g + 1..] {
                let s = self
                    .system
                    .partial_product(i, j)
                    .ok_or_else(|| Violation(format!("s_({i},{j}) overflows")))?;
                if c.color(s) != Some(self.pair_color) {
                    return fail(format!(
                        "pair ({i},{j}) does not have color {}",
                        self.pair_color
                    ));
                }
            }
        }
        let expected = assemble(&self.system, &self.clique, self.pair_color)
            .ok_or_else(|| Violation("witness elements overflow".into()))?;
        if expected != self.witness {
            return fail("witness differs from the one the clique determines".into());
        }
        let sum: BigUint = self.witness.addends.iter().map(|&a| BigUint::from(a)).sum();
        let product: BigUint = self
            .witness
            .factors
            .iter()
            .map(|&x| BigUint::from(x))
            .product();
        if sum != product || sum != BigUint::from(self.witness.value) {
            return fail(format!("sum {sum} and product {product} disagree"));
        }
        if self.degenerate != self.witness.has_degenerate_factor() {
            return fail("degenerate flag is wrong".into());
        }
        let rules = Rules {
            allow_equal: true,
            nontrivial: false,
            weak: false,
        };
        verify_witness(c, &Witness::SumProduct(self.witness.clone()), rules)
    }
}

/// The witness determined by a clique; `None` on overflow.
fn assemble(system: &SequenceSystem, clique: &[usize], color: Color) -> Option<SumProductWitness> {
    let k = clique.len();
    let l = clique[k - 1] - 1;
    let level = &system.levels[l - 1];
    let lead = system.partial_product(clique[0], l)?;
    let addends = level
        .set
        .iter()
        .map(|&s| lead.checked_mul(s))
        .collect::<Option<Vec<_>>>()?;
    let mut factors = clique
        .windows(2)
        .take(k - 2)
        .map(|w| system.partial_product(w[0], w[1]))
        .collect::<Option<Vec<_>>>()?;
    factors.push(
        system
            .partial_product(clique[k - 2], l)?
            .checked_mul(level.sum)?,
    );
    Some(SumProductWitness {
        addends,
        factors,
        value: lead.checked_mul(level.sum)?,
        color,
    })
}

/// Budget for the exact `R(m + 1; r)` computation. The defaults settle
/// `R(k; 1)` and `R(3; 2)` but not `R(3; 3) = 17` or `R(4; 2) = 18`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionOptions {
    pub ramsey_cap: usize,
    pub ramsey_nodes: u64,
}

impl Default for ExtractionOptions {
    fn default() -> Self {
        ExtractionOptions {
            ramsey_cap: 12,
            ramsey_nodes: 2_000_000,
        }
    }
}

/// Runs the pipeline with `n` addends and `m` factors.
pub fn extract_configuration(c: &Coloring, n: usize, m: usize) -> Result<ExtractionCertificate> {
    extract_configuration_with(c, n, m, ExtractionOptions::default())
}

pub fn extract_configuration_with(
    c: &Coloring,
    n: usize,
    m: usize,
    options: ExtractionOptions,
) -> Result<ExtractionCertificate> {
    if n < 2 || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "extraction needs n >= 2 and m >= 2, got n = {n}, m = {m}"
        )));
    }
    let r = c.num_colors();
    let count = ramsey_number_with_budget(m + 1, r, options.ramsey_cap, options.ramsey_nodes)?
        .exact()
        .ok_or_else(|| Error::CapExceeded {
            what: format!("R({}; {r})", m + 1),
        })?;
    let system = build_sequences(c, n, count)?;
    let pairs = EdgeColoring::from_fn(count, r, |i, j| {
        let s = system.partial_product(i, j).expect("divides s_(1,M)");
        c.color(s).expect("s_(1,M) lies in the domain")
    })?;
    let clique = find_mono_clique(&pairs, m + 1).ok_or(Error::RamseyFailure {
        stage: FailureStage::PairClique,
        range: pairs.num_vertices() as u64,
    })?;
    let witness = assemble(&system, &clique.vertices, clique.color)
        .expect("witness elements lie in the domain");
    let cert = ExtractionCertificate {
        l: clique.vertices[m] - 1,
        clique: clique.vertices,
        degenerate: witness.has_degenerate_factor(),
        witness,
        pair_color: clique.color,
        system,
    };
    cert.verify(c)
        .map_err(|v| Error::SelfCheckFailure(format!("extraction certificate: {v}")))?;
    Ok(cert)
}

/// One `R(k; q)` appearing in [`RequiredDomain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseySubstitution {
    pub clique_size: u64,
    pub colors: TowerExpr,
    pub value: TowerExpr,
    /// `value` is the exact Ramsey number rather than an upper bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequiredDomain {
    pub expr: TowerExpr,
    pub substitutions: Vec<RamseySubstitution>,
}

const DOMAIN_RAMSEY_CAP: usize = 16;
const DOMAIN_RAMSEY_NODES: u64 = 200_000;

/// `R(n + 1; r^M)^M` with `M = R(m + 1; r)`, each Ramsey number exact when
/// a small search settles it and an upper bound otherwise.
pub fn required_domain(n: usize, m: usize, r: u32) -> Result<RequiredDomain> {
    if n < 2 || m < 2 || r == 0 {
        return Err(Error::InvalidArgument(format!(
            "required domain needs n, m >= 2 and r >= 1, got n = {n}, m = {m}, r = {r}"
        )));
    }
    let mut substitutions = Vec::new();
    let count = substitute(
        m as u64 + 1,
        TowerExpr::lit(u64::from(r)),
        &mut substitutions,
    );
    let colors = TowerExpr::pow(TowerExpr::lit(u64::from(r)), count.clone());
    let base = substitute(n as u64 + 1, colors, &mut substitutions);
    Ok(RequiredDomain {
        expr: TowerExpr::pow(base, count),
        substitutions,
    })
}

fn substitute(k: u64, colors: TowerExpr, log: &mut Vec<RamseySubstitution>) -> TowerExpr {
    let exact = colors
        .as_literal()
        .and_then(|q| u32::try_from(q).ok())
        .and_then(|q| {
            ramsey_number_with_budget(k as usize, q, DOMAIN_RAMSEY_CAP, DOMAIN_RAMSEY_NODES).ok()
        })
        .and_then(|outcome| match outcome {
            RamseyOutcome::Exact { value, .. } => Some(value as u64),
            RamseyOutcome::LowerBound { .. } => None,
        });
    let value = match exact {
        Some(v) => TowerExpr::lit(v),
        None => ramsey_upper_bound(k, colors.clone()),
    };
    log.push(RamseySubstitution {
        clique_size: k,
        colors,
        value: value.clone(),
        exact: exact.is_some(),
    });
    value
}
