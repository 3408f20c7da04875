//! Edge-colored complete graphs, monochromatic cliques, small Ramsey numbers
//! and the Schur step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, FailureStage, Result};
use crate::model::{Color, Coloring};

/// A coloring of the pairs `1 <= i < j <= num_vertices`.
pub trait PairColoring {
    fn num_vertices(&self) -> usize;
    /// Color of the pair `(i, j)`, `1 <= i < j <= num_vertices`.
    fn pair_color(&self, i: usize, j: usize) -> Color;
}

/// Explicit edge coloring stored as the row-major upper triangle
/// `(1,2), (1,3), ..., (1,N), (2,3), ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EdgeColoringJson", into = "EdgeColoringJson")]
pub struct EdgeColoring {
    n: usize,
    r: u32,
    colors: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct EdgeColoringJson {
    n: usize,
    r: u32,
    colors: Vec<Color>,
}

impl TryFrom<EdgeColoringJson> for EdgeColoring {
    type Error = Error;

    fn try_from(raw: EdgeColoringJson) -> Result<Self> {
        EdgeColoring::new(raw.n, raw.r, raw.colors)
    }
}

impl From<EdgeColoring> for EdgeColoringJson {
    fn from(e: EdgeColoring) -> Self {
        EdgeColoringJson {
            n: e.n,
            r: e.r,
            colors: e.colors,
        }
    }
}

impl EdgeColoring {
    pub fn new(n: usize, r: u32, colors: Vec<Color>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("edge coloring needs r >= 1".into()));
        }
        let pairs = n * n.saturating_sub(1) / 2;
        if colors.len() != pairs {
            return Err(Error::InvalidArgument(format!(
                "K_{n} has {pairs} pairs but {} colors were given",
                colors.len()
            )));
        }
        if let Some(c) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidArgument(format!(
                "pair color {c} out of range for r = {r}"
            )));
        }
        Ok(EdgeColoring { n, r, colors })
    }

    /// Colors every pair with `color(i, j)`.
    pub fn from_fn(n: usize, r: u32, mut color: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                colors.push(color(i, j));
            }
        }
        EdgeColoring::new(n, r, colors)
    }

    pub fn num_colors(&self) -> u32 {
        self.r
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.n);
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }
}

impl PairColoring for EdgeColoring {
    fn num_vertices(&self) -> usize {
        self.n
    }

    fn pair_color(&self, i: usize, j: usize) -> Color {
        self.colors[self.index(i, j)]
    }
}

/// Pair coloring `(i, j) ↦ color(j - i)` on `len + 1` vertices, where
/// `colors[d - 1]` is the color of the difference `d`.
pub struct DifferenceColoring<'a> {
    colors: &'a [Color],
}

impl<'a> DifferenceColoring<'a> {
    pub fn new(colors: &'a [Color]) -> Self {
        DifferenceColoring { colors }
    }
}

impl PairColoring for DifferenceColoring<'_> {
    fn num_vertices(&self) -> usize {
        self.colors.len() + 1
    }

    #[inline]
    fn pair_color(&self, i: usize, j: usize) -> Color {
        self.colors[j - i - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    /// Strictly increasing, 1-based.
    pub vertices: Vec<usize>,
    pub color: Color,
}

/// Lexicographically least monochromatic `k`-clique, `k >= 2`.
pub fn find_mono_clique<P: PairColoring + ?Sized>(p: &P, k: usize) -> Option<CliqueWitness> {
    assert!(k >= 2, "clique size must be at least 2");
    let n = p.num_vertices();
    if n < k {
        return None;
    }
    let mut chosen = Vec::with_capacity(k);
    for v1 in 1..=n + 1 - k {
        for v2 in v1 + 1..=n + 2 - k {
            let color = p.pair_color(v1, v2);
            chosen.clear();
            chosen.extend([v1, v2]);
            if k == 2 {
                return Some(CliqueWitness {
                    vertices: chosen,
                    color,
                });
            }
            if k == 3 {
                // only the first common neighbour matters
                if let Some(w) = (v2 + 1..=n)
                    .find(|&w| p.pair_color(v1, w) == color && p.pair_color(v2, w) == color)
                {
                    chosen.push(w);
                    return Some(CliqueWitness {
                        vertices: chosen,
                        color,
                    });
                }
                continue;
            }
            let candidates: Vec<usize> = (v2 + 1..=n)
                .filter(|&w| p.pair_color(v1, w) == color && p.pair_color(v2, w) == color)
                .collect();
            if extend_clique(p, &mut chosen, &candidates, color, k) {
                return Some(CliqueWitness {
                    vertices: chosen,
                    color,
                });
            }
        }
    }
    None
}

fn extend_clique<P: PairColoring + ?Sized>(
    p: &P,
    chosen: &mut Vec<usize>,
    candidates: &[usize],
    color: Color,
    k: usize,
) -> bool {
    let need = k - chosen.len();
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    if need == 1 {
        chosen.push(candidates[0]);
        return true;
    }
    for (idx, &w) in candidates.iter().enumerate() {
        if candidates.len() - idx < need {
            break;
        }
        let next: Vec<usize> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&x| p.pair_color(w, x) == color)
            .collect();
        chosen.push(w);
        if extend_clique(p, chosen, &next, color, k) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Largest vertex count the Ramsey search handles (adjacency fits in `u64`).
pub const MAX_RAMSEY_VERTICES: usize = 64;

/// Default node budget for [`ramsey_number`].
pub const DEFAULT_RAMSEY_NODES: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RamseyOutcome {
    /// `R(k; r) = value`; `witness` colors `K_{value-1}` without a
    /// monochromatic `k`-clique.
    Exact {
        value: usize,
        witness: Option<EdgeColoring>,
    },
    /// `R(k; r) > colorable_up_to`.
    LowerBound {
        colorable_up_to: usize,
        witness: Option<EdgeColoring>,
        budget_exhausted: bool,
    },
}

impl RamseyOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            RamseyOutcome::Exact { value, .. } => Some(*value),
            RamseyOutcome::LowerBound { .. } => None,
        }
    }
}

/// `R(k; r)` by backtracking over edge colorings of `K_1, K_2, ...` up to
/// `cap` vertices.
pub fn ramsey_number(k: usize, r: u32, cap: usize) -> Result<RamseyOutcome> {
    ramsey_number_with_budget(k, r, cap, DEFAULT_RAMSEY_NODES)
}

pub fn ramsey_number_with_budget(
    k: usize,
    r: u32,
    cap: usize,
    max_nodes: u64,
) -> Result<RamseyOutcome> {
    if k == 0 || r == 0 || cap == 0 {
        return Err(Error::InvalidArgument(format!(
            "ramsey_number needs k, r, cap >= 1 (got k = {k}, r = {r}, cap = {cap})"
        )));
    }
    if k == 1 {
        return Ok(RamseyOutcome::Exact {
            value: 1,
            witness: None,
        });
    }
    let cap = cap.min(MAX_RAMSEY_VERTICES);
    let mut nodes = 0u64;
    let mut last = None;
    for n in 1..=cap {
        match colorable(n, k, r, &mut nodes, max_nodes) {
            Search::Found(coloring) => last = Some(coloring),
            Search::Impossible => {
                return Ok(RamseyOutcome::Exact {
                    value: n,
                    witness: last,
                })
            }
            Search::Exhausted => {
                return Ok(RamseyOutcome::LowerBound {
                    colorable_up_to: n - 1,
                    witness: last,
                    budget_exhausted: true,
                })
            }
        }
    }
    Ok(RamseyOutcome::LowerBound {
        colorable_up_to: cap,
        witness: last,
        budget_exhausted: false,
    })
}

enum Search {
    Found(EdgeColoring),
    Impossible,
    Exhausted,
}

struct EdgeSearch<'a> {
    k: usize,
    r: u32,
    edges: Vec<(usize, usize)>,
    colors: Vec<Color>,
    // adjacency[c][v]: neighbours of v (0-based) through color c
    adjacency: Vec<Vec<u64>>,
    nodes: &'a mut u64,
    max_nodes: u64,
}

/// Edges are assigned in the order (0,1), (0,2), (1,2), (0,3), ...; colors
/// are restricted to first-appearance order, which also fixes edge (1,2)
/// to color 0.
fn colorable(n: usize, k: usize, r: u32, nodes: &mut u64, max_nodes: u64) -> Search {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    let mut search = EdgeSearch {
        k,
        r,
        colors: vec![0; edges.len()],
        edges,
        adjacency: vec![vec![0u64; n]; r as usize],
        nodes,
        max_nodes,
    };
    match search.assign(0, 0) {
        Some(true) => {
            let mut by_pair = vec![vec![0; n]; n];
            for (&(u, v), &c) in search.edges.iter().zip(&search.colors) {
                by_pair[u][v] = c;
            }
            let coloring = EdgeColoring::from_fn(n, r, |i, j| by_pair[i - 1][j - 1])
                .expect("search produces a valid coloring");
            Search::Found(coloring)
        }
        Some(false) => Search::Impossible,
        None => Search::Exhausted,
    }
}

impl EdgeSearch<'_> {
    /// `Some(true)` when a completion exists, `None` on budget exhaustion.
    fn assign(&mut self, index: usize, colors_used: u32) -> Option<bool> {
        if index == self.edges.len() {
            return Some(true);
        }
        let (u, v) = self.edges[index];
        let allowed = (colors_used + 1).min(self.r);
        for c in 0..allowed {
            *self.nodes += 1;
            if *self.nodes > self.max_nodes {
                return None;
            }
            let ci = c as usize;
            let below_u = (1u64 << u) - 1;
            let common = self.adjacency[ci][u] & self.adjacency[ci][v] & below_u;
            if self.has_clique(common, self.k - 2, ci) {
                continue;
            }
            self.adjacency[ci][u] |= 1 << v;
            self.adjacency[ci][v] |= 1 << u;
            self.colors[index] = c;
            let result = self.assign(index + 1, colors_used.max(c + 1));
            self.adjacency[ci][u] &= !(1 << v);
            self.adjacency[ci][v] &= !(1 << u);
            match result {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }

    fn has_clique(&self, set: u64, size: usize, color: usize) -> bool {
        if size == 0 {
            return true;
        }
        if (set.count_ones() as usize) < size {
            return false;
        }
        let mut rest = set;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.has_clique(rest & self.adjacency[color][w], size - 1, color) {
                return true;
            }
        }
        false
    }
}

/// Result of a Schur step: a monochromatic clique of the difference coloring,
/// its consecutive differences and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurStep {
    pub clique: Vec<u64>,
    /// `clique[g + 1] - clique[g]`.
    pub set: Vec<u64>,
    pub sum: u64,
    pub color: Color,
}

/// Schur step on a coloring of `[1, N]`: the pair coloring `c(j - i)` on
/// vertices `1..=N+1` is searched for a monochromatic `(n + 1)`-clique, whose
/// consecutive differences and their sum all share one color.
pub fn schur_step(c: &Coloring, n: usize) -> Result<SchurStep> {
    if c.domain().lo() != 1 {
        return Err(Error::InvalidArgument(format!(
            "schur step needs a domain starting at 1, got {}",
            c.domain()
        )));
    }
    schur_step_on(c.assignment(), n).ok_or(Error::RamseyFailure {
        stage: FailureStage::SchurStep,
        range: c.domain().hi(),
    })
}

/// Schur step over raw colors, `colors[d - 1]` being the color of `d`.
pub fn schur_step_on(colors: &[Color], n: usize) -> Option<SchurStep> {
    assert!(n >= 1, "schur step needs a set size of at least 1");
    let clique = find_mono_clique(&DifferenceColoring::new(colors), n + 1)?;
    let vertices: Vec<u64> = clique.vertices.iter().map(|&v| v as u64).collect();
    let set: Vec<u64> = vertices.windows(2).map(|w| w[1] - w[0]).collect();
    let sum = vertices[n] - vertices[0];
    Some(SchurStep {
        clique: vertices,
        set,
        sum,
        color: clique.color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Interval;

    fn pentagon() -> EdgeColoring {
        // two 5-cycles: i~j in color 0 iff |i - j| in {1, 4}
        EdgeColoring::from_fn(5, 2, |i, j| u32::from(!matches!(j - i, 1 | 4))).unwrap()
    }

    #[test]
    fn upper_triangle_layout() {
        let e = EdgeColoring::from_fn(4, 6, |i, j| (i * 10 + j) as u32 % 6).unwrap();
        let expected: Vec<u32> = [12, 13, 14, 23, 24, 34].iter().map(|x| x % 6).collect();
        assert_eq!(e.colors(), expected.as_slice());
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert_eq!(e.pair_color(i, j), (i * 10 + j) as u32 % 6);
            }
        }
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.starts_with(r#"{"n":4,"r":6,"colors":["#));
        assert_eq!(serde_json::from_str::<EdgeColoring>(&json).unwrap(), e);
        assert!(serde_json::from_str::<EdgeColoring>(r#"{"n":3,"r":2,"colors":[0,1]}"#).is_err());
    }

    #[test]
    fn clique_examples() {
        let one = EdgeColoring::from_fn(3, 1, |_, _| 0).unwrap();
        assert_eq!(find_mono_clique(&one, 3).unwrap().vertices, vec![1, 2, 3]);
        assert_eq!(find_mono_clique(&pentagon(), 3), None);
        assert_eq!(
            find_mono_clique(&pentagon(), 2).unwrap().vertices,
            vec![1, 2]
        );
    }

    #[test]
    fn every_two_coloring_of_k6_has_a_triangle() {
        for bits in 0u32..1 << 15 {
            let mut idx = 0;
            let e = EdgeColoring::from_fn(6, 2, |_, _| {
                idx += 1;
                (bits >> (idx - 1)) & 1
            })
            .unwrap();
            assert!(find_mono_clique(&e, 3).is_some(), "bits {bits:015b}");
        }
    }

    #[test]
    fn small_ramsey_numbers() {
        assert_eq!(ramsey_number(3, 1, 10).unwrap().exact(), Some(3));
        assert_eq!(ramsey_number(2, 4, 10).unwrap().exact(), Some(2));
        assert_eq!(ramsey_number(1, 3, 10).unwrap().exact(), Some(1));
        let r32 = ramsey_number(3, 2, 10).unwrap();
        assert_eq!(r32.exact(), Some(6));
        let RamseyOutcome::Exact {
            witness: Some(k5), ..
        } = r32
        else {
            panic!("expected a K_5 witness")
        };
        assert_eq!(k5.num_vertices(), 5);
        assert_eq!(find_mono_clique(&k5, 3), None);
    }

    #[test]
    fn cap_and_budget_are_reported() {
        assert!(matches!(
            ramsey_number(3, 2, 4).unwrap(),
            RamseyOutcome::LowerBound {
                colorable_up_to: 4,
                budget_exhausted: false,
                ..
            }
        ));
        assert!(matches!(
            ramsey_number_with_budget(4, 2, 20, 1000).unwrap(),
            RamseyOutcome::LowerBound {
                budget_exhausted: true,
                ..
            }
        ));
        assert!(ramsey_number(0, 2, 4).is_err());
    }

    #[test]
    fn schur_step_examples() {
        let step = schur_step(&Coloring::monochrome(Interval::new(1, 3).unwrap()), 2).unwrap();
        assert_eq!(step.clique, vec![1, 2, 3]);
        assert_eq!(step.set, vec![1, 1]);
        assert_eq!(step.sum, 2);

        let sum_free = Coloring::new(Interval::new(1, 4).unwrap(), 2, vec![0, 1, 1, 0]).unwrap();
        assert!(matches!(
            schur_step(&sum_free, 2),
            Err(Error::RamseyFailure {
                stage: FailureStage::SchurStep,
                range: 4
            })
        ));
    }

    #[test]
    fn schur_step_succeeds_on_every_two_coloring_of_five() {
        for bits in 0u32..32 {
            let colors: Vec<u32> = (0..5).map(|i| (bits >> i) & 1).collect();
            let c = Coloring::new(Interval::new(1, 5).unwrap(), 2, colors).unwrap();
            let step = schur_step(&c, 2).unwrap();
            for e in step.set.iter().chain([&step.sum]) {
                assert_eq!(c.color(*e), Some(step.color));
            }
            assert_eq!(step.set.iter().sum::<u64>(), step.sum);
        }
    }
}
