//! Enumerators, searches and the clique finder against direct brute force.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumprod_core::configurations::{
    find_double_schur_product, find_product_triples, find_schur_triples, find_sum_product_configs,
    SumProductQuery,
};
use sumprod_core::ramsey::{find_mono_clique, ramsey_number, EdgeColoring, PairColoring};
use sumprod_core::search::{search_extremal, SearchOptions};
use sumprod_core::{Coloring, Interval, PredicateId};

fn coloring(lo: u64, colors: Vec<u32>, r: u32) -> Coloring {
    Coloring::new(
        Interval::new(lo, lo + colors.len() as u64 - 1).unwrap(),
        r,
        colors,
    )
    .unwrap()
}

/// All colorings of `[lo, lo + width - 1]` with `r` colors.
fn every_coloring(lo: u64, width: u32, r: u32) -> impl Iterator<Item = Coloring> {
    let total = (r as u64).pow(width);
    (0..total).map(move |mut code| {
        let colors = (0..width)
            .map(|_| {
                let c = (code % r as u64) as u32;
                code /= r as u64;
                c
            })
            .collect();
        coloring(lo, colors, r)
    })
}

fn members(c: &Coloring) -> Vec<u64> {
    (c.domain().lo()..=c.domain().hi()).collect()
}

fn same(c: &Coloring, xs: &[u64]) -> bool {
    let first = c.color(xs[0]);
    first.is_some() && xs.iter().all(|&x| c.color(x) == first)
}

fn brute_schur(c: &Coloring, allow_equal: bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in members(c) {
        for b in members(c) {
            if (a < b || (allow_equal && a == b)) && same(c, &[a, b, a + b]) {
                out.push((a, b));
            }
        }
    }
    out
}

fn brute_product(c: &Coloring, allow_equal: bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in members(c) {
        for y in members(c) {
            if x >= 2 && (x < y || (allow_equal && x == y)) && same(c, &[x, y, x * y]) {
                out.push((x, y));
            }
        }
    }
    out
}

type Config = (Vec<u64>, Vec<u64>);

/// `a_1 >= a_2`, `x_1 <= x_2`, every element (the value included unless
/// `weak`) in the domain and one color.
fn brute_sum_product(c: &Coloring, nontrivial: bool, weak: bool) -> BTreeSet<Config> {
    let mut out = BTreeSet::new();
    for a1 in members(c) {
        for a2 in members(c) {
            for x1 in members(c) {
                for x2 in members(c) {
                    if a1 < a2 || x1 > x2 || a1 + a2 != x1 * x2 {
                        continue;
                    }
                    if nontrivial && x1 < 2 {
                        continue;
                    }
                    let mut all = vec![a1, a2, x1, x2];
                    if !weak {
                        all.push(a1 + a2);
                    }
                    if same(c, &all) {
                        out.insert((vec![a1, a2], vec![x1, x2]));
                    }
                }
            }
        }
    }
    out
}

fn enumerated_sum_product(c: &Coloring, nontrivial: bool, weak: bool) -> BTreeSet<Config> {
    let q = SumProductQuery {
        n: 2,
        m: 2,
        nontrivial,
        weak,
        limit: usize::MAX,
    };
    let found = find_sum_product_configs(c, q);
    let set: BTreeSet<Config> = found
        .iter()
        .map(|w| (w.addends.clone(), w.factors.clone()))
        .collect();
    assert_eq!(set.len(), found.len(), "duplicates in {found:?}");
    set
}

fn brute_double(c: &Coloring, allow_equal: bool) -> BTreeSet<(u64, u64, u64, u64)> {
    let triples = brute_schur(c, allow_equal);
    let mut out = BTreeSet::new();
    for &(x1, x2) in &triples {
        for &(y1, y2) in &triples {
            if (x1, x2) > (y1, y2) {
                continue;
            }
            let xs = [x1, x2, x1 + x2];
            let ys = [y1, y2, y1 + y2];
            let mut all: Vec<u64> = xs.iter().chain(&ys).copied().collect();
            all.extend(xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)));
            if same(c, &all) {
                out.insert((x1, x2, y1, y2));
            }
        }
    }
    out
}

fn check_all(c: &Coloring) {
    for allow_equal in [true, false] {
        let fast: Vec<(u64, u64)> = find_schur_triples(c, allow_equal)
            .iter()
            .map(|w| (w.a, w.b))
            .collect();
        assert_eq!(fast, brute_schur(c, allow_equal), "schur triples of {c:?}");
        let fast: Vec<(u64, u64)> = find_product_triples(c, allow_equal)
            .iter()
            .map(|w| (w.x, w.y))
            .collect();
        assert_eq!(
            fast,
            brute_product(c, allow_equal),
            "product triples of {c:?}"
        );
    }
    for nontrivial in [true, false] {
        for weak in [true, false] {
            assert_eq!(
                enumerated_sum_product(c, nontrivial, weak),
                brute_sum_product(c, nontrivial, weak),
                "sum-product (nontrivial {nontrivial}, weak {weak}) of {c:?}"
            );
        }
    }
    let fast: BTreeSet<_> = find_double_schur_product(c, true, false, usize::MAX)
        .iter()
        .map(|w| (w.x.a, w.x.b, w.y.a, w.y.b))
        .collect();
    assert_eq!(fast, brute_double(c, true), "double schur product of {c:?}");
}

#[test]
fn exhaustive_small_intervals() {
    for lo in [1, 2, 3] {
        for width in 1..=8 {
            for r in 1..=2 {
                for c in every_coloring(lo, width, r) {
                    check_all(&c);
                }
            }
        }
    }
}

#[test]
fn sampled_wider_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..150 {
        let lo = rng.gen_range(1..=3);
        let width = rng.gen_range(9..=40);
        let r = rng.gen_range(1..=3);
        let colors = (0..width).map(|_| rng.gen_range(0..r)).collect();
        check_all(&coloring(lo, colors, r));
    }
}

#[test]
fn exactly_two_sum_free_colorings_of_four() {
    let avoiding: Vec<Vec<u32>> = every_coloring(1, 4, 2)
        .filter(|c| brute_schur(c, true).is_empty())
        .map(|c| c.assignment().to_vec())
        .collect();
    assert_eq!(avoiding, vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
}

/// Plain backtracking over every coloring, re-checking all configurations
/// after each assignment.
fn brute_forced_at(r: u32, lo: u64, cap: u64, bad: &dyn Fn(&Coloring) -> bool) -> Option<u64> {
    fn extend(
        colors: &mut Vec<u32>,
        r: u32,
        lo: u64,
        cap: u64,
        bad: &dyn Fn(&Coloring) -> bool,
    ) -> u64 {
        let reached = lo + colors.len() as u64 - 1;
        if reached == cap {
            return cap;
        }
        let mut best = reached;
        for c in 0..r {
            colors.push(c);
            if !bad(&coloring(lo, colors.clone(), r)) {
                best = best.max(extend(colors, r, lo, cap, bad));
            }
            colors.pop();
            if best == cap {
                break;
            }
        }
        best
    }
    let mut colors = vec![0];
    let best = extend(&mut colors, r, lo, cap, bad);
    (best < cap).then_some(best + 1)
}

type Case<'a> = (PredicateId, u32, u64, u64, &'a dyn Fn(&Coloring) -> bool);

#[test]
fn search_matches_plain_backtracking() {
    let additive = |c: &Coloring| !brute_schur(c, true).is_empty();
    let product = |c: &Coloring| !brute_product(c, true).is_empty();
    let sum_product = |c: &Coloring| !brute_sum_product(c, true, false).is_empty();
    let cases: Vec<Case> = vec![
        (PredicateId::additive_schur(), 1, 10, 1, &additive),
        (PredicateId::additive_schur(), 2, 10, 1, &additive),
        (PredicateId::additive_schur(), 3, 15, 1, &additive),
        (PredicateId::multiplicative_schur(), 2, 40, 2, &product),
        (
            PredicateId::sum_product(2, 2).unwrap(),
            1,
            20,
            1,
            &sum_product,
        ),
    ];
    for (p, r, cap, start, bad) in cases {
        let out = search_extremal(&p, r, cap, start, SearchOptions::default()).unwrap();
        assert_eq!(
            out.forced_at(),
            brute_forced_at(r, start, cap, bad),
            "{p} r = {r}"
        );
    }
}

fn brute_clique(e: &EdgeColoring, k: usize) -> Option<Vec<usize>> {
    let n = e.num_vertices();
    // k-subsets in lexicographic order
    let mut idx: Vec<usize> = (1..=k).collect();
    if k > n {
        return None;
    }
    loop {
        let c = e.pair_color(idx[0], idx[1]);
        let mono = idx
            .iter()
            .enumerate()
            .all(|(g, &i)| idx[g + 1..].iter().all(|&j| e.pair_color(i, j) == c));
        if mono {
            return Some(idx);
        }
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos {
            pos -= 1;
        }
        if pos == 0 {
            return None;
        }
        idx[pos - 1] += 1;
        for q in pos..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

#[test]
fn clique_search_matches_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=10);
        let r = rng.gen_range(1..=3);
        let k = rng.gen_range(2..=n.min(5));
        let e = EdgeColoring::from_fn(n, r, |_, _| rng.gen_range(0..r)).unwrap();
        let fast = find_mono_clique(&e, k).map(|w| w.vertices);
        assert_eq!(fast, brute_clique(&e, k), "n = {n}, k = {k}, {e:?}");
    }
}

#[test]
fn every_two_coloring_of_six_vertices_has_a_triangle() {
    for code in 0u32..(1 << 15) {
        let mut bit = 0;
        let e = EdgeColoring::from_fn(6, 2, |_, _| {
            bit += 1;
            (code >> (bit - 1)) & 1
        })
        .unwrap();
        assert!(find_mono_clique(&e, 3).is_some());
    }
    let outcome = ramsey_number(3, 2, 10).unwrap();
    assert_eq!(outcome.exact(), Some(6));
}
