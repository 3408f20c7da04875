//! Extremal search: how far `[start, N]` can be colored while avoiding a
//! configuration, and CNF export of the same question.

mod cnf;
mod constraints;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configurations::find_witnesses;
use crate::error::{Error, Result};
use crate::model::{Color, Coloring, Interval, PredicateId};

pub use cnf::{export_cnf, Cnf};
pub use constraints::instances;
use constraints::ConstraintTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchResult {
    /// Every coloring of `[start, forced_at]` contains a configuration;
    /// `avoiding_coloring` covers `[start, forced_at - 1]` when that is
    /// nonempty.
    Forced {
        forced_at: u64,
        avoiding_coloring: Option<Coloring>,
    },
    /// `coloring` avoids the configuration on `[start, lower_bound]`.
    LowerBound {
        lower_bound: u64,
        coloring: Option<Coloring>,
        cap_hit: bool,
        budget_exhausted: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub predicate: PredicateId,
    pub num_colors: u32,
    pub start: u64,
    pub cap: u64,
    pub result: SearchResult,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn forced_at(&self) -> Option<u64> {
        match self.result {
            SearchResult::Forced { forced_at, .. } => Some(forced_at),
            SearchResult::LowerBound { .. } => None,
        }
    }

    /// Largest `N` with a known avoiding coloring of `[start, N]`, or
    /// `start - 1` if there is none.
    pub fn avoidable_up_to(&self) -> u64 {
        match self.result {
            SearchResult::Forced { forced_at, .. } => forced_at - 1,
            SearchResult::LowerBound { lower_bound, .. } => lower_bound,
        }
    }

    /// The avoiding coloring carried by the result.
    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.result {
            SearchResult::Forced {
                avoiding_coloring, ..
            } => avoiding_coloring.as_ref(),
            SearchResult::LowerBound { coloring, .. } => coloring.as_ref(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 1 runs a single deterministic DFS.
    pub jobs: usize,
    pub max_nodes: u64,
    pub record_time: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            max_nodes: 2_000_000_000,
            record_time: false,
        }
    }
}

/// Prefix length used to split the tree across workers.
const SHARD_DEPTH: usize = 8;

/// Depth-first search over colorings of `start, start + 1, ...` up to `cap`.
pub fn search_extremal(
    predicate: &PredicateId,
    r: u32,
    cap: u64,
    start: u64,
    options: SearchOptions,
) -> Result<SearchOutcome> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    if cap < start {
        return Err(Error::InvalidArgument(format!(
            "cap {cap} is below start {start}"
        )));
    }
    let started = Instant::now();
    let table = ConstraintTable::new(predicate, start, cap)?;
    let width = (cap - start + 1) as usize;
    let budget = AtomicU64::new(0);
    let shared = Shared {
        table: &table,
        r,
        width,
        max_nodes: options.max_nodes,
        nodes: &budget,
        cap_shard: AtomicUsize::new(usize::MAX),
        exhausted: AtomicBool::new(false),
    };

    let prefixes = if options.jobs > 1 {
        shared.prefixes(SHARD_DEPTH.min(width))
    } else {
        Vec::new()
    };
    let best = if prefixes.is_empty() {
        shared.run_from(0, Vec::new())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        let results: Vec<Best> = pool.install(|| {
            prefixes
                .into_par_iter()
                .enumerate()
                .map(|(i, prefix)| shared.run_from(i, prefix))
                .collect()
        });
        // the earliest shard reaching the deepest level is what a single
        // DFS would have reported
        let deepest = results.iter().map(|b| b.depth).max().unwrap_or(0);
        results
            .into_iter()
            .find(|b| b.depth == deepest)
            .unwrap_or_default()
    };

    let exhausted = shared.exhausted.load(Ordering::Relaxed);
    let coloring = match best.colors.len() {
        0 => None,
        len => Some(Coloring::new(
            Interval::new(start, start + len as u64 - 1)?,
            r,
            best.colors.clone(),
        )?),
    };
    if let Some(c) = &coloring {
        if let Some(w) = find_witnesses(c, predicate, 1).first() {
            return Err(Error::SelfCheckFailure(format!(
                "search returned a coloring containing {:?}",
                w.elements()
            )));
        }
    }
    let reached = start + best.depth as u64 - 1;
    let result = if best.depth == width {
        SearchResult::LowerBound {
            lower_bound: cap,
            coloring,
            cap_hit: true,
            budget_exhausted: false,
        }
    } else if exhausted {
        SearchResult::LowerBound {
            lower_bound: reached,
            coloring,
            cap_hit: false,
            budget_exhausted: true,
        }
    } else {
        SearchResult::Forced {
            forced_at: reached + 1,
            avoiding_coloring: coloring,
        }
    };
    Ok(SearchOutcome {
        predicate: *predicate,
        num_colors: r,
        start,
        cap,
        result,
        stats: SearchStats {
            nodes: budget.load(Ordering::Relaxed),
            elapsed_ms: options
                .record_time
                .then(|| started.elapsed().as_millis() as u64),
        },
    })
}

#[derive(Debug, Clone, Default)]
struct Best {
    depth: usize,
    colors: Vec<Color>,
}

struct Shared<'a> {
    table: &'a ConstraintTable,
    r: u32,
    width: usize,
    max_nodes: u64,
    nodes: &'a AtomicU64,
    /// Lowest shard index that colored the whole width.
    cap_shard: AtomicUsize,
    exhausted: AtomicBool,
}

enum Flow {
    Continue,
    Stop,
}

impl Shared<'_> {
    /// Valid prefixes of length `depth` in DFS order. Shorter dead ends can
    /// be ignored whenever some prefix exists, since the search then reaches
    /// at least `depth`.
    fn prefixes(&self, depth: usize) -> Vec<Vec<Color>> {
        let mut out = Vec::new();
        let mut colors = Vec::with_capacity(depth);
        self.collect_prefixes(depth, &mut colors, 0, &mut out);
        out
    }

    fn collect_prefixes(
        &self,
        depth: usize,
        colors: &mut Vec<Color>,
        used: u32,
        out: &mut Vec<Vec<Color>>,
    ) {
        let t = colors.len();
        if t == depth {
            out.push(colors.clone());
            return;
        }
        for c in 0..(used + 1).min(self.r) {
            if !self.table.conflicts(colors, t, c) {
                colors.push(c);
                self.collect_prefixes(depth, colors, used.max(c + 1), out);
                colors.pop();
            }
        }
    }

    fn run_from(&self, shard: usize, prefix: Vec<Color>) -> Best {
        let used = prefix.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut colors = prefix;
        let mut best = Best {
            depth: colors.len(),
            colors: colors.clone(),
        };
        colors.reserve(self.width - colors.len());
        self.dfs(shard, &mut colors, used, &mut best);
        best
    }

    fn dfs(&self, shard: usize, colors: &mut Vec<Color>, used: u32, best: &mut Best) -> Flow {
        let t = colors.len();
        if t == self.width {
            self.cap_shard.fetch_min(shard, Ordering::Relaxed);
            return Flow::Stop;
        }
        if self.cap_shard.load(Ordering::Relaxed) < shard {
            return Flow::Stop;
        }
        for c in 0..(used + 1).min(self.r) {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
                self.exhausted.store(true, Ordering::Relaxed);
                return Flow::Stop;
            }
            if self.table.conflicts(colors, t, c) {
                continue;
            }
            colors.push(c);
            if t + 1 > best.depth {
                best.depth = t + 1;
                best.colors.clone_from(colors);
            }
            let flow = self.dfs(shard, colors, used.max(c + 1), best);
            colors.pop();
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}
