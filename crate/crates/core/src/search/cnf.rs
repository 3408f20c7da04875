//! DIMACS export of avoidance problems.
//!
//! Variable `v(n, c) = (n - start) * r + c + 1` says that `n` gets color `c`.
//! Each integer gets an at-least-one clause and each instance, for each
//! color, a clause forbidding it to be monochromatic in that color. There
//! are no at-most-one clauses: from any model, picking any true color per
//! integer yields an avoiding coloring.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Coloring, PredicateId};

use super::constraints::instances;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub comments: Vec<String>,
    pub num_vars: u64,
    pub clauses: Vec<Vec<i64>>,
    start: u64,
    num_colors: u32,
}

impl Cnf {
    /// Variable of "`n` has color `c`".
    pub fn var(&self, n: u64, c: u32) -> i64 {
        ((n - self.start) * u64::from(self.num_colors) + u64::from(c) + 1) as i64
    }

    /// Assignment (indexed by variable, slot 0 unused) induced by `c`.
    pub fn assignment_of(&self, c: &Coloring) -> Vec<bool> {
        let mut values = vec![false; self.num_vars as usize + 1];
        for n in c.domain().lo()..=c.domain().hi() {
            let color = c.color(n).expect("in domain");
            values[self.var(n, color) as usize] = true;
        }
        values
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| values[lit.unsigned_abs() as usize] == (lit > 0))
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for line in &self.comments {
            writeln!(out, "c {line}").expect("string write");
        }
        writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len()).expect("string write");
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").expect("string write");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Avoidance CNF for colorings of `[start, hi]` with `r` colors.
pub fn export_cnf(predicate: &PredicateId, r: u32, start: u64, hi: u64) -> Result<Cnf> {
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    let sets = instances(predicate, start, hi)?;
    let width = hi - start + 1;
    let mut cnf = Cnf {
        comments: vec![
            format!("avoidance of {predicate} on [{start}, {hi}] with {r} colors"),
            format!(
                "variable v(n, c) = (n - {start}) * {r} + c + 1 means n has color c, 0 <= c < {r}"
            ),
            format!("{width} at-least-one clauses, then {r} clauses per instance"),
        ],
        num_vars: width * u64::from(r),
        clauses: Vec::with_capacity(width as usize + sets.len() * r as usize),
        start,
        num_colors: r,
    };
    for n in start..=hi {
        let clause = (0..r).map(|c| cnf.var(n, c)).collect();
        cnf.clauses.push(clause);
    }
    for set in &sets {
        for c in 0..r {
            let clause = set.iter().map(|&e| -cnf.var(e, c)).collect();
            cnf.clauses.push(clause);
        }
    }
    Ok(cnf)
}
