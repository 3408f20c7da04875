//! Configuration instances as sets of integers that must not be monochromatic.

use crate::configurations::find_witnesses;
use crate::error::Result;
use crate::model::{Coloring, Interval, PredicateId};

/// Every configuration of `predicate` inside `[start, hi]`, each given by its
/// distinct elements in increasing order. Instances are sorted by their
/// largest element, then lexicographically, without duplicates.
///
/// On a one-color domain every configuration is monochromatic, so the
/// enumerators list them all.
pub fn instances(predicate: &PredicateId, start: u64, hi: u64) -> Result<Vec<Vec<u64>>> {
    predicate.validate()?;
    let c = Coloring::monochrome(Interval::new(start, hi)?);
    let mut sets: Vec<Vec<u64>> = find_witnesses(&c, predicate, usize::MAX)
        .into_iter()
        .map(|w| {
            let mut e = w.elements();
            e.dedup();
            e
        })
        .collect();
    sets.sort_by(|a, b| a.last().cmp(&b.last()).then_with(|| a.cmp(b)));
    sets.dedup();
    Ok(sets)
}

/// Instances grouped by largest element: `by_max[t - start]` holds the other
/// elements of each instance whose maximum is `t`, as offsets from `start`.
pub(crate) struct ConstraintTable {
    pub(crate) by_max: Vec<Vec<Vec<usize>>>,
}

impl ConstraintTable {
    pub(crate) fn new(predicate: &PredicateId, start: u64, hi: u64) -> Result<Self> {
        let mut by_max = vec![Vec::new(); (hi - start + 1) as usize];
        for set in instances(predicate, start, hi)? {
            let (&top, rest) = set.split_last().expect("instances are nonempty");
            by_max[(top - start) as usize]
                .push(rest.iter().map(|&e| (e - start) as usize).collect());
        }
        // a subset instance makes its supersets with the same maximum redundant
        for list in &mut by_max {
            list.sort_by_key(Vec::len);
            let mut kept: Vec<Vec<usize>> = Vec::with_capacity(list.len());
            for inst in list.drain(..) {
                if !kept.iter().any(|k| is_subset(k, &inst)) {
                    kept.push(inst);
                }
            }
            *list = kept;
        }
        Ok(ConstraintTable { by_max })
    }

    /// Whether giving position `t` color `c` completes a monochromatic
    /// instance, all smaller positions being colored already.
    #[inline]
    pub(crate) fn conflicts(&self, colors: &[u32], t: usize, c: u32) -> bool {
        self.by_max[t]
            .iter()
            .any(|inst| inst.iter().all(|&e| colors[e] == c))
    }
}

/// Both slices sorted ascending.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_instances() {
        let sets = instances(&PredicateId::additive_schur(), 1, 4).unwrap();
        assert_eq!(
            sets,
            vec![vec![1, 2], vec![1, 2, 3], vec![1, 3, 4], vec![2, 4]]
        );
        let strict = PredicateId::additive_schur().with_allow_equal(false);
        assert_eq!(
            instances(&strict, 1, 4).unwrap(),
            vec![vec![1, 2, 3], vec![1, 3, 4]]
        );
    }

    #[test]
    fn multiplicative_instances() {
        let sets = instances(&PredicateId::multiplicative_schur(), 2, 12).unwrap();
        assert_eq!(
            sets,
            vec![
                vec![2, 4],
                vec![2, 3, 6],
                vec![2, 4, 8],
                vec![3, 9],
                vec![2, 5, 10],
                vec![2, 6, 12],
                vec![3, 4, 12]
            ]
        );
    }

    #[test]
    fn redundant_supersets_are_dropped() {
        let table = ConstraintTable::new(&PredicateId::sum_product(2, 2).unwrap(), 1, 8).unwrap();
        // at t = 4: 2 + 2 = 2 * 2 gives {2, 4}; 3 + 1 = 2 * 2 gives {1, 2, 3, 4}
        assert_eq!(table.by_max[3], vec![vec![1]]);
    }
}
