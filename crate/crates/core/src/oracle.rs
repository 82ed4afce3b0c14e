//! Brute-force ground truth for small universes.
//!
//! Partitions are enumerated as restricted growth strings. Generating pairs
//! for a table are found by composing every candidate pair and comparing it
//! entry by entry with the table.

use rayon::prelude::*;

use crate::decompose::{decompose, DecomposeOptions, Solution};
use crate::error::{Error, Result};
use crate::optable::{compose, OpTable, OperatorKind};
use crate::sets::{Partition, Universe};
use crate::uniqueness::is_unique;

/// Largest universe the enumerator accepts.
pub const MAX_ENUMERATION: usize = 12;
/// Largest universe for pair searches.
pub const MAX_SOLUTION_SEARCH: usize = 6;

/// Iterates the partitions of a universe in restricted-growth lexicographic order.
#[derive(Debug, Clone)]
pub struct PartitionEnumerator {
    universe: Universe,
    rgs: Vec<usize>,
    done: bool,
}

impl PartitionEnumerator {
    pub fn new(universe: &Universe) -> Result<Self> {
        let n = universe.len();
        if n > MAX_ENUMERATION {
            return Err(Error::TooLarge {
                n,
                max: MAX_ENUMERATION,
            });
        }
        Ok(Self {
            universe: universe.clone(),
            rgs: vec![0; n],
            done: n == 0,
        })
    }

    fn advance(&mut self) {
        // Bump the rightmost position that may grow, reset everything after it.
        let n = self.rgs.len();
        for i in (1..n).rev() {
            let ceiling = self.rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if self.rgs[i] < ceiling {
                self.rgs[i] += 1;
                self.rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PartitionEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let p = Partition::from_labels(&self.universe, &self.rgs).expect("labels match universe");
        self.advance();
        Some(p)
    }
}

pub fn enumerate_partitions(u: &Universe) -> Result<PartitionEnumerator> {
    PartitionEnumerator::new(u)
}

fn check_search_size(u: &Universe) -> Result<()> {
    if u.len() > MAX_SOLUTION_SEARCH {
        return Err(Error::TooLarge {
            n: u.len(),
            max: MAX_SOLUTION_SEARCH,
        });
    }
    Ok(())
}

fn generates(kind: OperatorKind, e1: &Partition, e2: &Partition, t: &OpTable) -> bool {
    t.iter().all(|(x, y)| kind.eval(e1, e2, x) == y)
}

/// Every pair `(e1, e2)` whose composition is `t`, in enumeration order.
pub fn all_solutions(t: &OpTable) -> Result<Vec<Solution>> {
    let u = t.universe();
    check_search_size(u)?;
    let parts: Vec<Partition> = enumerate_partitions(u)?.collect();
    let kind = t.kind();
    let found: Vec<Vec<Solution>> = parts
        .par_iter()
        .map(|e1| {
            parts
                .iter()
                .filter(|e2| generates(kind, e1, e2, t))
                .map(|e2| Solution {
                    s: e1.clone(),
                    r: e2.clone(),
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// True when exactly one pair generates `t`.
pub fn oracle_unique(t: &OpTable) -> Result<bool> {
    Ok(all_solutions(t)?.len() == 1)
}

/// Totals from checking every pair on a universe against the oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub pairs: usize,
    pub unique_pairs: usize,
    /// Pairs where the condition checker and the oracle disagree on uniqueness.
    pub disagreements: Vec<(Partition, Partition)>,
    /// Pairs whose table the decomposition failed to invert soundly.
    pub unsound: Vec<(Partition, Partition)>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.unsound.is_empty()
    }
}

/// Checks every pair on the universe of size `n`.
///
/// For each pair the composed table must decompose to one of its oracle
/// solutions. For `LL` and `UU` that solution must be above every other one in
/// both coordinates, and the checker's verdict must match the oracle count.
pub fn sweep(n: usize, kind: OperatorKind) -> Result<SweepReport> {
    let u = Universe::alphabetic(n)?;
    check_search_size(&u)?;
    let parts: Vec<Partition> = enumerate_partitions(&u)?.collect();
    let tables: Vec<OpTable> = parts
        .iter()
        .flat_map(|e1| parts.iter().map(move |e2| (e1, e2)))
        .map(|(e1, e2)| compose(e1, e2, kind))
        .collect::<Result<_>>()?;
    let m = parts.len();

    let rows: Vec<(bool, bool, bool)> = (0..tables.len())
        .into_par_iter()
        .map(|idx| {
            let (e1, e2) = (&parts[idx / m], &parts[idx % m]);
            let t = &tables[idx];
            let sols: Vec<usize> = (0..tables.len())
                .filter(|&j| tables[j].entries() == t.entries())
                .collect();
            let oracle = sols.len() == 1;
            let theorem = is_unique(e1, e2, kind).expect("same universe").is_unique();
            let sound = match decompose(t, &DecomposeOptions::default()).solution() {
                None => false,
                Some(sol) => {
                    let pos = parts.iter().position(|p| *p == sol.s).expect("enumerated") * m
                        + parts.iter().position(|p| *p == sol.r).expect("enumerated");
                    sols.contains(&pos)
                        && match kind {
                            OperatorKind::LL | OperatorKind::UU => sols.iter().all(|&j| {
                                parts[j / m].is_finer(&sol.s).unwrap()
                                    && parts[j % m].is_finer(&sol.r).unwrap()
                            }),
                            OperatorKind::UL | OperatorKind::LU => sol.s == *e1,
                        }
                }
            };
            (oracle, oracle == theorem, sound)
        })
        .collect();

    let mut report = SweepReport {
        pairs: tables.len(),
        ..SweepReport::default()
    };
    for (idx, &(oracle, agrees, sound)) in rows.iter().enumerate() {
        let pair = || (parts[idx / m].clone(), parts[idx % m].clone());
        report.unique_pairs += usize::from(oracle);
        if !agrees {
            report.disagreements.push(pair());
        }
        if !sound {
            report.unsound.push(pair());
        }
    }
    Ok(report)
}
