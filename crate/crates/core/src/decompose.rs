//! Recovering a generating pair `(S, R)` from a fully defined operator table.
//!
//! `LL` tables use minimum pre-images and yield the coarsest solution; `UL`
//! tables use all minimal pre-images and recover the inner relation exactly.
//! `UU` and `LU` tables are reduced to those two cases by complement
//! conjugation.

use std::fmt;

use crate::error::{Error, Result};
use crate::optable::{compose, dual_transform, is_monotone, OpTable, OperatorKind};
use crate::sets::{Partition, Subset, Universe};

/// A generating pair: `s` drives the inner operator, `r` the outer one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    pub s: Partition,
    pub r: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoSolutionReason {
    /// Some non-empty output has incomparable minimal pre-images.
    NoMinimumPreimage,
    /// The candidate pair does not regenerate the table.
    RecompositionMismatch,
    /// Composed operators are monotone; this table is not.
    NotMonotone,
}

impl fmt::Display for NoSolutionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::NoMinimumPreimage => "NoMinimumPreimage",
            Self::RecompositionMismatch => "RecompositionMismatch",
            Self::NotMonotone => "NotMonotone",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompOutcome {
    NoSolution(NoSolutionReason),
    Found(Solution),
}

impl DecompOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Self::Found(s) => Some(s),
            Self::NoSolution(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Reject non-monotone tables before running the algorithm.
    pub monotone_prefilter: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            monotone_prefilter: true,
        }
    }
}

/// Partition grouping elements whose membership agrees across every set in `family`.
pub fn relation_from_family(universe: &Universe, family: &[Subset]) -> Result<Partition> {
    let mut current = Partition::universal(universe);
    for &x in family {
        universe.check(x)?;
        let labels: Vec<usize> = (0..universe.len())
            .map(|i| current.block_index_of(i) * 2 + usize::from(x.contains(i)))
            .collect();
        current = Partition::from_labels(universe, &labels)?;
    }
    Ok(current)
}

/// Inputs of a table grouped by their image.
struct Preimages<'a> {
    table: &'a OpTable,
    groups: Vec<Vec<Subset>>,
    monotone: bool,
}

impl<'a> Preimages<'a> {
    fn new(table: &'a OpTable) -> Self {
        let mut groups = vec![Vec::new(); table.entries().len()];
        for (x, y) in table.iter() {
            groups[y.index()].push(x);
        }
        Self {
            table,
            groups,
            monotone: is_monotone(table),
        }
    }

    fn of(&self, y: Subset) -> Result<&[Subset]> {
        self.table.universe().check(y)?;
        let g = &self.groups[y.index()];
        if g.is_empty() {
            Err(Error::NotAnOutput)
        } else {
            Ok(g)
        }
    }

    /// Pre-images of `y` with no strict subset mapping to `y`.
    fn minimal(&self, y: Subset) -> Result<Vec<Subset>> {
        let group = self.of(y)?;
        let t = self.table;
        if self.monotone {
            // A strict subset with the same image forces every set in between
            // to share it, so single-element removals are enough.
            Ok(group
                .iter()
                .copied()
                .filter(|&x| x.iter().all(|v| t.get(x.without(v)) != y))
                .collect())
        } else {
            // below[X]: some subset of X (X included) maps to y.
            let n = t.universe().len();
            let mut below = vec![false; t.entries().len()];
            for (x, img) in t.iter() {
                below[x.index()] =
                    img == y || (0..n).any(|v| x.contains(v) && below[x.without(v).index()]);
            }
            Ok(group
                .iter()
                .copied()
                .filter(|&x| x.iter().all(|v| !below[x.without(v).index()]))
                .collect())
        }
    }
}

/// All `⊆`-minimal inputs `X` with `t(X) = y`.
pub fn minimal_preimages(t: &OpTable, y: Subset) -> Result<Vec<Subset>> {
    Preimages::new(t).minimal(y)
}

/// The unique `⊆`-minimum input mapping to `y`, when the minimal ones collapse to one.
pub fn minimum_preimage(t: &OpTable, y: Subset) -> Result<Option<Subset>> {
    let minimal = minimal_preimages(t, y)?;
    Ok(match minimal.as_slice() {
        [only] => Some(*only),
        _ => None,
    })
}

fn expect_kind(t: &OpTable, expected: OperatorKind) -> Result<()> {
    if t.kind() == expected {
        Ok(())
    } else {
        Err(Error::KindMismatch {
            expected,
            found: t.kind(),
        })
    }
}

fn run(t: &OpTable, opts: &DecomposeOptions, need_minimum: bool) -> Result<DecompOutcome> {
    let u = t.universe();
    let index = Preimages::new(t);
    if opts.monotone_prefilter && !index.monotone {
        return Ok(DecompOutcome::NoSolution(NoSolutionReason::NotMonotone));
    }

    // Step 1: R from the output family.
    let outputs = t.range();
    let r = relation_from_family(u, &outputs)?;

    // Steps 2-3: S from pre-images of the non-empty outputs.
    let mut family = Vec::new();
    for &y in outputs.iter().filter(|y| !y.is_empty()) {
        let minimal = index.minimal(y)?;
        if need_minimum {
            match minimal.as_slice() {
                [only] => family.push(*only),
                _ => {
                    return Ok(DecompOutcome::NoSolution(
                        NoSolutionReason::NoMinimumPreimage,
                    ))
                }
            }
        } else {
            family.extend(minimal);
        }
    }
    let s = relation_from_family(u, &family)?;

    // Step 4: certify by recomposition.
    if compose(&s, &r, t.kind())? == *t {
        Ok(DecompOutcome::Found(Solution { s, r }))
    } else {
        Ok(DecompOutcome::NoSolution(
            NoSolutionReason::RecompositionMismatch,
        ))
    }
}

pub fn decompose_ll(t: &OpTable) -> Result<DecompOutcome> {
    decompose_ll_with(t, &DecomposeOptions::default())
}

pub fn decompose_ll_with(t: &OpTable, opts: &DecomposeOptions) -> Result<DecompOutcome> {
    expect_kind(t, OperatorKind::LL)?;
    run(t, opts, true)
}

pub fn decompose_ul(t: &OpTable) -> Result<DecompOutcome> {
    decompose_ul_with(t, &DecomposeOptions::default())
}

pub fn decompose_ul_with(t: &OpTable, opts: &DecomposeOptions) -> Result<DecompOutcome> {
    expect_kind(t, OperatorKind::UL)?;
    run(t, opts, false)
}

pub fn decompose_uu(t: &OpTable) -> Result<DecompOutcome> {
    decompose_uu_with(t, &DecomposeOptions::default())
}

pub fn decompose_uu_with(t: &OpTable, opts: &DecomposeOptions) -> Result<DecompOutcome> {
    expect_kind(t, OperatorKind::UU)?;
    decompose_ll_with(&dual_transform(t), opts)
}

pub fn decompose_lu(t: &OpTable) -> Result<DecompOutcome> {
    decompose_lu_with(t, &DecomposeOptions::default())
}

pub fn decompose_lu_with(t: &OpTable, opts: &DecomposeOptions) -> Result<DecompOutcome> {
    expect_kind(t, OperatorKind::LU)?;
    decompose_ul_with(&dual_transform(t), opts)
}

/// Dispatches on the table's kind.
pub fn decompose(t: &OpTable, opts: &DecomposeOptions) -> DecompOutcome {
    let outcome = match t.kind() {
        OperatorKind::LL => decompose_ll_with(t, opts),
        OperatorKind::UU => decompose_uu_with(t, opts),
        OperatorKind::UL => decompose_ul_with(t, opts),
        OperatorKind::LU => decompose_lu_with(t, opts),
    };
    outcome.expect("kind matches by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> (Universe, Partition, Partition) {
        let u = Universe::parse("a,b,c,d,e").unwrap();
        let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
        let e2 = Partition::parse(&u, "a,b|c,d|e").unwrap();
        (u, e1, e2)
    }

    /// `{a}`, `{b}` and `{a,b}` map to `{a}`, `V ↦ V`, everything else to `∅`.
    fn literal_adversarial() -> (Universe, OpTable) {
        let u = Universe::parse("a,b,c").unwrap();
        let a = u.parse_subset("a").unwrap();
        let t = OpTable::from_fn(&u, OperatorKind::LL, |x| {
            if x == u.full() {
                x
            } else if !x.is_empty() && x.is_subset(u.parse_subset("a,b").unwrap()) {
                a
            } else {
                Subset::EMPTY
            }
        })
        .unwrap();
        (u, t)
    }

    #[test]
    fn minimum_preimages_of_five_element_table() {
        let (u, e1, e2) = five();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        let s = |x| u.parse_subset(x).unwrap();
        assert_eq!(minimum_preimage(&t, s("e")).unwrap(), Some(s("d,e")));
        assert_eq!(minimum_preimage(&t, s("a,b")).unwrap(), Some(s("a,b,c")));
        assert_eq!(minimal_preimages(&t, s("a,b")).unwrap(), vec![s("a,b,c")]);
        assert_eq!(
            minimum_preimage(&t, s("c,d,e")).unwrap(),
            Some(s("a,c,d,e"))
        );
        assert_eq!(minimum_preimage(&t, s("a")), Err(Error::NotAnOutput));
    }

    #[test]
    fn adversarial_minimal_preimages() {
        let (u, t) = literal_adversarial();
        let a = u.singleton("a").unwrap();
        assert!(!is_monotone(&t));
        assert_eq!(
            minimal_preimages(&t, a).unwrap(),
            vec![a, u.singleton("b").unwrap()]
        );
        assert_eq!(minimum_preimage(&t, a).unwrap(), None);
    }

    #[test]
    fn ul_minimal_preimages_contain_singleton() {
        let (u, e1, e2) = five();
        let t = compose(&e1, &e2, OperatorKind::UL).unwrap();
        let b = u.singleton("b").unwrap();
        let y = e2.upper(b);
        assert_eq!(y, u.parse_subset("a,b").unwrap());
        assert!(minimal_preimages(&t, y).unwrap().contains(&b));
    }

    #[test]
    fn ll_five_element_reconstruction() {
        let (_, e1, e2) = five();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        assert_eq!(
            decompose_ll(&t).unwrap(),
            DecompOutcome::Found(Solution { s: e1, r: e2 })
        );
    }

    #[test]
    fn ll_crossed_pairs_collapse_to_single_blocks() {
        let u = Universe::parse("a,b,c,d").unwrap();
        let e1 = Partition::parse(&u, "a,b|c,d").unwrap();
        let e2 = Partition::parse(&u, "a,c|b,d").unwrap();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        let v = Partition::universal(&u);
        assert_eq!(
            decompose_ll(&t).unwrap(),
            DecompOutcome::Found(Solution {
                s: v.clone(),
                r: v.clone()
            })
        );
        assert_eq!(
            decompose_uu(&dual_transform(&t)).unwrap(),
            DecompOutcome::Found(Solution { s: v.clone(), r: v })
        );
    }

    #[test]
    fn identity_tables() {
        let u = Universe::parse("a,b,c").unwrap();
        let id = Partition::identity(&u);
        let expected = DecompOutcome::Found(Solution {
            s: id.clone(),
            r: id.clone(),
        });
        for kind in OperatorKind::ALL {
            let t = compose(&id, &id, kind).unwrap();
            assert_eq!(
                decompose(&t, &DecomposeOptions::default()),
                expected,
                "{kind}"
            );
        }
    }

    #[test]
    fn ul_reconstruction() {
        let (_, e1, e2) = five();
        let t = compose(&e1, &e2, OperatorKind::UL).unwrap();
        let found = Solution { s: e1, r: e2 };
        assert_eq!(
            decompose_ul(&t).unwrap(),
            DecompOutcome::Found(found.clone())
        );
        assert_eq!(
            decompose_lu(&dual_transform(&t)).unwrap(),
            DecompOutcome::Found(found)
        );

        let u = Universe::parse("a,b,c").unwrap();
        let id = Partition::identity(&u);
        let ab = Partition::parse(&u, "a,b|c").unwrap();
        let t = compose(&id, &ab, OperatorKind::UL).unwrap();
        assert_eq!(
            decompose_ul(&t).unwrap(),
            DecompOutcome::Found(Solution { s: id, r: ab })
        );
    }

    #[test]
    fn ul_collapsed_table() {
        let u = Universe::parse("a,b,c").unwrap();
        let t = OpTable::from_fn(&u, OperatorKind::UL, |x| {
            if x == u.full() {
                x
            } else {
                Subset::EMPTY
            }
        })
        .unwrap();
        let v = Partition::universal(&u);
        let expected = DecompOutcome::Found(Solution { s: v.clone(), r: v });
        assert_eq!(decompose_ul(&t).unwrap(), expected);
        assert_eq!(decompose_lu(&dual_transform(&t)).unwrap(), expected);
    }

    #[test]
    fn no_minimum_preimage_paths() {
        let (_, t) = literal_adversarial();
        assert_eq!(
            decompose_ll(&t).unwrap(),
            DecompOutcome::NoSolution(NoSolutionReason::NotMonotone)
        );
        let opts = DecomposeOptions {
            monotone_prefilter: false,
        };
        assert_eq!(
            decompose_ll_with(&t, &opts).unwrap(),
            DecompOutcome::NoSolution(NoSolutionReason::NoMinimumPreimage)
        );
    }

    #[test]
    fn recomposition_mismatch() {
        // Monotone with a minimum pre-image everywhere, yet no pair produces it.
        let u = Universe::parse("a,b").unwrap();
        let a = u.singleton("a").unwrap();
        let t = OpTable::from_fn(&u, OperatorKind::LL, |x| x.intersection(a)).unwrap();
        assert!(is_monotone(&t));
        assert_eq!(
            decompose_ll(&t).unwrap(),
            DecompOutcome::NoSolution(NoSolutionReason::RecompositionMismatch)
        );
    }

    #[test]
    fn kind_is_checked() {
        let (_, e1, e2) = five();
        let t = compose(&e1, &e2, OperatorKind::UL).unwrap();
        assert_eq!(
            decompose_ll(&t),
            Err(Error::KindMismatch {
                expected: OperatorKind::LL,
                found: OperatorKind::UL
            })
        );
        assert!(decompose_uu(&t).is_err());
        assert!(decompose_lu(&t).is_err());
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        assert!(decompose_ul(&t).is_err());
    }
}
