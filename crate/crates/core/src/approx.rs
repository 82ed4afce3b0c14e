//! Single-relation approximations, definability classes, positive regions
//! and dependency degrees.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Result;
use crate::sets::{Partition, Subset};

/// `{ v : [v]_E ⊆ X }`.
pub fn lower(e: &Partition, x: Subset) -> Result<Subset> {
    e.universe().check(x)?;
    Ok(e.lower(x))
}

/// `{ v : [v]_E ∩ X ≠ ∅ }`.
pub fn upper(e: &Partition, x: Subset) -> Result<Subset> {
    e.universe().check(x)?;
    Ok(e.upper(x))
}

/// Where a set sits relative to the approximations of one relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Definability {
    /// A union of classes: lower = upper = X.
    Exact,
    /// lower ≠ ∅ and upper ≠ V.
    RoughlyDefinable,
    /// lower = ∅ and upper ≠ V.
    InternallyUndefinable,
    /// lower ≠ ∅ and upper = V.
    ExternallyDefinable,
    /// lower = ∅ and upper = V.
    TotallyUndefinable,
}

pub fn classify(e: &Partition, x: Subset) -> Result<Definability> {
    let lo = lower(e, x)?;
    let up = e.upper(x);
    let full = e.universe().full();
    Ok(if lo == x && up == x {
        Definability::Exact
    } else {
        match (lo.is_empty(), up == full) {
            (false, false) => Definability::RoughlyDefinable,
            (true, false) => Definability::InternallyUndefinable,
            (false, true) => Definability::ExternallyDefinable,
            (true, true) => Definability::TotallyUndefinable,
        }
    })
}

/// `POS_C(D)`: union over the blocks of `d` of their `c`-lower approximations.
pub fn pos_region(c: &Partition, d: &Partition) -> Result<Subset> {
    c.same_universe(d)?;
    Ok(d.blocks()
        .iter()
        .fold(Subset::EMPTY, |acc, &block| acc.union(c.lower(block))))
}

/// `γ(C, D) = |POS_C(D)| / |V|`, kept as an unreduced exact fraction.
#[derive(Debug, Clone, Copy, Eq)]
pub struct DependencyDegree {
    pub numerator: usize,
    pub denominator: usize,
}

impl DependencyDegree {
    pub fn new(numerator: usize, denominator: usize) -> Self {
        assert!(denominator > 0 && numerator <= denominator);
        Self {
            numerator,
            denominator,
        }
    }

    /// `γ = 1`: the dependency is total.
    pub fn is_total(&self) -> bool {
        self.numerator == self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl PartialEq for DependencyDegree {
    fn eq(&self, other: &Self) -> bool {
        self.numerator * other.denominator == other.numerator * self.denominator
    }
}

impl PartialOrd for DependencyDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DependencyDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.numerator * other.denominator).cmp(&(other.numerator * self.denominator))
    }
}

impl fmt::Display for DependencyDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

pub fn dependency_degree(c: &Partition, d: &Partition) -> Result<DependencyDegree> {
    let pos = pos_region(c, d)?;
    Ok(DependencyDegree::new(pos.len(), c.universe().len()))
}

/// `⋃_{x ∈ X} [x]_E`, built element by element.
///
/// Paired with the identity embedding of `E`-exact sets this is the left
/// adjoint of a Galois connection: `granule_cover(X) ⊆ Y ⇔ X ⊆ Y` for exact `Y`.
pub fn granule_cover(e: &Partition, x: Subset) -> Result<Subset> {
    e.universe().check(x)?;
    Ok(x.iter()
        .fold(Subset::EMPTY, |acc, v| acc.union(e.class_of_index(v))))
}

/// The classical properties of one lower/upper approximation pair, numbered
/// as they are usually listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PawlakProperty {
    /// `l(X) ⊆ X ⊆ u(X)`
    Bounds = 1,
    /// `l(∅) = u(∅) = ∅`, `l(V) = u(V) = V`
    Extremes = 2,
    /// `u(X ∪ Y) = u(X) ∪ u(Y)`
    UpperUnion = 3,
    /// `l(X ∩ Y) = l(X) ∩ l(Y)`
    LowerIntersection = 4,
    /// `X ⊆ Y ⇒ l(X) ⊆ l(Y)`
    LowerMonotone = 5,
    /// `X ⊆ Y ⇒ u(X) ⊆ u(Y)`
    UpperMonotone = 6,
    /// `l(X ∪ Y) ⊇ l(X) ∪ l(Y)`
    LowerUnion = 7,
    /// `u(X ∩ Y) ⊆ u(X) ∩ u(Y)`
    UpperIntersection = 8,
    /// `l(-X) = -u(X)`
    LowerComplement = 9,
    /// `u(-X) = -l(X)`
    UpperComplement = 10,
    /// `l(l(X)) = u(l(X)) = l(X)`
    LowerIdempotent = 11,
    /// `u(u(X)) = l(u(X)) = u(X)`
    UpperIdempotent = 12,
}

impl PawlakProperty {
    pub const ALL: [PawlakProperty; 12] = [
        PawlakProperty::Bounds,
        PawlakProperty::Extremes,
        PawlakProperty::UpperUnion,
        PawlakProperty::LowerIntersection,
        PawlakProperty::LowerMonotone,
        PawlakProperty::UpperMonotone,
        PawlakProperty::LowerUnion,
        PawlakProperty::UpperIntersection,
        PawlakProperty::LowerComplement,
        PawlakProperty::UpperComplement,
        PawlakProperty::LowerIdempotent,
        PawlakProperty::UpperIdempotent,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Properties that fail for `(e, x, y)`.
///
/// The monotonicity properties are tested on the pair `(X ∩ Y, X ∪ Y)` as
/// well as on `(X, Y)` itself, so they are exercised even when `X ⊄ Y`.
pub fn pawlak_violations(e: &Partition, x: Subset, y: Subset) -> Result<Vec<PawlakProperty>> {
    use PawlakProperty::*;
    let u = e.universe();
    u.check(x)?;
    u.check(y)?;
    let full = u.full();
    let l = |s| e.lower(s);
    let up = |s| e.upper(s);
    let monotone = |f: &dyn Fn(Subset) -> Subset| {
        let pairs = [
            (x, y),
            (x.intersection(y), x.union(y)),
            (x.intersection(y), x),
        ];
        pairs
            .iter()
            .all(|&(a, b)| !a.is_subset(b) || f(a).is_subset(f(b)))
    };

    let mut failed = Vec::new();
    let mut check = |p: PawlakProperty, ok: bool| {
        if !ok {
            failed.push(p);
        }
    };
    check(Bounds, l(x).is_subset(x) && x.is_subset(up(x)));
    check(
        Extremes,
        l(Subset::EMPTY).is_empty()
            && up(Subset::EMPTY).is_empty()
            && l(full) == full
            && up(full) == full,
    );
    check(UpperUnion, up(x.union(y)) == up(x).union(up(y)));
    check(
        LowerIntersection,
        l(x.intersection(y)) == l(x).intersection(l(y)),
    );
    check(LowerMonotone, monotone(&l));
    check(UpperMonotone, monotone(&up));
    check(LowerUnion, l(x).union(l(y)).is_subset(l(x.union(y))));
    check(
        UpperIntersection,
        up(x.intersection(y)).is_subset(up(x).intersection(up(y))),
    );
    check(LowerComplement, l(u.complement(x)) == u.complement(up(x)));
    check(UpperComplement, up(u.complement(x)) == u.complement(l(x)));
    check(LowerIdempotent, l(l(x)) == l(x) && up(l(x)) == l(x));
    check(UpperIdempotent, up(up(x)) == up(x) && l(up(x)) == up(x));
    Ok(failed)
}
