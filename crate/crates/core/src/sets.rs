//! Ground sets, bitmask subsets and partitions.
//!
//! A [`Universe`] is a fixed, ordered list of element labels. Subsets of it are
//! [`Subset`] bitmasks where bit `i` stands for the `i`-th label. A
//! [`Partition`] is an equivalence relation on the universe kept in canonical
//! form: blocks are ordered by their least element and a block's id is its
//! position in that order, so structural equality is relation equality.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported universe. Operator tables hold `2^n` entries.
pub const MAX_ELEMENTS: usize = 16;

/// A finite, non-empty, ordered ground set of named elements.
#[derive(Clone)]
pub struct Universe {
    names: Arc<[String]>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_ELEMENTS {
            return Err(Error::UniverseSize {
                got: names.len(),
                max: MAX_ELEMENTS,
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if name
                .chars()
                .any(|c| c == ',' || c == '|' || c.is_whitespace())
            {
                return Err(Error::InvalidLabel(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// Parses a comma-joined label list such as `a,b,c`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(spec.split(',').map(str::trim))
    }

    /// A universe labelled `a`, `b`, `c`, ... (at most 16 letters).
    pub fn alphabetic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::UniverseSize {
                got: n,
                max: MAX_ELEMENTS,
            });
        }
        Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The whole universe `V`.
    #[inline]
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn powerset_len(&self) -> usize {
        1usize << self.len()
    }

    /// Iterates every subset in mask order `0..2^n`.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.powerset_len() as u32).map(Subset::from_bits)
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.bits() & !self.full().bits() == 0
    }

    pub fn check(&self, s: Subset) -> Result<Subset> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn complement(&self, s: Subset) -> Subset {
        Subset::from_bits(self.full().bits() & !s.bits())
    }

    pub fn singleton(&self, label: &str) -> Result<Subset> {
        Ok(Subset::singleton(self.index_of(label)?))
    }

    /// Builds a subset from labels. Repeated labels are tolerated.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(Subset::EMPTY, |acc, l| {
            Ok(acc.with(self.index_of(l.as_ref())?))
        })
    }

    /// Parses the comma-joined text form; the empty string is `∅`.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Subset::EMPTY);
        }
        self.subset(text.split(',').map(str::trim))
    }

    /// Comma-joined labels in universe order; `∅` prints as the empty string.
    pub fn format_subset(&self, s: Subset) -> String {
        s.iter()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Universe {}

impl std::hash::Hash for Universe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe({})", self.names.join(","))
    }
}

/// A subset of a universe as a bitmask; bit `i` is element `i`.
///
/// Masks do not carry their universe. Operations that take a partition or a
/// table check that the mask fits in that structure's universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    #[inline]
    pub const fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    #[inline]
    pub const fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[inline]
    pub const fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Least element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An equivalence relation on a universe, in canonical block form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    universe: Universe,
    block_of: Vec<u8>,
    blocks: Vec<Subset>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling: elements with equal labels share a block.
    pub fn from_labels(universe: &Universe, labels: &[usize]) -> Result<Self> {
        if labels.len() != universe.len() {
            return Err(Error::UniverseMismatch);
        }
        let mut seen: Vec<usize> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Subset> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            let id = match seen.iter().position(|&l| l == label) {
                Some(id) => id,
                None => {
                    seen.push(label);
                    blocks.push(Subset::EMPTY);
                    seen.len() - 1
                }
            };
            blocks[id] = blocks[id].with(i);
            block_of.push(id as u8);
        }
        Ok(Self {
            universe: universe.clone(),
            block_of,
            blocks,
        })
    }

    /// Builds a partition from block masks, which must be disjoint, non-empty and covering.
    pub fn from_masks(universe: &Universe, masks: &[Subset]) -> Result<Self> {
        let mut labels = vec![usize::MAX; universe.len()];
        for (b, &mask) in masks.iter().enumerate() {
            universe.check(mask)?;
            if mask.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for i in mask.iter() {
                if labels[i] != usize::MAX {
                    return Err(Error::Overlap(universe.name(i).to_string()));
                }
                labels[i] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Coverage(universe.name(i).to_string()));
        }
        Self::from_labels(universe, &labels)
    }

    /// Builds a partition from blocks of element labels.
    pub fn from_blocks<B, S>(universe: &Universe, blocks: &[B]) -> Result<Self>
    where
        B: AsRef<[S]>,
        S: AsRef<str>,
    {
        let mut labels = vec![usize::MAX; universe.len()];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for label in block {
                let i = universe.index_of(label.as_ref())?;
                if labels[i] != usize::MAX {
                    return Err(Error::Overlap(label.as_ref().to_string()));
                }
                labels[i] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Coverage(universe.name(i).to_string()));
        }
        Self::from_labels(universe, &labels)
    }

    /// Parses the text form `a,c|b|d,e`. Blocks and elements may come in any order.
    pub fn parse(universe: &Universe, text: &str) -> Result<Self> {
        let blocks: Vec<Vec<&str>> = text
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .collect();
        Self::from_blocks(universe, &blocks)
    }

    /// The identity relation: every element alone.
    pub fn identity(universe: &Universe) -> Self {
        let labels: Vec<usize> = (0..universe.len()).collect();
        Self::from_labels(universe, &labels).expect("length matches")
    }

    /// The total relation: a single block `V`.
    pub fn universal(universe: &Universe) -> Self {
        Self::from_labels(universe, &vec![0; universe.len()]).expect("length matches")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Blocks in canonical order (ascending least element).
    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Canonical block id of each element.
    pub fn block_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.block_of.iter().map(|&b| b as usize)
    }

    #[inline]
    pub fn block_index_of(&self, element: usize) -> usize {
        self.block_of[element] as usize
    }

    /// `[x]`, the block holding element `x`.
    #[inline]
    pub fn class_of_index(&self, element: usize) -> Subset {
        self.blocks[self.block_of[element] as usize]
    }

    pub fn class_of(&self, label: &str) -> Result<Subset> {
        Ok(self.class_of_index(self.universe.index_of(label)?))
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.universe.len()
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn min_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).min().unwrap_or(0)
    }

    /// Lower approximation: union of the blocks contained in `x`.
    #[inline]
    pub fn lower(&self, x: Subset) -> Subset {
        self.blocks
            .iter()
            .filter(|b| b.is_subset(x))
            .fold(Subset::EMPTY, |acc, &b| acc.union(b))
    }

    /// Upper approximation: union of the blocks meeting `x`.
    #[inline]
    pub fn upper(&self, x: Subset) -> Subset {
        self.blocks
            .iter()
            .filter(|b| b.intersects(x))
            .fold(Subset::EMPTY, |acc, &b| acc.union(b))
    }

    /// True when `x` is a union of blocks.
    pub fn is_exact(&self, x: Subset) -> bool {
        self.lower(x) == x
    }

    pub(crate) fn same_universe(&self, other: &Partition) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// `self ≤ other`: every block of `self` lies inside a block of `other`.
    pub fn is_finer(&self, other: &Partition) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self
            .blocks
            .iter()
            .all(|&b| b.is_subset(other.class_of_index(b.first().expect("blocks are non-empty")))))
    }

    /// Meet of two partitions: elements equivalent in both.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_universe(other)?;
        let labels: Vec<usize> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| a as usize * MAX_ELEMENTS + b as usize)
            .collect();
        Partition::from_labels(&self.universe, &labels)
    }

    /// Replaces blocks `b1` and `b2` by their union.
    pub fn merge_classes(&self, b1: usize, b2: usize) -> Result<Partition> {
        let count = self.blocks.len();
        for index in [b1, b2] {
            if index >= count {
                return Err(Error::BadBlockIndex { index, count });
            }
        }
        if b1 == b2 {
            return Err(Error::BadBlockIndex { index: b2, count });
        }
        let labels: Vec<usize> = self
            .block_of
            .iter()
            .map(|&b| if b as usize == b2 { b1 } else { b as usize })
            .collect();
        Partition::from_labels(&self.universe, &labels)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str(&self.universe.format_subset(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// `IND(ps)`: the coarsest partition finer than every input.
pub fn intersect_ind(ps: &[Partition]) -> Result<Partition> {
    let (first, rest) = ps.split_first().ok_or(Error::EmptyList)?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.meet(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcde() -> Universe {
        Universe::parse("a,b,c,d,e").unwrap()
    }

    #[test]
    fn parses_into_canonical_order() {
        let u = abcde();
        let p = Partition::parse(&u, "d,e|b|c,a").unwrap();
        assert_eq!(p.to_string(), "a,c|b|d,e");
        assert_eq!(p, Partition::parse(&u, "a,c|b|d,e").unwrap());
        let again = Partition::parse(&u, &p.to_string()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn identity_from_singletons() {
        let u = Universe::parse("a,b,c,d").unwrap();
        let p = Partition::parse(&u, "a|b|c|d").unwrap();
        assert_eq!(p, Partition::identity(&u));
        assert!(p.is_identity());
    }

    #[test]
    fn rejects_bad_blocks() {
        let u = Universe::parse("a,b,c,d").unwrap();
        assert_eq!(
            Partition::parse(&u, "a,b|b,c"),
            Err(Error::Overlap("b".into()))
        );
        assert_eq!(
            Partition::parse(&u, "a,b|c"),
            Err(Error::Coverage("d".into()))
        );
        assert_eq!(
            Partition::parse(&u, "a,b|c,x|d"),
            Err(Error::UnknownLabel("x".into()))
        );
        assert_eq!(Partition::parse(&u, "a,b||c,d"), Err(Error::EmptyBlock));
    }

    #[test]
    fn universe_validation() {
        assert!(matches!(
            Universe::new(Vec::<String>::new()),
            Err(Error::UniverseSize { got: 0, .. })
        ));
        assert!(matches!(
            Universe::alphabetic(17),
            Err(Error::UniverseSize { got: 17, .. })
        ));
        assert_eq!(
            Universe::parse("a,b,a"),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert_eq!(Universe::parse("a,,b"), Err(Error::EmptyLabel));
        assert!(Universe::new(["a|b"]).is_err());
        assert_eq!(Universe::alphabetic(16).unwrap().full().bits(), 0xffff);
    }

    #[test]
    fn class_lookup() {
        let u = abcde();
        let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
        assert_eq!(e1.class_of("d").unwrap(), u.subset(["d", "e"]).unwrap());
        assert_eq!(e1.class_of("z"), Err(Error::UnknownLabel("z".into())));
        let u4 = Universe::parse("a,b,c,d").unwrap();
        assert_eq!(
            Partition::identity(&u4).class_of("a").unwrap(),
            u4.singleton("a").unwrap()
        );
        assert_eq!(Partition::universal(&u4).class_of("c").unwrap(), u4.full());
    }

    #[test]
    fn refinement_examples() {
        let u = abcde();
        let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
        let other = Partition::parse(&u, "a,b|c,d|e").unwrap();
        assert!(Partition::identity(&u).is_finer(&e1).unwrap());
        assert!(!e1.is_finer(&other).unwrap());
        assert!(e1.is_finer(&e1).unwrap());
        let u4 = Universe::parse("a,b,c,d").unwrap();
        assert_eq!(
            e1.is_finer(&Partition::identity(&u4)),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn intersection_examples() {
        let u = Universe::parse("a,b,c,d").unwrap();
        let p = Partition::parse(&u, "a,b|c,d").unwrap();
        let q = Partition::parse(&u, "a,c|b,d").unwrap();
        assert_eq!(
            intersect_ind(&[p.clone(), q]).unwrap(),
            Partition::identity(&u)
        );
        assert_eq!(intersect_ind(std::slice::from_ref(&p)).unwrap(), p);
        assert_eq!(
            intersect_ind(&[p, Partition::identity(&u)]).unwrap(),
            Partition::identity(&u)
        );
        assert_eq!(intersect_ind(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn merge_examples() {
        let u = abcde();
        let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
        assert_eq!(e1.merge_classes(0, 1).unwrap().to_string(), "a,b,c|d,e");
        let ab = Universe::parse("a,b").unwrap();
        assert_eq!(
            Partition::identity(&ab).merge_classes(1, 0).unwrap(),
            Partition::universal(&ab)
        );
        let abc = Universe::parse("a,b,c").unwrap();
        assert!(matches!(
            Partition::identity(&abc).merge_classes(0, 0),
            Err(Error::BadBlockIndex { .. })
        ));
        assert!(matches!(
            Partition::identity(&abc).merge_classes(0, 3),
            Err(Error::BadBlockIndex { index: 3, count: 3 })
        ));
    }

    #[test]
    fn subset_text_roundtrip() {
        let u = abcde();
        let s = u.parse_subset("e, a ,c").unwrap();
        assert_eq!(u.format_subset(s), "a,c,e");
        assert_eq!(u.format_subset(Subset::EMPTY), "");
        assert_eq!(u.complement(s), u.parse_subset("b,d").unwrap());
        assert_eq!(
            u.check(Subset::from_bits(1 << 5)),
            Err(Error::UniverseMismatch)
        );
    }
}
