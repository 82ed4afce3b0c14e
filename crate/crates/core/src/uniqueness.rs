//! Deciding whether a pair of relations is the only one generating its operator.
//!
//! Four block-level conditions characterise uniqueness for `LL` and `UU`;
//! `UL` and `LU` need only two of them. Every check returns a witness when it
//! fails so callers can report which blocks are responsible.

use std::fmt;

use crate::error::{Error, Result};
use crate::optable::OperatorKind;
use crate::sets::{Partition, Subset};

/// Why a condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Two distinct blocks of the outer relation with the same upper image.
    SameUpperImage {
        first: Subset,
        second: Subset,
        image: Subset,
    },
    /// A block meeting no block of the probe relation in exactly one element.
    NoSingletonIntersection { block: Subset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Holds,
    Fails(Witness),
}

impl Condition {
    pub fn holds(&self) -> bool {
        matches!(self, Condition::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Condition::Holds => None,
            Condition::Fails(w) => Some(w),
        }
    }
}

/// Distinct `outer` blocks have distinct `inner`-upper images.
pub fn upper_images_distinct(inner: &Partition, outer: &Partition) -> Result<Condition> {
    inner.same_universe(outer)?;
    let images: Vec<Subset> = outer.blocks().iter().map(|&b| inner.upper(b)).collect();
    for (j, &image) in images.iter().enumerate() {
        if let Some(i) = images[..j].iter().position(|&other| other == image) {
            return Ok(Condition::Fails(Witness::SameUpperImage {
                first: outer.blocks()[i],
                second: outer.blocks()[j],
                image,
            }));
        }
    }
    Ok(Condition::Holds)
}

fn has_singleton_intersection(block: Subset, probe: &Partition) -> bool {
    probe
        .blocks()
        .iter()
        .any(|&p| p.intersection(block).len() == 1)
}

/// Every `target` block meets some `probe` block in exactly one element.
pub fn singleton_transversal(target: &Partition, probe: &Partition) -> Result<Condition> {
    target.same_universe(probe)?;
    Ok(target
        .blocks()
        .iter()
        .find(|&&b| !has_singleton_intersection(b, probe))
        .map_or(Condition::Holds, |&block| {
            Condition::Fails(Witness::NoSingletonIntersection { block })
        }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionId {
    /// Blocks of `E₂` are told apart by `E₁`-upper images.
    C1,
    /// Blocks of `E₁` are told apart by `E₂`-upper images.
    C2,
    /// Each block of `E₂` meets a block of `E₁` in one element.
    C3,
    /// Each block of `E₁` meets a block of `E₂` in one element.
    C4,
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of every condition relevant to one operator kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: Vec<(ConditionId, Condition)>,
}

impl ConditionReport {
    pub fn is_unique(&self) -> bool {
        self.conditions.iter().all(|(_, c)| c.holds())
    }

    pub fn get(&self, id: ConditionId) -> Option<Condition> {
        self.conditions
            .iter()
            .find(|(i, _)| *i == id)
            .map(|(_, c)| *c)
    }

    pub fn failing(&self) -> impl Iterator<Item = (ConditionId, &Witness)> {
        self.conditions
            .iter()
            .filter_map(|(id, c)| c.witness().map(|w| (*id, w)))
    }
}

fn report(e1: &Partition, e2: &Partition, ids: &[ConditionId]) -> Result<ConditionReport> {
    let conditions = ids
        .iter()
        .map(|&id| {
            let c = match id {
                ConditionId::C1 => upper_images_distinct(e1, e2)?,
                ConditionId::C2 => upper_images_distinct(e2, e1)?,
                ConditionId::C3 => singleton_transversal(e2, e1)?,
                ConditionId::C4 => singleton_transversal(e1, e2)?,
            };
            Ok((id, c))
        })
        .collect::<Result<_>>()?;
    Ok(ConditionReport { conditions })
}

const FOUR: [ConditionId; 4] = [
    ConditionId::C1,
    ConditionId::C2,
    ConditionId::C3,
    ConditionId::C4,
];
const TWO: [ConditionId; 2] = [ConditionId::C1, ConditionId::C3];

pub fn is_unique_ll(e1: &Partition, e2: &Partition) -> Result<ConditionReport> {
    report(e1, e2, &FOUR)
}

/// Same conditions as `LL`: the tables are complement conjugates.
pub fn is_unique_uu(e1: &Partition, e2: &Partition) -> Result<ConditionReport> {
    report(e1, e2, &FOUR)
}

pub fn is_unique_ul(e1: &Partition, e2: &Partition) -> Result<ConditionReport> {
    report(e1, e2, &TWO)
}

pub fn is_unique_lu(e1: &Partition, e2: &Partition) -> Result<ConditionReport> {
    report(e1, e2, &TWO)
}

pub fn is_unique(e1: &Partition, e2: &Partition, kind: OperatorKind) -> Result<ConditionReport> {
    match kind {
        OperatorKind::LL => is_unique_ll(e1, e2),
        OperatorKind::UU => is_unique_uu(e1, e2),
        OperatorKind::UL => is_unique_ul(e1, e2),
        OperatorKind::LU => is_unique_lu(e1, e2),
    }
}

/// Bipartite graph on the blocks of `c` (left) and `d` (right); an edge
/// joins two blocks that share an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub left: Vec<Subset>,
    pub right: Vec<Subset>,
    pub edges: Vec<(usize, usize)>,
    labels_left: Vec<String>,
    labels_right: Vec<String>,
}

/// One connected component, as node indices on each side plus its edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edge_count: usize,
}

impl Component {
    pub fn is_complete_bipartite(&self) -> bool {
        self.edge_count == self.left.len() * self.right.len()
    }

    /// Complete bipartite with more than one edge, i.e. anything but a `K₂`.
    pub fn is_forbidden(&self) -> bool {
        self.is_complete_bipartite() && self.edge_count > 1
    }
}

pub fn incidence_graph(c: &Partition, d: &Partition) -> Result<IncidenceGraph> {
    c.same_universe(d)?;
    let u = c.universe();
    let mut edges = Vec::new();
    for (i, &bc) in c.blocks().iter().enumerate() {
        for (j, &bd) in d.blocks().iter().enumerate() {
            if bc.intersects(bd) {
                edges.push((i, j));
            }
        }
    }
    Ok(IncidenceGraph {
        left: c.blocks().to_vec(),
        right: d.blocks().to_vec(),
        edges,
        labels_left: c.blocks().iter().map(|&b| u.format_subset(b)).collect(),
        labels_right: d.blocks().iter().map(|&b| u.format_subset(b)).collect(),
    })
}

impl IncidenceGraph {
    pub fn node_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Components in order of their first node, left side first.
    pub fn components(&self) -> Vec<Component> {
        let offset = self.left.len();
        let mut parent: Vec<usize> = (0..self.node_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(l, r) in &self.edges {
            let (a, b) = (find(&mut parent, l), find(&mut parent, offset + r));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let roots: Vec<usize> = (0..self.node_count())
            .map(|v| find(&mut parent, v))
            .collect();
        let mut order: Vec<usize> = Vec::new();
        let mut comps: Vec<Component> = Vec::new();
        for (v, &root) in roots.iter().enumerate() {
            let i = match order.iter().position(|&r| r == root) {
                Some(i) => i,
                None => {
                    order.push(root);
                    comps.push(Component {
                        left: Vec::new(),
                        right: Vec::new(),
                        edge_count: 0,
                    });
                    order.len() - 1
                }
            };
            if v < offset {
                comps[i].left.push(v);
            } else {
                comps[i].right.push(v - offset);
            }
        }
        for &(l, _) in &self.edges {
            let i = order
                .iter()
                .position(|&r| r == roots[l])
                .expect("root recorded");
            comps[i].edge_count += 1;
        }
        comps
    }

    /// Graphviz rendering with `C_i` / `D_j` node ids.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph incidence {\n");
        for (i, label) in self.labels_left.iter().enumerate() {
            out.push_str(&format!("  C_{i} [label=\"{label}\"];\n"));
        }
        for (j, label) in self.labels_right.iter().enumerate() {
            out.push_str(&format!("  D_{j} [label=\"{label}\"];\n"));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  C_{i} -- D_{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn has_forbidden_component(g: &IncidenceGraph) -> bool {
    g.components().iter().any(Component::is_forbidden)
}

/// Splits `block` into disjoint non-empty `Y`, `Z` with
/// `u(Y) = u(Z) = u(block)` under `inner`, when such a split exists.
///
/// A split exists exactly when every `inner` block meeting `block` meets it
/// in at least two elements. `Y` then takes the least element of each such
/// intersection and `Z` the rest.
pub fn split_witness(inner: &Partition, block: Subset) -> Result<Option<(Subset, Subset)>> {
    inner.universe().check(block)?;
    if block.len() < 2 {
        return Ok(None);
    }
    let mut y = Subset::EMPTY;
    for &b in inner.blocks() {
        let part = b.intersection(block);
        match part.len() {
            0 => {}
            1 => return Ok(None),
            _ => y = y.with(part.first().expect("non-empty")),
        }
    }
    Ok(Some((y, block.difference(y))))
}

/// `E₁` is independent of `E₂` when the pair generates a unique `LL` operator.
/// Both relations must differ from the identity.
pub fn independent(e1: &Partition, e2: &Partition) -> Result<bool> {
    e1.same_universe(e2)?;
    if e1.is_identity() || e2.is_identity() {
        return Err(Error::IdentityNotInDomain);
    }
    Ok(is_unique_ll(e1, e2)?.is_unique())
}

/// `|E₁| < 2^|E₂|` and `|E₂| < 2^|E₁|`.
pub fn uniqueness_cardinality_ok(e1: &Partition, e2: &Partition) -> Result<bool> {
    e1.same_universe(e2)?;
    Ok(cardinality_bound(e1.block_count(), e2.block_count()))
}

pub(crate) fn cardinality_bound(a: usize, b: usize) -> bool {
    a < (1usize << b) && b < (1usize << a)
}
