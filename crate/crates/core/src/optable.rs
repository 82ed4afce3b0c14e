//! Dense operator tables `P(V) → P(V)` and the four double successive operators.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{Partition, Subset, Universe};

/// Which two-step operator a table represents. The first letter is the outer
/// operator (built from `E₂`), the second the inner one (from `E₁`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `L₂L₁`
    LL,
    /// `U₂U₁`
    UU,
    /// `U₂L₁`
    UL,
    /// `L₂U₁`
    LU,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [Self::LL, Self::UU, Self::UL, Self::LU];

    /// Complement conjugation swaps `L` and `U` on both sides.
    pub fn dual(self) -> Self {
        match self {
            Self::LL => Self::UU,
            Self::UU => Self::LL,
            Self::UL => Self::LU,
            Self::LU => Self::UL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LL => "LL",
            Self::UU => "UU",
            Self::UL => "UL",
            Self::LU => "LU",
        }
    }

    /// Applies the operator for the pair `(inner, outer)` to one set.
    #[inline]
    pub fn eval(self, inner: &Partition, outer: &Partition, x: Subset) -> Subset {
        match self {
            Self::LL => outer.lower(inner.lower(x)),
            Self::UU => outer.upper(inner.upper(x)),
            Self::UL => outer.upper(inner.lower(x)),
            Self::LU => outer.lower(inner.upper(x)),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LL" => Ok(Self::LL),
            "UU" => Ok(Self::UU),
            "UL" => Ok(Self::UL),
            "LU" => Ok(Self::LU),
            _ => Err(Error::Format(format!("unknown operator kind {s:?}"))),
        }
    }
}

/// A fully defined operator on the powerset, one entry per input mask.
#[derive(Clone, PartialEq, Eq)]
pub struct OpTable {
    universe: Universe,
    kind: OperatorKind,
    entries: Vec<Subset>,
}

impl OpTable {
    /// Wraps raw entries; `entries[i]` is the image of the set with mask `i`.
    pub fn from_entries(
        universe: &Universe,
        kind: OperatorKind,
        entries: Vec<Subset>,
    ) -> Result<Self> {
        if entries.len() != universe.powerset_len() {
            return Err(Error::Format(format!(
                "expected {} entries, got {}",
                universe.powerset_len(),
                entries.len()
            )));
        }
        for &e in &entries {
            universe.check(e)?;
        }
        Ok(Self {
            universe: universe.clone(),
            kind,
            entries,
        })
    }

    /// Tabulates `f` over every subset.
    pub fn from_fn(
        universe: &Universe,
        kind: OperatorKind,
        f: impl Fn(Subset) -> Subset,
    ) -> Result<Self> {
        let entries = universe.subsets().map(f).collect();
        Self::from_entries(universe, kind, entries)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn entries(&self) -> &[Subset] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, x: Subset) -> Subset {
        self.entries[x.index()]
    }

    /// Same table relabelled with another kind tag.
    pub fn with_kind(mut self, kind: OperatorKind) -> Self {
        self.kind = kind;
        self
    }

    /// Inputs paired with their images, in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &y)| (Subset::from_bits(i as u32), y))
    }

    /// Distinct images in order of first appearance.
    pub fn range(&self) -> Vec<Subset> {
        let mut seen = vec![false; self.entries.len()];
        let mut out = Vec::new();
        for &y in &self.entries {
            if !std::mem::replace(&mut seen[y.index()], true) {
                out.push(y);
            }
        }
        out
    }

    /// Whether the kind's fixed boundary values hold (`∅ ↦ ∅` and/or `V ↦ V`).
    pub fn respects_boundary(&self) -> bool {
        let full = self.universe.full();
        let empty_ok = self.get(Subset::EMPTY).is_empty();
        let full_ok = self.get(full) == full;
        match self.kind {
            OperatorKind::LL | OperatorKind::UU => empty_ok && full_ok,
            OperatorKind::UL => full_ok,
            OperatorKind::LU => empty_ok,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("tables always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, y) in self.iter() {
            m.entry(
                &format!("{{{}}}", self.universe.format_subset(x)),
                &format!("{{{}}}", self.universe.format_subset(y)),
            );
        }
        m.finish()
    }
}

/// `entries[X] = outer_op(e2, inner_op(e1, X))` for the given kind.
pub fn compose(e1: &Partition, e2: &Partition, kind: OperatorKind) -> Result<OpTable> {
    if e1.universe() != e2.universe() {
        return Err(Error::UniverseMismatch);
    }
    OpTable::from_fn(e1.universe(), kind, |x| kind.eval(e1, e2, x))
}

pub fn apply(t: &OpTable, x: Subset) -> Result<Subset> {
    t.universe.check(x)?;
    Ok(t.get(x))
}

/// `X ↦ -t(-X)`, tagged with the dual kind.
pub fn dual_transform(t: &OpTable) -> OpTable {
    let u = &t.universe;
    let entries = u
        .subsets()
        .map(|x| u.complement(t.get(u.complement(x))))
        .collect();
    OpTable {
        universe: u.clone(),
        kind: t.kind.dual(),
        entries,
    }
}

/// Checks `X ⊆ Y ⇒ t(X) ⊆ t(Y)` on the single-insertion edges of the cube.
pub fn is_monotone(t: &OpTable) -> bool {
    let n = t.universe.len();
    t.iter().all(|(x, y)| {
        (0..n)
            .filter(|&v| !x.contains(v))
            .all(|v| y.is_subset(t.get(x.with(v))))
    })
}

pub fn tables_equal(a: &OpTable, b: &OpTable) -> bool {
    a == b
}

impl Serialize for OpTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a OpTable);

        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let t = self.0;
                let mut map = serializer.serialize_map(Some(t.entries.len()))?;
                for (x, y) in t.iter() {
                    map.serialize_entry(
                        &t.universe.format_subset(x),
                        &t.universe.format_subset(y),
                    )?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("universe", self.universe.names())?;
        map.serialize_entry("kind", self.kind.as_str())?;
        map.serialize_entry("entries", &Entries(self))?;
        map.end()
    }
}

/// Ordered key/value pairs; duplicate keys are kept so they can be rejected.
struct RawEntries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for RawEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;

        impl<'de> Visitor<'de> for V {
            type Value = RawEntries;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping subsets to subsets")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<RawEntries, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(RawEntries(out))
            }
        }

        deserializer.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    universe: Vec<String>,
    kind: String,
    entries: RawEntries,
}

fn parse_strict_subset(u: &Universe, text: &str) -> Result<Subset> {
    if text.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let mut s = Subset::EMPTY;
    for label in text.split(',') {
        let i = u
            .index_of(label)
            .map_err(|_| Error::Format(format!("unknown element {label:?} in {text:?}")))?;
        if s.contains(i) {
            return Err(Error::Format(format!(
                "element {label:?} repeated in {text:?}"
            )));
        }
        s = s.with(i);
    }
    Ok(s)
}

impl TryFrom<RawTable> for OpTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        let universe = Universe::new(raw.universe)?;
        let kind: OperatorKind = raw.kind.parse()?;
        let mut entries: Vec<Option<Subset>> = vec![None; universe.powerset_len()];
        for (k, v) in raw.entries.0 {
            let x = parse_strict_subset(&universe, &k)?;
            let y = parse_strict_subset(&universe, &v)?;
            if entries[x.index()].replace(y).is_some() {
                return Err(Error::Format(format!("duplicate key {k:?}")));
            }
        }
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                e.ok_or_else(|| {
                    Error::Format(format!(
                        "missing key {:?}",
                        universe.format_subset(Subset::from_bits(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OpTable::from_entries(&universe, kind, entries)
    }
}

impl<'de> Deserialize<'de> for OpTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(deserializer)?;
        OpTable::try_from(raw).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Universe, Partition, Partition) {
        let u = Universe::parse("a,b,c,d,e").unwrap();
        let e1 = Partition::parse(&u, "a,c|b|d,e").unwrap();
        let e2 = Partition::parse(&u, "a,b|c,d|e").unwrap();
        (u, e1, e2)
    }

    #[test]
    fn compose_five_element_entries() {
        let (u, e1, e2) = setup();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        let s = |x| u.parse_subset(x).unwrap();
        assert_eq!(t.get(s("a,b,c")), s("a,b"));
        assert_eq!(t.get(s("d,e")), s("e"));
        assert_eq!(t.get(s("a,c,d,e")), s("c,d,e"));
        assert_eq!(apply(&t, s("a,b,d,e")).unwrap(), s("e"));
        assert_eq!(apply(&t, s("b,c,e")).unwrap(), Subset::EMPTY);
        assert_eq!(apply(&t, Subset::EMPTY).unwrap(), Subset::EMPTY);
        assert!(apply(&t, Subset::from_bits(1 << 7)).is_err());
        assert!(is_monotone(&t));
    }

    #[test]
    fn crossed_pairs_collapse_everything_but_v() {
        let u = Universe::parse("a,b,c,d").unwrap();
        let e1 = Partition::parse(&u, "a,b|c,d").unwrap();
        let e2 = Partition::parse(&u, "a,c|b,d").unwrap();
        let e3 = Partition::parse(&u, "a,d|b,c").unwrap();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        for (x, y) in t.iter() {
            let expected = if x == u.full() {
                u.full()
            } else {
                Subset::EMPTY
            };
            assert_eq!(y, expected);
        }
        assert!(tables_equal(
            &t,
            &compose(&e1, &e3, OperatorKind::LL).unwrap()
        ));
        let d = dual_transform(&t);
        assert_eq!(d.kind(), OperatorKind::UU);
        for (x, y) in d.iter() {
            let expected = if x.is_empty() {
                Subset::EMPTY
            } else {
                u.full()
            };
            assert_eq!(y, expected);
        }
        assert!(!tables_equal(&t, &d));
    }

    #[test]
    fn identity_pair_gives_identity_operator() {
        let u = Universe::parse("a,b,c").unwrap();
        let id = Partition::identity(&u);
        for kind in OperatorKind::ALL {
            let t = compose(&id, &id, kind).unwrap();
            assert!(t.iter().all(|(x, y)| x == y));
            let d = dual_transform(&t);
            assert_eq!(d.kind(), kind.dual());
            assert!(d.iter().all(|(x, y)| x == y));
        }
    }

    #[test]
    fn dual_is_involutive() {
        let (_, e1, e2) = setup();
        let t = compose(&e1, &e2, OperatorKind::LL).unwrap();
        assert_eq!(dual_transform(&dual_transform(&t)), t);
    }

    #[test]
    fn detects_non_monotone() {
        let u = Universe::parse("a,b").unwrap();
        let mut entries = vec![Subset::EMPTY; 4];
        entries[1] = u.singleton("a").unwrap();
        let t = OpTable::from_entries(&u, OperatorKind::LL, entries).unwrap();
        assert!(!is_monotone(&t));
    }

    #[test]
    fn kinds() {
        for k in OperatorKind::ALL {
            assert_eq!(k.dual().dual(), k);
            assert_eq!(k.as_str().parse::<OperatorKind>().unwrap(), k);
        }
        assert_eq!("ul".parse::<OperatorKind>().unwrap(), OperatorKind::UL);
        assert!("xx".parse::<OperatorKind>().is_err());
    }

    #[test]
    fn json_keys_follow_mask_order() {
        let u = Universe::parse("a,b").unwrap();
        let id = Partition::identity(&u);
        let t = compose(&id, &id, OperatorKind::UU).unwrap();
        let expected = "{\n  \"universe\": [\n    \"a\",\n    \"b\"\n  ],\n  \"kind\": \"UU\",\n  \"entries\": {\n    \"\": \"\",\n    \"a\": \"a\",\n    \"b\": \"b\",\n    \"a,b\": \"a,b\"\n  }\n}\n";
        assert_eq!(t.to_json(), expected);
        assert_eq!(OpTable::from_json(expected).unwrap(), t);
    }

    #[test]
    fn json_rejects_malformed_tables() {
        let missing = r#"{"universe":["a","b"],"kind":"LL","entries":{"":"","a":"","b":""}}"#;
        assert!(
            matches!(OpTable::from_json(missing), Err(Error::Format(m)) if m.contains("missing key"))
        );
        let unknown = r#"{"universe":["a","b"],"kind":"LL","entries":{"":"","a":"","b":"","a,b":"a,b","c":""}}"#;
        assert!(
            matches!(OpTable::from_json(unknown), Err(Error::Format(m)) if m.contains("unknown element"))
        );
        let dup = r#"{"universe":["a","b"],"kind":"LL","entries":{"":"","a":"","b":"","a,b":"a,b","b,a":""}}"#;
        assert!(
            matches!(OpTable::from_json(dup), Err(Error::Format(m)) if m.contains("duplicate"))
        );
        let kind =
            r#"{"universe":["a","b"],"kind":"XY","entries":{"":"","a":"","b":"","a,b":"a,b"}}"#;
        assert!(OpTable::from_json(kind).is_err());
        let extra = r#"{"universe":["a"],"kind":"LL","entries":{"":"","a":"a"},"x":1}"#;
        assert!(OpTable::from_json(extra).is_err());
    }

    #[test]
    fn boundary_values() {
        let (_, e1, e2) = setup();
        for kind in OperatorKind::ALL {
            assert!(compose(&e1, &e2, kind).unwrap().respects_boundary());
        }
    }
}
