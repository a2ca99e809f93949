//! Oriented link diagrams in Gauss-code form.
//!
//! A diagram is a list of components, each a cyclic sequence of passages
//! through crossings, plus a sign for every crossing. Position 0 of each
//! component is its base point. No planar embedding is stored: every
//! surgery here is purely combinatorial and maps realizable diagrams to
//! realizable diagrams.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type CrossingId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("generator {letter} at column {column} out of range for {strands} strands")]
    GeneratorOutOfRange {
        column: usize,
        letter: i64,
        strands: usize,
    },
    #[error("invalid diagram JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram at {path}: {message}")]
    Malformed { path: String, message: String },
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("component index {index} out of range (diagram has {len} components)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty component selection")]
    EmptySelection,
    #[error("components must be distinct, got {0} twice")]
    SameComponent(usize),
    #[error("odd signed crossing count {count} between components {a} and {b}")]
    OddCrossingParity { a: usize, b: usize, count: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn opposite(self) -> Self {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One pass of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(CrossingId, Role)", into = "(CrossingId, Role)")]
pub struct Passage {
    pub crossing: CrossingId,
    pub role: Role,
}

impl Passage {
    pub fn over(crossing: CrossingId) -> Self {
        Self {
            crossing,
            role: Role::Over,
        }
    }

    pub fn under(crossing: CrossingId) -> Self {
        Self {
            crossing,
            role: Role::Under,
        }
    }
}

impl From<(CrossingId, Role)> for Passage {
    fn from((crossing, role): (CrossingId, Role)) -> Self {
        Self { crossing, role }
    }
}

impl From<Passage> for (CrossingId, Role) {
    fn from(p: Passage) -> Self {
        (p.crossing, p.role)
    }
}

/// `(component, position)` of a passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PassageRef {
    pub component: usize,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub sign: Sign,
    pub over: PassageRef,
    pub under: PassageRef,
}

impl Crossing {
    pub fn is_self_crossing(&self) -> bool {
        self.over.component == self.under.component
    }
}

/// A strictly increasing, nonempty list of component indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSubset(Vec<usize>);

impl ComponentSubset {
    pub fn new(mut indices: Vec<usize>, component_count: usize) -> Result<Self, LinkError> {
        if indices.is_empty() {
            return Err(LinkError::EmptySelection);
        }
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= component_count) {
            return Err(LinkError::IndexOutOfRange {
                index: bad,
                len: component_count,
            });
        }
        Ok(Self(indices))
    }

    /// Subset from a bitmask over component indices.
    pub fn from_mask(mask: u64, component_count: usize) -> Result<Self, LinkError> {
        let indices = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        Self::new(indices, component_count)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// An oriented link diagram.
#[derive(Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    crossings: BTreeMap<CrossingId, Crossing>,
}

impl LinkDiagram {
    /// The diagram with no components.
    pub fn empty() -> Self {
        Self {
            components: Vec::new(),
            crossings: BTreeMap::new(),
        }
    }

    /// `n` crossing-free circles.
    pub fn unlink(n: usize) -> Self {
        Self {
            components: vec![Vec::new(); n],
            crossings: BTreeMap::new(),
        }
    }

    /// Builds a diagram from passage sequences and crossing signs, checking
    /// that every crossing is passed exactly once over and once under.
    pub fn new(
        components: Vec<Vec<Passage>>,
        signs: &BTreeMap<CrossingId, Sign>,
    ) -> Result<Self, LinkError> {
        let mut over: HashMap<CrossingId, PassageRef> = HashMap::new();
        let mut under: HashMap<CrossingId, PassageRef> = HashMap::new();
        for (c, seq) in components.iter().enumerate() {
            for (p, passage) in seq.iter().enumerate() {
                if !signs.contains_key(&passage.crossing) {
                    return Err(LinkError::Malformed {
                        path: format!("components[{c}][{p}]"),
                        message: format!("crossing {} has no sign record", passage.crossing),
                    });
                }
                let slot = match passage.role {
                    Role::Over => &mut over,
                    Role::Under => &mut under,
                };
                let r = PassageRef {
                    component: c,
                    position: p,
                };
                if slot.insert(passage.crossing, r).is_some() {
                    return Err(LinkError::Malformed {
                        path: format!("components[{c}][{p}]"),
                        message: format!(
                            "crossing {} passed {:?} more than once",
                            passage.crossing, passage.role
                        ),
                    });
                }
            }
        }
        let mut crossings = BTreeMap::new();
        for (&id, &sign) in signs {
            let (Some(&o), Some(&u)) = (over.get(&id), under.get(&id)) else {
                return Err(LinkError::Malformed {
                    path: format!("crossings[id={id}]"),
                    message: "crossing must be passed once over and once under".into(),
                });
            };
            crossings.insert(
                id,
                Crossing {
                    id,
                    sign,
                    over: o,
                    under: u,
                },
            );
        }
        Ok(Self {
            components,
            crossings,
        })
    }

    // Internal constructor for surgeries whose bookkeeping is correct by
    // construction.
    fn rebuild(components: Vec<Vec<Passage>>, signs: &BTreeMap<CrossingId, Sign>) -> Self {
        Self::new(components, signs).expect("surgery preserves crossing bookkeeping")
    }

    fn signs(&self) -> BTreeMap<CrossingId, Sign> {
        self.crossings.iter().map(|(&id, c)| (id, c.sign)).collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    /// Crossings ordered by id.
    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> + '_ {
        self.crossings.values()
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing, LinkError> {
        self.crossings
            .get(&id)
            .ok_or(LinkError::UnknownCrossing(id))
    }

    fn check_component(&self, index: usize) -> Result<(), LinkError> {
        if index >= self.components.len() {
            return Err(LinkError::IndexOutOfRange {
                index,
                len: self.components.len(),
            });
        }
        Ok(())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.values().map(|c| c.sign.value()).sum()
    }

    /// Sum of the signs of the self-crossings of one component.
    pub fn self_writhe(&self, component: usize) -> Result<i64, LinkError> {
        self.check_component(component)?;
        Ok(self
            .crossings
            .values()
            .filter(|c| c.over.component == component && c.under.component == component)
            .map(|c| c.sign.value())
            .sum())
    }

    pub fn total_self_writhe(&self) -> i64 {
        self.crossings
            .values()
            .filter(|c| c.is_self_crossing())
            .map(|c| c.sign.value())
            .sum()
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, LinkError> {
        self.check_component(a)?;
        self.check_component(b)?;
        if a == b {
            return Err(LinkError::SameComponent(a));
        }
        let count: i64 = self
            .crossings
            .values()
            .filter(|c| {
                let (x, y) = (c.over.component, c.under.component);
                (x == a && y == b) || (x == b && y == a)
            })
            .map(|c| c.sign.value())
            .sum();
        if count % 2 != 0 {
            return Err(LinkError::OddCrossingParity { a, b, count });
        }
        Ok(count / 2)
    }

    pub fn total_linking(&self) -> Result<i64, LinkError> {
        let n = self.components.len();
        let mut total = 0;
        for a in 0..n {
            for b in a + 1..n {
                total += self.linking_number(a, b)?;
            }
        }
        Ok(total)
    }

    /// The diagram obtained by deleting every component outside `subset`,
    /// together with all crossings that touch a deleted component.
    pub fn sublink(&self, subset: &ComponentSubset) -> Result<LinkDiagram, LinkError> {
        for &i in subset.indices() {
            self.check_component(i)?;
        }
        let keep: BTreeSet<usize> = subset.indices().iter().copied().collect();
        let signs: BTreeMap<CrossingId, Sign> = self
            .crossings
            .values()
            .filter(|c| keep.contains(&c.over.component) && keep.contains(&c.under.component))
            .map(|c| (c.id, c.sign))
            .collect();
        let components = subset
            .indices()
            .iter()
            .map(|&i| {
                self.components[i]
                    .iter()
                    .filter(|p| signs.contains_key(&p.crossing))
                    .copied()
                    .collect()
            })
            .collect();
        Ok(Self::rebuild(components, &signs))
    }

    pub fn sublink_of(&self, indices: &[usize]) -> Result<LinkDiagram, LinkError> {
        self.sublink(&ComponentSubset::new(
            indices.to_vec(),
            self.component_count(),
        )?)
    }

    /// The diagram with crossing `id` changed: over and under swap, the
    /// sign flips.
    pub fn switch_crossing(&self, id: CrossingId) -> Result<LinkDiagram, LinkError> {
        let x = *self.crossing(id)?;
        let mut out = self.clone();
        out.components[x.over.component][x.over.position].role = Role::Under;
        out.components[x.under.component][x.under.position].role = Role::Over;
        out.crossings.insert(
            id,
            Crossing {
                id,
                sign: x.sign.flip(),
                over: x.under,
                under: x.over,
            },
        );
        Ok(out)
    }

    /// The oriented smoothing at crossing `id`.
    ///
    /// An inter-component crossing merges its two components into one,
    /// placed at the smaller index and starting at that component's base
    /// point. A self-crossing splits its component: the part through the
    /// base point keeps the index, the loop between the two passages is
    /// inserted right after it.
    pub fn smooth_crossing(&self, id: CrossingId) -> Result<LinkDiagram, LinkError> {
        let x = *self.crossing(id)?;
        let mut signs = self.signs();
        signs.remove(&id);
        let mut components = self.components.clone();
        if x.is_self_crossing() {
            let c = x.over.component;
            let i = x.over.position.min(x.under.position);
            let j = x.over.position.max(x.under.position);
            let seq = &self.components[c];
            let outer: Vec<Passage> = seq[..i].iter().chain(&seq[j + 1..]).copied().collect();
            let inner: Vec<Passage> = seq[i + 1..j].to_vec();
            components[c] = outer;
            components.insert(c + 1, inner);
        } else {
            let (first, second) = if x.over.component < x.under.component {
                (x.over, x.under)
            } else {
                (x.under, x.over)
            };
            let a = &self.components[first.component];
            let b = &self.components[second.component];
            let (i, j) = (first.position, second.position);
            let merged: Vec<Passage> = a[..i]
                .iter()
                .chain(&b[j + 1..])
                .chain(&b[..j])
                .chain(&a[i + 1..])
                .copied()
                .collect();
            components[first.component] = merged;
            components.remove(second.component);
        }
        Ok(Self::rebuild(components, &signs))
    }

    /// Places `other` beside `self` with no new crossings; crossing ids of
    /// `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let offset = self.crossings.keys().next_back().map_or(0, |&m| m + 1);
        let mut signs = self.signs();
        signs.extend(other.crossings.values().map(|c| (c.id + offset, c.sign)));
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|seq| {
            seq.iter()
                .map(|p| Passage {
                    crossing: p.crossing + offset,
                    role: p.role,
                })
                .collect::<Vec<_>>()
        }));
        Self::rebuild(components, &signs)
    }

    /// Inserts a Reidemeister I curl on `component` before `position`.
    /// `first` is the role of the curl's first passage.
    pub fn insert_kink(
        &self,
        component: usize,
        position: usize,
        sign: Sign,
        first: Role,
    ) -> Result<LinkDiagram, LinkError> {
        self.check_component(component)?;
        let seq_len = self.components[component].len();
        if position > seq_len {
            return Err(LinkError::IndexOutOfRange {
                index: position,
                len: seq_len + 1,
            });
        }
        let id = self.crossings.keys().next_back().map_or(0, |&m| m + 1);
        let mut signs = self.signs();
        signs.insert(id, sign);
        let mut components = self.components.clone();
        let seq = &mut components[component];
        seq.insert(
            position,
            Passage {
                crossing: id,
                role: first.opposite(),
            },
        );
        seq.insert(
            position,
            Passage {
                crossing: id,
                role: first,
            },
        );
        Ok(Self::rebuild(components, &signs))
    }

    /// Moves the base point of `component` forward by `shift` passages.
    pub fn rotate_base_point(
        &self,
        component: usize,
        shift: usize,
    ) -> Result<LinkDiagram, LinkError> {
        self.check_component(component)?;
        let mut components = self.components.clone();
        let seq = &mut components[component];
        if !seq.is_empty() {
            let k = shift % seq.len();
            seq.rotate_left(k);
        }
        Ok(Self::rebuild(components, &self.signs()))
    }

    /// Every passage in traversal order: components in order, each from its
    /// base point.
    pub fn traversal(&self) -> impl Iterator<Item = (PassageRef, Passage)> + '_ {
        self.components.iter().enumerate().flat_map(|(c, seq)| {
            seq.iter().enumerate().map(move |(p, &passage)| {
                (
                    PassageRef {
                        component: c,
                        position: p,
                    },
                    passage,
                )
            })
        })
    }

    /// Serialization that ignores crossing ids: crossings are renumbered by
    /// first appearance in traversal order.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut relabel: HashMap<CrossingId, u32> = HashMap::with_capacity(self.crossings.len());
        let mut order: Vec<CrossingId> = Vec::with_capacity(self.crossings.len());
        let mut key = Vec::with_capacity(4 + self.crossings.len() * 12 + self.components.len());
        key.extend_from_slice(&(self.components.len() as u32).to_le_bytes());
        for seq in &self.components {
            key.push(b'C');
            for p in seq {
                let next = relabel.len() as u32;
                let label = *relabel.entry(p.crossing).or_insert_with(|| {
                    order.push(p.crossing);
                    next
                });
                key.extend_from_slice(&label.to_le_bytes());
                key.push(match p.role {
                    Role::Over => b'o',
                    Role::Under => b'u',
                });
            }
        }
        key.push(b'S');
        for id in order {
            key.push(match self.crossings[&id].sign {
                Sign::Positive => b'+',
                Sign::Negative => b'-',
            });
        }
        key
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson::from(self)).expect("diagram serialization is infallible")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self))
            .expect("diagram serialization is infallible")
    }

    /// Parses the diagram JSON format and cross-checks the crossing records
    /// against the passage sequences.
    pub fn from_json_str(text: &str) -> Result<LinkDiagram, LinkError> {
        let raw: DiagramJson = serde_json::from_str(text).map_err(|e| LinkError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        raw.into_diagram()
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram({})", self.to_json_string())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingJson {
    id: CrossingId,
    sign: i64,
    over: (usize, usize),
    under: (usize, usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    components: Vec<Vec<Passage>>,
    crossings: Vec<CrossingJson>,
}

impl From<&LinkDiagram> for DiagramJson {
    fn from(d: &LinkDiagram) -> Self {
        DiagramJson {
            components: d.components.clone(),
            crossings: d
                .crossings
                .values()
                .map(|c| CrossingJson {
                    id: c.id,
                    sign: c.sign.value(),
                    over: (c.over.component, c.over.position),
                    under: (c.under.component, c.under.position),
                })
                .collect(),
        }
    }
}

impl DiagramJson {
    fn into_diagram(self) -> Result<LinkDiagram, LinkError> {
        let mut signs = BTreeMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            let sign = Sign::from_int(c.sign).ok_or_else(|| LinkError::Malformed {
                path: format!("crossings[{k}].sign"),
                message: format!("sign must be 1 or -1, got {}", c.sign),
            })?;
            if signs.insert(c.id, sign).is_some() {
                return Err(LinkError::Malformed {
                    path: format!("crossings[{k}].id"),
                    message: format!("duplicate crossing id {}", c.id),
                });
            }
        }
        let d = LinkDiagram::new(self.components, &signs)?;
        for (k, c) in self.crossings.iter().enumerate() {
            let x = d.crossings[&c.id];
            for (field, given, actual) in [("over", c.over, x.over), ("under", c.under, x.under)] {
                if given != (actual.component, actual.position) {
                    return Err(LinkError::Malformed {
                        path: format!("crossings[{k}].{field}"),
                        message: format!(
                            "reference [{}, {}] does not match the passage at [{}, {}]",
                            given.0, given.1, actual.component, actual.position
                        ),
                    });
                }
            }
        }
        Ok(d)
    }
}
