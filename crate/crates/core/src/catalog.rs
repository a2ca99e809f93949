//! Named links built from braid words.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::link::{LinkDiagram, LinkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub braid: &'static str,
    pub expected_components: usize,
    pub expected_writhe: i64,
    pub expected_total_lk: i64,
}

/// Structural data recomputed from a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralNotes {
    pub components: usize,
    pub crossings: usize,
    pub writhe: i64,
    pub total_lk: i64,
    /// Linking numbers of pairs `(b, c)`, `b < c`, in lexicographic order.
    pub pair_lk: Vec<i64>,
}

impl StructuralNotes {
    pub fn of(d: &LinkDiagram) -> Result<Self, LinkError> {
        let count = d.component_count();
        let mut pair_lk = Vec::new();
        for b in 0..count {
            for c in b + 1..count {
                pair_lk.push(d.linking_number(b, c)?);
            }
        }
        Ok(Self {
            components: count,
            crossings: d.crossing_count(),
            writhe: d.writhe(),
            total_lk: d.total_linking()?,
            pair_lk,
        })
    }
}

impl CatalogEntry {
    pub fn braid_word(&self) -> BraidWord {
        BraidWord::parse(self.braid).expect("catalog braids parse")
    }

    pub fn diagram(&self) -> LinkDiagram {
        self.braid_word().close()
    }

    pub fn notes(&self) -> StructuralNotes {
        StructuralNotes::of(&self.diagram())
            .expect("catalog diagrams have even inter-component counts")
    }

    /// One listing line from recomputed data: `L` and `w` always, `lk` for
    /// two components, `lk_total` and the pairwise list for three or more.
    pub fn listing_line(&self) -> String {
        let n = self.notes();
        match n.components {
            0 | 1 => format!(
                "{} L={} w={} crossings={}",
                self.name, n.components, n.writhe, n.crossings
            ),
            2 => format!(
                "{} L=2 w={} lk={} crossings={}",
                self.name, n.writhe, n.total_lk, n.crossings
            ),
            l => {
                let pairs: Vec<String> = n.pair_lk.iter().map(i64::to_string).collect();
                format!(
                    "{} L={} lk_total={} w={} lk=[{}] crossings={}",
                    self.name,
                    l,
                    n.total_lk,
                    n.writhe,
                    pairs.join(","),
                    n.crossings
                )
            }
        }
    }
}

const fn entry(
    name: &'static str,
    braid: &'static str,
    components: usize,
    writhe: i64,
    total_lk: i64,
) -> CatalogEntry {
    CatalogEntry {
        name,
        braid,
        expected_components: components,
        expected_writhe: writhe,
        expected_total_lk: total_lk,
    }
}

pub const CATALOG: &[CatalogEntry] = &[
    entry("unknot", "strands=1;", 1, 0, 0),
    entry("unlink-2", "strands=2;", 2, 0, 0),
    entry("unlink-3", "strands=3;", 3, 0, 0),
    entry("unlink-4", "strands=4;", 4, 0, 0),
    entry("hopf+", "strands=2; 1 1", 2, 2, 1),
    entry("hopf-", "strands=2; -1 -1", 2, -2, -1),
    entry("trefoil", "strands=2; 1 1 1", 1, 3, 0),
    entry("trefoil-left", "strands=2; -1 -1 -1", 1, -3, 0),
    entry("figure-eight", "strands=3; 1 -2 1 -2", 1, 0, 0),
    entry("torus-2-4", "strands=2; 1 1 1 1", 2, 4, 2),
    entry("torus-2-6", "strands=2; 1 1 1 1 1 1", 2, 6, 3),
    entry("borromean", "strands=3; 1 -2 1 -2 1 -2", 3, 0, 0),
    entry("trefoil+hopf", "strands=4; 1 1 1 3 3", 3, 5, 1),
    entry("granny", "strands=3; 1 1 1 2 2 2", 1, 6, 0),
    entry("square", "strands=3; 1 1 1 -2 -2 -2", 1, 0, 0),
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notes_match_expectations() {
        for e in CATALOG {
            let n = e.notes();
            assert_eq!(
                (n.components, n.writhe, n.total_lk),
                (
                    e.expected_components,
                    e.expected_writhe,
                    e.expected_total_lk
                ),
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn listing_examples() {
        let lines: Vec<String> = CATALOG.iter().map(CatalogEntry::listing_line).collect();
        let has = |s: &str| lines.iter().any(|l| l.starts_with(s));
        assert!(has("hopf+ L=2 w=2 lk=1"));
        assert!(has("borromean L=3 lk_total=0"));
        assert!(has("unknot L=1 w=0"));
        assert_eq!(
            lookup("trefoil+hopf").unwrap().notes().pair_lk,
            vec![0, 0, 1]
        );
    }

    #[test]
    fn names_are_unique() {
        for (i, e) in CATALOG.iter().enumerate() {
            assert!(CATALOG[i + 1..].iter().all(|o| o.name != e.name));
        }
        assert!(lookup("nope").is_none());
    }
}
