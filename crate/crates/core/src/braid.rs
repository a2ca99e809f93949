//! Braid words, their text format, closure to diagrams, and the moves
//! (braid relations, conjugation, stabilization) that preserve the closed
//! link.

use std::collections::BTreeMap;
use std::fmt;

use crate::link::{LinkDiagram, LinkError, Passage, Sign};

/// A word in the standard generators. Letter `i > 0` is `σ_i`, a positive
/// crossing in which the strand at position `i` passes over the strand at
/// `i + 1`; letter `-i` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, LinkError> {
        if strands == 0 {
            return Err(LinkError::Syntax {
                column: 1,
                message: "strand count must be positive".into(),
            });
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(LinkError::GeneratorOutOfRange {
                    column: 0,
                    letter: l as i64,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Parses `"strands=N; i1 i2 ..."`.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let syntax = |column: usize, message: &str| LinkError::Syntax {
            column,
            message: message.to_string(),
        };
        let lead = text.len() - text.trim_start().len();
        let rest = &text[lead..];
        let Some(after_kw) = rest.strip_prefix("strands") else {
            return Err(syntax(lead + 1, "expected `strands=N;`"));
        };
        let mut pos = lead + "strands".len();
        let ws = after_kw.len() - after_kw.trim_start().len();
        pos += ws;
        let Some(after_eq) = after_kw.trim_start().strip_prefix('=') else {
            return Err(syntax(pos + 1, "expected `=` after `strands`"));
        };
        pos += 1;
        let Some(semi) = after_eq.find(';') else {
            return Err(syntax(
                text.len() + 1,
                "expected `;` after the strand count",
            ));
        };
        let count_text = &after_eq[..semi];
        let count_col = pos + 1 + (count_text.len() - count_text.trim_start().len());
        let strands: usize = count_text
            .trim()
            .parse()
            .map_err(|_| syntax(count_col, "strand count must be a positive integer"))?;
        if strands == 0 {
            return Err(syntax(count_col, "strand count must be positive"));
        }
        let body_start = pos + semi + 1;
        let body = &after_eq[semi + 1..];
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in body.split_whitespace() {
            let at = body[offset..].find(token).unwrap() + offset;
            offset = at + token.len();
            let column = body_start + at + 1;
            let value: i64 = token
                .parse()
                .map_err(|_| syntax(column, &format!("invalid generator `{token}`")))?;
            if value == 0 || value.unsigned_abs() as usize >= strands {
                return Err(LinkError::GeneratorOutOfRange {
                    column,
                    letter: value,
                    strands,
                });
            }
            letters.push(value as i32);
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Image of each strand position after the whole word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[strand] = position
        for &l in &self.letters {
            let p = l.unsigned_abs() as usize - 1;
            for pos in at.iter_mut() {
                if *pos == p {
                    *pos = p + 1;
                } else if *pos == p + 1 {
                    *pos = p;
                }
            }
        }
        at
    }

    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        cycles
    }

    /// The closure. Crossing `k` is the `k`-th letter; one component per
    /// cycle of the permutation, ordered by least strand, based at the bottom
    /// of that strand.
    pub fn close(&self) -> LinkDiagram {
        let signs: BTreeMap<_, _> = self
            .letters
            .iter()
            .enumerate()
            .map(|(k, &l)| {
                (
                    k as u32,
                    if l > 0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    },
                )
            })
            .collect();
        let mut seen = vec![false; self.strands];
        let mut components = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut seq = Vec::new();
            let mut pos = start;
            while !seen[pos] {
                seen[pos] = true;
                for (k, &l) in self.letters.iter().enumerate() {
                    let p = l.unsigned_abs() as usize - 1;
                    if pos != p && pos != p + 1 {
                        continue;
                    }
                    // the strand moving from p to p+1 is over for σ_i, under for σ_i^-1
                    let moving_right = pos == p;
                    let over = moving_right == (l > 0);
                    seq.push(if over {
                        Passage::over(k as u32)
                    } else {
                        Passage::under(k as u32)
                    });
                    pos = if moving_right { p + 1 } else { p };
                }
            }
            components.push(seq);
        }
        LinkDiagram::new(components, &signs).expect("braid closure is a valid diagram")
    }

    /// Cyclic rotation by `k` letters (a conjugation).
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// `g · w · g^-1`.
    pub fn conjugate(&self, g: i32) -> Result<Self, LinkError> {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(g);
        letters.extend_from_slice(&self.letters);
        letters.push(-g);
        Self::new(self.strands, letters)
    }

    /// Markov stabilization: add a strand and append `σ_n^±1`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        Self {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Inserts `g g^-1` before index `at`.
    pub fn insert_cancelling_pair(&self, at: usize, g: i32) -> Result<Self, LinkError> {
        let mut letters = self.letters.clone();
        let at = at.min(letters.len());
        letters.splice(at..at, [g, -g]);
        Self::new(self.strands, letters)
    }

    /// Applies a braid relation at index `at` if one matches: far
    /// commutation `ab -> ba` when the generators are at distance at least
    /// two, or `aba -> bab` for adjacent generators of equal sign.
    pub fn braid_relation_at(&self, at: usize) -> Option<Self> {
        let w = &self.letters;
        if at + 1 < w.len() {
            let (a, b) = (w[at], w[at + 1]);
            if (a.abs() - b.abs()).abs() >= 2 {
                let mut letters = w.clone();
                letters.swap(at, at + 1);
                return Some(Self {
                    strands: self.strands,
                    letters,
                });
            }
        }
        if at + 2 < w.len() {
            let (a, b, c) = (w[at], w[at + 1], w[at + 2]);
            if a == c && (a.abs() - b.abs()).abs() == 1 && a.signum() == b.signum() {
                let mut letters = w.clone();
                letters[at] = b;
                letters[at + 1] = a;
                letters[at + 2] = b;
                return Some(Self {
                    strands: self.strands,
                    letters,
                });
            }
        }
        None
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={};", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let b = BraidWord::parse("strands=2; 1 1").unwrap();
        assert_eq!((b.strands(), b.letters()), (2, &[1, 1][..]));
        let b = BraidWord::parse("strands=3; 1 -2 1 -2 1 -2").unwrap();
        assert_eq!(b.letters(), &[1, -2, 1, -2, 1, -2]);
        assert_eq!(
            BraidWord::parse("strands=2; 5"),
            Err(LinkError::GeneratorOutOfRange {
                column: 12,
                letter: 5,
                strands: 2
            })
        );
    }

    #[test]
    fn parse_errors_are_positioned() {
        assert!(matches!(
            BraidWord::parse("strand=2; 1"),
            Err(LinkError::Syntax { column: 1, .. })
        ));
        assert!(matches!(
            BraidWord::parse("strands=x; 1"),
            Err(LinkError::Syntax { column: 9, .. })
        ));
        assert!(matches!(
            BraidWord::parse("strands=2 1 1"),
            Err(LinkError::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("strands=3; 1 a"),
            Err(LinkError::Syntax { column: 14, .. })
        ));
        assert!(matches!(
            BraidWord::parse("strands=3; 0"),
            Err(LinkError::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("strands=0;"),
            Err(LinkError::Syntax { .. })
        ));
        assert_eq!(BraidWord::parse("  strands = 1 ;").unwrap().strands(), 1);
    }

    #[test]
    fn closure_examples() {
        let hopf = BraidWord::parse("strands=2; 1 1").unwrap().close();
        assert_eq!(
            (hopf.component_count(), hopf.crossing_count(), hopf.writhe()),
            (2, 2, 2)
        );
        let trefoil = BraidWord::parse("strands=2; 1 1 1").unwrap().close();
        assert_eq!(
            (
                trefoil.component_count(),
                trefoil.crossing_count(),
                trefoil.writhe()
            ),
            (1, 3, 3)
        );
        let borromean = BraidWord::parse("strands=3; 1 -2 1 -2 1 -2")
            .unwrap()
            .close();
        assert_eq!(
            (borromean.component_count(), borromean.crossing_count()),
            (3, 6)
        );
        assert_eq!(
            BraidWord::parse("strands=3;").unwrap().close(),
            LinkDiagram::unlink(3)
        );
    }

    #[test]
    fn hopf_closure_passages() {
        let hopf = BraidWord::parse("strands=2; 1 1").unwrap().close();
        assert_eq!(
            hopf.components()[0],
            vec![Passage::over(0), Passage::under(1)]
        );
        assert_eq!(
            hopf.components()[1],
            vec![Passage::under(0), Passage::over(1)]
        );
    }

    #[test]
    fn display_roundtrip() {
        let b = BraidWord::new(4, vec![1, -3, 2]).unwrap();
        assert_eq!(b.to_string(), "strands=4; 1 -3 2");
        assert_eq!(b.to_string().parse::<BraidWord>().unwrap(), b);
    }

    #[test]
    fn relations() {
        let b = BraidWord::new(4, vec![1, 3, 2, 3, 2]).unwrap();
        assert_eq!(b.braid_relation_at(0).unwrap().letters(), &[3, 1, 2, 3, 2]);
        assert_eq!(b.braid_relation_at(2).unwrap().letters(), &[1, 3, 3, 2, 3]);
        assert_eq!(b.braid_relation_at(1).unwrap().letters(), &[1, 2, 3, 2, 2]);
        assert!(b.braid_relation_at(3).is_none());
        let mixed = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        assert!(mixed.braid_relation_at(0).is_none());
    }

    proptest! {
        #[test]
        fn closure_components_match_cycles(n in 1usize..6, raw in prop::collection::vec(1i32..6, 0..14), flips in prop::collection::vec(any::<bool>(), 14)) {
            let letters: Vec<i32> = raw.iter().zip(&flips)
                .filter(|(l, _)| (**l as usize) < n)
                .map(|(&l, &f)| if f { -l } else { l })
                .collect();
            let b = BraidWord::new(n, letters).unwrap();
            let d = b.close();
            prop_assert_eq!(d.component_count(), b.cycle_count());
            prop_assert_eq!(d.crossing_count(), b.len());
        }
    }
}
