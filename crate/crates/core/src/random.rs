//! Seeded braid generation for fuzzing.
//!
//! The generator is xorshift128 (`rand_xorshift::XorShiftRng`), seeded from
//! a `u64` by `rand_core`'s `seed_from_u64`. A draw below `n` takes 32-bit
//! outputs and rejects values at or above the largest multiple of `n`, then
//! reduces modulo `n`. Generators are listed in the order the draws happen,
//! so any implementation of the same steps reproduces the same braids.

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xorshift::XorShiftRng;
use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomError {
    #[error("{what} = {value} is outside the valid range {range}")]
    InvalidRange {
        what: &'static str,
        value: u64,
        range: &'static str,
    },
}

pub struct BraidSampler {
    rng: XorShiftRng,
}

impl BraidSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: XorShiftRng::seed_from_u64(seed),
        }
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u32) -> u32 {
        assert!(n > 0, "empty range");
        let limit = u32::MAX - u32::MAX % n;
        loop {
            let x = self.rng.next_u32();
            if x < limit {
                return x % n;
            }
        }
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }

    /// A word of `length` letters: for each, a generator in `1..strands`,
    /// then a sign.
    pub fn braid(&mut self, strands: usize, length: usize) -> Result<BraidWord, RandomError> {
        if strands < 2 {
            return Err(RandomError::InvalidRange {
                what: "strands",
                value: strands as u64,
                range: ">= 2",
            });
        }
        let letters = (0..length)
            .map(|_| {
                let g = self.below(strands as u32 - 1) as i32 + 1;
                if self.coin() {
                    g
                } else {
                    -g
                }
            })
            .collect();
        Ok(BraidWord::new(strands, letters).expect("generated letters are in range"))
    }

    /// Draws braids on `components..=components + 1` strands (at least 2)
    /// with up to `max_crossings` letters until the closure has exactly
    /// `components` components.
    pub fn link_with_components(&mut self, components: usize, max_crossings: usize) -> BraidWord {
        let base = components.max(2);
        loop {
            let strands = base + self.below(2) as usize;
            let length = self.below(max_crossings as u32 + 1) as usize;
            let b = self.braid(strands, length).expect("strands >= 2");
            if b.cycle_count() == components {
                return b;
            }
        }
    }

    /// Applies one move that preserves the closure up to isotopy. Moves
    /// that do not apply at the drawn position fall through to a
    /// stabilization.
    pub fn markov_step(&mut self, b: &BraidWord) -> (BraidWord, MarkovMove) {
        let strands = b.strands() as u32;
        match self.below(5) {
            0 if !b.is_empty() => {
                let k = self.below(b.len() as u32) as usize;
                return (b.rotate(k), MarkovMove::Rotate(k));
            }
            1 if strands >= 2 => {
                let g = self.signed_generator(strands);
                return (
                    b.conjugate(g).expect("generator in range"),
                    MarkovMove::Conjugate(g),
                );
            }
            2 if strands >= 2 => {
                let at = self.below(b.len() as u32 + 1) as usize;
                let g = self.signed_generator(strands);
                return (
                    b.insert_cancelling_pair(at, g).expect("generator in range"),
                    MarkovMove::CancellingPair { at, generator: g },
                );
            }
            3 if !b.is_empty() => {
                let at = self.below(b.len() as u32) as usize;
                if let Some(next) = b.braid_relation_at(at) {
                    return (next, MarkovMove::BraidRelation(at));
                }
            }
            _ => {}
        }
        let positive = self.coin();
        (b.stabilize(positive), MarkovMove::Stabilize(positive))
    }

    fn signed_generator(&mut self, strands: u32) -> i32 {
        let g = self.below(strands - 1) as i32 + 1;
        if self.coin() {
            g
        } else {
            -g
        }
    }
}

/// One closure-preserving braid move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovMove {
    Rotate(usize),
    Conjugate(i32),
    CancellingPair { at: usize, generator: i32 },
    BraidRelation(usize),
    Stabilize(bool),
}

impl fmt::Display for MarkovMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkovMove::Rotate(k) => write!(f, "rotate({k})"),
            MarkovMove::Conjugate(g) => write!(f, "conjugate({g})"),
            MarkovMove::CancellingPair { at, generator } => {
                write!(f, "cancelling-pair({at},{generator})")
            }
            MarkovMove::BraidRelation(at) => write!(f, "relation({at})"),
            MarkovMove::Stabilize(p) => write!(f, "stabilize({})", if *p { '+' } else { '-' }),
        }
    }
}

/// `count` braids from one generator seeded with `seed`.
pub fn random_braids(
    strands: usize,
    length: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<BraidWord>, RandomError> {
    let mut sampler = BraidSampler::new(seed);
    (0..count).map(|_| sampler.braid(strands, length)).collect()
}

/// `count` braids whose closures have component counts cycling through
/// `components`, each with at most `max_crossings` crossings.
pub fn link_corpus(
    seed: u64,
    count: usize,
    components: &[usize],
    max_crossings: usize,
) -> Vec<BraidWord> {
    let mut sampler = BraidSampler::new(seed);
    (0..count)
        .map(|i| sampler.link_with_components(components[i % components.len()], max_crossings))
        .collect()
}

/// A base braid and the braid after one to three closure-preserving moves.
#[derive(Debug, Clone)]
pub struct MarkovPair {
    pub base: BraidWord,
    pub moved: BraidWord,
    pub moves: Vec<MarkovMove>,
}

pub fn markov_pairs(seed: u64, count: usize, max_crossings: usize) -> Vec<MarkovPair> {
    let mut sampler = BraidSampler::new(seed);
    (0..count)
        .map(|_| {
            let strands = 2 + sampler.below(3) as usize;
            let length = sampler.below(max_crossings as u32 + 1) as usize;
            let base = sampler.braid(strands, length).expect("strands >= 2");
            let steps = 1 + sampler.below(3);
            let mut moved = base.clone();
            let mut moves = Vec::new();
            for _ in 0..steps {
                let (next, mv) = sampler.markov_step(&moved);
                moved = next;
                moves.push(mv);
            }
            MarkovPair { base, moved, moves }
        })
        .collect()
}
