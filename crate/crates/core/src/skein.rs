//! The framed invariant `Ȟ = z^L H` by skein resolution.
//!
//! A diagram is resolved at its first crossing met under-first in the based
//! traversal (components in order, each from position 0). Once no such
//! crossing remains the diagram is descending: a stack of unknots whose
//! framings are the self-writhes, with value `t^{Σ self-writhe} (t - t^-1)^L`.
//!
//! At a resolved crossing `c`, with `ε = 0` for a self-crossing and `ε = 1`
//! between components,
//!
//! ```text
//! Ȟ(L+) - Ȟ(L-) = z^{2ε} Ȟ(L0)
//! ```
//!
//! Switching `c` only changes which passage of `c` is over, so the
//! first-encounter status of every other crossing is untouched and the
//! recursion terminates.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::laurent::{BivarLaurent, UnivarLaurentT};
use crate::link::{CrossingId, LinkDiagram, LinkError, Role, Sign};

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;
pub const DEFAULT_CACHE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("resource limit exceeded: more than {limit} resolution nodes")]
    ResourceLimit { limit: u64 },
    #[error("coefficient h_{exponent} is not divisible by t^w (t - t^-1)")]
    NotDivisible { exponent: i32 },
    #[error("framed value outside Z[z^2, t^±1]: {0}")]
    RingMembership(String),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// The first crossing met on its under-passage, if any.
pub fn first_violation(d: &LinkDiagram) -> Option<CrossingId> {
    let mut seen = std::collections::HashSet::with_capacity(d.crossing_count());
    for (_, p) in d.traversal() {
        if seen.insert(p.crossing) && p.role == Role::Under {
            return Some(p.crossing);
        }
    }
    None
}

pub fn is_descending(d: &LinkDiagram) -> bool {
    first_violation(d).is_none()
}

/// Value of a descending diagram.
pub fn descending_value(d: &LinkDiagram) -> BivarLaurent {
    BivarLaurent::t_minus_t_inv()
        .pow(d.component_count() as u32)
        .mul_monomial(0, d.total_self_writhe() as i32)
}

/// Recursive skein evaluator with an optional memo table keyed by
/// [`LinkDiagram::canonical_key`].
pub struct SkeinEngine {
    max_nodes: u64,
    cache_cap: usize,
    memoize: bool,
    cache: HashMap<Vec<u8>, BivarLaurent>,
    nodes: u64,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl SkeinEngine {
    pub fn new() -> Self {
        Self::with_max_nodes(DEFAULT_MAX_NODES)
    }

    pub fn with_max_nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            cache_cap: DEFAULT_CACHE_CAP,
            memoize: true,
            cache: HashMap::new(),
            nodes: 0,
        }
    }

    /// Cache-free full resolution, used as a brute-force oracle.
    pub fn uncached(max_nodes: u64) -> Self {
        Self {
            memoize: false,
            ..Self::with_max_nodes(max_nodes)
        }
    }

    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache_cap = cap;
        self
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }

    /// Resolution nodes expanded by the most recent top-level call.
    pub fn nodes_visited(&self) -> u64 {
        self.nodes
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    /// `Ȟ(d)`. The node ceiling applies to each call separately.
    pub fn check_homfly(&mut self, d: &LinkDiagram) -> Result<BivarLaurent, SkeinError> {
        self.nodes = 0;
        self.resolve(d)
    }

    fn resolve(&mut self, d: &LinkDiagram) -> Result<BivarLaurent, SkeinError> {
        let key = if self.memoize {
            let key = d.canonical_key();
            if let Some(v) = self.cache.get(&key) {
                return Ok(v.clone());
            }
            Some(key)
        } else {
            None
        };
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SkeinError::ResourceLimit {
                limit: self.max_nodes,
            });
        }
        let value = match first_violation(d) {
            None => descending_value(d),
            Some(id) => {
                let x = *d.crossing(id)?;
                let z_power = if x.is_self_crossing() { 0 } else { 2 };
                let switched = self.resolve(&d.switch_crossing(id)?)?;
                let smoothed = self
                    .resolve(&d.smooth_crossing(id)?)?
                    .mul_monomial(z_power, 0);
                match x.sign {
                    Sign::Positive => switched + smoothed,
                    Sign::Negative => switched - smoothed,
                }
            }
        };
        if let Some(key) = key {
            if self.cache.len() < self.cache_cap {
                self.cache.insert(key, value.clone());
            }
        }
        Ok(value)
    }

    pub fn coeff_table(&mut self, d: &LinkDiagram) -> Result<CoeffTable, SkeinError> {
        let framed = self.check_homfly(d)?;
        CoeffTable::from_framed(d, &framed)
    }

    pub fn homfly_p(&mut self, d: &LinkDiagram) -> Result<BivarLaurent, SkeinError> {
        Ok(self.coeff_table(d)?.homfly_p())
    }
}

pub fn check_homfly(d: &LinkDiagram) -> Result<BivarLaurent, SkeinError> {
    SkeinEngine::new().check_homfly(d)
}

pub fn check_homfly_uncached(d: &LinkDiagram, max_nodes: u64) -> Result<BivarLaurent, SkeinError> {
    SkeinEngine::uncached(max_nodes).check_homfly(d)
}

pub fn coeff_table(d: &LinkDiagram) -> Result<CoeffTable, SkeinError> {
    SkeinEngine::new().coeff_table(d)
}

pub fn homfly_p(d: &LinkDiagram) -> Result<BivarLaurent, SkeinError> {
    SkeinEngine::new().homfly_p(d)
}

/// Coefficient polynomials of one link, indexed by `g ≥ 0`: `h[g]` is the
/// coefficient of `z^{2g-L}` in `H` (equivalently of `z^{2g}` in `Ȟ`), and
/// `p[g]` the coefficient of `z^{2g+1-L}` in `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffTable {
    pub components: usize,
    pub writhe: i64,
    pub total_lk: i64,
    pub h: BTreeMap<u32, UnivarLaurentT>,
    pub p: BTreeMap<u32, UnivarLaurentT>,
}

impl CoeffTable {
    pub fn from_framed(d: &LinkDiagram, framed: &BivarLaurent) -> Result<Self, SkeinError> {
        if !framed.is_even_nonneg_in_z() || !framed.has_integer_coefficients() {
            return Err(SkeinError::RingMembership(framed.to_string()));
        }
        let components = d.component_count();
        let writhe = d.writhe();
        let total_lk = d.total_linking()?;
        let unknot = UnivarLaurentT::t_minus_t_inv();
        let mut h = BTreeMap::new();
        let mut p = BTreeMap::new();
        for k in framed.z_exponents() {
            let g = (k / 2) as u32;
            let hg = framed.coeff_of_z(k);
            let exponent = k - components as i32;
            let pg = hg
                .mul_t_power(-writhe as i32)
                .divide_exact(&unknot)
                .map_err(|_| SkeinError::NotDivisible { exponent })?;
            h.insert(g, hg);
            p.insert(g, pg);
        }
        Ok(Self {
            components,
            writhe,
            total_lk,
            h,
            p,
        })
    }

    pub fn h(&self, g: u32) -> UnivarLaurentT {
        self.h.get(&g).cloned().unwrap_or_default()
    }

    pub fn p(&self, g: u32) -> UnivarLaurentT {
        self.p.get(&g).cloned().unwrap_or_default()
    }

    pub fn h_exponent(&self, g: u32) -> i32 {
        2 * g as i32 - self.components as i32
    }

    pub fn p_exponent(&self, g: u32) -> i32 {
        2 * g as i32 + 1 - self.components as i32
    }

    pub fn max_g(&self) -> Option<u32> {
        self.h.keys().next_back().copied()
    }

    pub fn check_homfly(&self) -> BivarLaurent {
        self.h.iter().map(|(&g, hg)| hg.lift(2 * g as i32)).sum()
    }

    pub fn homfly_p(&self) -> BivarLaurent {
        self.p
            .iter()
            .map(|(&g, pg)| pg.lift(self.p_exponent(g)))
            .sum()
    }

    /// `t^w (t - t^-1) p[g] == h[g]` for every `g`.
    pub fn is_consistent(&self) -> bool {
        let factor = UnivarLaurentT::t_minus_t_inv().mul_t_power(self.writhe as i32);
        self.h
            .keys()
            .chain(self.p.keys())
            .all(|&g| &self.p(g) * &factor == self.h(g))
            && self
                .h
                .values()
                .all(UnivarLaurentT::has_integer_coefficients)
    }
}

/// `P` as a `(z, t)` polynomial from the unnormalized value `H`.
pub fn homfly_p_from_h(h: &BivarLaurent, writhe: i64) -> Result<BivarLaurent, SkeinError> {
    let unknot = BivarLaurent::t_minus_t_inv().mul_monomial(-1, 0);
    h.mul_monomial(0, -writhe as i32)
        .divide_exact(&unknot)
        .map_err(|_| SkeinError::NotDivisible {
            exponent: h.min_z_degree().unwrap_or(0),
        })
}
