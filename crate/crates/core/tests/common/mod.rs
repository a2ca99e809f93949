#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;
use skein_core::link::{LinkDiagram, Role};
use skein_core::{BivarLaurent, BraidWord};

/// Integer Laurent polynomial in `z, t`, keyed by `(e_z, e_t)`.
pub type Poly = BTreeMap<(i32, i32), i64>;

fn add_into(acc: &mut Poly, other: &Poly, factor: i64) {
    for (&k, &c) in other {
        let slot = acc.entry(k).or_insert(0);
        *slot += factor * c;
        if *slot == 0 {
            acc.remove(&k);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(za, ta), &ca) in a {
        for (&(zb, tb), &cb) in b {
            let single = Poly::from([((za + zb, ta + tb), ca * cb)]);
            add_into(&mut out, &single, 1);
        }
    }
    out
}

/// Full skein resolution with no memo, always switching the last crossing
/// in traversal order whose first passage is an under-passage.
pub fn oracle_framed(d: &LinkDiagram) -> Poly {
    let mut seen = HashSet::new();
    let mut last_bad = None;
    for (_, p) in d.traversal() {
        if seen.insert(p.crossing) && p.role == Role::Under {
            last_bad = Some(p.crossing);
        }
    }
    let Some(id) = last_bad else {
        let mut value = Poly::from([((0, 0), 1)]);
        let delta = Poly::from([((0, 1), 1), ((0, -1), -1)]);
        for _ in 0..d.component_count() {
            value = mul(&value, &delta);
        }
        let self_writhe: i64 = d
            .crossings()
            .filter(|c| c.over.component == c.under.component)
            .map(|c| c.sign.value())
            .sum();
        return mul(&value, &Poly::from([((0, self_writhe as i32), 1)]));
    };
    let c = *d.crossing(id).unwrap();
    let z_power = if c.over.component == c.under.component {
        0
    } else {
        2
    };
    let switched = oracle_framed(&d.switch_crossing(id).unwrap());
    let smoothed = mul(
        &oracle_framed(&d.smooth_crossing(id).unwrap()),
        &Poly::from([((z_power, 0), 1)]),
    );
    // Positive: H(d) = H(switched) + z^k H(smoothed); negative: minus.
    let mut out = switched;
    add_into(&mut out, &smoothed, c.sign.value());
    out
}

pub fn to_laurent(p: &Poly) -> BivarLaurent {
    let terms: Vec<(i32, i32, i64)> = p.iter().map(|(&(z, t), &c)| (z, t, c)).collect();
    BivarLaurent::from_int_terms(&terms)
}

pub fn close(s: &str) -> LinkDiagram {
    BraidWord::parse(s).unwrap().close()
}

pub fn braid_strategy(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len).prop_map(move |raw| {
            let letters = raw
                .into_iter()
                .map(|(g, pos)| if pos { g } else { -g })
                .collect();
            BraidWord::new(n, letters).unwrap()
        })
    })
}
