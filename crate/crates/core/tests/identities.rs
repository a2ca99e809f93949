mod common;

use common::braid_strategy;
use proptest::prelude::*;
use skein_core::combinatorics::{
    count_by_enumeration, surjection_count, surjection_count_by_partitions, verify_identity,
    verify_partition_identity, CountingIdentity,
};
use skein_core::lm::{
    intermediate_f, verify_coefficient_recursion, verify_f_skein, verify_first_coefficient,
    verify_low_degree_vanishing, verify_second_coefficient, verify_split_f,
};
use skein_core::random::BraidSampler;
use skein_core::skein::SkeinEngine;
use skein_core::BraidWord;

fn linked_braid(components: usize, seed: u64) -> BraidWord {
    BraidSampler::new(seed).link_with_components(components, 10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn identities_hold(components in 2usize..=4, seed in any::<u64>()) {
        let d = linked_braid(components, seed).close();
        let mut e = SkeinEngine::new();
        prop_assert!(verify_low_degree_vanishing(&mut e, &d).unwrap().pass);
        for g in 0..=(components as u32 - 2) {
            prop_assert!(verify_coefficient_recursion(&mut e, &d, g).unwrap().pass);
        }
        let first = verify_first_coefficient(&mut e, &d).unwrap();
        let second = verify_second_coefficient(&mut e, &d).unwrap();
        prop_assert_eq!(first[0].pass, first[1].pass);
        prop_assert_eq!(second[0].pass, second[1].pass);
        prop_assert!(first.iter().chain(&second).all(|r| r.pass));
    }

    #[test]
    fn f_skein_at_inter_component_crossings(components in 2usize..=3, seed in any::<u64>()) {
        let d = linked_braid(components, seed).close();
        let mut e = SkeinEngine::new();
        let ids: Vec<u32> = d.crossings().filter(|c| !c.is_self_crossing()).map(|c| c.id).collect();
        for id in ids {
            prop_assert!(verify_f_skein(&mut e, &d, id).unwrap().pass);
        }
    }

    #[test]
    fn knot_f_equals_h(b in braid_strategy(3, 10)) {
        let d = b.close();
        if d.component_count() == 1 {
            let mut e = SkeinEngine::new();
            let f = intermediate_f(&mut e, &d).unwrap();
            prop_assert_eq!(f.poly, e.check_homfly(&d).unwrap().mul_monomial(-1, 0));
        }
    }

    #[test]
    fn split_f_vanishes(a in braid_strategy(3, 6), b in braid_strategy(3, 6)) {
        let mut e = SkeinEngine::new();
        prop_assert!(verify_split_f(&mut e, &[a.close(), b.close()]).unwrap().pass);
    }

    #[test]
    fn decomposition_counts_agree(m in 1u32..=7, n in 1u32..=7) {
        prop_assume!(n <= m);
        let closed = surjection_count(m, n);
        prop_assert_eq!(count_by_enumeration(m, n), closed.clone());
        prop_assert_eq!(surjection_count_by_partitions(m, n), closed);
    }
}

#[test]
fn counting_identities_in_range() {
    for m in 2..=8 {
        assert!(verify_identity(CountingIdentity::LogSum, m)
            .unwrap()
            .iter()
            .all(|r| r.pass));
        assert!(verify_identity(CountingIdentity::AlternatingSum, m)
            .unwrap()
            .iter()
            .all(|r| r.pass));
        assert!(verify_partition_identity(m).unwrap().iter().all(|r| r.pass));
    }
    for m in 3..=8 {
        assert!(verify_identity(CountingIdentity::ShiftedSum, m)
            .unwrap()
            .iter()
            .all(|r| r.pass));
    }
    for n in 2..=12 {
        assert!(verify_identity(CountingIdentity::BinomialSum, n)
            .unwrap()
            .iter()
            .all(|r| r.pass));
    }
    assert!(verify_identity(CountingIdentity::BinomialSum, 1)
        .unwrap()
        .iter()
        .all(|r| !r.pass));
}
