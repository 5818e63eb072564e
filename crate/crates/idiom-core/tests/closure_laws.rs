//! Property tests for the interval-set closure operators: inflationary,
//! monotone, idempotent on every corpus lattice, and stability of the base
//! frame under unions and intersections.

use idiom_core::fixtures;
use idiom_core::interval::{
    basic_closure, cng_closure, dvs_closure, is_basic, IntervalSet,
};
use idiom_core::lattice::FiniteLattice;
use proptest::prelude::*;

fn corpus() -> Vec<FiniteLattice> {
    fixtures::corpus().into_iter().map(|e| e.lattice).collect()
}

fn set_from_bools(l: &FiniteLattice, picks: &[bool]) -> IntervalSet {
    let mut s = IntervalSet::empty(l);
    for idx in 0..l.interval_count() {
        if picks.get(idx).copied().unwrap_or(false) {
            s.insert_idx(idx);
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closures_are_closure_operators(
        lat in 0usize..10,
        picks_a in prop::collection::vec(any::<bool>(), 0..80),
        picks_b in prop::collection::vec(any::<bool>(), 0..80),
    ) {
        let corpus = corpus();
        let l = &corpus[lat % corpus.len()];
        let a = set_from_bools(l, &picks_a);
        let b = a.union(&set_from_bools(l, &picks_b));
        for close in [basic_closure, cng_closure, dvs_closure] {
            let ca = close(l, &a);
            let cb = close(l, &b);
            // inflationary over the seed together with the trivial set
            prop_assert!(a.union(&IntervalSet::trivials(l)).is_subset(&ca));
            // monotone
            prop_assert!(ca.is_subset(&cb));
            // idempotent
            prop_assert_eq!(close(l, &ca), ca);
        }
    }

    #[test]
    fn base_frame_is_closed_and_distributive(
        lat in 0usize..10,
        picks_a in prop::collection::vec(any::<bool>(), 0..80),
        picks_b in prop::collection::vec(any::<bool>(), 0..80),
        picks_c in prop::collection::vec(any::<bool>(), 0..80),
    ) {
        let corpus = corpus();
        let l = &corpus[lat % corpus.len()];
        let a = basic_closure(l, &set_from_bools(l, &picks_a));
        let b = basic_closure(l, &set_from_bools(l, &picks_b));
        let c = basic_closure(l, &set_from_bools(l, &picks_c));
        // basic sets are closed under union and intersection
        prop_assert!(is_basic(l, &a.union(&b)));
        prop_assert!(is_basic(l, &a.intersect(&b)));
        // and the lattice they generate is distributive
        prop_assert_eq!(
            a.intersect(&b.union(&c)),
            a.intersect(&b).union(&a.intersect(&c))
        );
    }

    #[test]
    fn division_closure_of_congruence_sets_preserves_meets(
        lat in 0usize..10,
        picks_a in prop::collection::vec(any::<bool>(), 0..80),
        picks_b in prop::collection::vec(any::<bool>(), 0..80),
    ) {
        let corpus = corpus();
        let l = &corpus[lat % corpus.len()];
        let a = cng_closure(l, &set_from_bools(l, &picks_a));
        let b = cng_closure(l, &set_from_bools(l, &picks_b));
        // the division closure acts as a meet-preserving map on
        // congruence sets
        prop_assert_eq!(
            dvs_closure(l, &a.intersect(&b)),
            dvs_closure(l, &a).intersect(&dvs_closure(l, &b))
        );
    }
}
