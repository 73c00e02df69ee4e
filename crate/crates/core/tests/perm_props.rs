mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use sggi::{minimal_block_system, orbits, PermGroup, Permutation, Primitivity};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn perms_of(n: usize, k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), k)
        .prop_map(|vs| vs.iter().map(|v| Permutation::from_images(v).unwrap()).collect())
}

fn gen_set(max_n: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), perms_of(n, 0..=3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parity_matches_inversions(p in perm(8)) {
        prop_assert_eq!(p.is_even(), common::inversion_sign_even(&p.images()));
    }

    #[test]
    fn inverse_cancels(p in perm(12)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn cycle_text_round_trips(p in perm(12)) {
        let q = Permutation::parse_cycles(p.degree(), &p.to_cycle_string()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn order_matches_closure((n, gens) in gen_set(7)) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let elems = common::closure(n, &gens);
        prop_assert_eq!(g.order(), BigUint::from(elems.len()));
        for e in elems.iter().take(50) {
            prop_assert!(g.contains(&Permutation::from_images(e).unwrap()));
        }
    }

    #[test]
    fn membership_matches_closure((n, gens) in gen_set(6), probe in any::<prop::sample::Index>()) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let elems = common::closure(n, &gens);
        let all = common::involutions(n, false);
        if !all.is_empty() {
            let x = &all[probe.index(all.len())];
            prop_assert_eq!(g.contains(x), elems.contains(&x.images()));
        }
    }

    #[test]
    fn orbits_ignore_generator_order((n, mut gens) in gen_set(10), seed in any::<u64>()) {
        let a = orbits(&gens, n).unwrap();
        prop_assert_eq!(&a, &common::naive_orbits(n, &gens));
        let k = gens.len().max(1);
        gens.rotate_left(seed as usize % k);
        gens.reverse();
        prop_assert_eq!(a, orbits(&gens, n).unwrap());
    }

    #[test]
    fn primitivity_matches_partition_search((n, gens) in (2..=10usize).prop_flat_map(|n| (Just(n), perms_of(n, 1..=2)))) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        prop_assume!(g.is_transitive());
        let res = minimal_block_system(&g).unwrap();
        let blocks = common::has_nontrivial_blocks(n, &gens);
        match res {
            Primitivity::Primitive => prop_assert!(!blocks),
            Primitivity::Blocks(b) => {
                prop_assert!(blocks);
                prop_assert!(b.is_invariant_under(&gens));
                prop_assert!(b.block_size() > 1 && b.block_size() < n);
            }
        }
    }
}

/// Transitive groups of degree up to 12 that random generators rarely hit.
#[test]
fn primitivity_on_corpus() {
    let mut corpus: Vec<PermGroup> = sggi::constructions::exceptional_groups().iter().map(|g| g.group().unwrap()).collect();
    for n in 2..=12 {
        corpus.push(PermGroup::symmetric(n));
        corpus.push(PermGroup::new(n, vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]).unwrap());
        if n >= 3 {
            corpus.push(PermGroup::alternating(n));
        }
    }
    // imprimitive wreath-type actions
    let p = |n: usize, s: &str| Permutation::parse_cycles(n, s).unwrap();
    corpus.push(PermGroup::new(8, vec![p(8, "(1 2)"), p(8, "(1 3)(2 4)(5 7)(6 8)"), p(8, "(1 5)(2 6)(3 7)(4 8)")]).unwrap());
    corpus.push(PermGroup::new(12, vec![p(12, "(1 2 3)"), p(12, "(1 4 7 10)(2 5 8 11)(3 6 9 12)")]).unwrap());
    corpus.push(PermGroup::new(12, vec![p(12, "(1 2)(3 4)"), p(12, "(1 3 5 7 9 11)(2 4 6 8 10 12)")]).unwrap());
    for g in corpus {
        let gens = g.generators().to_vec();
        let prim = matches!(minimal_block_system(&g).unwrap(), Primitivity::Primitive);
        assert_eq!(prim, !common::has_nontrivial_blocks(g.degree(), &gens), "{gens:?}");
    }
}

#[test]
fn parity_all_of_degree_six() {
    use itertools::Itertools;
    for v in (0..6).permutations(6) {
        assert_eq!(Permutation::from_images(&v).unwrap().is_even(), common::inversion_sign_even(&v));
    }
}
