mod common;

use proptest::prelude::*;
use sggi::search::random_strings;
use sggi::{intersection_property, validate, Permutation, Selector, Sggi, Violation};

/// A random product of disjoint transpositions; may be the identity.
fn involution(n: usize) -> impl Strategy<Value = Permutation> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 0..=n / 2).prop_map(move |(v, k)| {
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (v[2 * i], v[2 * i + 1])).collect();
        Permutation::from_pairs(n, &pairs).unwrap()
    })
}

fn involution_list(max_n: usize, max_r: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec(involution(n), 1..=max_r)))
}

/// A search-generated string.
fn string(max_n: usize) -> impl Strategy<Value = Sggi> {
    (3..=max_n, any::<u64>(), any::<bool>())
        .prop_filter_map("no string", |(n, seed, even)| random_strings(n, 1, even, seed).pop())
}

fn mirrored(v: &Violation, r: usize) -> Violation {
    match *v {
        Violation::Identity(i) => Violation::Identity(r - 1 - i),
        Violation::NotInvolution(i) => Violation::NotInvolution(r - 1 - i),
        Violation::NotCommuting(i, j) => Violation::NotCommuting(r - 1 - j, r - 1 - i),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validation_commutes_with_reversal((n, gens) in involution_list(7, 6)) {
        let r = gens.len();
        let fwd = validate(n, &gens).unwrap();
        let rev: Vec<Permutation> = gens.iter().rev().cloned().collect();
        let back = validate(n, &rev).unwrap();
        let mut a: Vec<Violation> = fwd.violations.iter().map(|v| mirrored(v, r)).collect();
        let mut b = back.violations.clone();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        prop_assert_eq!(fwd.ok, fwd.violations.is_empty());
    }

    #[test]
    fn deleting_a_generator_stays_valid(s in string(9), k in any::<prop::sample::Index>()) {
        let k = k.index(s.len());
        prop_assert!(validate(s.degree(), &s.without(k)).unwrap().ok);
    }

    #[test]
    fn redundant_index_keeps_order((n, gens) in involution_list(7, 5)) {
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        prop_assume!(validate(n, &gens).unwrap().ok && !gens.is_empty());
        let s = Sggi::new(n, gens).unwrap();
        let all = s.subgroup(&Selector::All).unwrap().order();
        match s.redundant_index() {
            Some(k) => {
                prop_assert_eq!(s.subgroup(&Selector::Drop(vec![k])).unwrap().order(), all.clone());
                for j in 0..k {
                    prop_assert!(s.subgroup(&Selector::Drop(vec![j])).unwrap().order() < all.clone());
                }
            }
            None => for j in 0..s.len() {
                prop_assert!(s.subgroup(&Selector::Drop(vec![j])).unwrap().order() < all.clone());
            },
        }
    }

    #[test]
    fn dual_round_trip(s in string(10)) {
        let d = s.dual();
        prop_assert_eq!(d.len(), s.len());
        prop_assert!(validate(d.degree(), d.gens()).unwrap().ok);
        prop_assert_eq!(d.dual(), s.clone());
        prop_assert_eq!(d.is_independent(), s.is_independent());
    }

    #[test]
    fn text_round_trip(s in string(10)) {
        prop_assert_eq!(Sggi::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn intersection_matches_element_sets((n, gens) in involution_list(6, 4)) {
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        prop_assume!(!gens.is_empty() && validate(n, &gens).unwrap().ok);
        let s = Sggi::new(n, gens.clone()).unwrap();
        prop_assert_eq!(intersection_property(&s).unwrap().holds, common::naive_intersection_holds(n, &gens));
    }

    #[test]
    fn intersection_on_search_strings(s in string(6)) {
        prop_assume!(s.len() <= 4);
        prop_assert_eq!(intersection_property(&s).unwrap().holds, common::naive_intersection_holds(s.degree(), s.gens()));
    }
}

#[test]
fn selector_examples() {
    let s = sggi::constructions::coxeter_s4();
    let g = s.subgroup(&Selector::Drop(vec![1])).unwrap();
    assert_eq!(common::closure(4, g.generators()).len(), 4);
    assert_eq!(s.subgroup(&Selector::Below(2)).unwrap().order(), 6u32.into());
    assert!(s.subgroup(&Selector::Below(4)).is_err());
}
