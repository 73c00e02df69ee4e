//! Explicit strings: the rank-extremal `Alt(n)` paths, the witness tables, bounds and fixtures.

mod bounds;
mod fixtures;
mod tables;

pub use bounds::{bounds, log2_alt_order, maroti, theorem_bound, BoundReport, ConstructionSource, TheoremBound};
pub use fixtures::{coxeter_s4, exceptional_group, exceptional_groups, klein, search_witness, ExceptionalGroup};
pub use tables::{
    alt_family, table1_graph, table1_min, table1_rank, table1_word, witness, witness_corpus, witness_graph,
    FamilySpec, Table,
};

/// Degrees up to `max` for which the path family is defined.
pub fn table1_degrees(max: usize) -> Vec<usize> {
    (10..=max).filter(|&n| n >= table1_min(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repgraph::to_graph;
    use num_bigint::BigUint;

    #[test]
    fn family_examples() {
        let s = alt_family(10).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.group().order(), BigUint::from(1_814_400u32));
        assert_eq!(alt_family(14).unwrap().len(), 7);
        assert_eq!(alt_family(22).unwrap().len(), 11);
        assert!(alt_family(9).is_err());
        assert!(alt_family(17).is_err());
        assert_eq!(table1_degrees(22), vec![10, 11, 14, 15, 16, 18, 19, 20, 21, 22]);
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(bounds(5).unwrap().theorem_bound, TheoremBound::Exactly(3));
        assert_eq!(bounds(6).unwrap().theorem_bound, TheoremBound::NoSggi);
        assert_eq!(bounds(23).unwrap().theorem_bound, TheoremBound::AtMost(13));
        assert_eq!(maroti(5), BigUint::from(60u32));
        assert_eq!(maroti(8), BigUint::from(1344u32));
        assert_eq!(bounds(12).unwrap().construction_rank, Some(5));
        assert_eq!(bounds(13).unwrap().construction_rank, Some(6));
        assert_eq!(bounds(17).unwrap().construction_rank, Some(8));
        assert_eq!(bounds(9).unwrap().construction_rank, Some(4));
        // |Alt(5)| = 60, 2^5 <= 60 < 2^6
        assert_eq!(log2_alt_order(5), 5);
        assert!(bounds(2).is_err());
    }

    #[test]
    fn witness_examples() {
        let g = witness_graph(&FamilySpec::new(Table::TwoFracture, "4", Some(2))).unwrap();
        assert_eq!(g.n, 5);
        assert_eq!(g.to_text(), "graph 5 2\n1 2 0\n2 3 1\n3 4 0\n4 5 1\n");
        let s = witness(&FamilySpec::new(Table::TwoFracture, "1", Some(3))).unwrap();
        assert_eq!(s.degree(), 6);
        assert_eq!(s.group().order(), BigUint::from(12u32));
        let s = witness(&FamilySpec::new(Table::TwoFracture, "2", Some(6))).unwrap();
        assert_eq!(s.group().order(), BigUint::from(46_080u32));
    }

    #[test]
    fn fixtures_have_stated_orders() {
        for g in exceptional_groups() {
            assert!(g.order_matches(), "{}", g.name);
            assert_eq!(g.group().unwrap().degree(), g.degree);
        }
        assert_eq!(to_graph(&klein()).edges().len(), 6);
        assert_eq!(coxeter_s4().group().order(), BigUint::from(24u32));
    }

    #[test]
    fn whole_corpus_is_valid() {
        let corpus = witness_corpus(8);
        assert!(corpus.len() > 80, "{}", corpus.len());
        for spec in &corpus {
            witness(spec).unwrap_or_else(|e| panic!("{}: {e}", spec.id()));
        }
    }
}
