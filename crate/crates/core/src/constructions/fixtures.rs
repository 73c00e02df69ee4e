use num_bigint::BigUint;

use crate::error::Result;
use crate::group::PermGroup;
use crate::sggi::{parse_gens, Sggi};

/// A shipped primitive group with its order and maximal rank.
#[derive(Clone, Debug)]
pub struct ExceptionalGroup {
    pub name: &'static str,
    pub degree: usize,
    pub order: u64,
    pub max_rank: usize,
    text: &'static str,
}

impl ExceptionalGroup {
    pub fn group(&self) -> Result<PermGroup> {
        let (n, gens) = parse_gens(self.text)?;
        PermGroup::new(n, gens)
    }

    pub fn order_matches(&self) -> bool {
        self.group().is_ok_and(|g| g.order() == BigUint::from(self.order))
    }
}

macro_rules! group_file {
    ($name:literal, $deg:expr, $ord:expr, $rank:expr) => {
        ExceptionalGroup {
            name: $name,
            degree: $deg,
            order: $ord,
            max_rank: $rank,
            text: include_str!(concat!("../../fixtures/v1/groups/", $name, ".gens")),
        }
    };
}

pub fn exceptional_groups() -> Vec<ExceptionalGroup> {
    vec![
        group_file!("d5", 5, 10, 2),
        group_file!("d7", 7, 14, 2),
        group_file!("psl2_5", 6, 60, 3),
        group_file!("pgl2_5", 6, 120, 4),
        group_file!("pgl2_7", 8, 336, 3),
        group_file!("psl2_8", 9, 504, 3),
        group_file!("s3_wr_s2", 9, 72, 3),
        group_file!("s5_on_pairs", 10, 120, 4),
        group_file!("psigmal2_9", 10, 720, 5),
    ]
}

pub fn exceptional_group(name: &str) -> Option<ExceptionalGroup> {
    exceptional_groups().into_iter().find(|g| g.name == name)
}

pub fn coxeter_s4() -> Sggi {
    Sggi::parse(include_str!("../../fixtures/v1/coxeter_s4.sggi")).unwrap()
}

pub fn klein() -> Sggi {
    Sggi::parse(include_str!("../../fixtures/v1/klein.sggi")).unwrap()
}

/// Witnesses found by randomized search where no closed-form family exists.
pub fn search_witness(n: usize) -> Option<Sggi> {
    let text = match n {
        9 => include_str!("../../fixtures/v1/witnesses/alt9.sggi"),
        12 => include_str!("../../fixtures/v1/witnesses/alt12.sggi"),
        13 => include_str!("../../fixtures/v1/witnesses/alt13.sggi"),
        17 => include_str!("../../fixtures/v1/witnesses/alt17.sggi"),
        _ => return None,
    };
    Some(Sggi::parse(text).unwrap())
}
