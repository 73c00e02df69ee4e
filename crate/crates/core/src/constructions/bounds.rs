use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

use super::tables::table1_rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremBound {
    NoSggi,
    Exactly(usize),
    AtMost(usize),
}

impl fmt::Display for TheoremBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremBound::NoSggi => f.write_str("no SGGI"),
            TheoremBound::Exactly(r) => write!(f, "rank exactly {r}"),
            TheoremBound::AtMost(r) => write!(f, "at most {r}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionSource {
    Table,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub theorem_bound: TheoremBound,
    pub construction_rank: Option<usize>,
    pub construction_source: Option<ConstructionSource>,
    pub maroti: BigUint,
    /// `floor(log2(n!/2))`.
    pub log2_bound: u64,
}

pub fn theorem_bound(n: usize) -> TheoremBound {
    match n {
        0..=4 | 6..=8 => TheoremBound::NoSggi,
        5 => TheoremBound::Exactly(3),
        _ => TheoremBound::AtMost(3 * (n - 1) / 5),
    }
}

/// `n * prod_{i < floor(log2 n)} (n - 2^i)`.
pub fn maroti(n: usize) -> BigUint {
    let k = usize::BITS - 1 - n.leading_zeros();
    (0..k).fold(BigUint::from(n), |acc, i| acc * BigUint::from(n - (1usize << i)))
}

pub fn log2_alt_order(n: usize) -> u64 {
    let mut o = (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
    if n >= 2 {
        o /= 2u32;
    }
    o.bits().saturating_sub(1)
}

pub fn bounds(n: usize) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::Parameter(format!("bounds need n >= 3, got {n}")));
    }
    let theorem = theorem_bound(n);
    let (construction_rank, construction_source) = match n {
        5 => (Some(3), Some(ConstructionSource::Search)),
        9 | 12 | 13 | 17 => (Some(table1_rank(n)), Some(ConstructionSource::Search)),
        _ if n >= 10 => (Some(table1_rank(n)), Some(ConstructionSource::Table)),
        _ => (None, None),
    };
    Ok(BoundReport {
        n,
        theorem_bound: theorem,
        construction_rank,
        construction_source,
        maroti: maroti(n),
        log2_bound: log2_alt_order(n),
    })
}
