use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const INTERSECTION_RANK_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    Identity(usize),
    NotInvolution(usize),
    NotCommuting(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Identity(i) => write!(f, "generator {i} is the identity"),
            Violation::NotInvolution(i) => write!(f, "generator {i} is not an involution"),
            Violation::NotCommuting(i, j) => write!(f, "generators {i} and {j} do not commute"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        write!(f, "{}", self.violations.iter().join("; "))
    }
}

pub fn validate(degree: usize, gens: &[Permutation]) -> Result<ValidationReport> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let mut violations = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_identity() {
            violations.push(Violation::Identity(i));
        } else if !g.squares_to_identity() {
            violations.push(Violation::NotInvolution(i));
        }
    }
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            if !gens[i].commutes_with(&gens[j]) {
                violations.push(Violation::NotCommuting(i, j));
            }
        }
    }
    Ok(ValidationReport { ok: violations.is_empty(), violations })
}

/// Ordered involutions on a common domain, non-adjacent ones commuting.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sggi {
    degree: usize,
    gens: Vec<Permutation>,
}

impl Sggi {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        let rep = validate(degree, &gens)?;
        if !rep.ok {
            return Err(Error::Invalid(rep));
        }
        Ok(Sggi { degree, gens })
    }

    pub(crate) fn new_unchecked(degree: usize, gens: Vec<Permutation>) -> Self {
        Sggi { degree, gens }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of generators. Called rank only when the string is independent.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.gens.clone()).unwrap()
    }

    pub fn dual(&self) -> Sggi {
        Sggi { degree: self.degree, gens: self.gens.iter().rev().cloned().collect() }
    }

    pub fn subgroup(&self, sel: &Selector) -> Result<PermGroup> {
        let idx = sel.resolve(self.len())?;
        Ok(self.subgroup_mask(idx.iter().fold(0u64, |m, &i| m | (1 << i))))
    }

    pub(crate) fn subgroup_mask(&self, mask: u64) -> PermGroup {
        let gens = (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.gens[i].clone()).collect();
        PermGroup::new(self.degree, gens).unwrap()
    }

    pub fn without(&self, k: usize) -> Vec<Permutation> {
        self.gens.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect()
    }

    /// Least index whose generator lies in the group generated by the others.
    pub fn redundant_index(&self) -> Option<usize> {
        (0..self.len()).find(|&k| PermGroup::new(self.degree, self.without(k)).unwrap().contains(&self.gens[k]))
    }

    pub fn is_independent(&self) -> bool {
        self.redundant_index().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.group().is_transitive()
    }

    pub fn all_even(&self) -> bool {
        self.gens.iter().all(|g| g.is_even())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.degree, self.len());
        for g in &self.gens {
            s.push_str(&g.to_cycle_string());
            s.push('\n');
        }
        s
    }

    /// Parses `n r` followed by `r` lines of 1-based cycle notation. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Sggi> {
        let (degree, gens) = parse_gens(text)?;
        Sggi::new(degree, gens)
    }
}

/// Reads the `n k` + cycle-lines format without checking the string condition.
pub fn parse_gens(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line: hl, msg: format!("bad header token '{t}'") }))
        .collect::<Result<_>>()?;
    if nums.len() != 2 {
        return Err(Error::Parse { line: hl, msg: "header must be 'n r'".into() });
    }
    let (n, r) = (nums[0], nums[1]);
    let mut gens = Vec::with_capacity(r);
    for (ln, l) in lines {
        let g = Permutation::parse_cycles(n, l).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: ln, msg },
            other => other,
        })?;
        gens.push(g);
    }
    if gens.len() != r {
        return Err(Error::Parse { line: 0, msg: format!("expected {r} generators, found {}", gens.len()) });
    }
    Ok((n, gens))
}

impl fmt::Display for Sggi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    All,
    Indices(Vec<usize>),
    Drop(Vec<usize>),
    Below(usize),
    Above(usize),
}

impl Selector {
    pub fn resolve(&self, r: usize) -> Result<Vec<usize>> {
        let check = |i: usize| if i < r { Ok(()) } else { Err(Error::IndexOutOfRange { index: i, rank: r }) };
        Ok(match self {
            Selector::All => (0..r).collect(),
            Selector::Indices(v) => {
                v.iter().try_for_each(|&i| check(i))?;
                v.iter().copied().sorted().dedup().collect()
            }
            Selector::Drop(v) => {
                v.iter().try_for_each(|&i| check(i))?;
                (0..r).filter(|i| !v.contains(i)).collect()
            }
            Selector::Below(i) => {
                if *i > r {
                    check(*i)?;
                }
                (0..*i).collect()
            }
            Selector::Above(i) => {
                check(*i)?;
                (i + 1..r).collect()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCheck {
    pub holds: bool,
    /// First failing pair `(I, J)`.
    pub failure: Option<(Vec<usize>, Vec<usize>)>,
}

fn mask_indices(m: u64, r: usize) -> Vec<usize> {
    (0..r).filter(|i| m >> i & 1 == 1).collect()
}

/// Checks `<ρ_i : i∈I> ∩ <ρ_j : j∈J> = <ρ_k : k∈I∩J>` for all pairs.
///
/// Pairs are visited with `J` ascending as a bitmask and `I < J` ascending;
/// nested pairs hold trivially and are skipped.
pub fn intersection_property(s: &Sggi) -> Result<IntersectionCheck> {
    let r = s.len();
    if r > INTERSECTION_RANK_LIMIT {
        return Err(Error::RankTooLarge { rank: r, limit: INTERSECTION_RANK_LIMIT });
    }
    let mut cache: HashMap<u64, (PermGroup, BigUint)> = HashMap::new();
    let mut get = |m: u64| -> (PermGroup, BigUint) {
        cache
            .entry(m)
            .or_insert_with(|| {
                let g = s.subgroup_mask(m);
                let o = g.order();
                (g, o)
            })
            .clone()
    };
    let full = (1u64 << r) - 1;
    for j in 0..=full {
        for i in 0..j {
            if i & j == i || i & j == j {
                continue;
            }
            let (gi, oi) = get(i);
            let (gj, oj) = get(j);
            let (gm, om) = get(i & j);
            let (_, ou) = get(i | j);
            // |G_I G_J| ≤ |G_{I∪J}| bounds the intersection from below
            let ok = if &oi * &oj > &ou * &om {
                false
            } else {
                let k = gi.intersection_seeded(&gj, gm.generators());
                k.order() == om && gm.is_subgroup_of(&k)
            };
            if !ok {
                return Ok(IntersectionCheck {
                    holds: false,
                    failure: Some((mask_indices(i, r), mask_indices(j, r))),
                });
            }
        }
    }
    Ok(IntersectionCheck { holds: true, failure: None })
}
