//! Backtracking and randomized search for independent involution strings.

mod random;
mod tree;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::sggi::{validate, Sggi};

pub use random::{random_commuting_involution, random_strings};

/// Witnesses kept per rank, smallest keys first.
pub const WITNESS_CAP: usize = 256;
const INVOLUTION_CAP: usize = 60_000;
const ELEMENT_CAP: usize = 2_000_000;
const KEY_ENUM_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: Mode,
    /// Longest string considered; defaults to floor(log2 |G|).
    pub max_length: Option<usize>,
    pub prune_conjugacy: bool,
    pub seed: u64,
    pub time_budget: Option<Duration>,
    /// Randomized mode: independent beams.
    pub restarts: usize,
    /// Randomized mode: partial strings kept per level.
    pub beam_width: usize,
    /// Randomized mode stops once a witness of this rank turns up.
    pub target_rank: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: Mode::Exhaustive,
            max_length: None,
            prune_conjugacy: true,
            seed: 0x5eed,
            time_budget: None,
            restarts: 64,
            beam_width: 64,
            target_rank: None,
        }
    }
}

impl SearchOptions {
    pub fn randomized(seed: u64) -> Self {
        SearchOptions { mode: Mode::Randomized, seed, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    NoSggi,
    MaxRank(usize),
    LowerBound(usize),
    Inconclusive { lower: Option<usize> },
}

impl Outcome {
    pub fn is_conclusive(&self) -> bool {
        matches!(self, Outcome::NoSggi | Outcome::MaxRank(_))
    }

    pub fn rank(&self) -> Option<usize> {
        match *self {
            Outcome::NoSggi => None,
            Outcome::MaxRank(k) | Outcome::LowerBound(k) => Some(k),
            Outcome::Inconclusive { lower } => lower,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::NoSggi => write!(f, "no_sggi"),
            Outcome::MaxRank(k) => write!(f, "max_rank {k}"),
            Outcome::LowerBound(k) => write!(f, "lower_bound {k}"),
            Outcome::Inconclusive { lower: Some(k) } => write!(f, "inconclusive (lower bound {k})"),
            Outcome::Inconclusive { lower: None } => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Candidate extensions examined.
    pub nodes: u64,
    /// Strings that generate the target.
    pub leaves: u64,
    pub pruned_membership: u64,
    pub pruned_dependent: u64,
    pub pruned_conjugacy: u64,
    pub pruned_length: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.pruned_membership += o.pruned_membership;
        self.pruned_dependent += o.pruned_dependent;
        self.pruned_conjugacy += o.pruned_conjugacy;
        self.pruned_length += o.pruned_length;
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: Outcome,
    /// Strings of the top rank found, one per conjugacy class under the pruning group.
    pub witnesses: Vec<Sggi>,
    /// Every rank at which some generating string was seen.
    pub ranks_found: BTreeSet<usize>,
    pub involutions: usize,
    pub max_length: usize,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn max_rank(&self) -> Option<usize> {
        self.outcome.rank()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Alternating,
    Symmetric,
    Other,
}

/// The group being searched, with the group whose conjugation is used for pruning.
#[derive(Clone, Debug)]
pub struct Target {
    pub group: PermGroup,
    pub kind: TargetKind,
    pub normalizer: PermGroup,
    order: BigUint,
}

impl Target {
    pub fn alternating(n: usize) -> Result<Target> {
        Target::new(PermGroup::alternating(n))
    }

    pub fn symmetric(n: usize) -> Result<Target> {
        Target::new(PermGroup::symmetric(n))
    }

    /// Alt(n) and Sym(n) are recognized by their order and pruned by Sym(n); anything else by itself.
    pub fn new(group: PermGroup) -> Result<Target> {
        let n = group.degree();
        let order = group.order();
        if order.is_one() {
            return Err(Error::TrivialGroup);
        }
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        let kind = if order == fact {
            TargetKind::Symmetric
        } else if order.clone() * 2u32 == fact {
            TargetKind::Alternating
        } else {
            TargetKind::Other
        };
        let normalizer = match kind {
            TargetKind::Other => group.clone(),
            _ => PermGroup::symmetric(n),
        };
        Ok(Target { group, kind, normalizer, order })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        match self.kind {
            TargetKind::Symmetric => g.degree() == self.degree(),
            TargetKind::Alternating => g.degree() == self.degree() && g.is_even(),
            TargetKind::Other => self.group.contains(g),
        }
    }

    pub fn log2_order(&self) -> usize {
        (self.order.bits() - 1) as usize
    }

    /// All involutions of the group, sorted by image list.
    pub fn involutions(&self) -> Result<Vec<Permutation>> {
        let n = self.degree();
        let mut out = match self.kind {
            TargetKind::Other => self
                .group
                .elements(ELEMENT_CAP)
                .ok_or_else(|| Error::Parameter("group too large to list its involutions".into()))?
                .into_iter()
                .filter(|g| g.is_involution())
                .collect(),
            kind => {
                let mut acc = Vec::new();
                let mut img: Vec<usize> = (0..n).collect();
                matchings(&mut img, 0, 0, kind == TargetKind::Alternating, &mut acc)?;
                acc
            }
        };
        out.sort();
        Ok(out)
    }

    /// Canonical conjugate of a string under the pruning group.
    pub fn key(&self, gens: &[Permutation]) -> Vec<u8> {
        match self.kind {
            TargetKind::Other => group_key(&self.normalizer, gens),
            _ => sym_key(self.degree(), gens),
        }
    }

    /// The string relabelled to its canonical conjugate.
    pub fn canonical(&self, gens: &[Permutation]) -> Sggi {
        let n = self.degree();
        let key = self.key(gens);
        let gens = key
            .chunks(n)
            .map(|c| Permutation::from_images(&c.iter().map(|&x| x as usize).collect::<Vec<_>>()).unwrap())
            .collect();
        Sggi::new_unchecked(n, gens)
    }
}

fn matchings(img: &mut Vec<usize>, from: usize, pairs: usize, even: bool, out: &mut Vec<Permutation>) -> Result<()> {
    let n = img.len();
    let mut x = from;
    while x < n && img[x] != x {
        x += 1;
    }
    if x >= n {
        if pairs > 0 && (!even || pairs % 2 == 0) {
            if out.len() >= INVOLUTION_CAP {
                return Err(Error::Parameter("too many involutions for exhaustive search".into()));
            }
            out.push(Permutation::from_images(img).unwrap());
        }
        return Ok(());
    }
    // x stays fixed
    matchings(img, x + 1, pairs, even, out)?;
    for y in x + 1..n {
        if img[y] == y {
            img.swap(x, y);
            matchings(img, x + 1, pairs + 1, even, out)?;
            img.swap(x, y);
        }
    }
    Ok(())
}

/// Least BFS relabelling over all start points; exact for transitive strings.
pub fn sym_key(n: usize, gens: &[Permutation]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for s in 0..n {
        let mut lab = vec![u8::MAX; n];
        let mut order = vec![s];
        lab[s] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for g in gens {
                let y = g.image(x);
                if lab[y] == u8::MAX {
                    lab[y] = order.len() as u8;
                    order.push(y);
                }
            }
            i += 1;
        }
        if order.len() < n {
            // not connected: fall back to the plain image sequence
            return gens.iter().flat_map(|g| g.raw().iter().copied()).collect();
        }
        let mut key = Vec::with_capacity(n * gens.len());
        for g in gens {
            let mut img = vec![0u8; n];
            for x in 0..n {
                img[lab[x] as usize] = lab[g.image(x)];
            }
            key.extend(img);
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

/// Least conjugate under an explicit group; plain images when the group is too big to list.
pub fn group_key(g: &PermGroup, gens: &[Permutation]) -> Vec<u8> {
    let raw = |c: &Permutation| gens.iter().flat_map(|p| p.conjugate_by(c).raw().to_vec()).collect::<Vec<u8>>();
    match g.elements(KEY_ENUM_CAP) {
        Some(els) => els.iter().map(raw).min().unwrap(),
        None => raw(&Permutation::identity(g.degree())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotInvolution,
    /// Fails to commute with this earlier generator.
    NotCommuting(usize),
    Membership,
    /// This generator becomes redundant.
    Dependent(usize),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotInvolution => write!(f, "not an involution"),
            Rejection::NotCommuting(j) => write!(f, "does not commute with generator {j}"),
            Rejection::Membership => write!(f, "already in the group generated so far"),
            Rejection::Dependent(j) => write!(f, "generator {j} becomes redundant"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Accept(Sggi),
    Reject(Rejection),
}

/// Appends `candidate` to `partial` if the result is still an independent string.
pub fn extend(partial: &Sggi, candidate: &Permutation) -> Result<Extension> {
    let n = partial.degree();
    if candidate.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: candidate.degree() });
    }
    if !candidate.is_involution() {
        return Ok(Extension::Reject(Rejection::NotInvolution));
    }
    let d = partial.len();
    if let Some(j) = (0..d.saturating_sub(1)).find(|&j| !partial.gens()[j].commutes_with(candidate)) {
        return Ok(Extension::Reject(Rejection::NotCommuting(j)));
    }
    let h = partial.group();
    if h.contains(candidate) {
        return Ok(Extension::Reject(Rejection::Membership));
    }
    let mut gens = partial.gens().to_vec();
    gens.push(candidate.clone());
    if let Some(j) = first_dependent(n, &gens, &PermGroup::new(n, gens.clone())?.order()) {
        return Ok(Extension::Reject(Rejection::Dependent(j)));
    }
    debug_assert!(validate(n, &gens)?.ok);
    Ok(Extension::Accept(Sggi::new_unchecked(n, gens)))
}

/// Least `j < last` whose removal keeps the order; the last generator is assumed checked.
pub(crate) fn first_dependent(n: usize, gens: &[Permutation], order: &BigUint) -> Option<usize> {
    let last = gens.len() - 1;
    (0..last).find(|&j| {
        let rest: Vec<Permutation> =
            gens.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, g)| g.clone()).collect();
        PermGroup::new(n, rest).unwrap().order() == *order
    })
}

/// Per-rank witness store keyed by canonical form.
#[derive(Clone, Debug, Default)]
pub(crate) struct Found {
    by_rank: BTreeMap<usize, BTreeMap<Vec<u8>, Sggi>>,
}

impl Found {
    /// `s` should already be canonical; its images are the key.
    pub fn insert(&mut self, s: Sggi) {
        let key: Vec<u8> = s.gens().iter().flat_map(|g| g.raw().iter().copied()).collect();
        let m = self.by_rank.entry(s.len()).or_default();
        if m.len() >= WITNESS_CAP {
            let last = m.keys().next_back().unwrap().clone();
            if key >= last {
                return;
            }
            m.remove(&last);
        }
        m.insert(key, s);
    }

    pub fn merge(&mut self, other: Found) {
        for (_, m) in other.by_rank {
            for (_, s) in m {
                self.insert(s);
            }
        }
    }

    pub fn ranks(&self) -> BTreeSet<usize> {
        self.by_rank.keys().copied().collect()
    }

    pub fn top(&self) -> Option<(usize, Vec<Sggi>)> {
        self.by_rank.iter().next_back().map(|(&r, m)| (r, m.values().cloned().collect()))
    }
}

/// Search for independent strings of involutions generating `g`.
pub fn max_rank_search(g: &PermGroup, opts: &SearchOptions) -> Result<SearchResult> {
    search_target(&Target::new(g.clone())?, opts)
}

pub fn search_target(t: &Target, opts: &SearchOptions) -> Result<SearchResult> {
    let cap = t.log2_order();
    let max_length = opts.max_length.unwrap_or(cap).min(cap);
    if max_length == 0 {
        return Err(Error::Parameter("max_length must be at least 1".into()));
    }
    match opts.mode {
        Mode::Exhaustive => tree::run(t, opts, max_length),
        Mode::Randomized => random::run(t, opts, max_length),
    }
}

/// `Some(true/false)` when decided, `None` when the budget ran out.
pub fn exists_sggi(g: &PermGroup, opts: &SearchOptions) -> Result<Option<bool>> {
    let opts = SearchOptions { mode: Mode::Exhaustive, ..opts.clone() };
    let res = max_rank_search(g, &opts)?;
    Ok(match res.outcome {
        Outcome::NoSggi => Some(false),
        Outcome::MaxRank(_) => Some(true),
        Outcome::Inconclusive { lower: Some(_) } | Outcome::LowerBound(_) => Some(true),
        Outcome::Inconclusive { lower: None } => None,
    })
}

pub(crate) type IndexMap = HashMap<Permutation, u32>;
