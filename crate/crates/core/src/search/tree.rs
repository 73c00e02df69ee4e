use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{first_dependent, Found, IndexMap, Outcome, SearchOptions, SearchResult, SearchStats, Target};
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Frontier size at which the tree is handed to the thread pool.
const SPLIT_AT: usize = 96;

struct Ctx<'a> {
    t: &'a Target,
    invs: Vec<Permutation>,
    index: IndexMap,
    comm: Vec<FixedBitSet>,
    max_length: usize,
    prune: bool,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

#[derive(Clone)]
struct Node {
    prefix: Vec<u32>,
    h: PermGroup,
    /// Elements of the pruning group centralizing the prefix.
    cent: Option<PermGroup>,
}

struct Orbit {
    members: Vec<u32>,
    trans: Vec<Permutation>,
}

#[derive(Default)]
struct Acc {
    found: Found,
    stats: SearchStats,
}

impl Acc {
    fn merge(&mut self, o: Acc) {
        self.found.merge(o.found);
        self.stats.add(&o.stats);
    }
}

/// Builds `<gens>` one generator at a time, skipping ones already inside, until `target` is reached.
fn grow(n: usize, gens: impl Iterator<Item = Permutation>, target: Option<&BigUint>) -> PermGroup {
    let mut kept = Vec::new();
    let mut grp = PermGroup::trivial(n);
    for g in gens {
        if target.is_some_and(|t| grp.order() == *t) {
            break;
        }
        if g.is_identity() || grp.contains(&g) {
            continue;
        }
        kept.push(g);
        grp = PermGroup::new(n, kept.clone()).unwrap();
    }
    grp
}

impl Ctx<'_> {
    fn conj(&self, x: u32, g: &Permutation) -> u32 {
        self.index[&self.invs[x as usize].conjugate_by(g)]
    }

    fn timed_out(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn candidates(&self, prefix: &[u32]) -> FixedBitSet {
        let d = prefix.len();
        if d < 2 {
            let mut all = FixedBitSet::with_capacity(self.invs.len());
            all.insert_range(..);
            return all;
        }
        let mut c = self.comm[prefix[0] as usize].clone();
        for &p in &prefix[1..d - 1] {
            c.intersect_with(&self.comm[p as usize]);
        }
        c
    }

    fn orbits(&self, cands: &FixedBitSet, cent: Option<&PermGroup>) -> Vec<Orbit> {
        let n = self.t.degree();
        let gens: Vec<&Permutation> = match cent {
            Some(c) if self.prune => c.generators().iter().filter(|g| !g.is_identity()).collect(),
            _ => Vec::new(),
        };
        if gens.is_empty() {
            return cands
                .ones()
                .map(|c| Orbit { members: vec![c as u32], trans: vec![Permutation::identity(n)] })
                .collect();
        }
        let mut seen = FixedBitSet::with_capacity(self.invs.len());
        let mut out = Vec::new();
        for c in cands.ones() {
            if seen.contains(c) {
                continue;
            }
            seen.insert(c);
            let mut orb = Orbit { members: vec![c as u32], trans: vec![Permutation::identity(n)] };
            let mut i = 0;
            while i < orb.members.len() {
                let x = orb.members[i];
                for g in &gens {
                    let y = self.conj(x, g);
                    if !seen.put(y as usize) {
                        let u = orb.trans[i].compose(g);
                        orb.members.push(y);
                        orb.trans.push(u);
                    }
                }
                i += 1;
            }
            out.push(orb);
        }
        out
    }

    /// Stabilizer of the orbit representative, from Schreier generators.
    fn stabilizer(&self, cent: &PermGroup, orb: &Orbit) -> PermGroup {
        let n = self.t.degree();
        let target = cent.order() / BigUint::from(orb.members.len());
        if target.is_one() {
            return PermGroup::trivial(n);
        }
        let pos: std::collections::HashMap<u32, usize> =
            orb.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let schreier = orb.members.iter().enumerate().flat_map(|(i, &x)| {
            cent.generators().iter().map(move |g| (i, x, g))
        });
        let gens = schreier.map(|(i, x, g)| {
            let j = pos[&self.conj(x, g)];
            orb.trans[i].compose(g).compose(&orb.trans[j].inverse())
        });
        grow(n, gens, Some(&target))
    }

    fn expand(&self, node: &Node, acc: &mut Acc) -> Vec<Node> {
        let d = node.prefix.len();
        if self.timed_out() {
            return Vec::new();
        }
        let n = self.t.degree();
        let cands = self.candidates(&node.prefix);
        let mut children = Vec::new();
        for orb in self.orbits(&cands, node.cent.as_ref()) {
            acc.stats.nodes += 1;
            acc.stats.pruned_conjugacy += orb.members.len() as u64 - 1;
            let c = orb.members[0];
            let cand = &self.invs[c as usize];
            if node.h.contains(cand) {
                acc.stats.pruned_membership += 1;
                continue;
            }
            let mut gens: Vec<Permutation> = node.prefix.iter().map(|&p| self.invs[p as usize].clone()).collect();
            gens.push(cand.clone());
            let h = PermGroup::new(n, gens.clone()).unwrap();
            let ord = h.order();
            if first_dependent(n, &gens, &ord).is_some() {
                acc.stats.pruned_dependent += 1;
                continue;
            }
            if ord == *self.t.order() {
                acc.stats.leaves += 1;
                acc.found.insert(self.t.canonical(&gens));
                continue;
            }
            if d + 1 >= self.max_length {
                acc.stats.pruned_length += 1;
                continue;
            }
            let cent = match (&node.cent, self.prune) {
                (Some(cg), true) => Some(self.stabilizer(cg, &orb)),
                _ => None,
            };
            let mut prefix = node.prefix.clone();
            prefix.push(c);
            children.push(Node { prefix, h, cent });
        }
        children
    }

    fn dfs(&self, node: &Node, acc: &mut Acc) {
        for child in self.expand(node, acc) {
            self.dfs(&child, acc);
        }
    }
}

pub(super) fn run(t: &Target, opts: &SearchOptions, max_length: usize) -> Result<SearchResult> {
    let start = Instant::now();
    let n = t.degree();
    let invs = t.involutions()?;
    let mut res = SearchResult {
        outcome: Outcome::NoSggi,
        witnesses: Vec::new(),
        ranks_found: Default::default(),
        involutions: invs.len(),
        max_length,
        stats: SearchStats::default(),
    };
    // all involutions together generate a proper subgroup: nothing to search
    if grow(n, invs.iter().cloned(), Some(t.order())).order() != *t.order() {
        return Ok(res);
    }
    let index: IndexMap = invs.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
    let comm: Vec<FixedBitSet> = invs
        .par_iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(invs.len());
            for (j, b) in invs.iter().enumerate() {
                if a.commutes_with(b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let ctx = Ctx {
        t,
        invs,
        index,
        comm,
        max_length,
        prune: opts.prune_conjugacy,
        deadline: opts.time_budget.map(|b| start + b),
        stop: AtomicBool::new(false),
    };
    let root = Node {
        prefix: Vec::new(),
        h: PermGroup::trivial(n),
        cent: opts.prune_conjugacy.then(|| t.normalizer.clone()),
    };
    let mut acc = Acc::default();
    let mut frontier = vec![root];
    while !frontier.is_empty() && frontier.len() < SPLIT_AT {
        let parts: Vec<(Vec<Node>, Acc)> = frontier
            .par_iter()
            .map(|node| {
                let mut a = Acc::default();
                let ch = ctx.expand(node, &mut a);
                (ch, a)
            })
            .collect();
        frontier = Vec::new();
        for (ch, a) in parts {
            frontier.extend(ch);
            acc.merge(a);
        }
    }
    let parts: Vec<Acc> = frontier
        .par_iter()
        .map(|node| {
            let mut a = Acc::default();
            ctx.dfs(node, &mut a);
            a
        })
        .collect();
    for a in parts {
        acc.merge(a);
    }
    let timed_out = ctx.stop.load(Ordering::Relaxed);
    res.ranks_found = acc.found.ranks();
    res.stats = acc.stats;
    let top = acc.found.top();
    res.outcome = match (&top, timed_out) {
        (_, true) => Outcome::Inconclusive { lower: top.as_ref().map(|t| t.0) },
        (None, false) => Outcome::NoSggi,
        (Some((r, _)), false) => Outcome::MaxRank(*r),
    };
    res.witnesses = top.map(|t| t.1).unwrap_or_default();
    Ok(res)
}
