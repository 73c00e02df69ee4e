use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{first_dependent, Found, Outcome, SearchOptions, SearchResult, SearchStats, Target};
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::{orbits_unchecked, Permutation};
use crate::sggi::Sggi;

/// Samples drawn per pool member and level.
const TRIES: usize = 40;
/// Beams launched together between budget checks.
const CHUNK: usize = 16;

/// `x0 -> y` extended along `gens`; `None` if that is not a well-defined bijection onto an orbit.
fn equivariant(n: usize, gens: &[Permutation], x0: usize, y: usize) -> Option<Vec<(usize, usize)>> {
    let mut m = vec![usize::MAX; n];
    let mut used = vec![false; n];
    m[x0] = y;
    used[y] = true;
    let mut pairs = vec![(x0, y)];
    let mut i = 0;
    while i < pairs.len() {
        let (x, fx) = pairs[i];
        for g in gens {
            let (gx, gy) = (g.image(x), g.image(fx));
            if m[gx] == usize::MAX {
                if used[gy] {
                    return None;
                }
                m[gx] = gy;
                used[gy] = true;
                pairs.push((gx, gy));
            } else if m[gx] != gy {
                return None;
            }
        }
        i += 1;
    }
    Some(pairs)
}

/// Random involution (possibly the identity) commuting with each of `gens`.
///
/// Such an involution permutes the orbits of `<gens>`, matching them up by equivariant maps.
pub fn random_commuting_involution<R: Rng + ?Sized>(n: usize, gens: &[Permutation], rng: &mut R) -> Permutation {
    sample(n, gens, usize::MAX, rng)
}

/// Orbits are visited in random order; once `budget` points move, the rest stay fixed.
fn sample<R: Rng + ?Sized>(n: usize, gens: &[Permutation], budget: usize, rng: &mut R) -> Permutation {
    let orbs = orbits_unchecked(gens, n);
    let mut order: Vec<usize> = (0..orbs.len()).collect();
    order.shuffle(rng);
    let p_self: f64 = rng.gen();
    let mut done = vec![false; orbs.len()];
    let mut img: Vec<usize> = (0..n).collect();
    let mut moved = 0;
    for &o in &order {
        if done[o] {
            continue;
        }
        done[o] = true;
        if moved >= budget {
            continue;
        }
        let x0 = orbs[o][0];
        let selfs: Vec<Vec<(usize, usize)>> = orbs[o]
            .iter()
            .filter_map(|&y| equivariant(n, gens, x0, y))
            .filter(|m| {
                let mut f = vec![usize::MAX; n];
                for &(a, b) in m {
                    f[a] = b;
                }
                m.iter().all(|&(a, b)| f[b] == a) && (budget == usize::MAX || m.iter().any(|&(a, b)| a != b))
            })
            .collect();
        let others: Vec<(usize, Vec<(usize, usize)>)> = (0..orbs.len())
            .filter(|&p| !done[p] && orbs[p].len() == orbs[o].len())
            .flat_map(|p| orbs[p].iter().filter_map(move |&y| equivariant(n, gens, x0, y).map(|m| (p, m))))
            .collect();
        let pick_self = others.is_empty() || (!selfs.is_empty() && rng.gen_bool(p_self));
        if pick_self {
            // with no budget the identity map is always there
            let Some(m) = selfs.choose(rng) else { continue };
            for &(a, b) in m {
                img[a] = b;
                moved += usize::from(a != b);
            }
        } else {
            let (p, m) = others.choose(rng).unwrap();
            done[*p] = true;
            for &(a, b) in m {
                img[a] = b;
                img[b] = a;
            }
            moved += 2 * m.len();
        }
    }
    Permutation::from_images(&img).unwrap()
}

/// Points moved by the group and the number of its non-trivial orbits.
fn shape(n: usize, gens: &[Permutation]) -> (usize, usize) {
    let orbs = orbits_unchecked(gens, n);
    let big: Vec<&Vec<usize>> = orbs.iter().filter(|o| o.len() > 1).collect();
    (big.iter().map(|o| o.len()).sum(), big.len())
}

/// Preference for an extension: few new points, and one orbit rather than several.
fn weight(new_points: usize, parts: usize) -> f64 {
    let w = if parts == 1 { 1.0 } else { 0.1 };
    w / (1.0 + new_points as f64)
}

/// Pool of partial strings advanced a level at a time, resampled by weight.
fn beam<R: Rng>(t: &Target, max_length: usize, width: usize, rng: &mut R, stats: &mut SearchStats, found: &mut Found) {
    let n = t.degree();
    let mut pool: Vec<(Vec<Permutation>, PermGroup)> = vec![(Vec::new(), PermGroup::trivial(n))];
    for d in 0..max_length {
        let mut next: Vec<(Vec<Permutation>, PermGroup, f64)> = Vec::new();
        for (gens, h) in &pool {
            let fixed = &gens[..d.saturating_sub(1)];
            let support = shape(n, gens).0;
            let mut seen: Vec<Permutation> = Vec::new();
            for _ in 0..TRIES {
                let budget = *[4, 4, 4, 2, 6, 8, usize::MAX].choose(rng).unwrap();
                let tau = sample(n, fixed, budget, rng);
                if tau.is_identity() || !t.contains(&tau) || seen.contains(&tau) {
                    continue;
                }
                seen.push(tau.clone());
                stats.nodes += 1;
                if h.contains(&tau) {
                    stats.pruned_membership += 1;
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(tau);
                let h2 = PermGroup::new(n, g2.clone()).unwrap();
                let ord = h2.order();
                if ord == *t.order() {
                    if first_dependent(n, &g2, &ord).is_none() {
                        stats.leaves += 1;
                        found.insert(t.canonical(&g2));
                    }
                    continue;
                }
                let (moved, parts) = shape(n, &g2);
                next.push((g2, h2, weight(moved - support, parts)));
            }
        }
        if d + 1 >= max_length {
            break;
        }
        let mut keys = std::collections::HashSet::new();
        pool = Vec::new();
        while pool.len() < width && !next.is_empty() {
            let i = WeightedIndex::new(next.iter().map(|x| x.2)).unwrap().sample(rng);
            let (g2, h2, _) = next.swap_remove(i);
            if !keys.insert(t.key(&g2)) {
                continue;
            }
            if first_dependent(n, &g2, &h2.order()).is_some() {
                stats.pruned_dependent += 1;
                continue;
            }
            pool.push((g2, h2));
        }
        if pool.is_empty() {
            break;
        }
    }
}

pub(super) fn run(t: &Target, opts: &SearchOptions, max_length: usize) -> Result<SearchResult> {
    let start = Instant::now();
    let deadline = opts.time_budget.map(|b| start + b);
    let stop = AtomicBool::new(false);
    let mut found = Found::default();
    let mut stats = SearchStats::default();
    let chunks = opts.restarts.div_ceil(CHUNK);
    for c in 0..chunks {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(opts.restarts);
        let parts: Vec<(Found, SearchStats)> = (lo..hi)
            .into_par_iter()
            .map(|k| {
                let mut f = Found::default();
                let mut s = SearchStats::default();
                if stop.load(Ordering::Relaxed) {
                    return (f, s);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(k as u64);
                beam(t, max_length, opts.beam_width, &mut rng, &mut s, &mut f);
                (f, s)
            })
            .collect();
        for (f, s) in parts {
            found.merge(f);
            stats.add(&s);
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            stop.store(true, Ordering::Relaxed);
            break;
        }
        if opts.target_rank.is_some_and(|r| found.ranks().iter().any(|&k| k >= r)) {
            break;
        }
    }
    let top = found.top();
    // a randomized run never proves maximality, so a hit is always just a lower bound
    let outcome = match &top {
        Some((r, _)) => Outcome::LowerBound(*r),
        None => Outcome::Inconclusive { lower: None },
    };
    Ok(SearchResult {
        outcome,
        ranks_found: found.ranks(),
        witnesses: top.map(|t| t.1).unwrap_or_default(),
        involutions: 0,
        max_length,
        stats,
    })
}

/// Random independent strings on `n` points: prefixes of greedy walks in Sym(n) or Alt(n).
pub fn random_strings(n: usize, count: usize, even: bool, seed: u64) -> Vec<Sggi> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    // no even involutions below degree 4
    if n < 2 || (even && n < 4) {
        return out;
    }
    while out.len() < count {
        let len = rng.gen_range(1..=n.max(2) - 1);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut h = PermGroup::trivial(n);
        for _ in 0..len * 8 {
            if gens.len() == len {
                break;
            }
            let d = gens.len();
            let tau = random_commuting_involution(n, &gens[..d.saturating_sub(1)], &mut rng);
            if tau.is_identity() || (even && !tau.is_even()) || h.contains(&tau) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(tau);
            let h2 = PermGroup::new(n, g2.clone()).unwrap();
            if first_dependent(n, &g2, &h2.order()).is_some() {
                continue;
            }
            gens = g2;
            h = h2;
        }
        if !gens.is_empty() {
            out.push(Sggi::new_unchecked(n, gens));
        }
    }
    out
}
