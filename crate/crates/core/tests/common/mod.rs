//! Naive oracles shared by the integration tests. Nothing here calls the stabilizer chain.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use sggi::Permutation;

pub type Elem = Vec<usize>;

pub fn identity(n: usize) -> Elem {
    (0..n).collect()
}

/// `a` then `b`, as image vectors.
pub fn mul(a: &Elem, b: &Elem) -> Elem {
    a.iter().map(|&x| b[x]).collect()
}

/// Every element of `<gens>` by breadth-first closure.
pub fn closure(n: usize, gens: &[Permutation]) -> HashSet<Elem> {
    let gens: Vec<Elem> = gens.iter().map(|g| g.images()).collect();
    let mut seen = HashSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn inversion_sign_even(images: &[usize]) -> bool {
    let inv = (0..images.len()).tuple_combinations().filter(|&(i, j)| images[i] > images[j]).count();
    inv % 2 == 0
}

/// Orbits by repeated union over the generator pairs.
pub fn naive_orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut cell: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for g in gens {
            for x in 0..n {
                let (a, b) = (cell[x], cell[g.image(x)]);
                if a != b {
                    let m = a.min(b);
                    for c in cell.iter_mut() {
                        if *c == a || *c == b {
                            *c = m;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).into_group_map_by(|&x| cell[x]).into_values().map(|mut v| { v.sort(); v }).sorted().collect()
}

/// Whether some set containing 0, of a size properly dividing `n`, has images forming a partition.
/// For a transitive group this is exactly imprimitivity.
pub fn has_nontrivial_blocks(n: usize, gens: &[Permutation]) -> bool {
    for k in 2..n {
        if n % k != 0 {
            continue;
        }
        for rest in (1..n).combinations(k - 1) {
            let mut b: BTreeSet<usize> = rest.into_iter().collect();
            b.insert(0);
            if images_partition(n, gens, b) {
                return true;
            }
        }
    }
    false
}

fn images_partition(n: usize, gens: &[Permutation], start: BTreeSet<usize>) -> bool {
    let mut owner = vec![usize::MAX; n];
    let mut sets = vec![start.clone()];
    let mut seen = HashSet::from([start]);
    let mut i = 0;
    while i < sets.len() {
        for &x in &sets[i] {
            if owner[x] != usize::MAX && owner[x] != i {
                return false;
            }
            owner[x] = i;
        }
        for g in gens {
            let img: BTreeSet<usize> = sets[i].iter().map(|&x| g.image(x)).collect();
            if seen.insert(img.clone()) {
                sets.push(img);
            }
        }
        i += 1;
    }
    true
}

/// Every involution of Sym(n), as image vectors.
pub fn involutions(n: usize, even_only: bool) -> Vec<Permutation> {
    (0..n)
        .permutations(n)
        .filter(|p| p.iter().enumerate().all(|(i, &x)| p[x] == i) && p.iter().enumerate().any(|(i, &x)| i != x))
        .map(|p| Permutation::from_images(&p).unwrap())
        .filter(|p| !even_only || p.is_even())
        .collect()
}

/// Lengths `<= 3` of independent strings of involutions generating a group of size `order`,
/// found by trying every ordered tuple.
pub fn naive_ranks(n: usize, invs: &[Permutation], order: usize) -> BTreeSet<usize> {
    let gen_order = |gs: &[Permutation]| closure(n, gs).len();
    let independent = |gs: &[Permutation]| {
        let full = gen_order(gs);
        (0..gs.len()).all(|k| {
            let rest: Vec<Permutation> =
                gs.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
            gen_order(&rest) < full
        })
    };
    let mut out = BTreeSet::new();
    if invs.iter().any(|a| gen_order(std::slice::from_ref(a)) == order) {
        out.insert(1);
    }
    if invs.iter().tuple_combinations().any(|(a, b)| {
        let gs = [a.clone(), b.clone()];
        gen_order(&gs) == order && independent(&gs)
    }) {
        out.insert(2);
    }
    'outer: for a in invs {
        for b in invs {
            for c in invs {
                if !a.commutes_with(c) {
                    continue;
                }
                let gs = [a.clone(), b.clone(), c.clone()];
                if gen_order(&gs) == order && independent(&gs) {
                    out.insert(3);
                    break 'outer;
                }
            }
        }
    }
    out
}

/// `<S> ∩ <T>` by explicit element sets.
pub fn naive_intersection_holds(n: usize, gens: &[Permutation]) -> bool {
    let r = gens.len();
    let sub = |m: u32| {
        let gs: Vec<Permutation> = (0..r).filter(|i| m >> i & 1 == 1).map(|i| gens[i].clone()).collect();
        closure(n, &gs)
    };
    let all: Vec<HashSet<Elem>> = (0..1u32 << r).map(sub).collect();
    for i in 0..1usize << r {
        for j in 0..1usize << r {
            let meet: HashSet<&Elem> = all[i].intersection(&all[j]).collect();
            let expect: HashSet<&Elem> = all[i & j].iter().collect();
            if meet != expect {
                return false;
            }
        }
    }
    true
}
