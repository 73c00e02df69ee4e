use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::{orbits_unchecked, Permutation, MAX_DEGREE};

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `trans[g]` maps the base point to `g`.
    pub trans: Vec<Option<Permutation>>,
    pub trans_inv: Vec<Option<Permutation>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut trans = vec![None; n];
        let mut trans_inv = vec![None; n];
        trans[base] = Some(Permutation::identity(n));
        trans_inv[base] = Some(Permutation::identity(n));
        Level { base, gens: Vec::new(), orbit: vec![base], trans, trans_inv, checked: HashSet::new() }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        // existing transversal entries never change, so memoized pairs stay valid
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s.image(x);
                if self.trans[y].is_none() {
                    let u = self.trans[x].as_ref().unwrap().compose(s);
                    self.trans_inv[y] = Some(u.inverse());
                    self.trans[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    #[inline]
    pub fn in_orbit(&self, x: usize) -> bool {
        self.trans[x].is_some()
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    fn build(n: usize, gens: &[Permutation], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain { n, levels: prefix.iter().map(|&b| Level::new(n, b)).collect() };
        let gens: Vec<Permutation> = {
            let mut seen = HashSet::new();
            gens.iter().filter(|g| !g.is_identity() && seen.insert((*g).clone())).cloned().collect()
        };
        for g in &gens {
            if chain.levels.iter().all(|l| !g.moves(l.base)) {
                let b = (0..n).find(|&x| g.moves(x)).unwrap();
                chain.levels.push(Level::new(n, b));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                chain.levels[l].add_gen(g.clone());
                if g.moves(chain.levels[l].base) {
                    break;
                }
            }
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.find_failure(i as usize) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = (0..self.n).find(|&x| residue.moves(x)).unwrap();
                        self.levels.push(Level::new(self.n, b));
                    }
                    for l in (i as usize + 1)..=j {
                        self.levels[l].add_gen(residue.clone());
                    }
                    i = j as isize;
                }
            }
        }
    }

    fn find_failure(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut idx = 0;
        while idx < self.levels[i].orbit.len() {
            let gamma = self.levels[i].orbit[idx];
            for s in 0..self.levels[i].gens.len() {
                if !self.levels[i].checked.insert((gamma, s)) {
                    continue;
                }
                let lvl = &self.levels[i];
                let g = &lvl.gens[s];
                let delta = g.image(gamma);
                let h = lvl.trans[gamma]
                    .as_ref()
                    .unwrap()
                    .compose(g)
                    .compose(lvl.trans_inv[delta].as_ref().unwrap());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = self.sift_from(h, i + 1);
                if !(j == self.levels.len() && res.is_identity()) {
                    return Some((res, j));
                }
            }
            idx += 1;
        }
        None
    }

    /// Sifts `g` starting at `from`; returns the residue and the level where sifting stopped.
    pub(crate) fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let lvl = &self.levels[l];
            let x = g.image(lvl.base);
            match &lvl.trans_inv[x] {
                None => return (g, l),
                Some(u) => {
                    if x != lvl.base {
                        g = g.compose(u);
                    }
                }
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (res, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && res.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        self.levels
            .iter()
            .flat_map(|l| l.gens.iter())
            .filter(|g| seen.insert((*g).clone()))
            .cloned()
            .collect()
    }
}

/// Permutation group given by generators; the stabilizer chain is built on first use.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::BadDegree(degree));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    /// Group whose chain starts with the given base points.
    pub fn with_base(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Result<Self> {
        let g = Self::new(degree, gens)?;
        let chain = StabChain::build(degree, &g.gens, prefix);
        let _ = g.chain.set(chain);
        Ok(g)
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(n, Vec::new()).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::transposition(n, 0, 1));
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap());
        }
        if n >= 4 {
            let cyc: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            gens.push(Permutation::from_cycles(n, &[cyc]).unwrap());
        }
        Self::new(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.gens, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order().to_u128()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.is_identity())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_unchecked(&self.gens, self.degree)
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&x)).unwrap()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn is_even(&self) -> bool {
        self.gens.iter().all(|g| g.is_even())
    }

    pub fn point_stabilizer(&self, x: usize) -> PermGroup {
        let c = StabChain::build(self.degree, &self.gens, &[x]);
        PermGroup::new(self.degree, c.stabilizer_gens(1)).unwrap()
    }

    /// All elements, or `None` if the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Permutation>> {
        let ord = self.order().to_usize()?;
        if ord > limit {
            return None;
        }
        let levels = &self.chain().levels;
        let mut out = vec![Permutation::identity(self.degree)];
        // element = u_{k-1} .. u_1 u_0
        for lvl in levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for e in &out {
                for &g in &lvl.orbit {
                    next.push(e.compose(lvl.trans[g].as_ref().unwrap()));
                }
            }
            out = next;
        }
        Some(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut e = Permutation::identity(self.degree);
        for lvl in self.chain().levels.iter().rev() {
            let g = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            e = e.compose(lvl.trans[g].as_ref().unwrap());
        }
        e
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        self.intersection_seeded(other, &[])
    }

    /// Intersection by backtracking over a common base. `seed` must lie in both groups.
    pub fn intersection_seeded(&self, other: &PermGroup, seed: &[Permutation]) -> PermGroup {
        let n = self.degree;
        if self.is_trivial() || other.is_trivial() {
            return PermGroup::trivial(n);
        }
        if self.is_subgroup_of(other) {
            return self.clone();
        }
        if other.is_subgroup_of(self) {
            return other.clone();
        }
        let first = StabChain::build(n, &self.gens, &[]);
        let b = StabChain::build(n, &other.gens, &first.base());
        let a = StabChain::build(n, &self.gens, &b.base());
        debug_assert_eq!(a.base(), b.base());
        let base = a.base();
        let k = base.len();

        let level_of = |g: &Permutation| base.iter().position(|&x| g.moves(x)).unwrap_or(k);
        let mut kgens: Vec<(usize, Permutation)> = seed
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| (level_of(g), g.clone()))
            .collect();

        for l in (0..k).rev() {
            let beta = base[l];
            let orbit_under = |gens: &[(usize, Permutation)], min: usize, x: usize| -> Vec<bool> {
                let sel: Vec<Permutation> =
                    gens.iter().filter(|(lv, _)| *lv >= min).map(|(_, g)| g.clone()).collect();
                let mut mark = vec![false; n];
                mark[x] = true;
                let mut st = vec![x];
                while let Some(y) = st.pop() {
                    for g in &sel {
                        let z = g.image(y);
                        if !mark[z] {
                            mark[z] = true;
                            st.push(z);
                        }
                    }
                }
                mark
            };
            let mut korb = orbit_under(&kgens, l, beta);
            let mut failed = vec![false; n];
            let mut candidates: Vec<usize> = a.levels[l].orbit.clone();
            candidates.sort_unstable();
            for gamma in candidates {
                if korb[gamma] || failed[gamma] {
                    continue;
                }
                let found = if b.levels[l].in_orbit(gamma) { find_coset_element(&a, &b, l, gamma) } else { None };
                match found {
                    Some(x) => {
                        kgens.push((l, x));
                        korb = orbit_under(&kgens, l, beta);
                    }
                    None => {
                        let o = orbit_under(&kgens, l + 1, gamma);
                        for (i, f) in o.into_iter().enumerate() {
                            failed[i] |= f;
                        }
                    }
                }
            }
        }
        PermGroup::new(n, kgens.into_iter().map(|(_, g)| g).collect()).unwrap()
    }
}

/// Element of `A^(l) ∩ B^(l)` sending `base[l]` to `gamma`, if any.
fn find_coset_element(a: &StabChain, b: &StabChain, l: usize, gamma: usize) -> Option<Permutation> {
    let p = a.levels[l].trans[gamma].clone().unwrap();
    let q = b.levels[l].trans_inv[gamma].clone().unwrap();
    descend(a, b, l + 1, &p, &q)
}

fn descend(a: &StabChain, b: &StabChain, m: usize, p: &Permutation, q: &Permutation) -> Option<Permutation> {
    if m == a.levels.len() {
        return p.compose(q).is_identity().then(|| p.clone());
    }
    let la = &a.levels[m];
    let lb = &b.levels[m];
    for &d in &la.orbit {
        let u = la.trans[d].as_ref().unwrap();
        let image = p.image(u.image(la.base));
        let e = q.image(image);
        let Some(vinv) = lb.trans_inv[e].as_ref() else { continue };
        let p2 = u.compose(p);
        let q2 = q.compose(vinv);
        if let Some(x) = descend(a, b, m + 1, &p2, &q2) {
            return Some(x);
        }
    }
    None
}
