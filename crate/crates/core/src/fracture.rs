use std::fmt;

use itertools::Itertools;

use crate::blocks::is_primitive;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{orbit_labels, Permutation};
use crate::sggi::Sggi;

/// Per label, the 2-cycles of `ρ_i` whose points lie in different `G_i`-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingData {
    pub transitive: bool,
    pub per_label: Vec<Vec<(usize, usize)>>,
}

fn drop_labels(s: &Sggi, i: usize) -> Vec<usize> {
    orbit_labels(&s.without(i), s.degree())
}

/// Crossing pairs for every label. A 2-cycle always stays inside one `G`-orbit,
/// so the same test covers the intransitive case.
pub fn crossing_data(s: &Sggi) -> Result<CrossingData> {
    let mut per_label = Vec::with_capacity(s.len());
    for (i, g) in s.gens().iter().enumerate() {
        let lab = drop_labels(s, i);
        let pairs: Vec<(usize, usize)> = g.transpositions().into_iter().filter(|&(a, b)| lab[a] != lab[b]).collect();
        if pairs.is_empty() {
            return Err(Error::NoFracture { label: i });
        }
        per_label.push(pairs);
    }
    Ok(CrossingData { transitive: s.is_transitive(), per_label })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractureKind {
    Fracture,
    TwoFracture,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractureGraph {
    pub n: usize,
    pub kind: FractureKind,
    pub chosen: Vec<Vec<(usize, usize)>>,
    /// Alternating squares among the chosen edges.
    pub squares: usize,
}

impl FractureGraph {
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.chosen
            .iter()
            .enumerate()
            .flat_map(|(l, ps)| ps.iter().map(move |&(a, b)| (a, b, l)))
            .collect()
    }

    /// Vertex sets of the components touched by at least one edge.
    pub fn components(&self) -> Vec<(Vec<usize>, usize)> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let edges = self.edges();
        for &(a, b, _) in &edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut comps: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut idx = vec![usize::MAX; self.n];
        let touched: Vec<bool> = (0..self.n).map(|x| edges.iter().any(|&(a, b, _)| a == x || b == x)).collect();
        for x in 0..self.n {
            if !touched[x] {
                continue;
            }
            let r = find(&mut parent, x);
            if idx[r] == usize::MAX {
                idx[r] = comps.len();
                comps.push((Vec::new(), 0));
            }
            comps[idx[r]].0.push(x);
        }
        for &(a, _, _) in &edges {
            let r = find(&mut parent, a);
            comps[idx[r]].1 += 1;
        }
        comps
    }

    pub fn is_forest(&self) -> bool {
        self.components().iter().all(|(vs, e)| *e + 1 == vs.len())
    }

    pub fn has_tree_component(&self) -> bool {
        self.components().iter().any(|(vs, e)| *e + 1 == vs.len())
    }
}

/// One crossing pair per label, the least in each list. Always a forest.
pub fn fracture_graph(s: &Sggi) -> Result<FractureGraph> {
    let cd = crossing_data(s)?;
    Ok(FractureGraph {
        n: s.degree(),
        kind: FractureKind::Fracture,
        chosen: cd.per_label.iter().map(|p| vec![p[0]]).collect(),
        squares: 0,
    })
}

/// Whether the two `j`-edges match the endpoints of the two `i`-edges.
fn forms_square(ei: &[(usize, usize); 2], ej: &[(usize, usize); 2]) -> bool {
    let [(a, b), (c, d)] = *ei;
    let has = |x: usize, y: usize| ej.iter().any(|&(p, q)| (p, q) == (x.min(y), x.max(y)));
    (has(a, c) && has(b, d)) || (has(a, d) && has(b, c))
}

const EXACT_CANDIDATES: usize = 12;
const NODE_CAP: usize = 200_000;

/// Two crossing pairs per label, minimizing alternating squares; ties go lexicographically.
/// Exact for at most 12 candidates per label within a node cap, greedy otherwise.
pub fn two_fracture(s: &Sggi) -> Result<Option<FractureGraph>> {
    let cd = crossing_data(s)?;
    if cd.per_label.iter().any(|p| p.len() < 2) {
        return Ok(None);
    }
    let options: Vec<Vec<[(usize, usize); 2]>> = cd
        .per_label
        .iter()
        .map(|p| p.iter().tuple_combinations().map(|(&x, &y)| [x, y]).collect())
        .collect();
    let r = options.len();
    let greedy = || {
        let mut pick: Vec<[(usize, usize); 2]> = Vec::with_capacity(r);
        let mut cost = 0;
        for opts in &options {
            let (best, add) = opts
                .iter()
                .map(|o| (*o, pick.iter().filter(|p| forms_square(p, o)).count()))
                .min_by_key(|&(_, c)| c)
                .unwrap();
            cost += add;
            pick.push(best);
        }
        (pick, cost)
    };
    let (pick, cost) = if options.iter().all(|o| o.len() <= EXACT_CANDIDATES * (EXACT_CANDIDATES - 1) / 2) {
        let mut st = Bnb { options: &options, best: None, nodes: 0, cur: Vec::with_capacity(r) };
        st.run(0);
        if st.nodes > NODE_CAP || st.best.is_none() {
            greedy()
        } else {
            st.best.unwrap()
        }
    } else {
        greedy()
    };
    Ok(Some(FractureGraph {
        n: s.degree(),
        kind: FractureKind::TwoFracture,
        chosen: pick.iter().map(|p| p.to_vec()).collect(),
        squares: cost,
    }))
}

struct Bnb<'a> {
    options: &'a [Vec<[(usize, usize); 2]>],
    best: Option<(Vec<[(usize, usize); 2]>, usize)>,
    nodes: usize,
    cur: Vec<([(usize, usize); 2], usize)>,
}

impl Bnb<'_> {
    fn cost(&self) -> usize {
        self.cur.last().map_or(0, |c| c.1)
    }

    fn run(&mut self, l: usize) {
        if self.nodes > NODE_CAP || self.best.as_ref().is_some_and(|b| b.1 == 0) {
            return;
        }
        self.nodes += 1;
        if l == self.options.len() {
            let c = self.cost();
            if self.best.as_ref().is_none_or(|b| c < b.1) {
                self.best = Some((self.cur.iter().map(|x| x.0).collect(), c));
            }
            return;
        }
        for o in &self.options[l] {
            let add = self.cur.iter().filter(|(p, _)| forms_square(p, o)).count();
            let c = self.cost() + add;
            if self.best.as_ref().is_some_and(|b| c >= b.1) {
                continue;
            }
            self.cur.push((*o, c));
            self.run(l + 1);
            self.cur.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Labels above the split fix the side of `a`; labels below fix the side of `b`.
    LowOnA,
    /// The mirror image, i.e. the condition holds for the dual string.
    LowOnB,
}

#[derive(Clone, Debug)]
pub struct Split {
    pub label: usize,
    pub edge: (usize, usize),
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub perfect: Option<Orientation>,
    pub j_a: Vec<usize>,
    pub j_b: Vec<usize>,
    /// Induced actions on the two sides, relabelled to `0..n_a` and `0..n_b`.
    pub action_a: PermGroup,
    pub action_b: PermGroup,
}

impl Split {
    pub fn n_a(&self) -> usize {
        self.side_a.len()
    }

    pub fn n_b(&self) -> usize {
        self.side_b.len()
    }

    pub fn is_perfect(&self) -> bool {
        self.perfect.is_some()
    }

    /// `(max, min)` of `J_A ∩ J_B`, reported for non-perfect splits.
    pub fn h_g(&self) -> Option<(usize, usize)> {
        let both: Vec<usize> = self.j_a.iter().filter(|l| self.j_b.contains(l)).copied().collect();
        Some((*both.iter().max()?, *both.iter().min()?))
    }
}

#[derive(Clone, Debug)]
pub struct SplitAnalysis {
    pub splits: Vec<Split>,
    pub split_count: usize,
    pub perfect_count: usize,
    pub has_two_fracture: bool,
    /// `x_sets[l]` is the support of `G_{>l}`.
    pub x_sets: Vec<Vec<usize>>,
    /// `y_sets[l]` is the support of `G_{<l}`.
    pub y_sets: Vec<Vec<usize>>,
}

fn restrict(g: &Permutation, side: &[usize], pos: &[usize]) -> Permutation {
    let images: Vec<usize> = side.iter().map(|&x| pos[g.image(x)]).collect();
    Permutation::from_images(&images).unwrap()
}

fn acts_on(g: &Permutation, side: &[usize]) -> bool {
    side.iter().any(|&x| g.moves(x))
}

fn support_union(gens: &[Permutation], n: usize) -> Vec<usize> {
    (0..n).filter(|&x| gens.iter().any(|g| g.moves(x))).collect()
}

pub fn find_splits(s: &Sggi) -> Result<SplitAnalysis> {
    let cd = crossing_data(s)?;
    let n = s.degree();
    let r = s.len();
    let mut splits = Vec::new();
    for (i, pairs) in cd.per_label.iter().enumerate() {
        if pairs.len() != 1 {
            continue;
        }
        let (a, b) = pairs[0];
        let lab = drop_labels(s, i);
        let side_a: Vec<usize> = (0..n).filter(|&x| lab[x] == lab[a]).collect();
        let side_b: Vec<usize> = (0..n).filter(|&x| lab[x] == lab[b]).collect();
        let others: Vec<usize> = (0..r).filter(|&j| j != i).collect();
        let j_a: Vec<usize> = others.iter().copied().filter(|&j| acts_on(&s.gens()[j], &side_a)).collect();
        let j_b: Vec<usize> = others.iter().copied().filter(|&j| acts_on(&s.gens()[j], &side_b)).collect();
        let trivial_on = |labels: std::ops::Range<usize>, side: &[usize]| {
            labels.into_iter().all(|j| !acts_on(&s.gens()[j], side))
        };
        let perfect = if trivial_on(i + 1..r, &side_a) && trivial_on(0..i, &side_b) {
            Some(Orientation::LowOnA)
        } else if trivial_on(i + 1..r, &side_b) && trivial_on(0..i, &side_a) {
            Some(Orientation::LowOnB)
        } else {
            None
        };
        let induced = |side: &[usize]| {
            let mut pos = vec![usize::MAX; n];
            for (k, &x) in side.iter().enumerate() {
                pos[x] = k;
            }
            let gens = others.iter().map(|&j| restrict(&s.gens()[j], side, &pos)).collect();
            PermGroup::new(side.len(), gens).unwrap()
        };
        let action_a = induced(&side_a);
        let action_b = induced(&side_b);
        splits.push(Split { label: i, edge: (a, b), side_a, side_b, perfect, j_a, j_b, action_a, action_b });
    }
    let x_sets = (0..r).map(|l| support_union(&s.gens()[l + 1..], n)).collect();
    let y_sets = (0..r).map(|l| support_union(&s.gens()[..l], n)).collect();
    let perfect_count = splits.iter().filter(|sp| sp.is_perfect()).count();
    Ok(SplitAnalysis {
        split_count: splits.len(),
        perfect_count,
        has_two_fracture: cd.per_label.iter().all(|p| p.len() >= 2),
        splits,
        x_sets,
        y_sets,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    NoFracture,
    HasTwoFracture,
    AllSplitsPerfect,
    SomeSplitNonPerfect,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NoFracture => "no-fracture",
            Classification::HasTwoFracture => "has-2-fracture",
            Classification::AllSplitsPerfect => "all-splits-perfect",
            Classification::SomeSplitNonPerfect => "some-split-non-perfect",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub class: Classification,
    pub transitive: bool,
    pub even: bool,
    /// `(h, g)` per non-perfect split label; informational only.
    pub extremal: Vec<(usize, Option<(usize, usize)>)>,
}

pub fn hypothesis_profile(s: &Sggi) -> Profile {
    let transitive = s.is_transitive();
    let even = s.all_even();
    let (class, extremal) = match find_splits(s) {
        Err(_) => (Classification::NoFracture, Vec::new()),
        Ok(sa) if sa.has_two_fracture => (Classification::HasTwoFracture, Vec::new()),
        Ok(sa) => {
            let np: Vec<(usize, Option<(usize, usize)>)> =
                sa.splits.iter().filter(|sp| !sp.is_perfect()).map(|sp| (sp.label, sp.h_g())).collect();
            if np.is_empty() {
                (Classification::AllSplitsPerfect, np)
            } else {
                (Classification::SomeSplitNonPerfect, np)
            }
        }
    };
    Profile { class, transitive, even, extremal }
}

/// Whether the `f`-edge `{u, v}` lies on a 4-cycle alternating `f` with another label.
pub fn in_alternating_square(s: &Sggi, u: usize, v: usize, f: usize) -> bool {
    let rf = &s.gens()[f];
    s.gens().iter().enumerate().any(|(j, rj)| {
        if j == f {
            return false;
        }
        let (u2, v2) = (rj.image(u), rj.image(v));
        u2 != u && v2 != v && u2 != v && rf.image(u2) == v2
    })
}

/// Paths starting with a square-free `f`-edge and avoiding other `f`-edges must carry
/// every label strictly between `f` and the label of the last edge. Returns the first
/// counterexample as `(edge, path vertices, last label)`.
pub fn path_label_violation(s: &Sggi) -> Option<((usize, usize, usize), Vec<usize>, usize)> {
    let n = s.degree();
    let gens = s.gens();
    for (f, g) in gens.iter().enumerate() {
        for (u, v) in g.transpositions() {
            if in_alternating_square(s, u, v, f) {
                continue;
            }
            for (x0, x1) in [(u, v), (v, u)] {
                let mut visited = vec![false; n];
                visited[x0] = true;
                visited[x1] = true;
                let mut path = vec![x0, x1];
                if let Some((p, l)) = walk(gens, f, 1u64 << f, &mut visited, &mut path) {
                    return Some(((u, v, f), p, l));
                }
            }
        }
    }
    None
}

fn between_ok(mask: u64, f: usize, l: usize) -> bool {
    let (lo, hi) = if l < f { (l, f) } else { (f, l) };
    (lo + 1..hi).all(|k| mask >> k & 1 == 1)
}

fn walk(
    gens: &[Permutation],
    f: usize,
    mask: u64,
    visited: &mut [bool],
    path: &mut Vec<usize>,
) -> Option<(Vec<usize>, usize)> {
    let x = *path.last().unwrap();
    for (l, g) in gens.iter().enumerate() {
        let y = g.image(x);
        if l == f || y == x || visited[y] {
            continue;
        }
        let m = mask | 1 << l;
        path.push(y);
        if !between_ok(m, f, l) {
            return Some((path.clone(), l));
        }
        visited[y] = true;
        let res = walk(gens, f, m, visited, path);
        visited[y] = false;
        path.pop();
        if res.is_some() {
            return res;
        }
    }
    None
}

fn is_interval(v: &[usize]) -> bool {
    v.is_empty() || v.windows(2).all(|w| w[1] == w[0] + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn skip(name: &'static str) -> Self {
        PropertyCheck { name, applicable: false, holds: true, detail: String::new() }
    }

    fn result(name: &'static str, holds: bool, detail: String) -> Self {
        PropertyCheck { name, applicable: true, holds, detail }
    }
}

pub const PATH_LABEL_MAX_DEGREE: usize = 14;

/// Structural predicates; each applies only under its own hypotheses.
/// `independent` is passed in because it is the expensive part.
pub fn check_properties(s: &Sggi, independent: bool) -> Vec<PropertyCheck> {
    let n = s.degree();
    let r = s.len();
    let transitive = s.is_transitive();
    let even = s.all_even();
    let mut out = Vec::new();
    let sa = match find_splits(s) {
        Ok(sa) => sa,
        Err(_) => {
            for name in ALL_CHECKS {
                out.push(PropertyCheck::skip(name));
            }
            return out;
        }
    };
    let fg = fracture_graph(s).unwrap();
    out.push(PropertyCheck::result(
        "fracture-forest",
        fg.edges().len() == r && fg.is_forest(),
        format!("{} edges", fg.edges().len()),
    ));

    if transitive && independent && sa.has_two_fracture {
        out.push(PropertyCheck::result("two-fracture-rank", 2 * r <= n, format!("r={r} n={n}")));
    } else {
        out.push(PropertyCheck::skip("two-fracture-rank"));
    }

    if transitive && sa.perfect_count > 0 {
        out.push(PropertyCheck::result("perfect-split-primitive", is_primitive(&s.group()), String::new()));
    } else {
        out.push(PropertyCheck::skip("perfect-split-primitive"));
    }

    let base = transitive && even && independent && !sa.has_two_fracture;
    let hyp_perfect = base && sa.perfect_count == sa.split_count;
    let perfect_labels: Vec<usize> = sa.splits.iter().filter(|sp| sp.is_perfect()).map(|sp| sp.label).collect();
    let s_count = sa.split_count;
    if hyp_perfect {
        let bad: Vec<usize> =
            perfect_labels.iter().copied().filter(|&l| l == 1 || (r >= 2 && l == r - 2)).collect();
        out.push(PropertyCheck::result("perfect-label-ends", bad.is_empty(), format!("{bad:?}")));
        let four = perfect_labels.windows(4).any(|w| w[3] == w[0] + 3);
        out.push(PropertyCheck::result("no-four-consecutive", !four, format!("{perfect_labels:?}")));
        out.push(PropertyCheck::result("split-count", 3 * s_count <= 2 * r, format!("s={s_count} r={r}")));
        out.push(PropertyCheck::result(
            "perfect-rank",
            4 * r + 2 <= 2 * n + s_count && r <= 3 * (n - 1) / 5,
            format!("r={r} n={n} s={s_count}"),
        ));
    } else {
        for name in ["perfect-label-ends", "no-four-consecutive", "split-count", "perfect-rank"] {
            out.push(PropertyCheck::skip(name));
        }
    }

    let non_perfect: Vec<&Split> = sa.splits.iter().filter(|sp| !sp.is_perfect()).collect();
    if base && !non_perfect.is_empty() {
        let mut interval_ok = true;
        let mut both_ok = true;
        let mut detail = Vec::new();
        for sp in &non_perfect {
            let pa = is_primitive(&sp.action_a);
            let pb = is_primitive(&sp.action_b);
            if (pa && !is_interval(&sp.j_a)) || (pb && !is_interval(&sp.j_b)) {
                interval_ok = false;
                detail.push(format!("label {}: J_A={:?} J_B={:?}", sp.label, sp.j_a, sp.j_b));
            }
            if !pa && !pb && 2 * r + 1 > n {
                both_ok = false;
            }
        }
        out.push(PropertyCheck::result("interval", interval_ok, detail.join("; ")));
        out.push(PropertyCheck::result("both-imprimitive-rank", both_ok, format!("r={r} n={n}")));
        if n <= PATH_LABEL_MAX_DEGREE {
            let v = path_label_violation(s);
            out.push(PropertyCheck::result("path-labels", v.is_none(), format!("{v:?}")));
        } else {
            out.push(PropertyCheck::skip("path-labels"));
        }
    } else {
        for name in ["interval", "both-imprimitive-rank", "path-labels"] {
            out.push(PropertyCheck::skip(name));
        }
    }
    out
}

pub const ALL_CHECKS: [&str; 10] = [
    "fracture-forest",
    "two-fracture-rank",
    "perfect-split-primitive",
    "perfect-label-ends",
    "no-four-consecutive",
    "split-count",
    "perfect-rank",
    "interval",
    "both-imprimitive-rank",
    "path-labels",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alt_family, coxeter_s4, klein, witness, FamilySpec, Table};

    fn path0101() -> Sggi {
        witness(&FamilySpec::new(Table::TwoFracture, "4", Some(2))).unwrap()
    }

    #[test]
    fn crossing_examples() {
        let cd = crossing_data(&coxeter_s4()).unwrap();
        assert_eq!(cd.per_label[1], vec![(1, 2)]);
        assert!(matches!(crossing_data(&klein()), Err(Error::NoFracture { label: 0 })));
        let cd = crossing_data(&path0101()).unwrap();
        assert_eq!(cd.per_label[0].len(), 2);
        assert_eq!(cd.per_label[1].len(), 2);
    }

    #[test]
    fn two_fracture_examples() {
        let tf = two_fracture(&path0101()).unwrap().unwrap();
        assert_eq!(tf.edges().len(), 4);
        assert!(two_fracture(&coxeter_s4()).unwrap().is_none());
        let ladder = witness(&FamilySpec::new(Table::TwoFracture, "1", Some(3))).unwrap();
        let tf = two_fracture(&ladder).unwrap().unwrap();
        assert_eq!(tf.components().len(), 1);
    }

    #[test]
    fn split_examples() {
        let sa = find_splits(&coxeter_s4()).unwrap();
        assert_eq!(sa.splits.iter().map(|s| s.label).collect::<Vec<_>>(), vec![0, 1, 2]);
        let one = &sa.splits[1];
        assert_eq!(one.edge, (1, 2));
        assert_eq!(one.perfect, Some(Orientation::LowOnA));
        assert_eq!(one.j_a, vec![0]);
        assert_eq!(one.j_b, vec![2]);
        assert_eq!(sa.x_sets[0], vec![1, 2, 3]);
        assert_eq!(sa.y_sets[0], Vec::<usize>::new());
        assert!(sa.x_sets[2].is_empty());
        assert_eq!(find_splits(&path0101()).unwrap().split_count, 0);
    }

    #[test]
    fn profiles() {
        assert_eq!(hypothesis_profile(&klein()).class, Classification::NoFracture);
        let p = hypothesis_profile(&coxeter_s4());
        assert_eq!(p.class, Classification::AllSplitsPerfect);
        assert!(!p.even);
        assert_eq!(hypothesis_profile(&path0101()).class, Classification::HasTwoFracture);
    }

    #[test]
    fn squares_and_paths() {
        let ladder = witness(&FamilySpec::new(Table::TwoFracture, "1", Some(3))).unwrap();
        // rung {0,3} and rail {0,1} lie on the square 0-1-4-3
        assert!(in_alternating_square(&ladder, 0, 3, 0));
        assert!(!in_alternating_square(&coxeter_s4(), 1, 2, 1));
        assert!(path_label_violation(&coxeter_s4()).is_none());
    }

    #[test]
    fn family_checks_hold() {
        for n in [10, 11, 14] {
            let s = alt_family(n).unwrap();
            for c in check_properties(&s, true) {
                assert!(c.holds, "n={n} {}: {}", c.name, c.detail);
            }
        }
    }
}
