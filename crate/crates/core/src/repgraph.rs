use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::perm::{orbits_unchecked, Permutation};
use crate::sggi::Sggi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
}

/// Edge-labelled multigraph on `n` vertices; label `i` edges are the 2-cycles of `ρ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepGraph {
    pub n: usize,
    pub r: usize,
    edges: Vec<Edge>,
}

const PALETTE: [&str; 12] = [
    "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold3", "gray40", "navy",
    "olivedrab",
];

impl RepGraph {
    /// Checks loops, label range, duplicates and the per-label matching condition.
    pub fn new(n: usize, r: usize, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        let mut used = HashSet::new();
        let mut seen = HashSet::new();
        for (a, b, label) in edges {
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::PointOutOfRange { point: v, degree: n });
            }
            if label >= r {
                return Err(Error::LabelOutOfRange { label, r });
            }
            if !seen.insert((u, v, label)) {
                return Err(Error::DuplicateEdge { u, v, label });
            }
            for x in [u, v] {
                if !used.insert((x, label)) {
                    return Err(Error::MatchingViolation { vertex: x, label });
                }
            }
            out.push(Edge { u, v, label });
        }
        out.sort();
        Ok(RepGraph { n, r, edges: out })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_with_label(&self, label: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.label == label)
    }

    pub fn label_count(&self, label: usize) -> usize {
        self.edges_with_label(label).count()
    }

    pub fn is_connected(&self) -> bool {
        let gens: Vec<Permutation> = (0..self.r).map(|i| self.label_perm(i)).collect();
        orbits_unchecked(&gens, self.n).len() == 1
    }

    fn label_perm(&self, label: usize) -> Permutation {
        let pairs: Vec<(usize, usize)> = self.edges_with_label(label).map(|e| (e.u, e.v)).collect();
        Permutation::from_pairs(self.n, &pairs).unwrap()
    }

    /// Vertex relabelling `x -> map[x]`, and label relabelling `l -> labels[l]`.
    pub fn relabel(&self, map: &[usize], labels: &[usize]) -> Result<RepGraph> {
        let r = labels.iter().max().map_or(0, |m| m + 1).max(self.r);
        RepGraph::new(self.n, r, self.edges.iter().map(|e| (map[e.u], map[e.v], labels[e.label])).collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph {} {}\n", self.n, self.r);
        for e in &self.edges {
            writeln!(s, "{} {} {}", e.u + 1, e.v + 1, e.label).unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n  node [shape=circle];\n");
        for x in 0..self.n {
            writeln!(s, "  {};", x + 1).unwrap();
        }
        for e in &self.edges {
            writeln!(
                s,
                "  {} -- {} [label=\"{}\", color=\"{}\"];",
                e.u + 1,
                e.v + 1,
                e.label,
                PALETTE[e.label % PALETTE.len()]
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

pub fn parse_graph(text: &str) -> Result<RepGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    let (hl, header) = lines.next().ok_or_else(|| bad(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "graph" {
        return Err(bad(hl, "header must be 'graph n r'"));
    }
    let n: usize = toks[1].parse().map_err(|_| bad(hl, "bad vertex count"))?;
    let r: usize = toks[2].parse().map_err(|_| bad(hl, "bad label count"))?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let t: Vec<usize> = l
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| bad(ln, &format!("bad token '{x}'"))))
            .collect::<Result<_>>()?;
        if t.len() != 3 {
            return Err(bad(ln, "edge must be 'u v label'"));
        }
        if t[0] == 0 || t[1] == 0 || t[0] > n || t[1] > n {
            return Err(Error::PointOutOfRange { point: t[0].max(t[1]), degree: n });
        }
        if t[0] >= t[1] {
            if t[0] == t[1] {
                return Err(Error::LoopEdge(t[0]));
            }
            return Err(bad(ln, "edge must satisfy u < v"));
        }
        edges.push((t[0] - 1, t[1] - 1, t[2]));
    }
    RepGraph::new(n, r, edges)
}

pub fn to_graph(s: &Sggi) -> RepGraph {
    let mut edges = Vec::new();
    for (i, g) in s.gens().iter().enumerate() {
        for (a, b) in g.transpositions() {
            edges.push((a, b, i));
        }
    }
    RepGraph::new(s.degree(), s.len(), edges).expect("involutions give matchings")
}

/// Reads off the involutions; every label must be used and the string condition must hold.
pub fn from_graph(g: &RepGraph) -> Result<Sggi> {
    let mut gens = Vec::with_capacity(g.r);
    for i in 0..g.r {
        if g.label_count(i) == 0 {
            return Err(Error::EmptyLabel(i));
        }
        gens.push(g.label_perm(i));
    }
    Sggi::new(g.n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Sggi {
        Sggi::parse("4 3\n(1 2)(3 4)\n(1 3)(2 4)\n(1 4)(2 3)\n").unwrap()
    }

    #[test]
    fn klein_is_k4() {
        let g = to_graph(&klein());
        assert_eq!(g.edges().len(), 6);
        let pairs: HashSet<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs.len(), 6);
        assert_eq!(from_graph(&g).unwrap(), klein());
    }

    #[test]
    fn coxeter_is_a_path() {
        let s = Sggi::parse("4 3\n(1 2)\n(2 3)\n(3 4)\n").unwrap();
        assert_eq!(to_graph(&s).to_text(), "graph 4 3\n1 2 0\n2 3 1\n3 4 2\n");
    }

    #[test]
    fn single_generator() {
        let s = Sggi::parse("4 1\n(1 2)(3 4)\n").unwrap();
        let g = to_graph(&s);
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, label: 0 }, Edge { u: 2, v: 3, label: 0 }]);
    }

    #[test]
    fn path_0101() {
        let g = RepGraph::new(5, 2, vec![(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 4, 1)]).unwrap();
        let s = from_graph(&g).unwrap();
        assert_eq!(s.to_text(), "5 2\n(1 2)(3 4)\n(2 3)(4 5)\n");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            RepGraph::new(3, 1, vec![(0, 1, 0), (1, 2, 0)]),
            Err(Error::MatchingViolation { vertex: 1, label: 0 })
        ));
        assert!(matches!(parse_graph("graph 6 1\n5 5 0\n"), Err(Error::LoopEdge(5))));
        assert!(parse_graph("graph 3 1\n1 2 1\n").is_err());
        assert!(parse_graph("graph 3 2\n1 2 0\n1 2 0\n").is_err());
        assert!(matches!(from_graph(&RepGraph::new(3, 2, vec![(0, 1, 0)]).unwrap()), Err(Error::EmptyLabel(1))));
    }

    #[test]
    fn text_and_dot() {
        let g = to_graph(&klein());
        let t = g.to_text();
        assert_eq!(parse_graph(&t).unwrap(), g);
        assert_eq!(parse_graph(&t).unwrap().to_text(), t);
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 6);
        for l in 0..3 {
            assert!(dot.contains(&format!("label=\"{l}\"")));
        }
    }
}
