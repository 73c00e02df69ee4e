use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 255;

/// Permutation of `{0, .., n-1}` stored as its image list.
///
/// Products act on the right: `a.compose(&b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::BadDegree(n));
    }
    Ok(())
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        Permutation { images: (0..n).map(|i| i as u8).collect() }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.iter().map(|&x| x as u8).collect() })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        check_degree(n)?;
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for &x in c {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if used[x] {
                    return Err(Error::NotBijection);
                }
                used[x] = true;
            }
            for (i, &x) in c.iter().enumerate() {
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Involution given by disjoint pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let cycles: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g^-1 * self * g`; maps `a^g` to `(a^self)^g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.degree()];
        for (a, &b) in self.images.iter().enumerate() {
            out[g.images[a] as usize] = g.images[b as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.squares_to_identity()
    }

    pub fn squares_to_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| self.images[x as usize] as usize == i)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    pub fn moves(&self, x: usize) -> bool {
        self.images[x] as usize != x
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.moves(i)).collect()
    }

    /// Non-trivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || !self.moves(start) {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.image(x);
            }
            out.push(c);
        }
        out
    }

    /// 2-cycles `(a, b)` with `a < b`, sorted.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        (0..self.degree())
            .filter_map(|a| {
                let b = self.image(a);
                (a < b && self.image(b) == a).then_some((a, b))
            })
            .collect()
    }

    pub fn parity(&self) -> Parity {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut swaps = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            swaps += len - 1;
        }
        if swaps % 2 == 0 { Parity::Even } else { Parity::Odd }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)` or `()`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        check_degree(n)?;
        let err = |msg: &str| Error::Parse { line: 0, msg: msg.to_string() };
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let body = &rest[1..close];
            let mut c = Vec::new();
            for tok in body.split(|ch: char| ch.is_whitespace() || ch == ',').filter(|t| !t.is_empty()) {
                let v: usize = tok.parse().map_err(|_| err(&format!("bad point '{tok}'")))?;
                if v == 0 || v > n {
                    return Err(Error::PointOutOfRange { point: v, degree: n });
                }
                c.push(v - 1);
            }
            if c.len() > 1 {
                cycles.push(c);
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    /// 1-based cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".to_string();
        }
        cs.iter().map(|c| format!("({})", c.iter().map(|x| x + 1).join(" "))).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.to_cycle_string(), self.degree())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Orbits of `gens` on `{0, .., n-1}`, each sorted, ordered by least element.
pub fn orbits(gens: &[Permutation], n: usize) -> Result<Vec<Vec<usize>>> {
    for g in gens {
        if g.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
        }
    }
    Ok(orbits_unchecked(gens, n))
}

pub(crate) fn orbits_unchecked(gens: &[Permutation], n: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orb = vec![start];
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for g in gens {
                let y = g.image(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// Orbit index of every point.
pub(crate) fn orbit_labels(gens: &[Permutation], n: usize) -> Vec<usize> {
    let mut lab = vec![0; n];
    for (i, o) in orbits_unchecked(gens, n).iter().enumerate() {
        for &x in o {
            lab[x] = i;
        }
    }
    lab
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn parity_basics() {
        assert_eq!(Permutation::identity(4).parity(), Parity::Even);
        assert_eq!(p(2, "(1 2)").parity(), Parity::Odd);
        assert_eq!(p(4, "(1 2)(3 4)").parity(), Parity::Even);
        assert_eq!(p(5, "(1 2 3 4 5)").parity(), Parity::Even);
    }

    #[test]
    fn orbits_basics() {
        assert_eq!(orbits(&[], 3).unwrap(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(orbits(&[p(4, "(1 2)(3 4)")], 4).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(orbits(&[p(4, "(1 2)"), p(4, "(3 4)")], 4).unwrap(), vec![vec![0, 1], vec![2, 3]]);
        assert!(orbits(&[p(3, "(1 2)")], 4).is_err());
    }

    #[test]
    fn compose_acts_on_the_right() {
        let a = p(3, "(1 2)");
        let b = p(3, "(2 3)");
        // 0 -> 1 under a, then 1 -> 2 under b
        assert_eq!(a.compose(&b).image(0), 2);
        assert_eq!(a.compose(&b), p(3, "(1 3 2)"));
    }

    #[test]
    fn conjugation() {
        let x = p(4, "(1 2)");
        let g = p(4, "(2 3 4)");
        assert_eq!(x.conjugate_by(&g), p(4, "(1 3)"));
        assert_eq!(x.conjugate_by(&g), g.inverse().compose(&x).compose(&g));
    }

    #[test]
    fn cycle_text_round_trip() {
        let q = p(6, " ( 1 3 ) (2 5 6)");
        assert_eq!(q.to_cycle_string(), "(1 3)(2 5 6)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p(3, "()"), Permutation::identity(3));
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
    }

    #[test]
    fn involution_checks() {
        assert!(p(4, "(1 2)(3 4)").is_involution());
        assert!(!Permutation::identity(4).is_involution());
        assert!(!p(3, "(1 2 3)").is_involution());
        assert_eq!(p(4, "(1 2)(3 4)").transpositions(), vec![(0, 1), (2, 3)]);
        assert_eq!(p(6, "(1 2 3)(4 5)").order(), 6);
    }
}
