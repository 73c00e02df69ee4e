use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::repgraph::{from_graph, RepGraph};
use crate::sggi::Sggi;

/// Incremental edge list with fresh vertex allocation.
struct Builder {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { n: 0, edges: Vec::new() }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn vertices(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.vertex()).collect()
    }

    fn edge(&mut self, a: usize, b: usize, label: usize) {
        self.edges.push((a, b, label));
    }

    /// Lays a path along `word`; each entry lists the labels of one edge.
    fn path(&mut self, word: &[Vec<usize>]) -> Vec<usize> {
        let vs = self.vertices(word.len() + 1);
        for (p, labels) in word.iter().enumerate() {
            for &l in labels {
                self.edge(vs[p], vs[p + 1], l);
            }
        }
        vs
    }

    fn finish(self, r: usize) -> Result<RepGraph> {
        RepGraph::new(self.n, r, self.edges)
    }
}

fn single(labels: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    labels.into_iter().map(|l| vec![l]).collect()
}

/// `k, k+1, k, k+1` for `k = 0, 2, .., last`.
fn pair_blocks(last: Option<usize>) -> Vec<Vec<usize>> {
    let mut w = Vec::new();
    if let Some(last) = last {
        for k in (0..=last).step_by(2) {
            w.extend(single([k, k + 1, k, k + 1]));
        }
    }
    w
}

fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub fn table1_min(n: usize) -> usize {
    [10, 11, 22, 18, 14][n % 5]
}

/// Label word of the extremal path for `Alt(n)`; the last label is `rank - 1`.
pub fn table1_word(n: usize) -> Result<Vec<Vec<usize>>> {
    if n < table1_min(n) {
        return Err(param(format!("n = {n} is below the minimum {} for n ≡ {} (mod 5)", table1_min(n), n % 5)));
    }
    let prefix_pairs = [1, 0, 4, 3, 2][n % 5];
    let mut w = Vec::new();
    for p in 0..prefix_pairs {
        w.extend(single([2 * p, 2 * p + 1, 2 * p, 2 * p + 1]));
    }
    let mut k = 2 * prefix_pairs;
    while w.len() < n - 1 {
        w.push(vec![k]);
        w.push(vec![k + 1]);
        w.push(vec![k, k + 2]);
        w.push(vec![k + 1]);
        w.push(vec![k + 2]);
        k += 3;
    }
    debug_assert_eq!(w.len(), n - 1);
    Ok(w)
}

pub fn table1_graph(n: usize) -> Result<RepGraph> {
    let w = table1_word(n)?;
    let r = w.iter().flatten().max().unwrap() + 1;
    let mut b = Builder::new();
    b.path(&w);
    b.finish(r)
}

/// Extremal path string for `Alt(n)`.
pub fn alt_family(n: usize) -> Result<Sggi> {
    from_graph(&table1_graph(n)?)
}

pub fn table1_rank(n: usize) -> usize {
    if matches!(n % 5, 2 | 3) {
        (3 * n - 8) / 5
    } else {
        3 * (n - 1) / 5
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table {
    /// Graphs of strings with a 2-fracture graph, rows 1..=18.
    TwoFracture,
    /// Rows A, B, C around a non-perfect split.
    SplitLow,
    /// Label-reversed counterparts A', B', C'.
    SplitHigh,
}

impl FromStr for Table {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(Table::TwoFracture),
            "3" => Ok(Table::SplitLow),
            "4" => Ok(Table::SplitHigh),
            _ => Err(param(format!("unknown table '{s}' (expected 2, 3 or 4)"))),
        }
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self {
            Table::TwoFracture => 2,
            Table::SplitLow => 3,
            Table::SplitHigh => 4,
        };
        write!(f, "{t}")
    }
}

/// A row of one of the witness tables with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub table: Table,
    /// `1..=18` for table 2; `A`, `B`, `C` for tables 3 and 4.
    pub row: String,
    pub rank: Option<usize>,
    pub i: Option<usize>,
    pub k: Option<usize>,
}

impl FamilySpec {
    pub fn new(table: Table, row: &str, rank: Option<usize>) -> Self {
        FamilySpec { table, row: row.trim_end_matches('\'').to_uppercase(), rank, i: None, k: None }
    }

    pub fn with_i(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn id(&self) -> String {
        let mut s = format!("T{}:{}", self.table, self.row);
        if self.table == Table::SplitHigh {
            s.push('\'');
        }
        if let Some(r) = self.rank {
            s += &format!(" r={r}");
        }
        if let Some(i) = self.i {
            s += &format!(" i={i}");
        }
        if let Some(k) = self.k {
            s += &format!(" k={k}");
        }
        s
    }
}

pub fn witness_graph(spec: &FamilySpec) -> Result<RepGraph> {
    match spec.table {
        Table::TwoFracture => {
            let row: usize = spec.row.parse().map_err(|_| param(format!("bad row '{}'", spec.row)))?;
            two_fracture_row(row, spec.rank, spec.i)
        }
        Table::SplitLow => split_row(&spec.row, spec.rank, spec.k),
        Table::SplitHigh => {
            let g = split_row(&spec.row, spec.rank, spec.k)?;
            let r = g.r;
            let labels: Vec<usize> = (0..r).map(|l| r - 1 - l).collect();
            g.relabel(&(0..g.n).collect::<Vec<_>>(), &labels)
        }
    }
}

pub fn witness(spec: &FamilySpec) -> Result<Sggi> {
    from_graph(&witness_graph(spec)?)
}

fn need(rank: Option<usize>) -> Result<usize> {
    rank.ok_or_else(|| param("this row needs --rank"))
}

fn two_fracture_row(row: usize, rank: Option<usize>, i: Option<usize>) -> Result<RepGraph> {
    let mut b = Builder::new();
    let r = match row {
        1 | 2 => {
            let r = need(rank)?;
            let min = if row == 1 { 2 } else { 3 };
            if r < min {
                return Err(param(format!("row {row} needs r >= {min}")));
            }
            let top = b.vertices(r);
            let bot = b.vertices(r);
            for k in 1..r {
                b.edge(top[k - 1], top[k], k);
                b.edge(bot[k - 1], bot[k], k);
            }
            let first = if row == 1 { 0 } else { 1 };
            for c in first..r {
                b.edge(top[c], bot[c], 0);
            }
            r
        }
        3 | 5 | 6 => {
            let r = need(rank)?;
            if r < 3 {
                return Err(param(format!("row {row} needs r >= 3")));
            }
            let mid = match row {
                3 => vec![2, 0],
                5 => vec![0],
                _ => vec![2],
            };
            let mut w = vec![vec![1], mid, vec![1]];
            w.extend(single(2..r));
            let top = b.path(&w);
            let bot: Vec<usize> = (0..top.len()).map(|c| if c >= 3 { b.vertex() } else { usize::MAX }).collect();
            for k in 2..r {
                b.edge(bot[k + 1], bot[k + 2], k);
            }
            for c in 3..top.len() {
                b.edge(top[c], bot[c], 0);
            }
            r
        }
        4 => {
            let r = need(rank)?;
            if r < 2 || r % 2 == 1 {
                return Err(param("row 4 needs an even r >= 2"));
            }
            b.path(&pair_blocks(Some(r - 2)));
            r
        }
        7 => {
            let r = need(rank)?;
            let i = i.ok_or_else(|| param("row 7 needs --i"))?;
            if r < 4 || i < 2 || i > r - 2 {
                return Err(param("row 7 needs r >= 4 and 2 <= i <= r-2"));
            }
            let top = b.path(&single(0..r));
            let left = b.vertices(i);
            for k in 0..i.saturating_sub(1) {
                b.edge(left[k], left[k + 1], k);
            }
            for c in 0..i {
                b.edge(top[c], left[c], i);
            }
            let right: Vec<usize> = (0..=r).map(|c| if c > i { b.vertex() } else { usize::MAX }).collect();
            for c in i + 1..r {
                b.edge(right[c], right[c + 1], c);
            }
            for c in i + 1..=r {
                b.edge(top[c], right[c], i - 1);
            }
            r
        }
        8 => {
            let r = need(rank)?;
            let i = i.ok_or_else(|| param("row 8 needs --i"))?;
            if i < 3 || i % 2 == 0 || i > r - 1 {
                return Err(param("row 8 needs an odd i with 3 <= i <= r-1"));
            }
            let mut w = pair_blocks(Some(i - 3));
            w.extend(single(i - 1..r));
            let top = b.path(&w);
            let x = top.len() - 1 - (r - i);
            let bot = b.vertices(r - i + 1);
            for m in 0..r - i {
                b.edge(bot[m], bot[m + 1], i + m);
            }
            for m in 1..=r - i {
                b.edge(top[x + m], bot[m], i - 1);
            }
            r
        }
        9 | 10 => {
            let r = need(rank)?;
            if r < 3 || r % 2 == 0 {
                return Err(param(format!("row {row} needs an odd r >= 3")));
            }
            let mut w = pair_blocks(if r >= 5 { Some(r - 5) } else { None });
            w.extend(single([r - 3, r - 2, r - 1]));
            if row == 10 {
                w.push(vec![r - 2]);
            }
            let top = b.path(&w);
            let t = top.len();
            if row == 9 {
                let bot = b.vertices(3);
                b.edge(bot[0], bot[1], r - 1);
                b.edge(bot[1], bot[2], r - 2);
                b.edge(top[t - 2], bot[0], r - 3);
                b.edge(top[t - 1], bot[1], r - 3);
            } else {
                let bot = b.vertices(2);
                b.edge(bot[0], bot[1], r - 1);
                b.edge(top[t - 3], bot[0], r - 3);
                b.edge(top[t - 2], bot[1], r - 3);
            }
            r
        }
        11 => {
            let r = need(rank)?;
            if r < 3 {
                return Err(param("row 11 needs r >= 3"));
            }
            let top = b.path(&single(0..r));
            let bot: Vec<usize> = (0..=r).map(|c| if c >= 1 { b.vertex() } else { usize::MAX }).collect();
            for c in 1..r {
                b.edge(bot[c], bot[c + 1], c);
            }
            for c in 2..=r {
                b.edge(top[c], bot[c], 0);
            }
            r
        }
        12..=18 => {
            if rank.is_some_and(|r| r != 3) {
                return Err(param(format!("row {row} has rank 3 only")));
            }
            fixed_row(&mut b, row);
            3
        }
        _ => return Err(param(format!("row {row} does not exist"))),
    };
    b.finish(r)
}

fn fixed_row(b: &mut Builder, row: usize) {
    // top vertices t0.., bottom vertices aligned under top columns
    let (top, bottom, edges): (usize, &[usize], &[(char, usize, char, usize, usize)]) = match row {
        12 => (4, &[1, 2, 3], &[
            ('t', 0, 't', 1, 2), ('t', 0, 't', 1, 0), ('t', 1, 't', 2, 1), ('t', 2, 't', 3, 2),
            ('b', 1, 'b', 2, 1), ('b', 2, 'b', 3, 2), ('t', 2, 'b', 2, 0), ('t', 3, 'b', 3, 0),
        ]),
        13 => (4, &[2, 3, 4], &[
            ('t', 0, 't', 1, 2), ('t', 0, 't', 1, 0), ('t', 1, 't', 2, 1), ('t', 2, 't', 3, 2),
            ('b', 2, 'b', 3, 2), ('t', 2, 'b', 2, 0), ('t', 3, 'b', 3, 0), ('b', 3, 'b', 4, 1),
        ]),
        14 => (5, &[2, 3], &[
            ('t', 0, 't', 1, 2), ('t', 0, 't', 1, 0), ('t', 1, 't', 2, 1), ('t', 2, 't', 3, 2),
            ('t', 3, 't', 4, 1), ('b', 2, 'b', 3, 2), ('t', 2, 'b', 2, 0), ('t', 3, 'b', 3, 0),
        ]),
        15 => (4, &[1, 2, 3], &[
            ('t', 0, 't', 1, 1), ('t', 1, 't', 2, 0), ('t', 2, 't', 3, 1),
            ('b', 1, 'b', 2, 0), ('b', 2, 'b', 3, 1), ('t', 1, 'b', 1, 2), ('t', 2, 'b', 2, 2),
        ]),
        16 => (5, &[3, 4], &[
            ('t', 0, 't', 1, 1), ('t', 1, 't', 2, 2), ('t', 2, 't', 3, 1), ('t', 3, 't', 4, 2),
            ('b', 3, 'b', 4, 2), ('t', 3, 'b', 3, 0), ('t', 4, 'b', 4, 0),
        ]),
        17 => (4, &[2, 3, 4], &[
            ('t', 0, 't', 1, 0), ('t', 1, 't', 2, 1), ('t', 2, 't', 3, 2),
            ('b', 2, 'b', 3, 2), ('t', 2, 'b', 2, 0), ('t', 3, 'b', 3, 0), ('b', 3, 'b', 4, 1),
        ]),
        _ => (5, &[2, 3], &[
            ('t', 0, 't', 1, 0), ('t', 1, 't', 2, 1), ('t', 2, 't', 3, 2), ('t', 3, 't', 4, 1),
            ('b', 2, 'b', 3, 2), ('t', 2, 'b', 2, 0), ('t', 3, 'b', 3, 0),
        ]),
    };
    let t = b.vertices(top);
    let bv = b.vertices(bottom.len());
    let at = |side: char, col: usize| -> usize {
        if side == 't' {
            t[col]
        } else {
            bv[bottom.iter().position(|&c| c == col).unwrap()]
        }
    };
    for &(s1, c1, s2, c2, l) in edges {
        let (x, y) = (at(s1, c1), at(s2, c2));
        b.edge(x, y, l);
    }
}

fn split_row(row: &str, rank: Option<usize>, k: Option<usize>) -> Result<RepGraph> {
    let r = need(rank)?;
    let mut b = Builder::new();
    match row {
        "A" => {
            if r < 2 {
                return Err(param("row A needs r >= 2"));
            }
            let h = r - 1;
            let mut w = single((1..=h).rev());
            w.push(vec![0]);
            w.extend(single(1..=h));
            b.path(&w);
        }
        "B" | "C" => {
            let i = r.checked_sub(2).filter(|&i| i >= 1).ok_or_else(|| param("rows B, C need r >= 3"))?;
            let kk = if row == "B" {
                let k = k.ok_or_else(|| param("row B needs --k"))?;
                if !(1 < k && k < i) {
                    return Err(param("row B needs 1 < k < r-2"));
                }
                Some(k)
            } else {
                None
            };
            let mut w = single(0..i);
            w.push(vec![i]);
            w.push(vec![i + 1]);
            let top = b.path(&w);
            let bot = b.path(&single(0..i));
            for c in 0..=i {
                b.edge(top[c], bot[c], i + 1);
            }
            if let Some(k) = kk {
                for c in 0..k {
                    b.edge(top[c], bot[c], k);
                }
            }
        }
        _ => return Err(param(format!("row '{row}' does not exist (expected A, B or C)"))),
    }
    b.finish(r)
}

/// Every parametrized witness with rank at most `max_rank`.
pub fn witness_corpus(max_rank: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    let t2 = |row: usize, r: usize| FamilySpec::new(Table::TwoFracture, &row.to_string(), Some(r));
    for r in 2..=max_rank {
        for row in [1, 2, 3, 4, 5, 6, 9, 10, 11] {
            out.push(t2(row, r));
        }
        for i in 1..r {
            out.push(t2(7, r).with_i(i));
            out.push(t2(8, r).with_i(i));
        }
        for table in [Table::SplitLow, Table::SplitHigh] {
            out.push(FamilySpec::new(table, "A", Some(r)));
            out.push(FamilySpec::new(table, "C", Some(r)));
            for k in 0..r {
                out.push(FamilySpec::new(table, "B", Some(r)).with_k(k));
            }
        }
    }
    for row in 12..=18 {
        out.push(FamilySpec::new(Table::TwoFracture, &row.to_string(), None));
    }
    out.retain(|s| witness_graph(s).is_ok());
    out
}
