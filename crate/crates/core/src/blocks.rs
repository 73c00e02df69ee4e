use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Partition of the domain into blocks of equal size, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub degree: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        let mut which = vec![0; self.degree];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                which[x] = i;
            }
        }
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let t = which[g.image(b[0])];
                b.iter().all(|&x| which[g.image(x)] == t)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    Blocks(BlockSystem),
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest block system in which `a` and `b` share a block.
pub fn block_system_joining(gens: &[Permutation], n: usize, a: usize, b: usize) -> BlockSystem {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = Vec::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        parent[rb] = ra;
        queue.push((a, b));
    }
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.image(x), g.image(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[ry] = rx;
                queue.push((gx, gy));
            }
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if index[r] == usize::MAX {
            index[r] = cells.len();
            cells.push(Vec::new());
        }
        cells[index[r]].push(x);
    }
    BlockSystem { degree: n, blocks: cells }
}

/// Smallest non-trivial block system; ties go to the lexicographically least block of 0.
pub fn minimal_block_system(g: &PermGroup) -> Result<Primitivity> {
    let n = g.degree();
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let mut best: Option<BlockSystem> = None;
    for b in 1..n {
        let sys = block_system_joining(g.generators(), n, 0, b);
        if sys.blocks.len() == 1 {
            continue;
        }
        let better = match &best {
            None => true,
            Some(cur) => {
                (sys.block_size(), &sys.blocks[0]) < (cur.block_size(), &cur.blocks[0])
            }
        };
        if better {
            best = Some(sys);
        }
    }
    Ok(match best {
        None => Primitivity::Primitive,
        Some(s) => Primitivity::Blocks(s),
    })
}

pub fn is_primitive(g: &PermGroup) -> bool {
    matches!(minimal_block_system(g), Ok(Primitivity::Primitive))
}
