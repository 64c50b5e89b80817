use std::collections::{HashMap, HashSet};

use super::semigroup::{Elem, FiniteSemigroup};
use crate::error::{Error, Result};

/// Default size bound for congruence enumeration.
pub const DEFAULT_CONGRUENCE_BOUND: usize = 12;

/// Hard cap on the number of congruences produced by one enumeration.
pub const MAX_CONGRUENCES: usize = 200_000;

/// Partition of the element ids. Blocks are numbered by their smallest
/// member, so two equal partitions have equal `block_of` vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    block_of: Vec<usize>,
    blocks: Vec<Vec<Elem>>,
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renum: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<Elem>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            let b = *renum.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            block_of[x] = b;
            blocks[b].push(x);
        }
        Congruence { block_of, blocks }
    }

    /// Builds a partition from explicit blocks; compatibility with a law is
    /// checked separately by [`Congruence::validate`].
    pub fn from_blocks(size: usize, blocks: Vec<Vec<Elem>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidCongruence(format!("block {b} is empty")));
            }
            for &x in block {
                if x >= size {
                    return Err(Error::InvalidCongruence(format!("element {x} out of range")));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidCongruence(format!("element {x} in two blocks")));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidCongruence(format!("element {x} in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn identity(size: usize) -> Self {
        Self::from_labels(&(0..size).collect::<Vec<_>>())
    }

    pub fn universal(size: usize) -> Self {
        Self::from_labels(&vec![0; size])
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: Elem) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    pub fn is_universal(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Checks compatibility with the law of `s`.
    pub fn validate(&self, s: &FiniteSemigroup) -> Result<()> {
        if self.size() != s.size() {
            return Err(Error::InvalidCongruence(format!(
                "partition of {} elements for a semigroup of size {}",
                self.size(),
                s.size()
            )));
        }
        for block in &self.blocks {
            let x = block[0];
            for &x2 in &block[1..] {
                for z in s.elements() {
                    if !self.related(s.mul(x, z), s.mul(x2, z)) || !self.related(s.mul(z, x), s.mul(z, x2)) {
                        return Err(Error::InvalidCongruence(format!(
                            "{} ~ {} is not preserved by multiplication with {}",
                            s.name(x),
                            s.name(x2),
                            s.name(z)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Intersection of two partitions.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let k = other.block_count();
        let labels: Vec<usize> = (0..n).map(|x| self.block_of[x] * k + other.block_of[x]).collect();
        Self::from_labels(&labels)
    }

    /// Least congruence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for c in [self, other] {
            for block in &c.blocks {
                for &x in &block[1..] {
                    uf.union(block[0], x);
                }
            }
        }
        Self::from_labels(&uf.labels())
    }

    /// Least congruence of `s` relating `a` and `b`.
    pub fn principal(s: &FiniteSemigroup, a: Elem, b: Elem) -> Congruence {
        let mut uf = UnionFind::new(s.size());
        let mut work = vec![(a, b)];
        while let Some((x, y)) = work.pop() {
            if !uf.union(x, y) {
                continue;
            }
            for z in s.elements() {
                work.push((s.mul(x, z), s.mul(y, z)));
                work.push((s.mul(z, x), s.mul(z, y)));
            }
        }
        Self::from_labels(&uf.labels())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// All congruences of `s`, identity first, as joins of principal congruences.
pub fn enumerate_congruences(s: &FiniteSemigroup) -> Result<Vec<Congruence>> {
    enumerate_congruences_bounded(s, DEFAULT_CONGRUENCE_BOUND)
}

pub fn enumerate_congruences_bounded(s: &FiniteSemigroup, bound: usize) -> Result<Vec<Congruence>> {
    let n = s.size();
    if n > bound {
        return Err(Error::TooLarge { size: n, bound });
    }
    let mut principals: Vec<Congruence> = Vec::new();
    let mut seen_p = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = Congruence::principal(s, a, b);
            if seen_p.insert(p.clone()) {
                principals.push(p);
            }
        }
    }
    let id = Congruence::identity(n);
    let mut seen = HashSet::new();
    seen.insert(id.clone());
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        let c = all[i].clone();
        for p in &principals {
            let j = c.join(p);
            if seen.insert(j.clone()) {
                if all.len() >= MAX_CONGRUENCES {
                    return Err(Error::TooLarge { size: all.len(), bound: MAX_CONGRUENCES });
                }
                all.push(j);
            }
        }
        i += 1;
    }
    Ok(all)
}
