use std::cell::Cell;

/// Plain vEB tree over `0..2^bits` with lazily propagated minimum. Every
/// node is allocated up front; universes of at most 64 keys are a single
/// word.
#[derive(Debug, Clone)]
pub(crate) enum Tree {
    Leaf(u64),
    Branch(Box<Branch>),
}

#[derive(Debug, Clone)]
pub(crate) struct Branch {
    min: Option<u32>,
    max: u32,
    lo_bits: u32,
    summary: Tree,
    clusters: Vec<Tree>,
}

impl Tree {
    /// Allocates an empty tree; `writes` counts the cells initialized.
    pub(crate) fn new(bits: u32, writes: &mut u64) -> Tree {
        *writes += 1;
        if bits <= 6 {
            return Tree::Leaf(0);
        }
        let lo_bits = bits / 2;
        let hi_bits = bits - lo_bits;
        let summary = Tree::new(hi_bits, writes);
        let clusters = (0..1u32 << hi_bits).map(|_| Tree::new(lo_bits, writes)).collect();
        Tree::Branch(Box::new(Branch { min: None, max: 0, lo_bits, summary, clusters }))
    }

    pub(crate) fn is_empty(&self) -> bool {
        match self {
            Tree::Leaf(w) => *w == 0,
            Tree::Branch(b) => b.min.is_none(),
        }
    }

    pub(crate) fn min(&self) -> Option<u32> {
        match self {
            Tree::Leaf(w) => (*w != 0).then(|| w.trailing_zeros()),
            Tree::Branch(b) => b.min,
        }
    }

    pub(crate) fn max(&self) -> Option<u32> {
        match self {
            Tree::Leaf(w) => (*w != 0).then(|| 63 - w.leading_zeros()),
            Tree::Branch(b) => b.min.map(|_| b.max),
        }
    }

    pub(crate) fn insert(&mut self, x: u32, probes: &Cell<u64>) {
        probes.set(probes.get() + 1);
        match self {
            Tree::Leaf(w) => *w |= 1 << x,
            Tree::Branch(b) => {
                let Some(min) = b.min else {
                    b.min = Some(x);
                    b.max = x;
                    return;
                };
                if x == min {
                    return;
                }
                let mut x = x;
                if x < min {
                    b.min = Some(x);
                    x = min;
                }
                let (h, l) = (x >> b.lo_bits, x & ((1 << b.lo_bits) - 1));
                if b.clusters[h as usize].is_empty() {
                    b.summary.insert(h, probes);
                }
                b.clusters[h as usize].insert(l, probes);
                if x > b.max {
                    b.max = x;
                }
            }
        }
    }

    pub(crate) fn delete(&mut self, x: u32, probes: &Cell<u64>) {
        probes.set(probes.get() + 1);
        match self {
            Tree::Leaf(w) => *w &= !(1 << x),
            Tree::Branch(b) => {
                let min = b.min.expect("delete from empty tree");
                if min == b.max {
                    b.min = None;
                    return;
                }
                let mut x = x;
                if x == min {
                    let first = b.summary.min().expect("non-singleton tree has clusters");
                    x = (first << b.lo_bits) | b.clusters[first as usize].min().unwrap();
                    b.min = Some(x);
                }
                let (h, l) = (x >> b.lo_bits, x & ((1 << b.lo_bits) - 1));
                b.clusters[h as usize].delete(l, probes);
                if b.clusters[h as usize].is_empty() {
                    b.summary.delete(h, probes);
                    if x == b.max {
                        b.max = match b.summary.max() {
                            None => b.min.unwrap(),
                            Some(sm) => (sm << b.lo_bits) | b.clusters[sm as usize].max().unwrap(),
                        };
                    }
                } else if x == b.max {
                    b.max = (h << b.lo_bits) | b.clusters[h as usize].max().unwrap();
                }
            }
        }
    }

    /// Smallest member strictly greater than `x`.
    pub(crate) fn succ(&self, x: u32, probes: &Cell<u64>) -> Option<u32> {
        probes.set(probes.get() + 1);
        match self {
            Tree::Leaf(w) => {
                let above = if x >= 63 { 0 } else { w & (!0u64 << (x + 1)) };
                (above != 0).then(|| above.trailing_zeros())
            }
            Tree::Branch(b) => {
                let min = b.min?;
                if x < min {
                    return Some(min);
                }
                let (h, l) = (x >> b.lo_bits, x & ((1 << b.lo_bits) - 1));
                let c = &b.clusters[h as usize];
                if let Some(mx) = c.max() {
                    if l < mx {
                        return Some((h << b.lo_bits) | c.succ(l, probes).unwrap());
                    }
                }
                let sc = b.summary.succ(h, probes)?;
                Some((sc << b.lo_bits) | b.clusters[sc as usize].min().unwrap())
            }
        }
    }

    /// Largest member strictly smaller than `x`.
    pub(crate) fn pred(&self, x: u32, probes: &Cell<u64>) -> Option<u32> {
        probes.set(probes.get() + 1);
        match self {
            Tree::Leaf(w) => {
                let below = if x == 0 { 0 } else { w & ((1u64 << x) - 1) };
                (below != 0).then(|| 63 - below.leading_zeros())
            }
            Tree::Branch(b) => {
                let min = b.min?;
                if x > b.max {
                    return Some(b.max);
                }
                let (h, l) = (x >> b.lo_bits, x & ((1 << b.lo_bits) - 1));
                let c = &b.clusters[h as usize];
                if let Some(mn) = c.min() {
                    if l > mn {
                        return Some((h << b.lo_bits) | c.pred(l, probes).unwrap());
                    }
                }
                match b.summary.pred(h, probes) {
                    Some(pc) => Some((pc << b.lo_bits) | b.clusters[pc as usize].max().unwrap()),
                    None => (x > min).then_some(min),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn matches_btreeset() {
        let probes = Cell::new(0);
        let mut w = 0;
        let mut t = Tree::new(10, &mut w);
        let mut set = BTreeSet::new();
        let mut x: u32 = 7;
        for step in 0..5000u32 {
            x = x.wrapping_mul(1103515245).wrapping_add(12345) % 1024;
            if step % 3 == 0 && set.contains(&x) {
                t.delete(x, &probes);
                set.remove(&x);
            } else if !set.contains(&x) {
                t.insert(x, &probes);
                set.insert(x);
            }
            let q = (x * 7 + step) % 1024;
            assert_eq!(t.succ(q, &probes), set.range(q + 1..).next().copied());
            assert_eq!(t.pred(q, &probes), set.range(..q).next_back().copied());
            assert_eq!(t.min(), set.iter().next().copied());
            assert_eq!(t.max(), set.iter().next_back().copied());
        }
    }
}
