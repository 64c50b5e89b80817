use std::collections::VecDeque;

use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{adjoin_identity, Elem, FiniteSemigroup};
use crate::error::{Error, Result};

const MAX_BRANCHING: usize = 32;

/// Largest `k >= 2` with `m^k * k^2 <= ceil(sqrt(n))`, or 2 when none fits.
pub fn choose_branching(m: usize, n: usize) -> usize {
    let budget = (n as f64).sqrt().ceil() as u128;
    let mut best = 2;
    for k in 2..=MAX_BRANCHING {
        let size = (m as u128).checked_pow(k as u32).and_then(|p| p.checked_mul((k * k) as u128));
        match size {
            Some(size) if size <= budget => best = k,
            _ => break,
        }
    }
    best
}

/// Balanced k-ary tree over the word. A node is encoded by the tuple of its
/// children's values, read as a base-`|M|` number, and every infix product of
/// that tuple is tabulated once.
#[derive(Debug, Clone)]
pub struct KaryEngine {
    s: FiniteSemigroup,
    m: FiniteSemigroup,
    /// Adjoined identity when `s` has none.
    fresh_identity: bool,
    k: usize,
    pow: Vec<usize>,
    /// `infix[(code * k + i) * k + j]`: product of digits `i..=j`.
    infix: Vec<u32>,
    code: Vec<usize>,
    parent: Vec<u32>,
    slot: Vec<u8>,
    node_len: Vec<usize>,
    child_size: Vec<usize>,
    first_child: Vec<u32>,
    leaf_of: Vec<(u32, u8)>,
    word: Vec<Elem>,
    ops: u64,
}

impl KaryEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        let k = choose_branching(adjoin_identity(s).size(), word.len().max(1));
        Self::with_branching(s, word, k)
    }

    pub fn with_branching(s: &FiniteSemigroup, word: &[Elem], k: usize) -> Result<Self> {
        check_word(s, word)?;
        if !(2..=MAX_BRANCHING).contains(&k) {
            return Err(Error::Range(format!("branching factor {k} not in 2..={MAX_BRANCHING}")));
        }
        let m = adjoin_identity(s);
        let msize = m.size();
        let id = m.identity().expect("adjoined identity");
        let codes = msize
            .checked_pow(k as u32)
            .filter(|c| c.checked_mul(k * k).is_some_and(|t| t <= 1 << 28))
            .ok_or(Error::TooLarge { size: msize, bound: k })?;
        let pow: Vec<usize> = (0..=k).map(|i| msize.pow(i as u32)).collect();
        let mut infix = vec![0u32; codes * k * k];
        let mut digits = vec![0; k];
        for code in 0..codes {
            for (t, d) in digits.iter_mut().enumerate() {
                *d = (code / pow[t]) % msize;
            }
            for i in 0..k {
                let mut acc = digits[i];
                for j in i..k {
                    if j > i {
                        acc = m.mul(acc, digits[j]);
                    }
                    infix[(code * k + i) * k + j] = acc as u32;
                }
            }
        }
        let mut e = KaryEngine {
            s: s.clone(),
            fresh_identity: !s.is_monoid(),
            m,
            k,
            pow,
            infix,
            code: Vec::new(),
            parent: Vec::new(),
            slot: Vec::new(),
            node_len: Vec::new(),
            child_size: Vec::new(),
            first_child: Vec::new(),
            leaf_of: vec![(0, 0); word.len()],
            word: word.to_vec(),
            ops: 0,
        };
        if !word.is_empty() {
            e.build(id);
        }
        Ok(e)
    }

    fn push_node(&mut self, parent: u32, slot: u8, len: usize) -> u32 {
        self.code.push(0);
        self.parent.push(parent);
        self.slot.push(slot);
        self.node_len.push(len);
        self.child_size.push(1);
        self.first_child.push(u32::MAX);
        (self.code.len() - 1) as u32
    }

    fn build(&mut self, id: Elem) {
        let k = self.k;
        let mut starts = vec![0usize];
        self.push_node(u32::MAX, 0, self.word.len());
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            let v = v as usize;
            let (lo, len) = (starts[v], self.node_len[v]);
            if len <= k {
                for t in 0..len {
                    self.leaf_of[lo + t] = (v as u32, t as u8);
                }
                continue;
            }
            let mut r = 1;
            while r * k < len {
                r *= k;
            }
            self.child_size[v] = r;
            let count = len.div_ceil(r);
            for c in 0..count {
                let clen = r.min(len - c * r);
                let child = self.push_node(v as u32, c as u8, clen);
                if c == 0 {
                    self.first_child[v] = child;
                }
                starts.push(lo + c * r);
                queue.push_back(child);
            }
        }
        for v in (0..self.code.len()).rev() {
            let digits: Vec<Elem> = if self.first_child[v] == u32::MAX {
                (0..k).map(|t| if t < self.node_len[v] { self.word[starts[v] + t] } else { id }).collect()
            } else {
                let f = self.first_child[v] as usize;
                let count = self.node_len[v].div_ceil(self.child_size[v]);
                (0..k).map(|t| if t < count { self.value(self.code[f + t]) } else { id }).collect()
            };
            self.code[v] = digits.iter().enumerate().map(|(t, &d)| d * self.pow[t]).sum();
        }
    }

    pub fn branching(&self) -> usize {
        self.k
    }

    /// Entries in the precomputed node table.
    pub fn table_size(&self) -> usize {
        self.infix.len()
    }

    pub fn depth(&self) -> usize {
        let mut d = 0;
        let mut v = 0usize;
        while !self.code.is_empty() && self.first_child[v] != u32::MAX {
            v = self.first_child[v] as usize;
            d += 1;
        }
        d
    }

    fn tab(&self, code: usize, i: usize, j: usize) -> Elem {
        self.infix[(code * self.k + i) * self.k + j] as Elem
    }

    fn value(&self, code: usize) -> Elem {
        self.tab(code, 0, self.k - 1)
    }

    fn is_leaf(&self, v: usize) -> bool {
        self.first_child[v] == u32::MAX
    }

    fn prefix_at(&mut self, v: usize, len: usize) -> Elem {
        self.ops += 1;
        if self.is_leaf(v) {
            return self.tab(self.code[v], 0, len - 1);
        }
        let r = self.child_size[v];
        let c = (len - 1) / r;
        let rest = self.prefix_at(self.first_child[v] as usize + c, len - c * r);
        if c == 0 {
            rest
        } else {
            self.m.mul(self.tab(self.code[v], 0, c - 1), rest)
        }
    }

    fn suffix_at(&mut self, v: usize, from: usize) -> Elem {
        self.ops += 1;
        if self.is_leaf(v) {
            return self.tab(self.code[v], from, self.k - 1);
        }
        let r = self.child_size[v];
        let c = from / r;
        let head = self.suffix_at(self.first_child[v] as usize + c, from - c * r);
        if c + 1 < self.k {
            self.m.mul(head, self.tab(self.code[v], c + 1, self.k - 1))
        } else {
            head
        }
    }

    fn infix_at(&mut self, v: usize, i: usize, j: usize) -> Elem {
        self.ops += 1;
        if self.is_leaf(v) {
            return self.tab(self.code[v], i, j);
        }
        let r = self.child_size[v];
        let f = self.first_child[v] as usize;
        let (ci, cj) = (i / r, j / r);
        if ci == cj {
            return self.infix_at(f + ci, i - ci * r, j - ci * r);
        }
        let mut acc = self.suffix_at(f + ci, i - ci * r);
        if cj > ci + 1 {
            acc = self.m.mul(acc, self.tab(self.code[v], ci + 1, cj - 1));
        }
        let tail = self.prefix_at(f + cj, j - cj * r + 1);
        self.m.mul(acc, tail)
    }

    fn to_outer(&self, x: Elem) -> Option<Elem> {
        if self.fresh_identity && x == self.s.size() {
            None
        } else {
            Some(x)
        }
    }
}

impl Engine for KaryEngine {
    fn kind(&self) -> String {
        "kary".into()
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        self.word[pos] = letter;
        let (mut v, mut slot) = (self.leaf_of[pos].0 as usize, self.leaf_of[pos].1 as usize);
        let mut digit = letter;
        let msize = self.m.size();
        loop {
            self.ops += 1;
            let code = self.code[v];
            let old = (code / self.pow[slot]) % msize;
            let code = code - old * self.pow[slot] + digit * self.pow[slot];
            self.code[v] = code;
            if v == 0 {
                break;
            }
            digit = self.value(code);
            slot = self.slot[v] as usize;
            v = self.parent[v] as usize;
        }
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += 1;
        if self.word.is_empty() {
            return self.s.identity();
        }
        self.to_outer(self.value(self.code[0]))
    }

    fn ops(&self) -> u64 {
        self.ops
    }

    fn word(&self) -> Vec<Elem> {
        self.word.clone()
    }

    fn prefix(&mut self, len: usize) -> Result<Option<Elem>> {
        if len > self.word.len() {
            return Err(Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        if len == 0 {
            return Ok(self.s.identity());
        }
        let x = self.prefix_at(0, len);
        Ok(self.to_outer(x))
    }

    fn infix(&mut self, i: usize, j: usize) -> Result<Option<Elem>> {
        check_pos(j, self.word.len())?;
        if i > j {
            return Err(Error::PositionOutOfRange { pos: i, len: j + 1 });
        }
        let x = self.infix_at(0, i, j);
        Ok(self.to_outer(x))
    }
}
