use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{nilpotency_degree, Elem, FiniteSemigroup};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Nilpotent semigroups with an identity: any `k` non-identity letters
/// multiply to zero, so an unsorted list of their positions suffices.
#[derive(Debug, Clone)]
pub struct NilpotentEngine {
    s: FiniteSemigroup,
    identity: Elem,
    zero: Elem,
    degree: usize,
    word: Vec<Elem>,
    /// Positions of non-identity letters, in no particular order.
    list: Vec<usize>,
    /// Position -> index in `list`.
    slot: Vec<usize>,
    ops: u64,
}

impl NilpotentEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        let identity = s.identity().ok_or(Error::NotAMonoid)?;
        let degree = nilpotency_degree(s, true).ok_or(Error::NotInVariety("NIL+1"))?;
        let zero = s.zero().ok_or(Error::NotInVariety("NIL+1"))?;
        check_word(s, word)?;
        let mut e = NilpotentEngine {
            s: s.clone(),
            identity,
            zero,
            degree,
            word: word.to_vec(),
            list: Vec::new(),
            slot: vec![NONE; word.len()],
            ops: 0,
        };
        for (p, &a) in word.iter().enumerate() {
            if a != identity {
                e.slot[p] = e.list.len();
                e.list.push(p);
            }
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl Engine for NilpotentEngine {
    fn kind(&self) -> String {
        "nilpotent".into()
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        let old = std::mem::replace(&mut self.word[pos], letter);
        self.ops += 1;
        match (old == self.identity, letter == self.identity) {
            (true, false) => {
                self.slot[pos] = self.list.len();
                self.list.push(pos);
                self.ops += 1;
            }
            (false, true) => {
                let i = self.slot[pos];
                self.list.swap_remove(i);
                if let Some(&moved) = self.list.get(i) {
                    self.slot[moved] = i;
                }
                self.slot[pos] = NONE;
                self.ops += 2;
            }
            _ => {}
        }
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += 1;
        if self.list.len() >= self.degree {
            return Some(self.zero);
        }
        let mut ps = self.list.clone();
        ps.sort_unstable();
        self.ops += (ps.len() * ps.len()) as u64;
        Some(ps.iter().fold(self.identity, |acc, &p| self.s.mul(acc, self.word[p])))
    }

    fn ops(&self) -> u64 {
        self.ops
    }

    fn word(&self) -> Vec<Elem> {
        self.word.clone()
    }
}
