use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{Elem, FiniteSemigroup};
use crate::error::Result;

/// Stores the word and folds it on every query.
#[derive(Debug, Clone)]
pub struct NaiveEngine {
    s: FiniteSemigroup,
    word: Vec<Elem>,
    ops: u64,
}

impl NaiveEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        check_word(s, word)?;
        Ok(NaiveEngine { s: s.clone(), word: word.to_vec(), ops: 0 })
    }
}

impl Engine for NaiveEngine {
    fn kind(&self) -> String {
        "naive".into()
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        self.word[pos] = letter;
        self.ops += 1;
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += self.word.len() as u64;
        self.s.eval_or_identity(self.word.iter().copied())
    }

    fn ops(&self) -> u64 {
        self.ops
    }

    fn word(&self) -> Vec<Elem> {
        self.word.clone()
    }

    fn prefix(&mut self, len: usize) -> Result<Option<Elem>> {
        if len > self.word.len() {
            return Err(crate::Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        self.ops += len as u64;
        Ok(self.s.eval_or_identity(self.word[..len].iter().copied()))
    }

    fn infix(&mut self, i: usize, j: usize) -> Result<Option<Elem>> {
        check_pos(j, self.word.len())?;
        if i > j {
            return Err(crate::Error::PositionOutOfRange { pos: i, len: j + 1 });
        }
        self.ops += (j - i + 1) as u64;
        Ok(self.s.eval(self.word[i..=j].iter().copied()))
    }
}
