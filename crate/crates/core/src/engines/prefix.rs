use super::{check_letter, check_pos, check_word, Engine, KaryEngine};
use crate::algebra::{Elem, FiniteSemigroup};
use crate::error::{Error, Result};
use crate::veb::VebMap;

#[derive(Debug, Clone)]
enum Backing {
    /// Positions holding the zero of U1.
    U1 { zeros: VebMap, one: Elem, zero: Elem },
    /// Positions holding a non-identity letter of U2, labeled by it.
    U2 { marks: VebMap, one: Elem },
    Tree(Box<KaryEngine>),
}

/// Prefix and infix queries. For U1 and U2 these reduce to predecessor
/// search; other semigroups use the k-ary tree.
#[derive(Debug, Clone)]
pub struct PrefixEngine {
    s: FiniteSemigroup,
    word: Vec<Elem>,
    backing: Backing,
    steps: u64,
}

/// `(identity, zero)` when `s` is U1.
pub(crate) fn as_u1(s: &FiniteSemigroup) -> Option<(Elem, Elem)> {
    let one = s.identity()?;
    (s.size() == 2).then_some(())?;
    let zero = 1 - one;
    (s.zero() == Some(zero)).then_some((one, zero))
}

/// Identity of `s` when `s` is U2: two right-zero idempotents plus an identity.
pub(crate) fn as_u2(s: &FiniteSemigroup) -> Option<Elem> {
    let one = s.identity()?;
    if s.size() != 3 {
        return None;
    }
    let rest: Vec<Elem> = s.elements().filter(|&x| x != one).collect();
    rest.iter().all(|&x| rest.iter().all(|&y| s.mul(x, y) == y)).then_some(one)
}

impl PrefixEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        check_word(s, word)?;
        let n = word.len();
        let backing = if let Some((one, zero)) = as_u1(s) {
            let zeros = VebMap::from_dense(n, word.iter().map(|&a| (a == zero).then_some(0)));
            Backing::U1 { zeros, one, zero }
        } else if let Some(one) = as_u2(s) {
            let marks = VebMap::from_dense(n, word.iter().map(|&a| (a != one).then_some(a)));
            Backing::U2 { marks, one }
        } else {
            Backing::Tree(Box::new(KaryEngine::new(s, word)?))
        };
        Ok(PrefixEngine { s: s.clone(), word: word.to_vec(), backing, steps: 0 })
    }

    /// Whether queries go through a predecessor structure.
    pub fn uses_predecessor(&self) -> bool {
        !matches!(self.backing, Backing::Tree(_))
    }
}

impl Engine for PrefixEngine {
    fn kind(&self) -> String {
        match self.backing {
            Backing::U1 { .. } => "prefix(u1)".into(),
            Backing::U2 { .. } => "prefix(u2)".into(),
            Backing::Tree(_) => "prefix(kary)".into(),
        }
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        let old = std::mem::replace(&mut self.word[pos], letter);
        self.steps += 1;
        let key = pos + 1;
        match &mut self.backing {
            Backing::U1 { zeros, zero, .. } => match (old == *zero, letter == *zero) {
                (false, true) => zeros.insert(key, 0)?,
                (true, false) => {
                    zeros.delete(key)?;
                }
                _ => {}
            },
            Backing::U2 { marks, one } => match (old == *one, letter == *one) {
                (true, false) => marks.insert(key, letter)?,
                (false, true) => {
                    marks.delete(key)?;
                }
                (false, false) => {
                    marks.relabel(key, letter)?;
                }
                (true, true) => {}
            },
            Backing::Tree(t) => t.update(pos, letter)?,
        }
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        let n = self.word.len();
        self.prefix(n).expect("full prefix is in range")
    }

    fn ops(&self) -> u64 {
        self.steps
            + match &self.backing {
                Backing::U1 { zeros, .. } => zeros.probes(),
                Backing::U2 { marks, .. } => marks.probes(),
                Backing::Tree(t) => t.ops(),
            }
    }

    fn word(&self) -> Vec<Elem> {
        self.word.clone()
    }

    fn prefix(&mut self, len: usize) -> Result<Option<Elem>> {
        if len > self.word.len() {
            return Err(Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        self.steps += 1;
        Ok(match &mut self.backing {
            Backing::U1 { zeros, one, zero } => Some(if zeros.find_prev(len).is_some() { *zero } else { *one }),
            Backing::U2 { marks, one } => Some(marks.find_prev(len).map_or(*one, |k| marks.retrieve(k).unwrap())),
            Backing::Tree(t) => return t.prefix(len),
        })
    }

    fn infix(&mut self, i: usize, j: usize) -> Result<Option<Elem>> {
        check_pos(j, self.word.len())?;
        if i > j {
            return Err(Error::PositionOutOfRange { pos: i, len: j + 1 });
        }
        self.steps += 1;
        Ok(match &mut self.backing {
            Backing::U1 { zeros, one, zero } => {
                Some(if zeros.find_next(i + 1).is_some_and(|k| k <= j + 1) { *zero } else { *one })
            }
            Backing::U2 { marks, one } => Some(match marks.find_prev(j + 1) {
                Some(k) if k > i => marks.retrieve(k).unwrap(),
                _ => *one,
            }),
            Backing::Tree(t) => return t.infix(i, j),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn predecessor_backings() {
        for s in [gallery::u1(), gallery::u2(), gallery::s3()] {
            let n = 50;
            let word: Vec<Elem> = (0..n).map(|i| (i * i * 7 + i) % s.size()).collect();
            let mut e = PrefixEngine::new(&s, &word).unwrap();
            assert_eq!(e.uses_predecessor(), s.size() < 6);
            let mut w = word.clone();
            for step in 0..300 {
                let (pos, a) = ((step * 13) % n, (step / 3) % s.size());
                e.update(pos, a).unwrap();
                w[pos] = a;
                let len = (step * 7) % (n + 1);
                assert_eq!(e.prefix(len).unwrap(), s.eval_or_identity(w[..len].iter().copied()));
                let (i, j) = ((step * 3) % n, (step * 5) % n);
                let (i, j) = (i.min(j), i.max(j));
                assert_eq!(e.infix(i, j).unwrap(), s.eval(w[i..=j].iter().copied()));
            }
        }
    }
}
