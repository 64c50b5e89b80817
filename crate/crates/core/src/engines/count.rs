use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{check_variety, Elem, FiniteSemigroup, Variety};
use crate::error::{Error, Result};

/// Commutative semigroups: the product only depends on how often each
/// element occurs, and each count can be reduced modulo the element's
/// index and period.
#[derive(Debug, Clone)]
pub struct CountEngine {
    s: FiniteSemigroup,
    word: Vec<Elem>,
    counts: Vec<usize>,
    /// `powers[x][k - 1] = x^k` for `k < index + period`.
    powers: Vec<Vec<Elem>>,
    index_period: Vec<(usize, usize)>,
    ops: u64,
}

impl CountEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        if !check_variety(s, &Variety::Com) {
            return Err(Error::NotInVariety("COM"));
        }
        check_word(s, word)?;
        let mut counts = vec![0; s.size()];
        for &a in word {
            counts[a] += 1;
        }
        let index_period: Vec<(usize, usize)> = s.elements().map(|x| s.index_period(x)).collect();
        let powers = s
            .elements()
            .map(|x| {
                let (i, p) = index_period[x];
                let mut v = vec![x];
                while v.len() < i + p - 1 {
                    v.push(s.mul(*v.last().unwrap(), x));
                }
                v
            })
            .collect();
        Ok(CountEngine { s: s.clone(), word: word.to_vec(), counts, powers, index_period, ops: 0 })
    }

    fn power(&self, x: Elem, k: usize) -> Elem {
        let (i, p) = self.index_period[x];
        let r = if k < i + p { k } else { i + (k - i) % p };
        self.powers[x][r - 1]
    }
}

impl Engine for CountEngine {
    fn kind(&self) -> String {
        "count".into()
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        let old = std::mem::replace(&mut self.word[pos], letter);
        self.counts[old] -= 1;
        self.counts[letter] += 1;
        self.ops += 3;
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += self.counts.len() as u64;
        let mut acc: Option<Elem> = None;
        for x in self.s.elements() {
            let k = self.counts[x];
            if k > 0 {
                let p = self.power(x, k);
                acc = Some(acc.map_or(p, |a| self.s.mul(a, p)));
            }
        }
        acc.or(self.s.identity())
    }

    fn ops(&self) -> u64 {
        self.ops
    }

    fn word(&self) -> Vec<Elem> {
        self.word.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn periodic_reduction_matches_fold() {
        let s = gallery::cyclic(5);
        let word: Vec<Elem> = (0..1000).map(|i| (i * 7 + 3) % 5).collect();
        let mut e = CountEngine::new(&s, &word).unwrap();
        assert_eq!(e.query(), s.eval(word.iter().copied()));
        assert!(CountEngine::new(&gallery::s3(), &[]).is_err());
    }
}
