use std::collections::{HashMap, VecDeque};

use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{check_variety, Elem, FiniteSemigroup, Variety};
use crate::error::{Error, Result};

const MAX_STATES: usize = 20_000;
const CANDIDATES: [(usize, u8, u8); 10] =
    [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 1, 3), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1), (2, 1, 3), (2, 2, 2)];

/// What the engine keeps of a word: the word itself when it has at most
/// `2k` letters, otherwise its first and last `k` letters and, for every
/// element `x`, the number of factors of length `k + 1` with product `x`,
/// counted up to a threshold and then modulo a period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Summary {
    Short(Vec<u8>),
    Long { head: Vec<u8>, tail: Vec<u8>, counts: Vec<u8> },
}

/// Window length `k`, count threshold and period, together with the
/// verified map from summaries to products.
#[derive(Debug, Clone)]
pub struct WindowParams {
    pub k: usize,
    pub threshold: u8,
    pub period: u8,
    table: HashMap<Summary, Option<Elem>>,
}

impl WindowParams {
    pub fn summaries(&self) -> usize {
        self.table.len()
    }

    fn cap(&self, c: u32) -> u8 {
        let (t, p) = (self.threshold as u32, self.period as u32);
        (if c < t { c } else { t + (c - t) % p }) as u8
    }
}

fn factor_value(s: &FiniteSemigroup, letters: impl Iterator<Item = Elem>) -> usize {
    s.eval(letters).expect("factors are non-empty")
}

fn append(s: &FiniteSemigroup, k: usize, threshold: u8, period: u8, sum: &Summary, a: u8) -> Summary {
    let n = s.size();
    match sum {
        Summary::Short(w) => {
            let mut w = w.clone();
            w.push(a);
            if w.len() <= 2 * k {
                return Summary::Short(w);
            }
            let mut counts = vec![0u8; n];
            for f in w.windows(k + 1) {
                let id = factor_value(s, f.iter().map(|&x| x as usize));
                counts[id] = bump(counts[id], threshold, period);
            }
            Summary::Long { head: w[..k].to_vec(), tail: w[w.len() - k..].to_vec(), counts }
        }
        Summary::Long { head, tail, counts } => {
            let id = factor_value(s, tail.iter().chain(std::iter::once(&a)).map(|&x| x as usize));
            let mut counts = counts.clone();
            counts[id] = bump(counts[id], threshold, period);
            let mut tail = tail[1..].to_vec();
            tail.push(a);
            Summary::Long { head: head.clone(), tail, counts }
        }
    }
}

fn bump(c: u8, threshold: u8, period: u8) -> u8 {
    if c + 1 < threshold + period {
        c + 1
    } else {
        threshold
    }
}

/// Explores all words letter by letter; succeeds when every reachable
/// summary determines the product.
fn verify(s: &FiniteSemigroup, k: usize, threshold: u8, period: u8) -> Option<WindowParams> {
    let mut table: HashMap<Summary, Option<Elem>> = HashMap::new();
    let start = Summary::Short(Vec::new());
    table.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, None::<Elem>)]);
    while let Some((sum, x)) = queue.pop_front() {
        for a in s.elements() {
            let next = append(s, k, threshold, period, &sum, a as u8);
            let y = Some(x.map_or(a, |x| s.mul(x, a)));
            match table.get(&next) {
                Some(&z) if z == y => {}
                Some(_) => return None,
                None => {
                    if table.len() >= MAX_STATES {
                        return None;
                    }
                    table.insert(next.clone(), y);
                    queue.push_back((next, y));
                }
            }
        }
    }
    Some(WindowParams { k, threshold, period, table })
}

/// Constant-time engine driven by capped factor counts. Only available when
/// an exhaustive check shows that the summary determines the product.
#[derive(Debug, Clone)]
pub struct WindowEngine {
    s: FiniteSemigroup,
    params: WindowParams,
    word: Vec<Elem>,
    counts: Vec<u32>,
    ops: u64,
}

impl WindowEngine {
    /// First parameter set whose summaries are verified to determine the
    /// product, trying short windows first.
    pub fn find_params(s: &FiniteSemigroup) -> Option<WindowParams> {
        if s.size() > u8::MAX as usize || !check_variety(s, &Variety::Sg) {
            return None;
        }
        CANDIDATES.iter().find_map(|&(k, t, p)| verify(s, k, t, p))
    }

    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        let params = Self::find_params(s).ok_or(Error::NotInVariety("window"))?;
        Self::with_params(s, params, word)
    }

    pub fn with_params(s: &FiniteSemigroup, params: WindowParams, word: &[Elem]) -> Result<Self> {
        check_word(s, word)?;
        let k = params.k;
        let mut counts = vec![0u32; s.size()];
        for f in word.windows(k + 1) {
            counts[factor_value(s, f.iter().copied())] += 1;
        }
        Ok(WindowEngine { s: s.clone(), params, word: word.to_vec(), counts, ops: 0 })
    }

    pub fn params(&self) -> &WindowParams {
        &self.params
    }

    fn factor_at(&self, j: usize) -> usize {
        factor_value(&self.s, self.word[j..=j + self.params.k].iter().copied())
    }

    fn summary(&self) -> Summary {
        let k = self.params.k;
        let n = self.word.len();
        if n <= 2 * k {
            return Summary::Short(self.word.iter().map(|&a| a as u8).collect());
        }
        Summary::Long {
            head: self.word[..k].iter().map(|&a| a as u8).collect(),
            tail: self.word[n - k..].iter().map(|&a| a as u8).collect(),
            counts: self.counts.iter().map(|&c| self.params.cap(c)).collect(),
        }
    }
}

impl Engine for WindowEngine {
    fn kind(&self) -> String {
        "window".into()
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.word.len())?;
        check_letter(&self.s, letter)?;
        let k = self.params.k;
        let n = self.word.len();
        let first = pos.saturating_sub(k);
        let last = pos.min(n.saturating_sub(k + 1));
        if n > k {
            for j in first..=last {
                let f = self.factor_at(j);
                self.counts[f] -= 1;
            }
        }
        self.word[pos] = letter;
        if n > k {
            for j in first..=last {
                let f = self.factor_at(j);
                self.counts[f] += 1;
            }
        }
        self.ops += 2 * (k as u64 + 1);
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += self.counts.len() as u64;
        let sum = self.summary();
        match self.params.table.get(&sum) {
            Some(&x) => x.or(self.s.identity()),
            None => unreachable!("every summary of a word was explored"),
        }
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
    fn ab_star_by_adjacent_pairs() {
        let s = gallery::ab_star_semigroup();
        let p = WindowEngine::find_params(&s).unwrap();
        assert_eq!((p.k, p.threshold, p.period), (1, 1, 1));
        let word = vec![0, 0, 2, 1, 1, 1];
        let mut e = WindowEngine::new(&s, &word).unwrap();
        assert_eq!(e.query(), s.element_by_name("ab"));
        e.update(4, 0).unwrap();
        assert_eq!(e.query(), s.element_by_name("0"));
        e.update(4, 1).unwrap();
        assert_eq!(e.query(), s.element_by_name("ab"));
    }

    #[test]
    fn cyclic_group_uses_period() {
        let s = gallery::cyclic(2);
        let p = WindowEngine::find_params(&s).unwrap();
        assert_eq!(p.period, 2);
        assert!(WindowEngine::find_params(&gallery::s3()).is_none());
    }
}
