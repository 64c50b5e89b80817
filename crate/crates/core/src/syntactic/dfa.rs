use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::regex::RegexAst;
use crate::error::{Error, Result};

/// Complete deterministic automaton over letter ids `0..alphabet.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Vec<char>,
    pub delta: Vec<Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<bool>,
}

/// `{ "states": n, "delta": [[...]], "initial": q, "finals": [...] }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub states: usize,
    pub delta: Vec<Vec<usize>>,
    pub initial: usize,
    pub finals: Vec<usize>,
}

impl Dfa {
    pub fn new(alphabet: Vec<char>, delta: Vec<Vec<usize>>, initial: usize, finals: Vec<bool>) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if finals.len() != n {
            return Err(Error::InvalidDfa(format!("{} final flags for {n} states", finals.len())));
        }
        if initial >= n {
            return Err(Error::InvalidDfa(format!("initial state {initial} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidDfa(format!("state {q} has {} transitions", row.len())));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidDfa(format!("transition {q} -> {t} out of range")));
            }
        }
        Ok(Dfa { alphabet, delta, initial, finals })
    }

    pub fn from_json(alphabet: Vec<char>, j: DfaJson) -> Result<Self> {
        if j.delta.len() != j.states {
            return Err(Error::InvalidDfa(format!("{} rows for {} states", j.delta.len(), j.states)));
        }
        let mut finals = vec![false; j.states];
        for f in j.finals {
            if f >= j.states {
                return Err(Error::InvalidDfa(format!("final state {f} out of range")));
            }
            finals[f] = true;
        }
        Dfa::new(alphabet, j.delta, j.initial, finals)
    }

    pub fn to_json(&self) -> DfaJson {
        DfaJson {
            states: self.states(),
            delta: self.delta.clone(),
            initial: self.initial,
            finals: (0..self.states()).filter(|&q| self.finals[q]).collect(),
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn run(&self, mut q: usize, word: &[usize]) -> usize {
        for &a in word {
            q = self.delta[q][a];
        }
        q
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run(self.initial, word)]
    }

    pub fn letter(&self, c: char) -> Result<usize> {
        self.alphabet.iter().position(|&a| a == c).ok_or_else(|| Error::UnknownLetter(c.to_string()))
    }

    pub fn parse_word(&self, w: &str) -> Result<Vec<usize>> {
        w.chars().map(|c| self.letter(c)).collect()
    }
}

struct Nfa {
    eps: Vec<Vec<usize>>,
    trans: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.trans.push(Vec::new());
        self.eps.len() - 1
    }

    /// Thompson fragment; returns (entry, exit).
    fn build(&mut self, r: &RegexAst) -> (usize, usize) {
        let (s, t) = (self.state(), self.state());
        match r {
            RegexAst::Empty => {}
            RegexAst::Epsilon => self.eps[s].push(t),
            RegexAst::Literal(a) => self.trans[s].push((*a, t)),
            RegexAst::Union(x, y) => {
                for sub in [x, y] {
                    let (i, o) = self.build(sub);
                    self.eps[s].push(i);
                    self.eps[o].push(t);
                }
            }
            RegexAst::Concat(x, y) => {
                let (i1, o1) = self.build(x);
                let (i2, o2) = self.build(y);
                self.eps[s].push(i1);
                self.eps[o1].push(i2);
                self.eps[o2].push(t);
            }
            RegexAst::Star(x) => {
                let (i, o) = self.build(x);
                self.eps[s].extend([i, t]);
                self.eps[o].extend([i, t]);
            }
        }
        (s, t)
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = set.clone();
        for &q in set.iter() {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if !seen[r] {
                    seen[r] = true;
                    set.push(r);
                    stack.push(r);
                }
            }
        }
        set.sort_unstable();
    }
}

/// Subset construction over a Thompson automaton; the result is complete.
pub fn regex_to_dfa(ast: &RegexAst, alphabet: &[char]) -> Dfa {
    let mut nfa = Nfa { eps: Vec::new(), trans: Vec::new() };
    let (start, accept) = nfa.build(ast);
    let mut init = vec![start];
    nfa.closure(&mut init);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets = vec![init.clone()];
    index.insert(init, 0);
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let mut next: Vec<usize> = Vec::new();
            for &q in &sets[i] {
                for &(b, r) in &nfa.trans[q] {
                    if a == b && !next.contains(&r) {
                        next.push(r);
                    }
                }
            }
            nfa.closure(&mut next);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    sets.push(next.clone());
                    index.insert(next, sets.len() - 1);
                    sets.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = sets.iter().map(|s| s.binary_search(&accept).is_ok()).collect();
    Dfa { alphabet: alphabet.to_vec(), delta, initial: 0, finals }
}

fn reachable_bfs(d: &Dfa) -> Vec<usize> {
    let mut order = vec![d.initial];
    let mut seen = vec![false; d.states()];
    seen[d.initial] = true;
    let mut q = VecDeque::from([d.initial]);
    while let Some(s) = q.pop_front() {
        for &t in &d.delta[s] {
            if !seen[t] {
                seen[t] = true;
                order.push(t);
                q.push_back(t);
            }
        }
    }
    order
}

/// Moore equivalence classes of the states listed in `states`.
fn equivalence(d: &Dfa, states: &[usize]) -> Vec<usize> {
    let mut class = vec![usize::MAX; d.states()];
    for &q in states {
        class[q] = d.finals[q] as usize;
    }
    let mut count = 0;
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![usize::MAX; d.states()];
        for &q in states {
            let sig = (class[q], d.delta[q].iter().map(|&t| class[t]).collect::<Vec<_>>());
            let fresh = ids.len();
            next[q] = *ids.entry(sig).or_insert(fresh);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

/// The minimal complete automaton, states numbered in BFS order from the
/// initial state (letters in alphabet order).
pub fn minimize_dfa(d: &Dfa) -> Dfa {
    let reach = reachable_bfs(d);
    let class = equivalence(d, &reach);
    let k = reach.iter().map(|&q| class[q]).max().unwrap() + 1;
    let mut rep = vec![usize::MAX; k];
    for &q in &reach {
        if rep[class[q]] == usize::MAX {
            rep[class[q]] = q;
        }
    }
    let quotient = Dfa {
        alphabet: d.alphabet.clone(),
        delta: (0..k).map(|c| d.delta[rep[c]].iter().map(|&t| class[t]).collect()).collect(),
        initial: class[d.initial],
        finals: (0..k).map(|c| d.finals[rep[c]]).collect(),
    };
    canonical(&quotient)
}

fn canonical(d: &Dfa) -> Dfa {
    let order = reachable_bfs(d);
    let mut new_id = vec![usize::MAX; d.states()];
    for (i, &q) in order.iter().enumerate() {
        new_id[q] = i;
    }
    Dfa {
        alphabet: d.alphabet.clone(),
        delta: order.iter().map(|&q| d.delta[q].iter().map(|&t| new_id[t]).collect()).collect(),
        initial: 0,
        finals: order.iter().map(|&q| d.finals[q]).collect(),
    }
}

/// Fails with `NotMinimal` on an unreachable state or two equivalent states.
pub fn check_minimal(d: &Dfa) -> Result<()> {
    let reach = reachable_bfs(d);
    if reach.len() != d.states() {
        let unreachable = (0..d.states()).find(|q| !reach.contains(q)).unwrap();
        return Err(Error::NotMinimal(unreachable, unreachable));
    }
    let class = equivalence(d, &reach);
    let mut first: HashMap<usize, usize> = HashMap::new();
    for q in 0..d.states() {
        if let Some(&p) = first.get(&class[q]) {
            return Err(Error::NotMinimal(p, q));
        }
        first.insert(class[q], q);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntactic::regex::parse_regex;

    fn min_of(re: &str, alpha: &[char]) -> Dfa {
        minimize_dfa(&regex_to_dfa(&parse_regex(re, alpha).unwrap(), alpha))
    }

    fn words(alpha: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in 0..alpha {
                    let mut v: Vec<usize> = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn a_star_b_star_has_three_states() {
        let d = min_of("a*b*", &['a', 'b']);
        assert_eq!(d.states(), 3);
        for w in words(2, 6) {
            let sorted = w.windows(2).all(|p| p[0] <= p[1]);
            assert_eq!(d.accepts(&w), sorted, "{w:?}");
        }
        check_minimal(&d).unwrap();
    }

    #[test]
    fn sigma_star_and_parity() {
        assert_eq!(min_of("(a+b)*", &['a', 'b']).states(), 1);
        assert_eq!(min_of("(aa)*", &['a']).states(), 2);
    }

    #[test]
    fn non_minimal_detected() {
        let d = Dfa::new(vec!['a'], vec![vec![1], vec![0]], 0, vec![true, true]).unwrap();
        assert_eq!(check_minimal(&d), Err(Error::NotMinimal(0, 1)));
    }

    #[test]
    fn invalid_dfa_rejected() {
        assert!(Dfa::new(vec!['a'], vec![vec![2]], 0, vec![true]).is_err());
        assert!(Dfa::new(vec!['a'], vec![vec![0]], 1, vec![true]).is_err());
    }
}
