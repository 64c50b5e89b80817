use std::collections::{HashMap, VecDeque};

use super::dfa::{check_minimal, Dfa};
use crate::algebra::{Elem, FiniteSemigroup};
use crate::error::{Error, Result};

/// A letter-to-element map into a monoid, with an accepting subset.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub alphabet: Vec<char>,
    pub target: FiniteSemigroup,
    pub eta: Vec<Elem>,
    pub accept: Vec<bool>,
}

impl Morphism {
    pub fn new(alphabet: Vec<char>, target: FiniteSemigroup, eta: Vec<Elem>, accept: Vec<bool>) -> Result<Self> {
        if !target.is_monoid() {
            return Err(Error::NotAMonoid);
        }
        if eta.len() != alphabet.len() || eta.iter().any(|&e| e >= target.size()) {
            return Err(Error::Range("letter images do not match the alphabet".into()));
        }
        if accept.len() != target.size() {
            return Err(Error::Range("accepting set has the wrong size".into()));
        }
        Ok(Morphism { alphabet, target, eta, accept })
    }

    pub fn identity(&self) -> Elem {
        self.target.identity().unwrap()
    }

    pub fn image(&self, letter: usize) -> Elem {
        self.eta[letter]
    }

    pub fn eval(&self, word: &[usize]) -> Elem {
        word.iter().fold(self.identity(), |acc, &a| self.target.mul(acc, self.eta[a]))
    }

    pub fn is_accepting(&self, x: Elem) -> bool {
        self.accept[x]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accept[self.eval(word)]
    }

    pub fn letter(&self, c: char) -> Result<usize> {
        self.alphabet.iter().position(|&a| a == c).ok_or_else(|| Error::UnknownLetter(c.to_string()))
    }

    pub fn parse_word(&self, w: &str) -> Result<Vec<usize>> {
        w.chars().map(|c| self.letter(c)).collect()
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        w.iter().map(|&a| self.alphabet[a]).collect()
    }
}

/// Transition monoid of `d`: identity first, then letter transformations
/// closed under composition in BFS order. Elements are named by a shortest
/// word (`1` for the identity); `xy` applies `x` first.
pub fn transition_monoid(d: &Dfa) -> Morphism {
    let n = d.states();
    let ident: Vec<usize> = (0..n).collect();
    let mut index: HashMap<Vec<usize>, Elem> = HashMap::new();
    let mut elems = vec![ident.clone()];
    let mut names = vec!["1".to_string()];
    index.insert(ident, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (a, &c) in d.alphabet.iter().enumerate() {
            let f: Vec<usize> = elems[x].iter().map(|&q| d.delta[q][a]).collect();
            if !index.contains_key(&f) {
                let name = if x == 0 { c.to_string() } else { format!("{}{c}", names[x]) };
                index.insert(f.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(f);
                names.push(name);
            }
        }
    }
    let size = elems.len();
    let mut table = Vec::with_capacity(size * size);
    for x in &elems {
        for y in &elems {
            let xy: Vec<usize> = x.iter().map(|&q| y[q]).collect();
            table.push(index[&xy]);
        }
    }
    let target = FiniteSemigroup::from_flat_trusted(size, table, names);
    let eta = (0..d.alphabet.len())
        .map(|a| index[&(0..n).map(|q| d.delta[q][a]).collect::<Vec<_>>()])
        .collect();
    let accept = elems.iter().map(|f| d.finals[f[d.initial]]).collect();
    Morphism { alphabet: d.alphabet.clone(), target, eta, accept }
}

/// Syntactic monoid and morphism of the language of a minimal automaton.
pub fn syntactic_monoid(d: &Dfa) -> Result<Morphism> {
    check_minimal(d)?;
    Ok(transition_monoid(d))
}
