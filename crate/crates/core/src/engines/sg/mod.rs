//! Engine for semigroups in SG.
//!
//! The word is pushed through a stack of layers. Each layer removes one
//! maximal J-class `C` from the semigroup of letters it may see: a
//! [`RunCollapser`] (regular `C`) merges maximal runs of `C`-letters into
//! single letters, and a [`PairCollapser`] groups consecutive letters two or
//! three at a time so that every group leaves `C`. The last layer sees only
//! the zero. Letters are keyed by position; a layer's output letter is keyed
//! by the last input position it covers.

mod pair;
mod run;

use pair::PairCollapser;
use run::{RunCollapser, RunRees};

use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{
    adjoin_zero, check_variety, green_j, rees_decompose_with, subsemigroup, Elem, ElemSet, FiniteSemigroup, Variety,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Change {
    Set(usize, Elem),
    Remove(usize),
}

/// Original state of every output key touched while applying one batch, so
/// that only the net difference is passed on.
#[derive(Debug, Default, Clone)]
pub(crate) struct Outbox {
    touched: Vec<(usize, Option<Elem>)>,
}

impl Outbox {
    pub(crate) fn touch(&mut self, key: usize, before: Option<Elem>) {
        if !self.touched.iter().any(|&(k, _)| k == key) {
            self.touched.push((key, before));
        }
    }

    pub(crate) fn drain(&mut self, now: impl Fn(usize) -> Option<Elem>) -> Vec<Change> {
        let mut out = Vec::with_capacity(self.touched.len());
        for (k, before) in self.touched.drain(..) {
            let after = now(k);
            if after != before {
                out.push(match after {
                    Some(l) => Change::Set(k, l),
                    None => Change::Remove(k),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
struct Base {
    present: Vec<bool>,
    count: usize,
}

impl Base {
    fn apply(&mut self, input: &[Change]) {
        for &c in input {
            match c {
                Change::Set(k, _) if !self.present[k] => {
                    self.present[k] = true;
                    self.count += 1;
                }
                Change::Remove(k) => {
                    self.present[k] = false;
                    self.count -= 1;
                }
                Change::Set(..) => {}
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Layer {
    Pair(PairCollapser),
    Run(RunCollapser),
    Base(Base),
}

impl Layer {
    fn init(&mut self, t: &FiniteSemigroup, entries: &[(usize, Elem)]) -> Vec<(usize, Elem)> {
        match self {
            Layer::Pair(l) => l.init(t, entries),
            Layer::Run(l) => l.init(t, entries),
            Layer::Base(b) => {
                for &(k, _) in entries {
                    b.present[k] = true;
                }
                b.count = entries.len();
                Vec::new()
            }
        }
    }

    fn apply(&mut self, t: &FiniteSemigroup, input: &[Change]) -> Vec<Change> {
        match self {
            Layer::Pair(l) => l.apply(t, input),
            Layer::Run(l) => l.apply(t, input),
            Layer::Base(b) => {
                b.apply(input);
                Vec::new()
            }
        }
    }

    fn count(&self) -> usize {
        match self {
            Layer::Pair(l) => l.count(),
            Layer::Run(l) => l.count(),
            Layer::Base(b) => b.count,
        }
    }

    fn single(&self) -> Option<Elem> {
        match self {
            Layer::Pair(l) => l.single(),
            Layer::Run(l) => l.single(),
            Layer::Base(_) => None,
        }
    }

    fn ops(&self) -> u64 {
        match self {
            Layer::Pair(l) => l.ops(),
            Layer::Run(l) => l.ops(),
            Layer::Base(_) => 0,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Layer::Pair(_) => "pair",
            Layer::Run(_) => "run",
            Layer::Base(_) => "base",
        }
    }
}

/// `O(log log n)` per update for semigroups in SG.
#[derive(Debug, Clone)]
pub struct SgEngine {
    s: FiniteSemigroup,
    t: FiniteSemigroup,
    zero: Elem,
    layers: Vec<Layer>,
    n: usize,
    ops: u64,
}

impl SgEngine {
    pub fn new(s: &FiniteSemigroup, word: &[Elem]) -> Result<Self> {
        if !check_variety(s, &Variety::Sg) {
            return Err(Error::NotInVariety("SG"));
        }
        check_word(s, word)?;
        let t = adjoin_zero(s, true);
        let zero = t.zero().expect("zero adjoined");
        let n = word.len();
        let mut layers = Vec::new();
        let mut alive: Vec<Elem> = t.elements().collect();
        while alive != [zero] {
            let (sub, incl) = subsemigroup(&t, &ElemSet::from_iter(t.size(), alive.iter().copied()))?;
            let j = green_j(&sub);
            let c = *j.maximal_classes.iter().min().expect("finite semigroups have maximal classes");
            let class: Vec<Elem> = j.classes[c].iter().map(|&x| incl[x]).collect();
            if j.regular[c] {
                let rees = rees_decompose_with(&sub, &j, c)?;
                layers.push(Layer::Run(RunCollapser::new(n, RunRees::new(&t, &rees, &incl))));
            }
            let mut in_class = vec![false; t.size()];
            for &x in &class {
                in_class[x] = true;
            }
            layers.push(Layer::Pair(PairCollapser::new(n, in_class.clone())));
            alive.retain(|&x| !in_class[x]);
        }
        layers.push(Layer::Base(Base { present: vec![false; n + 1], count: 0 }));
        let mut entries: Vec<(usize, Elem)> = word.iter().enumerate().map(|(i, &a)| (i + 1, a)).collect();
        for layer in &mut layers {
            entries = layer.init(&t, &entries);
        }
        Ok(SgEngine { s: s.clone(), t, zero, layers, n, ops: 0 })
    }

    /// Layer kinds from the top down.
    pub fn layer_names(&self) -> Vec<&'static str> {
        self.layers.iter().map(|l| l.name()).collect()
    }
}

impl Engine for SgEngine {
    fn kind(&self) -> String {
        "sg".into()
    }

    fn len(&self) -> usize {
        self.n
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.n)?;
        check_letter(&self.s, letter)?;
        let mut changes = vec![Change::Set(pos + 1, letter)];
        for layer in &mut self.layers {
            self.ops += 1;
            changes = layer.apply(&self.t, &changes);
            if changes.is_empty() {
                break;
            }
        }
        Ok(())
    }

    fn query(&mut self) -> Option<Elem> {
        if self.n == 0 {
            return self.s.identity();
        }
        for layer in &self.layers {
            self.ops += 1;
            match layer {
                Layer::Base(_) => return Some(self.zero),
                _ => match layer.count() {
                    0 => return None,
                    1 => return layer.single(),
                    _ => {}
                },
            }
        }
        None
    }

    fn ops(&self) -> u64 {
        self.ops + self.layers.iter().map(|l| l.ops()).sum::<u64>()
    }

    fn word(&self) -> Vec<Elem> {
        match &self.layers[0] {
            Layer::Pair(l) => l.word(),
            Layer::Run(l) => l.word(),
            Layer::Base(_) => vec![self.zero; self.n],
        }
    }
}
