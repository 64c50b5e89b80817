use std::collections::HashMap;

use super::{check_letter, check_pos, check_word, Engine};
use crate::algebra::{generated_subsemigroup, Elem, FiniteSemigroup};
use crate::error::{Error, Result};

/// An engine for `S` obtained from an engine for `T` when `S` divides `T`:
/// letters are sent to representatives in `T` and results are projected back.
pub struct DivisionEngine {
    outer: FiniteSemigroup,
    inner: Box<dyn Engine>,
    rep: Vec<Elem>,
    projection: HashMap<Elem, Elem>,
    label: Option<String>,
    ops: u64,
}

impl DivisionEngine {
    /// `build` receives the translated word and returns the inner engine.
    /// The projection must be a morphism from the subsemigroup of `inner_s`
    /// generated by the representatives onto `outer`.
    pub fn new<F>(
        outer: &FiniteSemigroup,
        inner_s: &FiniteSemigroup,
        rep: Vec<Elem>,
        projection: HashMap<Elem, Elem>,
        word: &[Elem],
        build: F,
    ) -> Result<Self>
    where
        F: FnOnce(&[Elem]) -> Result<Box<dyn Engine>>,
    {
        if rep.len() != outer.size() {
            return Err(Error::TupleArity { expected: outer.size(), got: rep.len() });
        }
        check_word(outer, word)?;
        check_word(inner_s, &rep)?;
        let (_, gen) = generated_subsemigroup(inner_s, &rep)?;
        let proj = |u: Elem| projection.get(&u).copied().ok_or(Error::MissingProjection(u));
        for (x, &r) in rep.iter().enumerate() {
            if proj(r)? != x {
                return Err(Error::NotAWitness);
            }
        }
        for &u in &gen {
            for &v in &gen {
                if proj(inner_s.mul(u, v))? != outer.mul(proj(u)?, proj(v)?) {
                    return Err(Error::NotAWitness);
                }
            }
        }
        if let (Some(i), Some(o)) = (inner_s.identity(), outer.identity()) {
            if projection.get(&i).is_some_and(|&p| p != o) {
                return Err(Error::NotAWitness);
            }
        }
        let translated: Vec<Elem> = word.iter().map(|&a| rep[a]).collect();
        let inner = build(&translated)?;
        Ok(DivisionEngine { outer: outer.clone(), inner, rep, projection, label: None, ops: 0 })
    }

    pub(crate) fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

impl Engine for DivisionEngine {
    fn kind(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("division({})", self.inner.kind()))
    }

    fn len(&self) -> usize {
        self.inner.len()
    }

    fn update(&mut self, pos: usize, letter: Elem) -> Result<()> {
        check_pos(pos, self.len())?;
        check_letter(&self.outer, letter)?;
        self.ops += 1;
        self.inner.update(pos, self.rep[letter])
    }

    fn query(&mut self) -> Option<Elem> {
        self.ops += 1;
        match self.inner.query() {
            Some(u) => match self.projection.get(&u) {
                Some(&x) => Some(x),
                // The empty word over a monoid: the inner identity may lie
                // outside the generated subsemigroup.
                None => self.outer.identity(),
            },
            None => self.outer.identity(),
        }
    }

    fn ops(&self) -> u64 {
        self.ops + self.inner.ops()
    }

    fn word(&self) -> Vec<Elem> {
        let back: HashMap<Elem, Elem> = self.rep.iter().enumerate().map(|(x, &r)| (r, x)).collect();
        self.inner.word().iter().map(|u| back[u]).collect()
    }
}
