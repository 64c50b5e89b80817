//! Dynamic word engines: maintain the product of a word under letter
//! substitutions.
//!
//! Every engine implements [`Engine`]; constructors are registered by name in
//! a [`Registry`] so that callers can pick one at runtime.

mod count;
mod division;
mod kary;
mod language;
mod naive;
mod nilpotent;
mod prefix;
mod product;
mod semidirect;
pub mod sg;
mod window;
mod zg;

use std::fmt;

pub use count::CountEngine;
pub use division::DivisionEngine;
pub use kary::{choose_branching, KaryEngine};
pub use language::{LanguageEngine, LzgRoute};
pub use naive::NaiveEngine;
pub use nilpotent::NilpotentEngine;
pub use prefix::PrefixEngine;
pub use product::ProductEngine;
pub use semidirect::{SemidirectEngine, SemidirectSpec};
pub use sg::SgEngine;
pub use window::{WindowEngine, WindowParams};
pub use zg::make_zg_engine;

use crate::algebra::{check_variety, Elem, FiniteSemigroup, Variety};
use crate::error::{Error, Result};

/// Uniform contract for dynamic word engines.
pub trait Engine {
    /// Name of the strategy, possibly with a suffix describing a fallback.
    fn kind(&self) -> String;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replaces the letter at `pos` (0-based).
    fn update(&mut self, pos: usize, letter: Elem) -> Result<()>;

    /// Product of the whole word; `None` for the empty word over a semigroup
    /// without identity.
    fn query(&mut self) -> Option<Elem>;

    /// Cumulative count of elementary steps.
    fn ops(&self) -> u64;

    /// Current word.
    fn word(&self) -> Vec<Elem>;

    /// Product of the first `len` letters.
    fn prefix(&mut self, len: usize) -> Result<Option<Elem>> {
        let _ = len;
        Err(Error::Unsupported { engine: self.kind(), op: "prefix" })
    }

    /// Product of the letters at positions `i..=j`.
    fn infix(&mut self, i: usize, j: usize) -> Result<Option<Elem>> {
        let _ = (i, j);
        Err(Error::Unsupported { engine: self.kind(), op: "infix" })
    }
}

impl fmt::Debug for dyn Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Engine").field("kind", &self.kind()).field("len", &self.len()).finish()
    }
}

pub(crate) fn check_pos(pos: usize, len: usize) -> Result<()> {
    if pos >= len {
        Err(Error::PositionOutOfRange { pos, len })
    } else {
        Ok(())
    }
}

pub(crate) fn check_letter(s: &FiniteSemigroup, letter: Elem) -> Result<()> {
    if letter >= s.size() {
        Err(Error::UnknownLetter(letter.to_string()))
    } else {
        Ok(())
    }
}

pub(crate) fn check_word(s: &FiniteSemigroup, word: &[Elem]) -> Result<()> {
    word.iter().try_for_each(|&a| check_letter(s, a))
}

pub type EngineCtor = fn(&FiniteSemigroup, &[Elem]) -> Result<Box<dyn Engine>>;
pub type Eligibility = fn(&FiniteSemigroup) -> bool;

struct Entry {
    name: &'static str,
    about: &'static str,
    eligible: Eligibility,
    ctor: EngineCtor,
}

/// Named engine constructors.
pub struct Registry {
    entries: Vec<Entry>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Registry { entries: Vec::new() }
    }

    /// All built-in engines.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register("naive", "recompute the product on every query", |_| true, |s, w| {
            Ok(Box::new(NaiveEngine::new(s, w)?))
        });
        r.register("kary", "k-ary tree of precomputed node tables", |_| true, |s, w| {
            Ok(Box::new(KaryEngine::new(s, w)?))
        });
        r.register(
            "count",
            "letter counts, commutative semigroups",
            |s| check_variety(s, &Variety::Com),
            |s, w| Ok(Box::new(CountEngine::new(s, w)?)),
        );
        r.register(
            "nilpotent",
            "unsorted list of non-neutral positions, nilpotent plus identity",
            |s| check_variety(s, &Variety::NilPlusOne),
            |s, w| Ok(Box::new(NilpotentEngine::new(s, w)?)),
        );
        r.register(
            "zg",
            "subdirect decomposition into count and nilpotent engines",
            |s| s.is_monoid() && check_variety(s, &Variety::Zg),
            make_zg_engine,
        );
        r.register(
            "sg",
            "layered collapsing over predecessor structures",
            |s| check_variety(s, &Variety::Sg),
            |s, w| Ok(Box::new(SgEngine::new(s, w)?)),
        );
        r.register("prefix", "prefix queries; predecessor-backed for U1 and U2", |_| true, |s, w| {
            Ok(Box::new(PrefixEngine::new(s, w)?))
        });
        r.register(
            "window",
            "capped factor counts with verified summaries",
            |s| WindowEngine::find_params(s).is_some(),
            |s, w| Ok(Box::new(WindowEngine::new(s, w)?)),
        );
        r
    }

    pub fn register(&mut self, name: &'static str, about: &'static str, eligible: Eligibility, ctor: EngineCtor) {
        self.entries.retain(|e| e.name != name);
        self.entries.push(Entry { name, about, eligible, ctor });
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.entries.iter().map(|e| (e.name, e.about)).collect()
    }

    fn entry(&self, name: &str) -> Result<&Entry> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEngine(name.to_string()))
    }

    pub fn is_eligible(&self, name: &str, s: &FiniteSemigroup) -> Result<bool> {
        Ok((self.entry(name)?.eligible)(s))
    }

    /// Engines whose preconditions hold for `s`.
    pub fn eligible(&self, s: &FiniteSemigroup) -> Vec<&'static str> {
        self.entries.iter().filter(|e| (e.eligible)(s)).map(|e| e.name).collect()
    }

    pub fn build(&self, name: &str, s: &FiniteSemigroup, word: &[Elem]) -> Result<Box<dyn Engine>> {
        (self.entry(name)?.ctor)(s, word)
    }
}
