use std::collections::HashMap;

use serde::Serialize;

use super::zg::zg_engine_from_certificate;
use super::{check_pos, Engine, KaryEngine, SgEngine, WindowEngine};
use crate::algebra::{adjoin_identity, check_variety, find_zg_certificate, Elem, Variety};
use crate::error::{Error, Result};
use crate::syntactic::{EnginePlan, Language, Morphism, StableData};

const MEMO_LIMIT: usize = 1 << 16;

/// How a `chunked-lzg` plan was realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LzgRoute {
    /// Subdirect certificate for the stable semigroup with an identity.
    Zg,
    /// Verified capped factor counts over blocks.
    Window,
    /// Neither applied; the SG engine is used instead.
    SgFallback,
}

/// Dynamic membership for a regular language. For chunked plans the word is
/// cut into blocks of the stability index; each block maps into the stable
/// semigroup and an inner engine runs over the block images, while the
/// incomplete tail is kept verbatim.
pub struct LanguageEngine {
    morphism: Morphism,
    plan: EnginePlan,
    route: Option<LzgRoute>,
    block: usize,
    word: Vec<usize>,
    inner: Box<dyn Engine>,
    /// Inner value -> element of the syntactic monoid.
    from_inner: Vec<Elem>,
    /// Stable id -> inner letter.
    to_inner: Vec<Elem>,
    to_stable: Vec<Option<Elem>>,
    memo: HashMap<Vec<usize>, Elem>,
    ops: u64,
}

impl LanguageEngine {
    /// Uses the plan chosen by the classifier.
    pub fn new(lang: &Language, word: &[usize]) -> Result<Self> {
        Self::with_plan(lang, word, lang.report.engine_plan)
    }

    /// Forces a plan. A chunked plan whose algebraic precondition fails is
    /// rejected.
    pub fn with_plan(lang: &Language, word: &[usize], plan: EnginePlan) -> Result<Self> {
        let m = &lang.morphism;
        if let Some(&a) = word.iter().find(|&&a| a >= m.alphabet.len()) {
            return Err(Error::UnknownLetter(a.to_string()));
        }
        let sd = &lang.stable;
        let stable = &sd.stable;
        let block = if plan == EnginePlan::Kary { 1 } else { sd.index };
        let mut engine = LanguageEngine {
            morphism: m.clone(),
            plan,
            route: None,
            block,
            word: word.to_vec(),
            inner: Box::new(KaryEngine::new(&m.target, &[])?),
            from_inner: Vec::new(),
            to_inner: Vec::new(),
            to_stable: sd.to_stable.clone(),
            memo: HashMap::new(),
            ops: 0,
        };
        let images: Vec<Elem> = match plan {
            EnginePlan::Kary => word.iter().map(|&a| m.image(a)).collect(),
            _ => (0..word.len() / block).map(|b| engine.block_stable(sd, b)).collect(),
        };
        match plan {
            EnginePlan::Kary => {
                engine.inner = Box::new(KaryEngine::new(&m.target, &images)?);
                engine.from_inner = m.target.elements().collect();
            }
            EnginePlan::ChunkedSg => {
                engine.inner = Box::new(SgEngine::new(stable, &images)?);
                engine.from_inner = sd.inclusion.clone();
                engine.to_inner = stable.elements().collect();
            }
            EnginePlan::ChunkedLzg => {
                if !check_variety(stable, &Variety::local(Variety::Zg)) {
                    return Err(Error::NotInVariety("LZG"));
                }
                let s1 = adjoin_identity(stable);
                let cert = if check_variety(&s1, &Variety::Zg) { find_zg_certificate(&s1)? } else { None };
                engine.to_inner = stable.elements().collect();
                engine.from_inner = s1
                    .elements()
                    .map(|x| if x < stable.size() { sd.inclusion[x] } else { m.identity() })
                    .collect();
                if let Some(cert) = cert {
                    engine.inner = Box::new(zg_engine_from_certificate(&s1, &cert, &images)?);
                    engine.route = Some(LzgRoute::Zg);
                } else if let Some(params) = WindowEngine::find_params(stable) {
                    engine.inner = Box::new(WindowEngine::with_params(stable, params, &images)?);
                    engine.route = Some(LzgRoute::Window);
                } else {
                    log::warn!("no constant-time route for this stable semigroup; using the SG engine");
                    engine.inner = Box::new(SgEngine::new(stable, &images)?);
                    engine.route = Some(LzgRoute::SgFallback);
                }
            }
        }
        Ok(engine)
    }

    fn block_stable(&mut self, sd: &StableData, b: usize) -> Elem {
        let letters = &self.word[b * self.block..(b + 1) * self.block];
        if let Some(&x) = self.memo.get(letters) {
            return x;
        }
        let x = sd.to_stable[self.morphism.eval(letters)].expect("blocks of stable length are stable");
        if self.memo.len() < MEMO_LIMIT {
            self.memo.insert(letters.to_vec(), x);
        }
        x
    }

    fn block_image(&mut self, b: usize) -> Elem {
        let letters = &self.word[b * self.block..(b + 1) * self.block];
        self.ops += 1;
        if let Some(&x) = self.memo.get(letters) {
            return self.to_inner[x];
        }
        self.ops += self.block as u64;
        let x = self.to_stable[self.morphism.eval(letters)].expect("blocks of stable length are stable");
        if self.memo.len() < MEMO_LIMIT {
            self.memo.insert(letters.to_vec(), x);
        }
        self.to_inner[x]
    }

    pub fn kind(&self) -> String {
        match self.route {
            Some(LzgRoute::Zg) => "chunked-lzg(zg)".into(),
            Some(LzgRoute::Window) => "chunked-lzg(window)".into(),
            Some(LzgRoute::SgFallback) => "chunked-lzg(sg-fallback)".into(),
            None => self.plan.to_string(),
        }
    }

    pub fn plan(&self) -> EnginePlan {
        self.plan
    }

    pub fn route(&self) -> Option<LzgRoute> {
        self.route
    }

    pub fn block_len(&self) -> usize {
        self.block
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn ops(&self) -> u64 {
        self.ops + self.inner.ops()
    }

    pub fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        check_pos(pos, self.word.len())?;
        if letter >= self.morphism.alphabet.len() {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        self.ops += 1;
        self.word[pos] = letter;
        if self.plan == EnginePlan::Kary {
            return self.inner.update(pos, self.morphism.image(letter));
        }
        let b = pos / self.block;
        if b < self.word.len() / self.block {
            let x = self.block_image(b);
            self.inner.update(b, x)?;
        }
        Ok(())
    }

    /// Image of the whole word in the syntactic monoid.
    pub fn eval(&mut self) -> Elem {
        self.ops += 1;
        let m = &self.morphism.target;
        let head = self.inner.query().map_or(self.morphism.identity(), |v| self.from_inner[v]);
        if self.plan == EnginePlan::Kary {
            return head;
        }
        let tail_start = self.word.len() / self.block * self.block;
        self.ops += (self.word.len() - tail_start) as u64;
        self.word[tail_start..].iter().fold(head, |acc, &a| m.mul(acc, self.morphism.image(a)))
    }

    pub fn member(&mut self) -> bool {
        let x = self.eval();
        self.morphism.is_accepting(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntactic::languages;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn differential(lang: &Language, plan: EnginePlan, n: usize, seed: u64) -> String {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = lang.alphabet().len();
        let mut w: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let mut e = LanguageEngine::with_plan(lang, &w, plan).unwrap();
        assert_eq!(e.member(), lang.accepts(&w));
        for _ in 0..300 {
            let (pos, a) = (rng.gen_range(0..n), rng.gen_range(0..k));
            e.update(pos, a).unwrap();
            w[pos] = a;
            assert_eq!(e.member(), lang.accepts(&w));
            assert_eq!(e.eval(), lang.morphism.eval(&w));
        }
        e.kind()
    }

    #[test]
    fn every_named_language_all_plans() {
        for (name, spec) in languages::entries() {
            let lang = Language::from_spec(spec).unwrap();
            for n in [1, 2, 3, 9, 40] {
                differential(&lang, EnginePlan::Kary, n, n as u64);
                if lang.report.class != crate::syntactic::LanguageClass::OutsideQSg {
                    differential(&lang, EnginePlan::ChunkedSg, n, n as u64 + 100);
                }
                if lang.report.class == crate::syntactic::LanguageClass::QLzg {
                    differential(&lang, EnginePlan::ChunkedLzg, n, n as u64 + 200);
                }
            }
            let _ = name;
        }
    }

    #[test]
    fn lzg_routes() {
        let lang = Language::from_spec(languages::a_star_b_star()).unwrap();
        let e = LanguageEngine::new(&lang, &[0, 1]).unwrap();
        assert_eq!(e.route(), Some(LzgRoute::Window));
        let lang = Language::from_spec(languages::aa_star_b_a_star()).unwrap();
        let e = LanguageEngine::new(&lang, &[0, 1]).unwrap();
        assert_eq!(e.route(), Some(LzgRoute::Zg));
    }

    #[test]
    fn chunked_sg_rejects_outside() {
        let lang = Language::from_spec(languages::s3_word_problem()).unwrap();
        assert!(LanguageEngine::with_plan(&lang, &[0], EnginePlan::ChunkedSg).is_err());
    }
}
