//! Reductions between dynamic problems, each answering queries of one
//! problem with a constant number of oracle calls to an engine for another.
//!
//! Every query writes probe letters into the target word, asks the target,
//! and writes the original letters back, so the target word is the same
//! before and after.

use crate::algebra::{Elem, FiniteSemigroup};
use crate::engines::{check_letter, check_pos, check_word, Engine, LanguageEngine, PrefixEngine, Registry};
use crate::error::{Error, Result};
use crate::gallery;
use crate::syntactic::{languages, Dfa, Language};

/// Letters of U1 as numbered in [`gallery::u1`].
pub const U1_ONE: Elem = 0;
pub const U1_ZERO: Elem = 1;
/// Letters of U2 as numbered in [`gallery::u2`].
pub const U2_ONE: Elem = 0;
pub const U2_A: Elem = 1;
pub const U2_B: Elem = 2;

/// Direct scan: product of a prefix over U1 or U2, the oracle for the
/// adapters below.
pub fn scan_prefix(s: &FiniteSemigroup, word: &[Elem], len: usize) -> Elem {
    s.eval_or_identity(word[..len].iter().copied()).expect("monoid")
}

/// An idempotent `f` and a `y` with `y f != f y f`, or, with `reversed`, with
/// `f y != f y f`. Exists exactly when the idempotents of `m` are not all
/// central.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonCentralWitness {
    pub x: Elem,
    pub y: Elem,
    pub reversed: bool,
}

impl NonCentralWitness {
    pub fn check(m: &FiniteSemigroup, x: Elem, y: Elem) -> Result<Self> {
        if x >= m.size() || y >= m.size() {
            return Err(Error::NotAWitness);
        }
        let f = m.omega_elem(x);
        let fyf = m.mul(m.mul(f, y), f);
        if m.mul(y, f) != fyf {
            Ok(NonCentralWitness { x, y, reversed: false })
        } else if m.mul(f, y) != fyf {
            Ok(NonCentralWitness { x, y, reversed: true })
        } else {
            Err(Error::NotAWitness)
        }
    }

    pub fn find(m: &FiniteSemigroup) -> Option<Self> {
        m.idempotents()
            .into_iter()
            .flat_map(|f| m.elements().map(move |y| (f, y)))
            .find_map(|(f, y)| Self::check(m, f, y).ok())
    }
}

/// Prefix queries over U1 answered by a dynamic word engine for a monoid
/// whose idempotents are not central. The target word has length `2n + 2`:
/// all letters are the identity except `f = x^ω` at the end and at the even
/// slot of every zero. Probing `y` in the odd slot after a prefix gives
/// `f y f` when the prefix holds a zero and `y f` otherwise.
pub struct PrefixU1ViaMonoid {
    m: FiniteSemigroup,
    target: Box<dyn Engine>,
    witness: NonCentralWitness,
    e: Elem,
    f: Elem,
    word: Vec<Elem>,
    calls: u64,
}

impl PrefixU1ViaMonoid {
    /// `word` is over U1; `engine` names the target engine in the standard
    /// registry.
    pub fn new(m: &FiniteSemigroup, witness: NonCentralWitness, word: &[Elem], engine: &str) -> Result<Self> {
        let e = m.identity().ok_or(Error::NotAMonoid)?;
        let witness = NonCentralWitness::check(m, witness.x, witness.y)?;
        check_word(&gallery::u1(), word)?;
        let f = m.omega_elem(witness.x);
        let n = word.len();
        let mut target_word = vec![e; 2 * n + 2];
        target_word[2 * n + 1] = f;
        for (i, &a) in word.iter().enumerate() {
            if a == U1_ZERO {
                target_word[2 * i + 1] = f;
            }
        }
        if witness.reversed {
            target_word.reverse();
        }
        let target = Registry::standard().build(engine, m, &target_word)?;
        Ok(PrefixU1ViaMonoid { m: m.clone(), target, witness, e, f, word: word.to_vec(), calls: 0 })
    }

    /// Position in the target word, mirrored when the witness is reversed.
    fn slot(&self, p: usize) -> usize {
        if self.witness.reversed {
            2 * self.word.len() + 1 - p
        } else {
            p
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn update(&mut self, i: usize, letter: Elem) -> Result<()> {
        check_pos(i, self.word.len())?;
        check_letter(&gallery::u1(), letter)?;
        self.word[i] = letter;
        let v = if letter == U1_ZERO { self.f } else { self.e };
        self.calls += 1;
        self.target.update(self.slot(2 * i + 1), v)
    }

    /// Product of the first `len` letters, as a U1 element.
    pub fn prefix(&mut self, len: usize) -> Result<Elem> {
        if len > self.word.len() {
            return Err(Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        #[cfg(debug_assertions)]
        let before = self.target.word();
        let probe = self.slot(2 * len);
        self.target.update(probe, self.witness.y)?;
        let v = self.target.query().expect("monoid");
        self.target.update(probe, self.e)?;
        self.calls += 3;
        #[cfg(debug_assertions)]
        debug_assert_eq!(before, self.target.word());
        let (f, y) = (self.f, self.witness.y);
        let with_zero = self.m.mul(self.m.mul(f, y), f);
        Ok(if v == with_zero { U1_ZERO } else { U1_ONE })
    }

    pub fn target_word(&self) -> Vec<Elem> {
        self.target.word()
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

/// Prefix queries over U2 answered by a membership engine for
/// `(a+b+c)*bc*x(a+b+c)*`. The target word is `c · enc(w) · c` with `1`
/// encoded as `c`. Writing `x` right after the prefix tests whether its last
/// non-neutral letter is `b`; if not, a `b` written at the front tells `a`
/// apart from the empty case.
pub struct PrefixU2ViaLanguage {
    target: LanguageEngine,
    letters: [usize; 4],
    word: Vec<Elem>,
    calls: u64,
}

fn letter_ids(lang: &Language, chars: &[char]) -> Result<Vec<usize>> {
    chars.iter().map(|&c| lang.morphism.letter(c)).collect()
}

impl PrefixU2ViaLanguage {
    pub fn new(word: &[Elem]) -> Result<Self> {
        check_word(&gallery::u2(), word)?;
        let lang = Language::from_spec(languages::l_u2())?;
        let ids = letter_ids(&lang, &['a', 'b', 'c', 'x'])?;
        let letters = [ids[0], ids[1], ids[2], ids[3]];
        let enc = |u: Elem| match u {
            U2_A => letters[0],
            U2_B => letters[1],
            _ => letters[2],
        };
        let mut w = vec![letters[2]];
        w.extend(word.iter().map(|&u| enc(u)));
        w.push(letters[2]);
        Ok(PrefixU2ViaLanguage { target: LanguageEngine::new(&lang, &w)?, letters, word: word.to_vec(), calls: 0 })
    }

    pub fn update(&mut self, i: usize, letter: Elem) -> Result<()> {
        check_pos(i, self.word.len())?;
        check_letter(&gallery::u2(), letter)?;
        self.word[i] = letter;
        let l = match letter {
            U2_A => self.letters[0],
            U2_B => self.letters[1],
            _ => self.letters[2],
        };
        self.calls += 1;
        self.target.update(i + 1, l)
    }

    pub fn prefix(&mut self, len: usize) -> Result<Elem> {
        if len > self.word.len() {
            return Err(Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        let [_, b, c, x] = self.letters;
        let before = self.target.word().to_vec();
        let probe = len + 1;
        let saved = before[probe];
        self.target.update(probe, x)?;
        let ends_in_b = self.target.member();
        self.calls += 2;
        let out = if ends_in_b {
            U2_B
        } else {
            self.target.update(0, b)?;
            let nothing = self.target.member();
            self.target.update(0, c)?;
            self.calls += 3;
            if nothing {
                U2_ONE
            } else {
                U2_A
            }
        };
        self.target.update(probe, saved)?;
        self.calls += 1;
        debug_assert_eq!(before, self.target.word());
        Ok(out)
    }

    pub fn target_word(&self) -> Vec<usize> {
        self.target.word().to_vec()
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

/// Prefix queries over U1 answered by a membership engine for
/// `c*x(a+c)*`, with `1` encoded as `c` and `0` as `a`, plus one trailing `c`.
pub struct PrefixU1ViaLanguage {
    target: LanguageEngine,
    letters: [usize; 3],
    word: Vec<Elem>,
    calls: u64,
}

impl PrefixU1ViaLanguage {
    pub fn new(word: &[Elem]) -> Result<Self> {
        check_word(&gallery::u1(), word)?;
        let lang = Language::from_spec(languages::l_u1())?;
        let ids = letter_ids(&lang, &['a', 'c', 'x'])?;
        let letters = [ids[0], ids[1], ids[2]];
        let mut w: Vec<usize> = word.iter().map(|&u| if u == U1_ZERO { letters[0] } else { letters[1] }).collect();
        w.push(letters[1]);
        Ok(PrefixU1ViaLanguage { target: LanguageEngine::new(&lang, &w)?, letters, word: word.to_vec(), calls: 0 })
    }

    pub fn update(&mut self, i: usize, letter: Elem) -> Result<()> {
        check_pos(i, self.word.len())?;
        check_letter(&gallery::u1(), letter)?;
        self.word[i] = letter;
        self.calls += 1;
        let l = if letter == U1_ZERO { self.letters[0] } else { self.letters[1] };
        self.target.update(i, l)
    }

    pub fn prefix(&mut self, len: usize) -> Result<Elem> {
        if len > self.word.len() {
            return Err(Error::PositionOutOfRange { pos: len, len: self.word.len() });
        }
        let before = self.target.word().to_vec();
        let saved = before[len];
        self.target.update(len, self.letters[2])?;
        let clean = self.target.member();
        self.target.update(len, saved)?;
        self.calls += 3;
        debug_assert_eq!(before, self.target.word());
        Ok(if clean { U1_ONE } else { U1_ZERO })
    }

    pub fn target_word(&self) -> Vec<usize> {
        self.target.word().to_vec()
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

/// Unsorted list of the positions holding a marker letter, with O(1)
/// insertion and removal.
#[derive(Debug, Clone, Default)]
struct Occurrences {
    list: Vec<usize>,
    slot: Vec<usize>,
}

impl Occurrences {
    fn new(n: usize) -> Self {
        Occurrences { list: Vec::new(), slot: vec![usize::MAX; n] }
    }

    fn set(&mut self, p: usize, present: bool) {
        let here = self.slot[p] != usize::MAX;
        if present && !here {
            self.slot[p] = self.list.len();
            self.list.push(p);
        } else if !present && here {
            let i = self.slot[p];
            self.list.swap_remove(i);
            if let Some(&moved) = self.list.get(i) {
                self.slot[moved] = i;
            }
            self.slot[p] = usize::MAX;
        }
    }

    /// The single occurrence, if there is exactly one.
    fn only(&self) -> Option<usize> {
        (self.list.len() == 1).then(|| self.list[0])
    }
}

/// Membership in `(a+b+c)*bc*x(a+b+c)*` through a prefix engine for U2:
/// the word is in the language iff it has exactly one `x` and the prefix
/// before it evaluates to `b`, reading `c` and `x` as the identity.
pub struct LanguageU2ViaPrefix {
    prefix: PrefixEngine,
    xs: Occurrences,
    letters: [usize; 4],
    calls: u64,
}

impl LanguageU2ViaPrefix {
    /// `word` uses the letter ids of the language's alphabet `abcx`.
    pub fn new(word: &[usize]) -> Result<Self> {
        let lang = Language::from_spec(languages::l_u2())?;
        let ids = letter_ids(&lang, &['a', 'b', 'c', 'x'])?;
        let letters = [ids[0], ids[1], ids[2], ids[3]];
        let enc = |l: usize| {
            if l == letters[0] {
                U2_A
            } else if l == letters[1] {
                U2_B
            } else {
                U2_ONE
            }
        };
        if let Some(&l) = word.iter().find(|&&l| l >= 4) {
            return Err(Error::UnknownLetter(l.to_string()));
        }
        let mut xs = Occurrences::new(word.len());
        for (p, &l) in word.iter().enumerate() {
            xs.set(p, l == letters[3]);
        }
        let u: Vec<Elem> = word.iter().map(|&l| enc(l)).collect();
        Ok(LanguageU2ViaPrefix { prefix: PrefixEngine::new(&gallery::u2(), &u)?, xs, letters, calls: 0 })
    }

    pub fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        if letter >= 4 {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        check_pos(pos, self.prefix.len())?;
        self.xs.set(pos, letter == self.letters[3]);
        let u = if letter == self.letters[0] {
            U2_A
        } else if letter == self.letters[1] {
            U2_B
        } else {
            U2_ONE
        };
        self.calls += 1;
        self.prefix.update(pos, u)
    }

    pub fn member(&mut self) -> Result<bool> {
        let Some(p) = self.xs.only() else { return Ok(false) };
        self.calls += 1;
        Ok(self.prefix.prefix(p)? == Some(U2_B))
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

/// Membership in `c*x(a+c)*` through a prefix engine for U1: exactly one `x`
/// and no `a` before it.
pub struct LanguageU1ViaPrefix {
    prefix: PrefixEngine,
    xs: Occurrences,
    letters: [usize; 3],
    calls: u64,
}

impl LanguageU1ViaPrefix {
    /// `word` uses the letter ids of the language's alphabet `acx`.
    pub fn new(word: &[usize]) -> Result<Self> {
        let lang = Language::from_spec(languages::l_u1())?;
        let ids = letter_ids(&lang, &['a', 'c', 'x'])?;
        let letters = [ids[0], ids[1], ids[2]];
        if let Some(&l) = word.iter().find(|&&l| l >= 3) {
            return Err(Error::UnknownLetter(l.to_string()));
        }
        let mut xs = Occurrences::new(word.len());
        for (p, &l) in word.iter().enumerate() {
            xs.set(p, l == letters[2]);
        }
        let u: Vec<Elem> = word.iter().map(|&l| if l == letters[0] { U1_ZERO } else { U1_ONE }).collect();
        Ok(LanguageU1ViaPrefix { prefix: PrefixEngine::new(&gallery::u1(), &u)?, xs, letters, calls: 0 })
    }

    pub fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        if letter >= 3 {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        check_pos(pos, self.prefix.len())?;
        self.xs.set(pos, letter == self.letters[2]);
        self.calls += 1;
        self.prefix.update(pos, if letter == self.letters[0] { U1_ZERO } else { U1_ONE })
    }

    pub fn member(&mut self) -> Result<bool> {
        let Some(p) = self.xs.only() else { return Ok(false) };
        self.calls += 1;
        Ok(self.prefix.prefix(p)? == Some(U1_ONE))
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

/// Infix membership for `L` answered through a membership engine for
/// `Σ*#L#Σ*` with `#` a fresh letter. The target word is the input padded
/// with one letter on each side; a query writes `#` around the infix.
pub struct InfixAdapter {
    marked: Language,
    target: LanguageEngine,
    mark: usize,
    n: usize,
    calls: u64,
}

const MARKS: [char; 6] = ['#', '$', '|', '!', '@', '%'];

/// `Σ*#L#Σ*` over `Σ ∪ {#}`; the letter ids of `Σ` are kept and `#` comes last.
pub fn marked_language(lang: &Language) -> Result<Language> {
    let sigma = lang.alphabet().to_vec();
    let mark = *MARKS.iter().find(|c| !sigma.contains(c)).ok_or_else(|| Error::InvalidDfa("no fresh letter".into()))?;
    let d = &lang.dfa;
    let k = sigma.len();
    let q = d.states();
    // 0: before the first mark; 1..=q: inside, shifted by one; q+1: after; q+2: dead
    let (before, after, dead) = (0, q + 1, q + 2);
    let mut delta = vec![vec![dead; k + 1]; q + 3];
    for a in 0..k {
        delta[before][a] = before;
        delta[after][a] = after;
        for s in 0..q {
            delta[s + 1][a] = d.delta[s][a] + 1;
        }
    }
    delta[before][k] = d.initial + 1;
    for s in 0..q {
        delta[s + 1][k] = if d.finals[s] { after } else { dead };
    }
    let mut finals = vec![false; q + 3];
    finals[after] = true;
    let mut alphabet = sigma;
    alphabet.push(mark);
    Language::from_dfa(&Dfa::new(alphabet, delta, 0, finals)?)
}

impl InfixAdapter {
    pub fn new(lang: &Language, word: &[usize]) -> Result<Self> {
        let marked = marked_language(lang)?;
        let k = lang.alphabet().len();
        if let Some(&l) = word.iter().find(|&&l| l >= k) {
            return Err(Error::UnknownLetter(l.to_string()));
        }
        let mut w = Vec::with_capacity(word.len() + 2);
        w.push(0);
        w.extend_from_slice(word);
        w.push(0);
        let target = LanguageEngine::new(&marked, &w)?;
        Ok(InfixAdapter { marked, target, mark: k, n: word.len(), calls: 0 })
    }

    pub fn marked(&self) -> &Language {
        &self.marked
    }

    pub fn target(&self) -> &LanguageEngine {
        &self.target
    }

    pub fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        check_pos(pos, self.n)?;
        if letter >= self.mark {
            return Err(Error::UnknownLetter(letter.to_string()));
        }
        self.calls += 1;
        self.target.update(pos + 1, letter)
    }

    /// Whether the letters at `i..=j` form a word of `L`.
    pub fn infix(&mut self, i: usize, j: usize) -> Result<bool> {
        if i > j {
            return Err(Error::Range(format!("empty infix {i}..{j}")));
        }
        check_pos(j, self.n)?;
        let before = self.target.word().to_vec();
        let (l, r) = (i, j + 2);
        self.target.update(l, self.mark)?;
        self.target.update(r, self.mark)?;
        let member = self.target.member();
        self.target.update(l, before[l])?;
        self.target.update(r, before[r])?;
        self.calls += 5;
        debug_assert_eq!(before, self.target.word());
        Ok(member)
    }

    pub fn target_word(&self) -> Vec<usize> {
        self.target.word().to_vec()
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u2_witness() {
        let m = gallery::u2();
        let w = NonCentralWitness::find(&m).unwrap();
        assert!(NonCentralWitness::check(&m, w.x, w.y).is_ok());
        assert!(NonCentralWitness::find(&gallery::cyclic(3)).is_none());
        assert_eq!(NonCentralWitness::check(&gallery::u1(), 1, 0), Err(Error::NotAWitness));
    }

    #[test]
    fn prefix_u1_both_orientations() {
        let m = gallery::u2();
        let word = vec![U1_ONE, U1_ZERO, U1_ONE, U1_ONE];
        let u1 = gallery::u1();
        for x in m.elements() {
            for y in m.elements() {
                let Ok(wit) = NonCentralWitness::check(&m, x, y) else { continue };
                let mut g = PrefixU1ViaMonoid::new(&m, wit, &word, "kary").unwrap();
                for len in 0..=4 {
                    assert_eq!(g.prefix(len).unwrap(), scan_prefix(&u1, &word, len));
                }
            }
        }
    }

    #[test]
    fn l_u1_examples() {
        let lang = Language::from_spec(languages::l_u1()).unwrap();
        let mut g = LanguageU1ViaPrefix::new(&lang.parse_word("cxca").unwrap()).unwrap();
        assert!(g.member().unwrap());
        let mut g = LanguageU1ViaPrefix::new(&lang.parse_word("acxc").unwrap()).unwrap();
        assert!(!g.member().unwrap());
    }

    #[test]
    fn infix_examples() {
        let lang = Language::from_spec(languages::a_star_b_star()).unwrap();
        let mut g = InfixAdapter::new(&lang, &lang.parse_word("aabb").unwrap()).unwrap();
        assert!(g.infix(0, 3).unwrap());
        assert!(g.infix(1, 2).unwrap());
        let mut g = InfixAdapter::new(&lang, &lang.parse_word("abab").unwrap()).unwrap();
        assert!(!g.infix(0, 3).unwrap());
        assert!(g.infix(2, 1).is_err());
    }
}
