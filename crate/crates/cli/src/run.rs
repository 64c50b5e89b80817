//! Executing update/query streams against an engine, optionally shadowed by
//! a brute-force oracle.

use std::io::Write;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use dynmem::algebra::{Elem, FiniteSemigroup};
use dynmem::engines::{Engine, LanguageEngine, Registry};
use dynmem::gadgets::{
    scan_prefix, InfixAdapter, NonCentralWitness, PrefixU1ViaLanguage, PrefixU1ViaMonoid, PrefixU2ViaLanguage,
};
use dynmem::gallery;
use dynmem::syntactic::{EnginePlan, Language};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::input::{split_word, Source};
use crate::stream::Op;

/// Reductions that can be driven from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// Prefix queries over U1 = {1, 0}; through a monoid outside ZE when a
    /// semigroup input is given, through c*x(a+c)* otherwise.
    PrefixU1,
    /// Prefix queries over U2 = {1, a, b}, through (a+b+c)*bc*x(a+b+c)*.
    PrefixU2,
    /// Infix membership for a language, through its marked language.
    Infix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Whole,
    Prefix,
    Infix,
}

/// One runnable target: an engine or a gadget, plus the oracle it is
/// checked against.
pub trait Driver {
    fn kind(&self) -> String;
    fn len(&self) -> usize;
    fn letters(&self) -> Vec<String>;
    fn update(&mut self, pos: usize, letter: usize) -> Result<()>;
    fn answer(&mut self, op: &Op) -> Result<String>;
    /// The expected answer, computed from `word` alone.
    fn oracle(&self, word: &[usize], op: &Op) -> String;
    fn ops(&self) -> u64;
    fn query_kinds(&self) -> Vec<QueryKind>;

    fn letter(&self, name: &str) -> Result<usize> {
        self.letters()
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| anyhow!("letter `{name}` is not in the alphabet {{{}}}", self.letters().join(", ")))
    }
}

fn check_range(op: &Op, n: usize) -> Result<()> {
    match *op {
        Op::Prefix(len) if len > n => bail!("prefix length {len} exceeds the word length {n}"),
        Op::Infix(i, j) if i > j || j >= n => bail!("infix {i}..={j} out of range for length {n}"),
        _ => Ok(()),
    }
}

fn elem_name(s: &FiniteSemigroup, x: Option<Elem>) -> String {
    x.map_or_else(|| "none".to_string(), |x| s.name(x).to_string())
}

struct SemigroupDriver {
    s: FiniteSemigroup,
    engine: Box<dyn Engine>,
    ranges: bool,
}

impl Driver for SemigroupDriver {
    fn kind(&self) -> String {
        self.engine.kind()
    }

    fn len(&self) -> usize {
        self.engine.len()
    }

    fn letters(&self) -> Vec<String> {
        self.s.names().to_vec()
    }

    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        Ok(self.engine.update(pos, letter)?)
    }

    fn answer(&mut self, op: &Op) -> Result<String> {
        check_range(op, self.len())?;
        let x = match *op {
            Op::Query => self.engine.query(),
            Op::Prefix(len) => self.engine.prefix(len)?,
            Op::Infix(i, j) => self.engine.infix(i, j)?,
            Op::Update { .. } => unreachable!(),
        };
        Ok(elem_name(&self.s, x))
    }

    fn oracle(&self, word: &[usize], op: &Op) -> String {
        let part = match *op {
            Op::Prefix(len) => &word[..len],
            Op::Infix(i, j) => &word[i..=j],
            _ => word,
        };
        elem_name(&self.s, self.s.eval_or_identity(part.iter().copied()))
    }

    fn ops(&self) -> u64 {
        self.engine.ops()
    }

    fn query_kinds(&self) -> Vec<QueryKind> {
        if self.ranges {
            vec![QueryKind::Whole, QueryKind::Prefix, QueryKind::Infix]
        } else {
            vec![QueryKind::Whole]
        }
    }
}

fn letters_of(lang: &Language) -> Vec<String> {
    lang.alphabet().iter().map(|c| c.to_string()).collect()
}

struct LanguageDriver {
    lang: Language,
    engine: LanguageEngine,
}

impl Driver for LanguageDriver {
    fn kind(&self) -> String {
        self.engine.kind()
    }

    fn len(&self) -> usize {
        self.engine.len()
    }

    fn letters(&self) -> Vec<String> {
        letters_of(&self.lang)
    }

    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        Ok(self.engine.update(pos, letter)?)
    }

    fn answer(&mut self, op: &Op) -> Result<String> {
        match op {
            Op::Query => Ok(self.engine.member().to_string()),
            _ => bail!("`{op}` needs --problem infix or a semigroup input"),
        }
    }

    fn oracle(&self, word: &[usize], _: &Op) -> String {
        self.lang.accepts(word).to_string()
    }

    fn ops(&self) -> u64 {
        self.engine.ops()
    }

    fn query_kinds(&self) -> Vec<QueryKind> {
        vec![QueryKind::Whole]
    }
}

enum PrefixGadget {
    U1Monoid(PrefixU1ViaMonoid),
    U1Language(PrefixU1ViaLanguage),
    U2Language(PrefixU2ViaLanguage),
}

struct PrefixDriver {
    gadget: PrefixGadget,
    problem: FiniteSemigroup,
    n: usize,
    via: String,
}

impl Driver for PrefixDriver {
    fn kind(&self) -> String {
        self.via.clone()
    }

    fn len(&self) -> usize {
        self.n
    }

    fn letters(&self) -> Vec<String> {
        self.problem.names().to_vec()
    }

    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        match &mut self.gadget {
            PrefixGadget::U1Monoid(g) => g.update(pos, letter)?,
            PrefixGadget::U1Language(g) => g.update(pos, letter)?,
            PrefixGadget::U2Language(g) => g.update(pos, letter)?,
        }
        Ok(())
    }

    fn answer(&mut self, op: &Op) -> Result<String> {
        check_range(op, self.n)?;
        let len = match *op {
            Op::Query => self.n,
            Op::Prefix(len) => len,
            _ => bail!("prefix problems answer only `Q` and `P len`"),
        };
        let x = match &mut self.gadget {
            PrefixGadget::U1Monoid(g) => g.prefix(len)?,
            PrefixGadget::U1Language(g) => g.prefix(len)?,
            PrefixGadget::U2Language(g) => g.prefix(len)?,
        };
        Ok(self.problem.name(x).to_string())
    }

    fn oracle(&self, word: &[usize], op: &Op) -> String {
        let len = if let Op::Prefix(len) = *op { len } else { word.len() };
        self.problem.name(scan_prefix(&self.problem, word, len)).to_string()
    }

    fn ops(&self) -> u64 {
        match &self.gadget {
            PrefixGadget::U1Monoid(g) => g.oracle_calls(),
            PrefixGadget::U1Language(g) => g.oracle_calls(),
            PrefixGadget::U2Language(g) => g.oracle_calls(),
        }
    }

    fn query_kinds(&self) -> Vec<QueryKind> {
        vec![QueryKind::Whole, QueryKind::Prefix]
    }
}

struct InfixDriver {
    lang: Language,
    adapter: InfixAdapter,
    n: usize,
}

impl Driver for InfixDriver {
    fn kind(&self) -> String {
        format!("infix({})", self.adapter.target().kind())
    }

    fn len(&self) -> usize {
        self.n
    }

    fn letters(&self) -> Vec<String> {
        letters_of(&self.lang)
    }

    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        Ok(self.adapter.update(pos, letter)?)
    }

    fn answer(&mut self, op: &Op) -> Result<String> {
        check_range(op, self.n)?;
        let member = match *op {
            Op::Infix(i, j) => self.adapter.infix(i, j)?,
            Op::Query if self.n == 0 => self.lang.accepts(&[]),
            Op::Query => self.adapter.infix(0, self.n - 1)?,
            _ => bail!("the infix problem answers only `Q` and `I i j`"),
        };
        Ok(member.to_string())
    }

    fn oracle(&self, word: &[usize], op: &Op) -> String {
        let part = if let Op::Infix(i, j) = *op { &word[i..=j] } else { word };
        self.lang.accepts(part).to_string()
    }

    fn ops(&self) -> u64 {
        self.adapter.oracle_calls()
    }

    fn query_kinds(&self) -> Vec<QueryKind> {
        vec![QueryKind::Whole, QueryKind::Infix]
    }
}

/// Engines that answer `P` and `I` records.
const RANGE_ENGINES: [&str; 3] = ["naive", "kary", "prefix"];

/// Preferred engine for whole-word queries, fastest first.
const PREFERENCE: [&str; 6] = ["count", "nilpotent", "zg", "window", "sg", "kary"];

pub fn default_engine(s: &FiniteSemigroup, needs_ranges: bool) -> &'static str {
    if needs_ranges {
        return "prefix";
    }
    let eligible = Registry::standard().eligible(s);
    PREFERENCE.into_iter().find(|e| eligible.contains(e)).unwrap_or("kary")
}

pub fn parse_plan(name: &str) -> Result<EnginePlan> {
    match name {
        "chunked-lzg" => Ok(EnginePlan::ChunkedLzg),
        "chunked-sg" => Ok(EnginePlan::ChunkedSg),
        "kary" => Ok(EnginePlan::Kary),
        _ => bail!("unknown plan `{name}` (chunked-lzg, chunked-sg, kary)"),
    }
}

/// How to build the driver.
#[derive(Debug, Clone, Default)]
pub struct DriverSpec {
    pub problem: Option<Problem>,
    pub engine: Option<String>,
    pub plan: Option<String>,
    pub needs_ranges: bool,
}

fn resolve_word(letters: &[String], names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| {
            letters
                .iter()
                .position(|l| l == n)
                .ok_or_else(|| anyhow!("letter `{n}` is not in the alphabet {{{}}}", letters.join(", ")))
        })
        .collect()
}

pub fn build_driver(source: Option<&Source>, word: &[String], spec: &DriverSpec) -> Result<Box<dyn Driver>> {
    match spec.problem {
        None => match source.ok_or_else(|| anyhow!("an input file is required"))? {
            Source::Language(lang) => {
                if let Some(e) = &spec.engine {
                    bail!("--engine `{e}` applies to semigroup inputs; use --plan for languages");
                }
                let w = resolve_word(&letters_of(lang), word)?;
                let engine = match &spec.plan {
                    Some(p) => LanguageEngine::with_plan(lang, &w, parse_plan(p)?)?,
                    None => LanguageEngine::new(lang, &w)?,
                };
                Ok(Box::new(LanguageDriver { lang: (**lang).clone(), engine }))
            }
            Source::Semigroup(s) => {
                let w = resolve_word(s.names(), word)?;
                let name = spec.engine.clone().unwrap_or_else(|| default_engine(s, spec.needs_ranges).to_string());
                let engine = Registry::standard().build(&name, s, &w)?;
                Ok(Box::new(SemigroupDriver { s: s.clone(), engine, ranges: RANGE_ENGINES.contains(&name.as_str()) }))
            }
        },
        Some(Problem::PrefixU1) => {
            let problem = gallery::u1();
            let w = resolve_word(problem.names(), word)?;
            let (gadget, via) = match source {
                Some(src) => {
                    let m = src.semigroup();
                    let witness = NonCentralWitness::find(m)
                        .ok_or_else(|| anyhow!("the idempotents of this semigroup are central; no reduction"))?;
                    let name = spec.engine.clone().unwrap_or_else(|| default_engine(m, false).to_string());
                    let via = format!("prefix-u1 via monoid ({name})");
                    (PrefixGadget::U1Monoid(PrefixU1ViaMonoid::new(m, witness, &w, &name)?), via)
                }
                None => (PrefixGadget::U1Language(PrefixU1ViaLanguage::new(&w)?), "prefix-u1 via L_U1".to_string()),
            };
            Ok(Box::new(PrefixDriver { gadget, problem, n: w.len(), via }))
        }
        Some(Problem::PrefixU2) => {
            let problem = gallery::u2();
            let w = resolve_word(problem.names(), word)?;
            let gadget = PrefixGadget::U2Language(PrefixU2ViaLanguage::new(&w)?);
            Ok(Box::new(PrefixDriver { gadget, problem, n: w.len(), via: "prefix-u2 via L_U2".into() }))
        }
        Some(Problem::Infix) => {
            let lang = source.ok_or_else(|| anyhow!("the infix problem needs a language input"))?.language()?;
            let w = resolve_word(&letters_of(lang), word)?;
            let adapter = InfixAdapter::new(lang, &w)?;
            Ok(Box::new(InfixDriver { lang: lang.clone(), adapter, n: w.len() }))
        }
    }
}

/// Letters of the alphabet a driver would be built over, for random words.
pub fn alphabet_for(source: Option<&Source>, problem: Option<Problem>) -> Result<Vec<String>> {
    Ok(match problem {
        Some(Problem::PrefixU1) => gallery::u1().names().to_vec(),
        Some(Problem::PrefixU2) => gallery::u2().names().to_vec(),
        _ => match source.ok_or_else(|| anyhow!("an input file is required"))? {
            Source::Language(l) => letters_of(l),
            Source::Semigroup(s) => s.names().to_vec(),
        },
    })
}

pub fn random_word(letters: &[String], n: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    (0..n).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect()
}

/// `count` records: half updates, half queries of the kinds the driver
/// answers.
pub fn random_stream(driver: &dyn Driver, count: usize, rng: &mut ChaCha8Rng) -> Vec<Op> {
    let n = driver.len();
    let letters = driver.letters();
    let kinds = driver.query_kinds();
    (0..count)
        .map(|_| {
            if n > 0 && rng.gen_bool(0.5) {
                return Op::Update { pos: rng.gen_range(0..n), letter: letters[rng.gen_range(0..letters.len())].clone() };
            }
            match kinds[rng.gen_range(0..kinds.len())] {
                QueryKind::Prefix => Op::Prefix(rng.gen_range(0..=n)),
                QueryKind::Infix if n > 0 => {
                    let i = rng.gen_range(0..n);
                    Op::Infix(i, rng.gen_range(i..n))
                }
                _ => Op::Query,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RunReport {
    pub kind: String,
    pub length: usize,
    pub operations: usize,
    pub answers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<usize>,
    pub max_ops: u64,
    pub mean_ops: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.mismatches.unwrap_or(0) == 0
    }
}

/// Runs `ops`, writing one answer per query record to `out`. With `check`,
/// every answer is compared against the oracle and mismatches are reported
/// on `err`.
pub fn execute(
    driver: &mut dyn Driver,
    word: &[String],
    ops: &[Op],
    check: bool,
    timing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<RunReport> {
    let start = Instant::now();
    let mut shadow = resolve_word(&driver.letters(), word)?;
    let (mut answers, mut mismatches, mut max_ops, mut total) = (0, 0, 0u64, 0u64);
    for (i, op) in ops.iter().enumerate() {
        let before = driver.ops();
        let record = || format!("record {} (`{op}`)", i + 1);
        match op {
            Op::Update { pos, letter } => {
                let a = driver.letter(letter).with_context(record)?;
                driver.update(*pos, a).with_context(record)?;
                shadow[*pos] = a;
            }
            _ => {
                let got = driver.answer(op).with_context(record)?;
                writeln!(out, "{got}")?;
                answers += 1;
                if check {
                    let want = driver.oracle(&shadow, op);
                    if got != want {
                        mismatches += 1;
                        writeln!(err, "mismatch at {}: got {got}, expected {want}", record())?;
                    }
                }
            }
        }
        let cost = driver.ops() - before;
        max_ops = max_ops.max(cost);
        total += cost;
    }
    Ok(RunReport {
        kind: driver.kind(),
        length: driver.len(),
        operations: ops.len(),
        answers,
        mismatches: check.then_some(mismatches),
        max_ops,
        mean_ops: if ops.is_empty() { 0.0 } else { total as f64 / ops.len() as f64 },
        wall_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

/// Builds a driver and runs `ops` on it.
pub fn cmd_run(
    source: Option<&Source>,
    word: &str,
    ops: &[Op],
    spec: &DriverSpec,
    check: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<RunReport> {
    let word = split_word(word);
    let mut spec = spec.clone();
    spec.needs_ranges |= ops.iter().any(|op| matches!(op, Op::Prefix(_) | Op::Infix(..)));
    let mut driver = build_driver(source, &word, &spec)?;
    execute(driver.as_mut(), &word, ops, check, false, out, err)
}

/// A random differential run: `count` seeded records over a random word of
/// length `n`, always checked.
pub fn random_check(source: Option<&Source>, spec: &DriverSpec, n: usize, count: usize, seed: u64) -> Result<RunReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = random_word(&alphabet_for(source, spec.problem)?, n, &mut rng);
    let mut driver = build_driver(source, &word, spec)?;
    let ops = random_stream(driver.as_ref(), count, &mut rng);
    execute(driver.as_mut(), &word, &ops, true, false, &mut std::io::sink(), &mut std::io::sink())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::load_source;
    use crate::stream::parse_stream;

    fn run(input: &str, word: &str, stream: &str, spec: DriverSpec) -> (String, RunReport) {
        let src = load_source(input).unwrap();
        let mut out = Vec::new();
        let r = cmd_run(Some(&src), word, &parse_stream(stream).unwrap(), &spec, true, &mut out, &mut std::io::sink())
            .unwrap();
        (String::from_utf8(out).unwrap(), r)
    }

    #[test]
    fn worked_example() {
        let (out, r) = run("builtin:a*b*", "aaaa", "Q / U 2 b / Q / U 3 b / Q", DriverSpec::default());
        assert_eq!(out, "true\nfalse\ntrue\n");
        assert_eq!(r.mismatches, Some(0));
        assert_eq!(r.answers, 3);
    }

    #[test]
    fn semigroup_ranges() {
        let (out, r) = run("builtin:Z5", "1 2 3 4", "Q\nP 2\nI 1 2\nU 0 0\nQ", DriverSpec::default());
        assert_eq!(out, "0\n3\n0\n4\n");
        assert_eq!(r.kind, "prefix(kary)");
    }

    #[test]
    fn errors() {
        let src = load_source("builtin:a*b*").unwrap();
        let sink = &mut std::io::sink();
        let ops = parse_stream("U 9 a").unwrap();
        assert!(cmd_run(Some(&src), "aaaa", &ops, &DriverSpec::default(), false, sink, &mut std::io::sink()).is_err());
        let ops = parse_stream("U 0 z").unwrap();
        assert!(cmd_run(Some(&src), "aaaa", &ops, &DriverSpec::default(), false, sink, &mut std::io::sink()).is_err());
        let ops = parse_stream("P 1").unwrap();
        assert!(cmd_run(Some(&src), "aaaa", &ops, &DriverSpec::default(), false, sink, &mut std::io::sink()).is_err());
    }

    #[test]
    fn random_checks_on_every_kind_of_driver() {
        let cases: Vec<(Option<&str>, DriverSpec)> = vec![
            (Some("builtin:a*b*"), DriverSpec::default()),
            (Some("builtin:L_U2"), DriverSpec::default()),
            (Some("builtin:S3"), DriverSpec::default()),
            (Some("builtin:pq1"), DriverSpec { needs_ranges: true, ..Default::default() }),
            (Some("builtin:U2"), DriverSpec { problem: Some(Problem::PrefixU1), ..Default::default() }),
            (None, DriverSpec { problem: Some(Problem::PrefixU1), ..Default::default() }),
            (None, DriverSpec { problem: Some(Problem::PrefixU2), ..Default::default() }),
            (Some("builtin:(aa)*ba*"), DriverSpec { problem: Some(Problem::Infix), ..Default::default() }),
        ];
        for (input, spec) in cases {
            let src = input.map(|i| load_source(i).unwrap());
            let r = random_check(src.as_ref(), &spec, 50, 2000, 1).unwrap();
            assert_eq!(r.mismatches, Some(0), "{input:?} {spec:?}");
            assert!(r.answers > 500);
        }
    }
}
