//! Operation-count benchmarks: the largest number of counted steps a single
//! update or query takes, as the word grows.

use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use dynmem::algebra::FiniteSemigroup;
use dynmem::engines::{Engine, KaryEngine, LanguageEngine, Registry, SemidirectEngine};
use dynmem::syntactic::Language;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::input::{load_semidirect, load_source, Source};
use crate::run::parse_plan;

pub const CSV_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// One engine on one input. `engine` is a registry name, `semidirect`, or
/// `language`; registry engines given a language run on its stable
/// semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub engine: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<String>,
}

impl Cell {
    pub fn new(engine: &str, input: &str) -> Self {
        Cell { engine: engine.into(), input: Some(input.into()), plan: None }
    }

    pub fn label(&self) -> String {
        match &self.input {
            Some(i) => format!("{}:{}", self.engine, i.trim_start_matches(crate::input::BUILTIN)),
            None => self.engine.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n: Vec<usize>,
    #[serde(default = "default_steps")]
    pub steps: usize,
    pub cells: Vec<Cell>,
}

fn default_steps() -> usize {
    20_000
}

impl Default for BenchConfig {
    /// One cell per complexity regime, at `2^10`, `2^14` and `2^18`.
    fn default() -> Self {
        BenchConfig {
            n: vec![1 << 10, 1 << 14, 1 << 18],
            steps: default_steps(),
            cells: vec![
                Cell::new("count", "builtin:Z5"),
                Cell::new("nilpotent", "builtin:pq1"),
                Cell::new("zg", "builtin:Z2xzg5"),
                Cell { engine: "semidirect".into(), input: None, plan: None },
                Cell::new("language", "builtin:a*b*"),
                Cell::new("language", "builtin:(aa)*ba*"),
                Cell::new("window", "builtin:ab*"),
                Cell::new("sg", "builtin:L_U2"),
                Cell::new("sg", "builtin:abc2"),
                Cell::new("kary", "builtin:semigroup:S3"),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub cell: String,
    pub kind: String,
    pub n: usize,
    pub steps: usize,
    pub max_ops_update: u64,
    pub max_ops_query: u64,
    pub max_ops_op: u64,
    pub mean_ops_op: f64,
    /// Table entries of a k-ary engine.
    pub table_size: Option<usize>,
    pub build_ms: Option<f64>,
    pub run_ms: Option<f64>,
}

/// Something that can be updated and queried with counted steps.
trait Subject {
    fn kind(&self) -> String;
    fn update(&mut self, pos: usize, letter: usize) -> Result<()>;
    fn query(&mut self);
    fn ops(&self) -> u64;
}

struct EngineSubject(Box<dyn Engine>);

impl Subject for EngineSubject {
    fn kind(&self) -> String {
        self.0.kind()
    }
    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        Ok(self.0.update(pos, letter)?)
    }
    fn query(&mut self) {
        self.0.query();
    }
    fn ops(&self) -> u64 {
        self.0.ops()
    }
}

impl Subject for LanguageEngine {
    fn kind(&self) -> String {
        LanguageEngine::kind(self)
    }
    fn update(&mut self, pos: usize, letter: usize) -> Result<()> {
        Ok(LanguageEngine::update(self, pos, letter)?)
    }
    fn query(&mut self) {
        self.member();
    }
    fn ops(&self) -> u64 {
        LanguageEngine::ops(self)
    }
}

fn build_subject(cell: &Cell, n: usize, rng: &mut ChaCha8Rng) -> Result<(Box<dyn Subject>, usize, Option<usize>)> {
    let random = |k: usize, rng: &mut ChaCha8Rng| -> Vec<usize> { (0..n).map(|_| rng.gen_range(0..k)).collect() };
    match cell.engine.as_str() {
        "semidirect" => {
            let spec = load_semidirect(cell.input.as_deref())?;
            let k = spec.s.size() * spec.t.size();
            let e = SemidirectEngine::new(spec, &random(k, rng))?;
            Ok((Box::new(EngineSubject(Box::new(e))), k, None))
        }
        "language" => {
            let src = load_source(cell.input.as_deref().unwrap_or_default())?;
            let lang: &Language = src.language()?;
            let k = lang.alphabet().len();
            let w = random(k, rng);
            let e = match &cell.plan {
                Some(p) => LanguageEngine::with_plan(lang, &w, parse_plan(p)?)?,
                None => LanguageEngine::new(lang, &w)?,
            };
            Ok((Box::new(e), k, None))
        }
        name => {
            let Some(input) = &cell.input else { bail!("cell `{name}` needs an input") };
            let src = load_source(input)?;
            let s: &FiniteSemigroup = match &src {
                Source::Semigroup(s) => s,
                Source::Language(l) => &l.stable.stable,
            };
            let w = random(s.size(), rng);
            if name == "kary" {
                let e = KaryEngine::new(s, &w)?;
                let t = e.table_size();
                return Ok((Box::new(EngineSubject(Box::new(e))), s.size(), Some(t)));
            }
            let e = Registry::standard().build(name, s, &w)?;
            Ok((Box::new(EngineSubject(e)), s.size(), None))
        }
    }
}

/// Measures one cell at one length.
pub fn measure(cell: &Cell, n: usize, steps: usize, seed: u64, timing: bool) -> Result<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(17));
    let t0 = Instant::now();
    let (mut e, k, table_size) = build_subject(cell, n, &mut rng)?;
    let build = t0.elapsed();
    let t1 = Instant::now();
    let (mut max_u, mut max_q, mut max_op, mut total) = (0, 0, 0, 0);
    for _ in 0..steps {
        let before = e.ops();
        if n > 0 {
            e.update(rng.gen_range(0..n), rng.gen_range(0..k))?;
        }
        let mid = e.ops();
        e.query();
        let after = e.ops();
        max_u = max_u.max(mid - before);
        max_q = max_q.max(after - mid);
        max_op = max_op.max(after - before);
        total += after - before;
    }
    let run = t1.elapsed();
    Ok(BenchRow {
        cell: cell.label(),
        kind: e.kind(),
        n,
        steps,
        max_ops_update: max_u,
        max_ops_query: max_q,
        max_ops_op: max_op,
        mean_ops_op: if steps == 0 { 0.0 } else { total as f64 / steps as f64 },
        table_size,
        build_ms: timing.then_some(build.as_secs_f64() * 1e3),
        run_ms: timing.then_some(run.as_secs_f64() * 1e3),
    })
}

/// Every (cell, n) pair, measured on separate threads; rows come back in
/// config order.
pub fn cmd_bench(config: &BenchConfig, seed: u64, timing: bool) -> Result<Vec<BenchRow>> {
    let jobs: Vec<(&Cell, usize)> = config.cells.iter().flat_map(|c| config.n.iter().map(move |&n| (c, n))).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(cell, n)| scope.spawn(move || measure(cell, n, config.steps, seed, timing)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    })
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv(rows: &[BenchRow], out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# dynmem-bench v{CSV_VERSION}")?;
    writeln!(out, "cell,kind,n,steps,max_ops_update,max_ops_query,max_ops_op,mean_ops_op,table_size,build_ms,run_ms")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.3},{},{},{}",
            r.cell,
            r.kind,
            r.n,
            r.steps,
            r.max_ops_update,
            r.max_ops_query,
            r.max_ops_op,
            r.mean_ops_op,
            opt(&r.table_size),
            opt(&r.build_ms.map(|v| format!("{v:.1}"))),
            opt(&r.run_ms.map(|v| format!("{v:.1}")))
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig { n: vec![64, 256], steps: 500, ..BenchConfig::default() }
    }

    #[test]
    fn every_default_cell_runs() {
        let rows = cmd_bench(&small(), DEFAULT_SEED, false).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.max_ops_op > 0));
        assert_eq!(rows[0].kind, "count");
        assert!(rows.iter().any(|r| r.table_size.is_some()));
    }

    #[test]
    fn csv_is_deterministic() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&cmd_bench(&small(), 3, false).unwrap(), &mut a).unwrap();
        write_csv(&cmd_bench(&small(), 3, false).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("# dynmem-bench v1\ncell,kind,n,"));
    }

    #[test]
    fn config_json() {
        let c: BenchConfig = serde_json::from_str(r#"{"n":[8],"cells":[{"engine":"sg","input":"builtin:U2"}]}"#).unwrap();
        assert_eq!(c.steps, 20_000);
        assert!(measure(&Cell::new("sg", "builtin:S3"), 8, 1, 0, false).is_err());
    }
}
