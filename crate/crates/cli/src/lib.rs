//! Command-line front end: classify languages, run update streams, inspect
//! semigroups and benchmark engines.
//!
//! Exit codes: 0 on success, 1 when a checked run disagrees with the oracle,
//! 2 on bad input.

pub mod bench;
pub mod input;
pub mod report;
pub mod run;
pub mod stream;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::bench::{cmd_bench, write_csv, BenchConfig, DEFAULT_SEED};
use crate::input::load_source;
use crate::run::{alphabet_for, build_driver, execute, random_stream, random_word, DriverSpec, Problem};
use crate::stream::{parse_stream, Op};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dynmem", version, about = "Dynamic membership for regular languages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syntactic monoid, stable semigroup and complexity class of a language.
    Classify {
        /// Language JSON file, or builtin:NAME.
        input: String,
    },
    /// Run an update/query stream.
    Run(RunArgs),
    /// Operation counts of engines as the word grows, as CSV.
    Bench(BenchArgs),
    /// Green's structure, varieties and Rees coordinates of a semigroup.
    Algebra {
        /// Semigroup or language JSON file, or builtin:NAME. For a language
        /// the syntactic monoid is reported.
        input: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, clap::Args)]
pub struct RunArgs {
    /// Language or semigroup JSON file, or builtin:NAME.
    pub input: Option<String>,
    /// Initial word; letters by name, separated by spaces or commas when
    /// names are longer than one character.
    #[arg(long, conflicts_with = "length")]
    pub word: Option<String>,
    /// Random initial word of this length.
    #[arg(long)]
    pub length: Option<usize>,
    /// Stream file (`-` for stdin), or records separated by `/`.
    #[arg(long, conflicts_with = "random")]
    pub stream: Option<String>,
    /// Random stream of this many records.
    #[arg(long)]
    pub random: Option<usize>,
    /// Compare every answer against a brute-force oracle.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Engine name for semigroup inputs.
    #[arg(long)]
    pub engine: Option<String>,
    /// Plan for language inputs: chunked-lzg, chunked-sg or kary.
    #[arg(long)]
    pub plan: Option<String>,
    #[arg(long, value_enum)]
    pub problem: Option<Problem>,
    /// Include wall time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    /// JSON config `{"n": [..], "steps": N, "cells": [{"engine", "input", "plan"}]}`;
    /// a built-in set of cells otherwise.
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override the lengths, e.g. `--n 1024 --n 16384`.
    #[arg(long)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Add build and run times.
    #[arg(long)]
    pub timing: bool,
}

fn read_stream(arg: &str) -> Result<Vec<Op>> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if std::path::Path::new(arg).is_file() {
        fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?
    } else {
        arg.to_string()
    };
    parse_stream(&text)
}

fn do_run(a: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let source = a.input.as_deref().map(load_source).transpose()?;
    let mut rng = rand::SeedableRng::seed_from_u64(a.seed);
    let word: Vec<String> = match (&a.word, a.length) {
        (Some(w), _) => input::split_word(w),
        (None, Some(n)) => random_word(&alphabet_for(source.as_ref(), a.problem)?, n, &mut rng),
        (None, None) => Vec::new(),
    };
    let given = a.stream.as_deref().map(read_stream).transpose()?;
    let spec = DriverSpec {
        problem: a.problem,
        engine: a.engine.clone(),
        plan: a.plan.clone(),
        needs_ranges: given.iter().flatten().any(|op| matches!(op, Op::Prefix(_) | Op::Infix(..))),
    };
    let mut driver = build_driver(source.as_ref(), &word, &spec)?;
    let ops = match given {
        Some(ops) => ops,
        None => random_stream(driver.as_ref(), a.random.unwrap_or(0), &mut rng),
    };
    let report = execute(driver.as_mut(), &word, &ops, a.check, a.timing, out, err)?;
    writeln!(err, "{}", serde_json::to_string(&report)?)?;
    Ok(if report.ok() { EXIT_OK } else { EXIT_MISMATCH })
}

fn do_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let mut config = match &a.config {
        Some(p) => serde_json::from_str(&fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?)
            .with_context(|| format!("in {}", p.display()))?,
        None => BenchConfig::default(),
    };
    if !a.n.is_empty() {
        config.n = a.n.clone();
    }
    if let Some(s) = a.steps {
        config.steps = s;
    }
    let rows = cmd_bench(&config, a.seed, a.timing)?;
    match &a.csv_out {
        Some(p) => {
            let mut f = fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            write_csv(&rows, &mut f)?;
        }
        None => write_csv(&rows, out)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Classify { input } => {
            let src = load_source(input)?;
            let report = report::cmd_classify(src.language()?);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(EXIT_OK)
        }
        Command::Run(a) => do_run(a, out, err),
        Command::Bench(a) => do_bench(a, out),
        Command::Algebra { input, json } => {
            let s = match load_source(input)? {
                input::Source::Language(l) => l.morphism.target.clone(),
                input::Source::Semigroup(s) => s,
            };
            let r = report::cmd_algebra(&s)?;
            if *json {
                writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
            } else {
                write!(out, "{}", r.to_text())?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}
