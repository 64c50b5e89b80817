//! Update/query streams, one record per line:
//!
//! ```text
//! U pos letter    replace the letter at pos (0-based)
//! Q               query the whole word
//! P len           product of the first len letters
//! I i j           query the letters at i..=j
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;

use anyhow::{anyhow, bail, Context, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Update { pos: usize, letter: String },
    Query,
    Prefix(usize),
    Infix(usize, usize),
}

impl Op {
    pub fn is_query(&self) -> bool {
        !matches!(self, Op::Update { .. })
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Update { pos, letter } => write!(f, "U {pos} {letter}"),
            Op::Query => f.write_str("Q"),
            Op::Prefix(n) => write!(f, "P {n}"),
            Op::Infix(i, j) => write!(f, "I {i} {j}"),
        }
    }
}

fn number(tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| anyhow!("missing {what}"))?;
    tok.parse().with_context(|| format!("bad {what} `{tok}`"))
}

pub fn parse_line(line: &str) -> Result<Option<Op>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let mut toks = line.split_whitespace();
    let op = match toks.next().unwrap() {
        "U" => {
            let pos = number(toks.next(), "position")?;
            let letter = toks.next().ok_or_else(|| anyhow!("missing letter"))?.to_string();
            Op::Update { pos, letter }
        }
        "Q" => Op::Query,
        "P" => Op::Prefix(number(toks.next(), "length")?),
        "I" => Op::Infix(number(toks.next(), "start")?, number(toks.next(), "end")?),
        other => bail!("unknown record `{other}`"),
    };
    if let Some(extra) = toks.next() {
        bail!("trailing `{extra}`");
    }
    Ok(Some(op))
}

/// Parses a whole stream, or a single line of records separated by `/`.
pub fn parse_stream(text: &str) -> Result<Vec<Op>> {
    let sep = if text.contains('\n') { '\n' } else { '/' };
    let mut ops = Vec::new();
    for (i, line) in text.split(sep).enumerate() {
        if let Some(op) = parse_line(line).with_context(|| format!("stream record {}", i + 1))? {
            ops.push(op);
        }
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records() {
        let ops = parse_stream("Q\nU 2 b\n# note\n\nP 3\nI 0 1\n").unwrap();
        assert_eq!(
            ops,
            vec![
                Op::Query,
                Op::Update { pos: 2, letter: "b".into() },
                Op::Prefix(3),
                Op::Infix(0, 1)
            ]
        );
        assert_eq!(parse_stream("Q / U 2 b / Q").unwrap().len(), 3);
    }

    #[test]
    fn round_trip() {
        for op in parse_stream("U 10 ab\nQ\nP 0\nI 3 4").unwrap() {
            assert_eq!(parse_line(&op.to_string()).unwrap(), Some(op));
        }
    }

    #[test]
    fn errors() {
        for bad in ["X", "U 1", "U x a", "P", "I 1", "Q 1", "U 1 a b"] {
            assert!(parse_line(bad).is_err(), "{bad}");
        }
    }
}
