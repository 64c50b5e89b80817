//! Loading languages and semigroups from JSON files or built-in names.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use dynmem::algebra::{FiniteSemigroup, SemigroupJson};
use dynmem::engines::SemidirectSpec;
use dynmem::gallery;
use dynmem::syntactic::{languages, Language, LanguageJson};
use serde::Deserialize;
use serde_json::Value;

/// What an input file describes.
#[derive(Debug, Clone)]
pub enum Source {
    Language(Box<Language>),
    Semigroup(FiniteSemigroup),
}

impl Source {
    pub fn language(&self) -> Result<&Language> {
        match self {
            Source::Language(l) => Ok(l),
            Source::Semigroup(_) => bail!("expected a language, got a semigroup"),
        }
    }

    /// The semigroup itself, or the stable semigroup of a language.
    pub fn semigroup(&self) -> &FiniteSemigroup {
        match self {
            Source::Language(l) => &l.stable.stable,
            Source::Semigroup(s) => s,
        }
    }
}

pub const BUILTIN: &str = "builtin:";

/// Names accepted after `builtin:`. Where a language and a semigroup share
/// a name the language wins; `builtin:semigroup:NAME` picks the semigroup.
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = languages::entries().into_iter().map(|(n, _)| n.to_string()).collect();
    for (n, _) in gallery::entries() {
        if !names.iter().any(|m| m == n) {
            names.push(n.to_string());
        }
    }
    names.extend(["trivial", "ab*1", "Z<n>"].map(String::from));
    names
}

fn builtin(name: &str) -> Result<Source> {
    let name = match name.strip_prefix("semigroup:") {
        Some(n) => n,
        None => {
            if let Some(spec) = languages::by_name(name) {
                return Ok(Source::Language(Box::new(Language::from_spec(spec)?)));
            }
            name
        }
    };
    gallery::by_name(name)
        .map(Source::Semigroup)
        .ok_or_else(|| anyhow!("unknown built-in `{name}`; known: {}", builtin_names().join(", ")))
}

/// Parses a JSON document: `{"alphabet", "regex"|"dfa"}` is a language,
/// `{"elements", "table"}` a semigroup.
pub fn parse_source(text: &str) -> Result<Source> {
    let v: Value = serde_json::from_str(text).context("input is not valid JSON")?;
    if v.get("alphabet").is_some() {
        let spec: LanguageJson = serde_json::from_value(v).context("malformed language")?;
        Ok(Source::Language(Box::new(Language::from_spec(spec)?)))
    } else if v.get("table").is_some() {
        let spec: SemigroupJson = serde_json::from_value(v).context("malformed semigroup")?;
        Ok(Source::Semigroup(spec.build()?))
    } else {
        bail!("input has neither `alphabet` nor `table`")
    }
}

/// `builtin:NAME` or a path to a JSON file.
pub fn load_source(arg: &str) -> Result<Source> {
    if let Some(name) = arg.strip_prefix(BUILTIN) {
        return builtin(name);
    }
    let text = fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
    parse_source(&text).with_context(|| format!("in {arg}"))
}

#[derive(Deserialize)]
struct SemidirectJson {
    s: SemigroupJson,
    t: SemigroupJson,
    act: Vec<Vec<usize>>,
}

/// `builtin:example` or a JSON file `{"s": .., "t": .., "act": [[..]]}`.
pub fn load_semidirect(arg: Option<&str>) -> Result<SemidirectSpec> {
    match arg {
        None | Some("builtin:example") => Ok(SemidirectSpec::example()),
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
            let j: SemidirectJson = serde_json::from_str(&text).with_context(|| format!("in {path}"))?;
            let spec = SemidirectSpec { s: j.s.build()?, t: j.t.build()?, act: j.act };
            spec.validate()?;
            Ok(spec)
        }
    }
}

/// Splits a word into letter names: on whitespace or commas when present,
/// otherwise one character per letter.
pub fn split_word(text: &str) -> Vec<String> {
    let text = text.trim();
    if text.contains(|c: char| c.is_whitespace() || c == ',') {
        text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(String::from).collect()
    } else {
        text.chars().map(String::from).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert!(matches!(load_source("builtin:a*b*").unwrap(), Source::Language(_)));
        assert!(matches!(load_source("builtin:Z7").unwrap(), Source::Semigroup(s) if s.size() == 7));
        assert!(matches!(load_source("builtin:S3").unwrap(), Source::Language(_)));
        assert!(matches!(load_source("builtin:semigroup:S3").unwrap(), Source::Semigroup(s) if s.size() == 6));
        assert!(load_source("builtin:nope").is_err());
    }

    #[test]
    fn json_kinds() {
        let s = parse_source(r#"{"elements":["1","0"],"table":[[0,1],[1,1]]}"#).unwrap();
        assert_eq!(s.semigroup().size(), 2);
        let l = parse_source(r#"{"alphabet":"ab","regex":"a*b*"}"#).unwrap();
        assert!(l.language().is_ok());
        assert!(parse_source(r#"{"x":1}"#).is_err());
        assert!(parse_source("not json").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(split_word("aab"), ["a", "a", "b"]);
        assert_eq!(split_word("ab, ba 0"), ["ab", "ba", "0"]);
        assert!(split_word("").is_empty());
    }
}
