//! From regular expressions and automata to syntactic monoids, stable
//! semigroups and complexity classes.

mod classify;
mod dfa;
pub mod languages;
mod monoid;
mod regex;
mod stable;

use serde::{Deserialize, Serialize};

pub use classify::{classify_language, EnginePlan, LanguageClass, TrichotomyReport, Witness};
pub use dfa::{check_minimal, minimize_dfa, regex_to_dfa, Dfa, DfaJson};
pub use monoid::{syntactic_monoid, transition_monoid, Morphism};
pub use regex::{parse_regex, RegexAst};
pub use stable::{stable_data, StableData};

use crate::error::{Error, Result};

/// `{ "alphabet": "ab", "regex": "a*b*" }` or `{ "alphabet": "ab", "dfa": {...} }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageJson {
    pub alphabet: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dfa: Option<DfaJson>,
}

/// A language together with everything derived from it.
#[derive(Debug, Clone)]
pub struct Language {
    pub dfa: Dfa,
    pub morphism: Morphism,
    pub stable: StableData,
    pub report: TrichotomyReport,
}

fn alphabet_of(text: &str) -> Result<Vec<char>> {
    let alphabet: Vec<char> = text.chars().collect();
    if alphabet.is_empty() {
        return Err(Error::InvalidDfa("empty alphabet".into()));
    }
    for (i, c) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(c) {
            return Err(Error::InvalidDfa(format!("letter `{c}` listed twice")));
        }
        if "()+*".contains(*c) || c.is_whitespace() {
            return Err(Error::InvalidDfa(format!("`{c}` cannot be a letter")));
        }
    }
    Ok(alphabet)
}

impl Language {
    pub fn from_regex(alphabet: &str, regex: &str) -> Result<Self> {
        let alphabet = alphabet_of(alphabet)?;
        let ast = parse_regex(regex, &alphabet)?;
        Self::from_dfa(&regex_to_dfa(&ast, &alphabet))
    }

    /// Minimizes `d` first, so any complete automaton is accepted.
    pub fn from_dfa(d: &Dfa) -> Result<Self> {
        let dfa = minimize_dfa(d);
        let morphism = syntactic_monoid(&dfa)?;
        let stable = stable_data(&morphism)?;
        let report = classify_language(&morphism, &stable);
        Ok(Language { dfa, morphism, stable, report })
    }

    pub fn from_spec(spec: LanguageJson) -> Result<Self> {
        match (spec.regex, spec.dfa) {
            (Some(re), None) => Self::from_regex(&spec.alphabet, &re),
            (None, Some(d)) => Self::from_dfa(&Dfa::from_json(alphabet_of(&spec.alphabet)?, d)?),
            _ => Err(Error::InvalidDfa("give exactly one of `regex` and `dfa`".into())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_spec(serde_json::from_str(text)?)
    }

    pub fn alphabet(&self) -> &[char] {
        &self.morphism.alphabet
    }

    pub fn parse_word(&self, w: &str) -> Result<Vec<usize>> {
        self.morphism.parse_word(w)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.dfa.accepts(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_variety, Variety};

    #[test]
    fn classifications() {
        let cases = [
            (languages::a_star_b_star(), LanguageClass::QLzg),
            (languages::aa_star_b_a_star(), LanguageClass::QLzg),
            (languages::l_u2(), LanguageClass::QSgOnly),
            (languages::l_u1(), LanguageClass::QSgOnly),
            (languages::s3_word_problem(), LanguageClass::OutsideQSg),
        ];
        for (spec, class) in cases {
            let lang = Language::from_spec(spec.clone()).unwrap();
            assert_eq!(lang.report.class, class, "{spec:?}");
            assert_eq!(lang.report.bound, class.bound());
            if class == LanguageClass::QLzg {
                assert!(check_variety(&lang.stable.stable, &Variety::Sg));
            }
        }
    }

    #[test]
    fn aa_star_b_a_star_monoid_outside_sg() {
        let lang = Language::from_spec(languages::aa_star_b_a_star()).unwrap();
        assert!(!lang.report.monoid_in_sg);
        let w = lang.parse_word("aab").unwrap();
        assert!(lang.morphism.accepts(&w));
    }

    #[test]
    fn a_star_b_star_report() {
        let lang = Language::from_spec(languages::a_star_b_star()).unwrap();
        assert_eq!(lang.report.stability_index, 2);
        assert_eq!(lang.report.engine_plan, EnginePlan::ChunkedLzg);
        let json = serde_json::to_value(&lang.report).unwrap();
        assert_eq!(json["class"], "Q_LZG");
        assert_eq!(json["engine_plan"], "chunked-lzg");
    }

    #[test]
    fn json_spec_errors() {
        assert!(Language::from_json(r#"{"alphabet":"ab"}"#).is_err());
        assert!(Language::from_json(r#"{"alphabet":"aa","regex":"a"}"#).is_err());
        assert!(Language::from_json(r#"{"alphabet":"ab","regex":"a**)"}"#).is_err());
        let d = r#"{"alphabet":"a","dfa":{"states":2,"delta":[[1],[0]],"initial":0,"finals":[0]}}"#;
        assert_eq!(Language::from_json(d).unwrap().dfa.states(), 2);
    }
}
