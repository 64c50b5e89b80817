//! Named example languages.

use super::{DfaJson, LanguageJson};

fn regex(alphabet: &str, re: &str) -> LanguageJson {
    LanguageJson { alphabet: alphabet.into(), regex: Some(re.into()), dfa: None }
}

pub fn a_star_b_star() -> LanguageJson {
    regex("ab", "a*b*")
}

pub fn aa_star_b_a_star() -> LanguageJson {
    regex("ab", "(aa)*ba*")
}

/// Words with a `b`, then only `c`s, then an `x`.
pub fn l_u2() -> LanguageJson {
    regex("abcx", "(a+b+c)*bc*x(a+b+c)*")
}

/// One `x`, no `a` before it.
pub fn l_u1() -> LanguageJson {
    regex("acx", "c*x(a+c)*")
}

pub fn abc_squared() -> LanguageJson {
    regex("abc", "((abc)(abc))*((acb)(acb))*")
}

/// Even number of `a`s.
pub fn parity() -> LanguageJson {
    regex("ab", "(b*ab*ab*)*b*")
}

/// Words over `{a, b}` evaluating to the identity permutation of three
/// points, with `a` a transposition and `b` a 3-cycle.
pub fn s3_word_problem() -> LanguageJson {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let gens = [[1, 0, 2], [1, 2, 0]];
    let delta = perms
        .iter()
        .map(|p| {
            gens.iter()
                .map(|g| {
                    let q = [g[p[0]], g[p[1]], g[p[2]]];
                    perms.iter().position(|r| *r == q).unwrap()
                })
                .collect()
        })
        .collect();
    LanguageJson {
        alphabet: "ab".into(),
        regex: None,
        dfa: Some(DfaJson { states: 6, delta, initial: 0, finals: vec![0] }),
    }
}

/// All named languages.
pub fn entries() -> Vec<(&'static str, LanguageJson)> {
    vec![
        ("a*b*", a_star_b_star()),
        ("(aa)*ba*", aa_star_b_a_star()),
        ("L_U2", l_u2()),
        ("L_U1", l_u1()),
        ("abc2", abc_squared()),
        ("parity", parity()),
        ("S3", s3_word_problem()),
    ]
}

pub fn by_name(name: &str) -> Option<LanguageJson> {
    entries().into_iter().find(|(n, _)| *n == name).map(|(_, l)| l)
}
