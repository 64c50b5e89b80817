use std::fmt;

use serde::Serialize;

use super::monoid::Morphism;
use super::stable::StableData;
use crate::algebra::{check_variety, find_violation, FiniteSemigroup, Variety, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LanguageClass {
    #[serde(rename = "Q_LZG")]
    QLzg,
    #[serde(rename = "Q_SG_ONLY")]
    QSgOnly,
    #[serde(rename = "OUTSIDE_Q_SG")]
    OutsideQSg,
}

impl LanguageClass {
    pub fn bound(self) -> &'static str {
        match self {
            LanguageClass::QLzg => "O(1)",
            LanguageClass::QSgOnly => "O(log log n)",
            LanguageClass::OutsideQSg => "Θ(log n / log log n)",
        }
    }

    pub fn plan(self) -> EnginePlan {
        match self {
            LanguageClass::QLzg => EnginePlan::ChunkedLzg,
            LanguageClass::QSgOnly => EnginePlan::ChunkedSg,
            LanguageClass::OutsideQSg => EnginePlan::Kary,
        }
    }
}

impl fmt::Display for LanguageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LanguageClass::QLzg => "Q_LZG",
            LanguageClass::QSgOnly => "Q_SG_ONLY",
            LanguageClass::OutsideQSg => "OUTSIDE_Q_SG",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnginePlan {
    #[serde(rename = "chunked-lzg")]
    ChunkedLzg,
    #[serde(rename = "chunked-sg")]
    ChunkedSg,
    #[serde(rename = "kary")]
    Kary,
}

impl fmt::Display for EnginePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnginePlan::ChunkedLzg => "chunked-lzg",
            EnginePlan::ChunkedSg => "chunked-sg",
            EnginePlan::Kary => "kary",
        })
    }
}

/// A failing equation instance, with elements given by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub equation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotent: Option<String>,
    pub elements: Vec<String>,
}

impl Witness {
    fn from_violation(s: &FiniteSemigroup, v: &Violation) -> Self {
        Witness {
            equation: v.variety.clone(),
            idempotent: v.idempotent.map(|e| s.name(e).to_string()),
            elements: v.elems.iter().map(|&x| s.name(x).to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub class: LanguageClass,
    pub bound: String,
    pub engine_plan: EnginePlan,
    pub witnesses: Vec<Witness>,
    pub syntactic_size: usize,
    pub stability_index: usize,
    pub stable_size: usize,
    pub monoid_in_sg: bool,
    pub monoid_in_zg: bool,
}

pub fn classify_language(m: &Morphism, sd: &StableData) -> TrichotomyReport {
    let s = &sd.stable;
    let lzg = Variety::local(Variety::Zg);
    let (class, witnesses) = if check_variety(s, &lzg) {
        (LanguageClass::QLzg, Vec::new())
    } else if check_variety(s, &Variety::Sg) {
        let v = find_violation(s, &lzg).unwrap();
        (LanguageClass::QSgOnly, vec![Witness::from_violation(s, &v)])
    } else {
        let v = find_violation(s, &Variety::Sg).unwrap();
        (LanguageClass::OutsideQSg, vec![Witness::from_violation(s, &v)])
    };
    TrichotomyReport {
        class,
        bound: class.bound().to_string(),
        engine_plan: class.plan(),
        witnesses,
        syntactic_size: m.target.size(),
        stability_index: sd.index,
        stable_size: s.size(),
        monoid_in_sg: check_variety(&m.target, &Variety::Sg),
        monoid_in_zg: check_variety(&m.target, &Variety::Zg),
    }
}
